# test_dynamics.py - unit tests for the dynamics module
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Unit tests for the :mod:`cubesub.dynamics` module."""
import math
from unittest import TestCase

import numpy as np
from scipy.spatial.transform import Rotation

from cubesub.dynamics import BodyState
from cubesub.dynamics import integrate
from cubesub.dynamics import kinematic_transform
from cubesub.dynamics import kinetic_energy
from cubesub.dynamics import plant_for_assembly
from cubesub.dynamics import PlantModel
from cubesub.dynamics import relative_twist
from cubesub.dynamics import rotation_from_euler
from cubesub.dynamics import state_derivative
from cubesub.dynamics import step_count
from cubesub.exceptions import ConfigurationError
from cubesub.exceptions import DivergenceError
from cubesub.exceptions import IllegalArgumentError
from cubesub.exceptions import SingularityError
from cubesub.helpers import quat_error_vector
from cubesub.helpers import quat_from_rotation
from cubesub.helpers import quat_multiply
from cubesub.helpers import quat_rate
from cubesub.helpers import rotation_from_quat
from cubesub.hydro import DragLUT
from cubesub.hydro import fibonacci_directions
from cubesub.vehicle import l_assembly

#: Mass matrix of an 18 kg body with isotropic inertia about its center of
#: mass.
SIMPLE_MASS = np.diag([18.0, 18.0, 18.0, 0.5, 0.5, 0.5])


def no_wrench(t, state):
    return np.zeros(6)


def constant_drag(area=0.1):
    directions = fibonacci_directions(30)
    return DragLUT(direction_set=directions,
                   frontal_area=np.full(len(directions), area))


def quat_from_euler(roll, pitch, yaw):
    rotation = Rotation.from_matrix(rotation_from_euler((roll, pitch, yaw)))
    return quat_from_rotation(rotation)


class TestKinematics(TestCase):
    """Tests for :func:`kinematic_transform` and Euler-angle conversion."""

    def test_identity(self):
        """Tests that the transform is the identity at zero attitude."""
        assert np.allclose(kinematic_transform(euler=(0, 0, 0)), np.eye(6))

    def test_yaw(self):
        """Tests the rotation block for a pure yaw."""
        yaw = 0.3
        transform = kinematic_transform(euler=(0, 0, yaw))
        expected = np.array([[math.cos(yaw), -math.sin(yaw), 0],
                             [math.sin(yaw), math.cos(yaw), 0],
                             [0, 0, 1]])
        assert np.allclose(transform[:3, :3], expected)
        assert np.allclose(transform[3:, 3:], np.eye(3))

    def test_from_quaternion(self):
        """Tests that a quaternion and its Euler angles give the same
        transform.

        """
        euler = (0.1, -0.4, 2.0)
        by_angles = kinematic_transform(euler=euler)
        by_quat = kinematic_transform(orientation=quat_from_euler(*euler))
        assert np.allclose(by_angles, by_quat)

    def test_singular_pitch(self):
        """Tests that the transform fails at a right-angle pitch."""
        with self.assertRaises(SingularityError):
            kinematic_transform(euler=(0, math.pi / 2, 0))
        with self.assertRaises(SingularityError):
            kinematic_transform(euler=(0.3, -math.pi / 2, 1.0))

    def test_no_attitude(self):
        """Tests that an attitude is required."""
        with self.assertRaises(IllegalArgumentError):
            kinematic_transform()

    def test_euler_round_trip(self):
        """Tests that a state reports the Euler angles it was built
        from.

        """
        state = BodyState(orientation=quat_from_euler(0.1, 0.2, 0.3))
        assert np.allclose(state.euler(), [0.1, 0.2, 0.3])

    def test_normalized(self):
        """Tests that the orientation is normalized on construction."""
        state = BodyState(orientation=(2, 0, 0, 0))
        assert np.allclose(state.orientation, [1, 0, 0, 0])
        with self.assertRaises(IllegalArgumentError):
            BodyState(orientation=(0, 0, 0, 0))


class TestQuaternions(TestCase):
    """Tests for the quaternion helpers used by the equations of motion."""

    def test_multiply_composes_rotations(self):
        """Tests that the product of two quaternions is the composition of
        their rotations.

        """
        left = quat_from_euler(0.3, -0.2, 1.1)
        right = quat_from_euler(-0.5, 0.4, 2.5)
        product = quat_multiply(left, right)
        expected = (rotation_from_quat(left).as_matrix()
                    @ rotation_from_quat(right).as_matrix())
        assert np.allclose(rotation_from_quat(product).as_matrix(), expected)
        assert product[0] >= 0
        assert abs(np.linalg.norm(product) - 1) < 1e-12

    def test_multiply_yaws(self):
        """Tests that two yaws add up."""
        product = quat_multiply(quat_from_euler(0, 0, 0.3),
                                quat_from_euler(0, 0, 0.4))
        assert np.allclose(product, [math.cos(0.35), 0, 0, math.sin(0.35)])

    def test_rate_matches_finite_difference(self):
        """Tests the quaternion rate against a central difference of the
        body-frame rotation.

        """
        quat = quat_from_euler(0.2, -0.1, 0.6)
        omega = np.array([0.4, -0.3, 0.9])
        step = 1e-5

        def advanced(t):
            rotation = (rotation_from_quat(quat)
                        * Rotation.from_rotvec(omega * t))
            return quat_from_rotation(rotation)

        expected = (advanced(step) - advanced(-step)) / (2 * step)
        assert np.allclose(quat_rate(quat, omega), expected, atol=1e-8)

    def test_error_vector(self):
        """Tests that the error between two yaws is the yaw difference
        about the vertical axis.

        """
        error = quat_error_vector(quat_from_euler(0, 0, 0.5),
                                  quat_from_euler(0, 0, 0.2))
        assert np.allclose(error, [0, 0, 0.3])


class TestStateDerivative(TestCase):
    """Tests for :func:`state_derivative`."""

    def setUp(self):
        self.plant = PlantModel(SIMPLE_MASS)

    def test_at_rest(self):
        """Tests that a body at rest with no wrench stays at rest."""
        derivative = state_derivative(BodyState(), self.plant, np.zeros(6))
        assert np.array_equal(derivative.as_array(), np.zeros(13))

    def test_push(self):
        """Tests that a force of 18 N accelerates 18 kg at 1 m/s²."""
        derivative = state_derivative(BodyState(), self.plant,
                                      [18, 0, 0, 0, 0, 0])
        assert np.allclose(derivative.twist, [1, 0, 0, 0, 0, 0])

    def test_position_rate(self):
        """Tests that the body velocity is rotated into the world frame."""
        state = BodyState(orientation=quat_from_euler(0, 0, math.pi / 2),
                          twist=[1, 0, 0, 0, 0, 0])
        derivative = state_derivative(state, self.plant, np.zeros(6))
        assert np.allclose(derivative.position, [0, 1, 0])

    def test_quaternion_rate(self):
        """Tests the quaternion rate of a yaw rotation."""
        state = BodyState(twist=[0, 0, 0, 0, 0, 1])
        derivative = state_derivative(state, self.plant, np.zeros(6))
        assert np.allclose(derivative.orientation, [0, 0, 0, 0.5])

    def test_restoring(self):
        """Tests that the restoring wrench is subtracted."""
        plant = PlantModel(SIMPLE_MASS,
                           restoring=lambda state: [0, 0, 9, 0, 0, 0])
        derivative = state_derivative(BodyState(), plant, np.zeros(6))
        assert np.allclose(derivative.twist, [0, 0, -0.5, 0, 0, 0])

    def test_ambient_flow(self):
        """Tests that a current drags a body at rest downstream."""
        plant = PlantModel(SIMPLE_MASS, drag=constant_drag(1.0),
                           ambient_flow=lambda position: [0.5, 0, 0])
        state = BodyState()
        assert np.allclose(relative_twist(state, plant),
                           [-0.5, 0, 0, 0, 0, 0])
        derivative = state_derivative(state, plant, np.zeros(6))
        assert np.allclose(derivative.twist[:3], [525 * 0.25 / 18, 0, 0])

    def test_bad_mass_matrix(self):
        """Tests that a plant needs a positive definite mass matrix."""
        with self.assertRaises(ConfigurationError):
            PlantModel(np.diag([1.0, 1.0, 1.0, 1.0, 1.0, 0.0]))


class TestIntegrate(TestCase):
    """Tests for :func:`integrate`."""

    def test_step_count(self):
        """Tests the number of steps and their validation."""
        assert step_count(0.0, 1.0, 0.01) == 100
        assert step_count(0.0, 1.005, 0.01) == 101
        with self.assertRaises(IllegalArgumentError):
            step_count(0.0, 1.0, 0.0)
        with self.assertRaises(IllegalArgumentError):
            step_count(1.0, 0.0, 0.01)

    def test_constant_velocity(self):
        """Tests that a body coasting without drag keeps its velocity."""
        plant = PlantModel(SIMPLE_MASS)
        state = BodyState(twist=[0.5, 0, 0, 0, 0, 0])
        trace = integrate(state, plant, no_wrench, dt=0.01, t_end=2.0)
        assert len(trace) == 201
        assert trace.times[-1] == 2.0
        assert np.allclose(trace.final_state.position, [1, 0, 0])
        assert np.allclose(trace.final_state.twist, state.twist)

    def test_shortened_last_step(self):
        """Tests that the last sample lands exactly on the end time."""
        plant = PlantModel(SIMPLE_MASS)
        trace = integrate(BodyState(), plant, no_wrench, dt=0.1,
                          t_end=0.25)
        assert np.allclose(trace.times, [0, 0.1, 0.2, 0.25])

    def test_energy_conservation(self):
        """Tests that a tumbling body without drag or applied wrench keeps
        its kinetic energy.

        """
        added = np.diag([3.0, 4.0, 5.0, 0.05, 0.06, 0.07])
        plant = plant_for_assembly(l_assembly(), added_mass=added)
        state = BodyState(twist=[0.2, -0.1, 0.05, 0.3, -0.2, 0.4])
        trace = integrate(state, plant, no_wrench, dt=0.01, t_end=10.0)
        energies = trace.kinetic_energies(plant)
        initial = kinetic_energy(state, plant)
        assert np.max(np.abs(energies - initial)) < 1e-6 * initial
        norms = np.linalg.norm(trace.orientations, axis=1)
        assert np.allclose(norms, 1)

    def test_drag_dissipates(self):
        """Tests that drag strictly removes kinetic energy."""
        plant = PlantModel(SIMPLE_MASS, drag=constant_drag())
        state = BodyState(twist=[1.0, 0.2, 0, 0, 0, 0.5])
        trace = integrate(state, plant, no_wrench, dt=0.01, t_end=3.0)
        energies = trace.kinetic_energies(plant)
        assert np.all(np.diff(energies) < 0)

    def test_wrench_recorded(self):
        """Tests that the trace records the applied wrench."""
        plant = PlantModel(SIMPLE_MASS)

        def push(t, state):
            return np.array([18.0, 0, 0, 0, 0, 0])

        trace = integrate(BodyState(), plant, push, dt=0.01, t_end=1.0)
        assert np.allclose(trace.wrenches[:, 0], 18.0)
        assert np.allclose(trace.final_state.twist[0], 1.0)
        assert np.allclose(trace.final_state.position[0], 0.5)

    def test_rotated_scenario(self):
        """Tests that rotating the initial pose rotates the whole
        trajectory by the same rotation.

        """
        added = np.diag([3.0, 4.0, 5.0, 0.05, 0.06, 0.07])
        plant = plant_for_assembly(l_assembly(), added_mass=added)

        def push(t, state):
            return np.array([1.0, 0.5 * math.sin(t), -0.3, 0.02, 0.0,
                             0.05 * math.cos(t)])

        turn = Rotation.from_rotvec([0.4, -0.2, 0.9])
        start = BodyState(position=[0.1, 0.2, -0.3],
                          orientation=quat_from_euler(0.1, 0.2, 0.3),
                          twist=[0.2, -0.1, 0.05, 0.3, -0.2, 0.4])
        orientation = turn * rotation_from_quat(start.orientation)
        turned = BodyState(position=turn.apply(start.position),
                           orientation=quat_from_rotation(orientation),
                           twist=start.twist)
        base = integrate(start, plant, push, dt=0.01, t_end=2.0)
        moved = integrate(turned, plant, push, dt=0.01, t_end=2.0)
        assert np.allclose(moved.positions, turn.apply(base.positions),
                           atol=1e-9)
        assert np.allclose(moved.twists, base.twists, atol=1e-9)
        for before, after in zip(base.orientations, moved.orientations):
            expected = turn * rotation_from_quat(before)
            assert np.allclose(rotation_from_quat(after).as_matrix(),
                               expected.as_matrix(), atol=1e-9)

    def test_fourth_order(self):
        """Tests that halving the step divides the error of a tumbling body
        by about sixteen.

        """
        added = np.diag([3.0, 4.0, 5.0, 0.05, 0.06, 0.07])
        plant = plant_for_assembly(l_assembly(), added_mass=added)
        state = BodyState(twist=[0.2, -0.1, 0.05, 1.0, -0.7, 0.8])

        def final(dt):
            trace = integrate(state, plant, no_wrench, dt=dt, t_end=2.0)
            return trace.final_state.as_array()

        reference = final(1.0 / 256)
        coarse = np.linalg.norm(final(0.125) - reference)
        fine = np.linalg.norm(final(0.0625) - reference)
        assert fine > 0
        assert math.log2(coarse / fine) >= 3.5

    def test_divergence(self):
        """Tests that a non-finite state raises :exc:`DivergenceError`."""
        plant = PlantModel(SIMPLE_MASS)

        def explode(t, state):
            return np.full(6, np.inf)

        with self.assertRaises(DivergenceError) as context:
            integrate(BodyState(), plant, explode, dt=0.01, t_end=1.0)
        assert context.exception.time is not None
        assert context.exception.time <= 0.01
