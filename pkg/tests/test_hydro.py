# test_hydro.py - unit tests for the hydro module
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Unit tests for the :mod:`cubesub.hydro` module."""
from unittest import TestCase

import numpy as np

from cubesub.exceptions import IllegalArgumentError
from cubesub.hydro import alpha_shape_area
from cubesub.hydro import build_drag_lut
from cubesub.hydro import DirectionSet
from cubesub.hydro import DragLUT
from cubesub.hydro import fibonacci_directions
from cubesub.hydro import projected_area
from cubesub.hydro import query_drag
from cubesub.hydro import rotation_to_z
from cubesub.hydro import sample_body_points

from .helpers import line_assembly
from .helpers import single_cube


def cube_projection(direction, length=0.21):
    """Returns the area of the shadow of a cube of edge `length` along
    the unit vector `direction`.

    """
    return np.abs(direction).sum() * length ** 2


def unit_lut(area=1.0):
    """Returns a drag table with the same frontal `area` in every
    direction.

    """
    directions = fibonacci_directions(50)
    return DragLUT(direction_set=directions,
                   frontal_area=np.full(len(directions), area), rho=1000.0,
                   c_d=1.05)


class TestDirections(TestCase):
    """Tests for :func:`fibonacci_directions` and
    :func:`rotation_to_z`.

    """

    def test_first_direction(self):
        """Tests that the first Fibonacci direction is the north pole."""
        directions = fibonacci_directions(200)
        assert len(directions) == 200
        assert np.allclose(directions.directions[0], [0, 0, 1])

    def test_unit_and_distinct(self):
        """Tests that the directions are distinct unit vectors."""
        directions = fibonacci_directions(500).directions
        assert np.allclose(np.linalg.norm(directions, axis=1), 1)
        distances = directions @ directions.T - 2 * np.eye(500)
        assert distances.max() < 1 - 1e-6

    def test_roughly_uniform(self):
        """Tests that the directions are balanced about the origin."""
        directions = fibonacci_directions(1000).directions
        assert np.linalg.norm(directions.mean(axis=0)) < 0.01

    def test_bad_count(self):
        """Tests that the number of directions must be positive."""
        with self.assertRaises(IllegalArgumentError):
            fibonacci_directions(0)
        with self.assertRaises(IllegalArgumentError):
            fibonacci_directions(2.5)

    def test_not_unit(self):
        """Tests that a direction set holds unit vectors."""
        with self.assertRaises(IllegalArgumentError):
            DirectionSet([[1.0, 1.0, 0.0]])

    def test_rotation_to_z(self):
        """Tests that :func:`rotation_to_z` takes every direction to the
        ``z`` axis with a proper rotation.

        """
        for direction in fibonacci_directions(100):
            rotation = rotation_to_z(direction)
            assert np.allclose(rotation @ direction, [0, 0, 1])
            assert np.allclose(rotation @ rotation.T, np.eye(3))
            assert abs(np.linalg.det(rotation) - 1) < 1e-9

    def test_rotation_to_z_poles(self):
        """Tests the two special cases of :func:`rotation_to_z`."""
        assert np.array_equal(rotation_to_z([0, 0, 1]), np.eye(3))
        assert np.array_equal(rotation_to_z([0, 0, -1]),
                              np.diag([1.0, -1.0, -1.0]))


class TestProjectedArea(TestCase):
    """Tests for :func:`projected_area`."""

    @classmethod
    def setUpClass(cls):
        cls.points = sample_body_points(single_cube(), 100000, seed=0)

    def test_sampling_deterministic(self):
        """Tests that the same seed gives the same points."""
        first = sample_body_points(single_cube(), 1000, seed=7)
        second = sample_body_points(single_cube(), 1000, seed=7)
        assert np.array_equal(first, second)
        assert first.shape == (1000, 3)
        assert first.min() >= 0 and first.max() <= 0.21

    def test_axis_face(self):
        """Tests the area of one face of the cube."""
        area = projected_area(self.points, (1, 0, 0), edge_length=0.21)
        assert abs(area - 0.21 ** 2) < 0.03 * 0.21 ** 2

    def test_corner(self):
        """Tests the hexagonal shadow seen along a body diagonal."""
        direction = np.ones(3) / np.sqrt(3)
        area = projected_area(self.points, direction, edge_length=0.21)
        expected = cube_projection(direction)
        assert abs(area - expected) < 0.03 * expected

    def test_analytic_projection(self):
        """Tests the frontal area of the cube against its analytic shadow
        on a hundred directions.

        """
        for direction in fibonacci_directions(100):
            area = projected_area(self.points, direction, edge_length=0.21)
            expected = cube_projection(direction)
            assert abs(area - expected) < 0.03 * expected

    def test_symmetry(self):
        """Tests that opposite directions see the same area."""
        for direction in fibonacci_directions(10):
            forward = projected_area(self.points, direction,
                                     edge_length=0.21)
            backward = projected_area(self.points, -direction,
                                      edge_length=0.21)
            assert abs(forward - backward) < 0.01 * forward

    def test_two_modules_broadside(self):
        """Tests the broadside area of a two-module line."""
        points = sample_body_points(line_assembly(2), 50000, seed=1)
        area = projected_area(points, (0, 1, 0), edge_length=0.21)
        expected = 2 * 0.21 ** 2
        assert abs(area - expected) < 0.03 * expected

    def test_concave_silhouette(self):
        """Tests that the notch of an L-shaped silhouette is not filled
        in, as a convex hull would do.

        """
        from cubesub.vehicle import l_assembly

        points = sample_body_points(l_assembly(), 50000, seed=2)
        area = projected_area(points, (0, 0, 1), edge_length=0.21)
        expected = 3 * 0.21 ** 2
        assert abs(area - expected) < 0.03 * expected

    def test_collinear(self):
        """Tests that a collinear projection has zero area and a
        warning.

        """
        points = np.column_stack([np.zeros(10), np.zeros(10),
                                  np.linspace(0, 1, 10)])
        area, warning = projected_area(points, (0, 0, 1), alpha=1.0,
                                       full_output=True)
        assert area == 0.0
        assert warning is not None

    def test_too_few_points(self):
        """Tests that an area needs three points."""
        with self.assertRaises(IllegalArgumentError):
            projected_area(np.zeros((2, 3)), (0, 0, 1))

    def test_small_cloud(self):
        """Tests that clouds of three points fall back to their convex
        hull.

        """
        triangle = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
        assert abs(alpha_shape_area(triangle, 0.1) - 0.5) < 1e-12


class TestDragLUT(TestCase):
    """Tests for :func:`build_drag_lut` and :func:`query_drag`."""

    def test_deterministic(self):
        """Tests that a table depends only on its seed and sizes."""
        first = build_drag_lut(single_cube(), n_s=20, samples=2000, seed=4)
        second = build_drag_lut(single_cube(), n_s=20, samples=2000, seed=4,
                                workers=3)
        assert np.array_equal(first.frontal_area, second.frontal_area)
        assert first.n_s == 20
        assert first.seed == 4
        assert first.samples == 2000

    def test_bad_parameters(self):
        """Tests that density and drag coefficient must be positive."""
        with self.assertRaises(IllegalArgumentError):
            build_drag_lut(single_cube(), n_s=4, samples=100, rho=0)

    def test_zero_twist(self):
        """Tests that a body at rest feels no drag."""
        wrench = query_drag(unit_lut(), np.zeros(6))
        assert np.array_equal(wrench, np.zeros(6))

    def test_quadratic_force(self):
        """Tests the drag force on a unit area moving at 1 m/s."""
        wrench = query_drag(unit_lut(), [1, 0, 0, 0, 0, 0])
        assert np.allclose(wrench, [-525, 0, 0, 0, 0, 0])

    def test_speed_doubling(self):
        """Tests that doubling the speed quadruples the force."""
        lut = build_drag_lut(single_cube(), n_s=50, samples=4000)
        direction = np.array([0.3, -0.5, 0.8])
        slow = query_drag(lut, np.concatenate([direction, np.zeros(3)]))
        fast = query_drag(lut, np.concatenate([2 * direction, np.zeros(3)]))
        assert np.allclose(fast, 4 * slow)

    def test_rotational_drag(self):
        """Tests that rotational drag opposes the rotation with the
        documented speed scaling.

        """
        wrench = query_drag(unit_lut(), [0, 0, 0, 0, 0, 2.0])
        assert np.allclose(wrench[:3], 0)
        assert np.allclose(wrench[3:], [0, 0, -525 * 2 ** (5 / 3)])

    def test_dissipative(self):
        """Tests that drag never does positive work and grows with
        speed.

        """
        lut = build_drag_lut(single_cube(), n_s=50, samples=4000)
        rng = np.random.default_rng(0)
        for _ in range(50):
            twist = rng.normal(size=6)
            wrench = query_drag(lut, twist)
            assert wrench @ twist < 0
            faster = query_drag(lut, 1.5 * twist)
            assert np.linalg.norm(faster) > np.linalg.norm(wrench)

    def test_interpolation(self):
        """Tests that table entries are returned exactly and that other
        directions interpolate between neighbors.

        """
        lut = build_drag_lut(single_cube(), n_s=50, samples=4000)
        areas = lut.frontal_area
        for direction, area in zip(lut.direction_set, areas):
            assert lut.area(direction) == area
        between = np.array([0.2, 0.4, 0.6])
        between /= np.linalg.norm(between)
        area = lut.area(between)
        assert areas.min() <= area <= areas.max()

    def test_inverse_distance_weighting(self):
        """Tests that a direction off the table is the inverse distance
        weighted mean of its three nearest entries.

        """
        axes = DirectionSet(np.vstack([np.eye(3), -np.eye(3)]))
        lut = DragLUT(direction_set=axes,
                      frontal_area=[1.0, 2.0, 3.0, 4.0, 5.0, 6.0])
        assert abs(lut.area(np.ones(3) / np.sqrt(3)) - 2.0) < 1e-12
        direction = np.array([3.0, 1.0, 1.0]) / np.sqrt(11)
        distances = np.linalg.norm(np.eye(3) - direction, axis=1)
        weights = 1 / distances
        expected = weights @ [1.0, 2.0, 3.0] / weights.sum()
        assert abs(lut.area(direction) - expected) < 1e-12

    def test_bad_areas(self):
        """Tests that a table needs one positive area per direction."""
        with self.assertRaises(IllegalArgumentError):
            DragLUT(direction_set=fibonacci_directions(4),
                    frontal_area=[1.0, 1.0, 0.0, 1.0])
        with self.assertRaises(IllegalArgumentError):
            DragLUT(direction_set=fibonacci_directions(4),
                    frontal_area=[1.0, 1.0])
