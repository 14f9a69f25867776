# test_vehicle.py - unit tests for the vehicle module
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Unit tests for the :mod:`cubesub.vehicle` module."""
from unittest import TestCase

import numpy as np

from cubesub import cube_rotations
from cubesub.exceptions import ConfigurationError
from cubesub.exceptions import IllegalArgumentError
from cubesub.exceptions import StructuralError
from cubesub.helpers import skew
from cubesub.vehicle import Assembly
from cubesub.vehicle import compose_mass_properties
from cubesub.vehicle import coriolis_matrix
from cubesub.vehicle import default_thrusters
from cubesub.vehicle import l_assembly
from cubesub.vehicle import mass_matrix
from cubesub.vehicle import MassProperties
from cubesub.vehicle import merge_assemblies
from cubesub.vehicle import ModuleSpec
from cubesub.vehicle import Placement
from cubesub.vehicle import ThrusterSpec

from .helpers import line_assembly
from .helpers import single_cube


class TestModules(TestCase):
    """Tests for module and thruster specifications."""

    def test_default_module(self):
        """Tests the default cube module."""
        module = ModuleSpec()
        assert module.edge_length == 0.21
        assert module.mass == 9.0
        assert len(module.thrusters) == 12
        expected = np.eye(3) * 9.0 * 0.21 ** 2 / 6.0
        assert np.allclose(module.inertia, expected)

    def test_thrusters_inside_cube(self):
        """Tests that every default thruster sits on the surface of the
        cube with a unit direction.

        """
        for thruster in default_thrusters():
            assert np.max(np.abs(thruster.position)) <= 0.105 + 1e-12
            assert abs(np.linalg.norm(thruster.direction) - 1) < 1e-12
            assert thruster.f_min == -10.0
            assert thruster.f_max == 10.0

    def test_layout_cube_symmetric(self):
        """Tests that every rotation of the cube maps the lines of action
        of the default thrusters onto themselves.

        """
        thrusters = default_thrusters()

        def lines(rotation):
            rows = [np.r_[rotation @ t.position,
                          np.abs(rotation @ t.direction)]
                    for t in thrusters]
            rows = np.round(np.array(rows), 9)
            return rows[np.lexsort(rows.T[::-1])]

        expected = lines(np.eye(3))
        for rotation in cube_rotations():
            assert np.array_equal(lines(rotation), expected)

    def test_layout_decoupled(self):
        """Tests that the default layout separates force and torque and
        shares a pure force among the four thrusters parallel to it.

        """
        h = 0.105
        wrenches = np.array([t.wrench for t in default_thrusters()])
        gram = wrenches.T @ wrenches
        expected = np.diag([4.0, 4.0, 4.0] + [8 * h ** 2] * 3)
        assert np.allclose(gram, expected)
        for axis in range(3):
            parallel = np.abs(wrenches[:, axis]) > 0.5
            assert parallel.sum() == 4
            assert np.all(np.flatnonzero(parallel) // 4 == axis)

    def test_non_unit_direction(self):
        """Tests that a thruster direction must be a unit vector."""
        with self.assertRaises(IllegalArgumentError):
            ThrusterSpec(position=(0, 0, 0), direction=(2, 0, 0))

    def test_bad_limits(self):
        """Tests that thrust limits must bracket zero."""
        with self.assertRaises(IllegalArgumentError):
            ThrusterSpec(position=(0, 0, 0), direction=(1, 0, 0), f_min=1,
                         f_max=10)

    def test_non_monotone_command(self):
        """Tests that the command polynomial must be monotone over the
        command range.

        """
        with self.assertRaises(IllegalArgumentError):
            ThrusterSpec(position=(0, 0, 0), direction=(1, 0, 0),
                         cmd_poly=(0, 0, 10, 0, 0, 0))

    def test_bad_inertia(self):
        """Tests that module inertia must be positive definite."""
        with self.assertRaises(IllegalArgumentError):
            ModuleSpec(inertia=np.diag([1.0, 1.0, -1.0]))

    def test_thruster_wrench(self):
        """Tests the unit-thrust wrench of a thruster."""
        thruster = ThrusterSpec(position=(0, 0.1, 0), direction=(1, 0, 0))
        assert np.allclose(thruster.wrench, [1, 0, 0, 0, 0, -0.1])


class TestAssembly(TestCase):
    """Tests for the lattice invariants of :class:`Assembly`."""

    def test_empty(self):
        """Tests that an assembly needs a module."""
        with self.assertRaises(StructuralError):
            Assembly([])

    def test_overlap(self):
        """Tests that two modules cannot share a cell."""
        module = ModuleSpec()
        with self.assertRaises(StructuralError) as context:
            Assembly([Placement(module, (0, 0, 0)),
                      Placement(module, (0, 0, 0))])
        assert context.exception.cells == [(0, 0, 0)]

    def test_disconnected(self):
        """Tests that modules touching only along an edge are not
        connected.

        """
        module = ModuleSpec()
        with self.assertRaises(StructuralError) as context:
            Assembly([Placement(module, (0, 0, 0)),
                      Placement(module, (1, 1, 0))])
        assert context.exception.cells == [(1, 1, 0)]

    def test_mixed_edge_lengths(self):
        """Tests that every module of an assembly has one edge length."""
        with self.assertRaises(StructuralError):
            Assembly([Placement(ModuleSpec(), (0, 0, 0)),
                      Placement(ModuleSpec(edge_length=0.3), (1, 0, 0))])

    def test_non_cube_orientation(self):
        """Tests that a module orientation must be a cube rotation."""
        angle = np.pi / 4
        rotation = np.array([[np.cos(angle), -np.sin(angle), 0],
                             [np.sin(angle), np.cos(angle), 0],
                             [0, 0, 1]])
        with self.assertRaises(IllegalArgumentError):
            Placement(ModuleSpec(), (0, 0, 0), rotation)

    def test_thrusters(self):
        """Tests that the thrusters of an assembly are expressed in the
        assembly frame.

        """
        assembly = line_assembly(2)
        thrusters = assembly.thrusters()
        assert len(thrusters) == 24
        offset = thrusters[12].position - thrusters[0].position
        assert np.allclose(offset, [0.21, 0, 0])

    def test_merge(self):
        """Tests docking two assemblies face to face."""
        merged = merge_assemblies(single_cube(), single_cube(), (0, 0, 1))
        assert len(merged) == 2
        assert merged.cells == [(0, 0, 0), (0, 0, 1)]

    def test_merge_overlap(self):
        """Tests that merging into an occupied cell is an error."""
        with self.assertRaises(StructuralError):
            merge_assemblies(line_assembly(2), single_cube(), (1, 0, 0))

    def test_merge_disconnected(self):
        """Tests that merging without a shared face is an error."""
        with self.assertRaises(StructuralError):
            merge_assemblies(single_cube(), single_cube(), (2, 0, 0))


class TestCubeRotations(TestCase):
    """Tests for :func:`cubesub.cube_rotations`."""

    def test_count(self):
        """Tests that there are 24 distinct proper rotations."""
        rotations = cube_rotations()
        assert len(rotations) == 24
        assert np.array_equal(rotations[0], np.eye(3))
        distinct = {tuple(r.ravel()) for r in rotations}
        assert len(distinct) == 24
        for rotation in rotations:
            assert round(np.linalg.det(rotation)) == 1
            assert np.array_equal(rotation @ rotation.T, np.eye(3))


class TestMassProperties(TestCase):
    """Tests for :func:`compose_mass_properties`."""

    def test_two_modules(self):
        """Tests that two identical modules have their center of mass
        midway between the module centers.

        """
        props = compose_mass_properties(line_assembly(2))
        assert props.total_mass == 18.0
        assert np.allclose(props.com, [0.21, 0.105, 0.105])
        assert np.allclose(props.module_offsets, [[-0.105, 0, 0],
                                                  [0.105, 0, 0]])

    def test_single_module(self):
        """Tests that a single module keeps its own mass and inertia."""
        assembly = single_cube()
        module = assembly.modules[0].module
        props = compose_mass_properties(assembly)
        assert props.total_mass == module.mass
        assert np.allclose(props.com, [0.105, 0.105, 0.105])
        assert np.allclose(props.inertia, module.inertia)

    def test_parallel_axis(self):
        """Tests the parallel axis contribution of modules 0.21 m from the
        center of mass.

        Each end module of a three-module line contributes ``diag(0,
        0.3969, 0.3969)`` on top of its own inertia.

        """
        assembly = line_assembly(3)
        module = assembly.modules[0].module
        props = compose_mass_properties(assembly)
        shift = props.inertia - 3 * module.inertia
        assert np.allclose(shift, 2 * np.diag([0.0, 0.3969, 0.3969]))

    def test_translation_invariance(self):
        """Tests that translating the lattice moves the center of mass and
        leaves the inertia unchanged.

        """
        assembly = l_assembly()
        moved = assembly.translated((3, -2, 5))
        props = compose_mass_properties(assembly)
        moved_props = compose_mass_properties(moved)
        expected = props.com + 0.21 * np.array([3, -2, 5])
        assert np.allclose(moved_props.com, expected)
        assert np.allclose(moved_props.inertia, props.inertia, atol=1e-9)

    def test_rotation_conjugates_inertia(self):
        """Tests that rotating an assembly by a cube rotation conjugates
        its inertia.

        """
        inertia = np.diag([0.03, 0.05, 0.07])
        assembly = l_assembly(ModuleSpec(inertia=inertia))
        props = compose_mass_properties(assembly)
        for rotation in cube_rotations():
            rotated = compose_mass_properties(assembly.rotated(rotation))
            expected = rotation @ props.inertia @ rotation.T
            assert np.allclose(rotated.inertia, expected, atol=1e-9)

    def test_not_an_assembly(self):
        """Tests that only assemblies have mass properties."""
        with self.assertRaises(IllegalArgumentError):
            compose_mass_properties([ModuleSpec()])


class TestMassMatrix(TestCase):
    """Tests for :func:`mass_matrix` and :func:`coriolis_matrix`."""

    def setUp(self):
        self.props = MassProperties(total_mass=18.0, com=np.zeros(3),
                                    inertia=0.5 * np.eye(3),
                                    module_offsets=np.zeros((1, 3)))

    def test_block_diagonal(self):
        """Tests the mass matrix at the center of mass without added
        mass.

        """
        matrix = mass_matrix(self.props)
        assert np.allclose(matrix, np.diag([18, 18, 18, 0.5, 0.5, 0.5]))

    def test_offset(self):
        """Tests the off-diagonal blocks of a mass matrix about a point
        away from the center of mass.

        """
        r = np.array([0.105, 0.0, 0.0])
        matrix = mass_matrix(self.props, com_offset=r)
        assert np.allclose(matrix[:3, 3:], -18 * skew(r))
        assert np.allclose(matrix[3:, :3], 18 * skew(r))
        assert np.allclose(matrix, matrix.T)

    def test_added_mass(self):
        """Tests that a symmetric positive semidefinite added mass is
        added to the rigid-body matrix.

        """
        added = np.diag([1.0, 2.0, 3.0, 0.0, 0.0, 0.0])
        matrix = mass_matrix(self.props, added)
        assert np.allclose(np.diag(matrix), [19, 20, 21, 0.5, 0.5, 0.5])

    def test_bad_added_mass(self):
        """Tests that asymmetric or indefinite added mass is rejected."""
        asymmetric = np.zeros((6, 6))
        asymmetric[0, 1] = 1.0
        with self.assertRaises(ConfigurationError):
            mass_matrix(self.props, asymmetric)
        with self.assertRaises(ConfigurationError):
            mass_matrix(self.props, -np.eye(6))

    def test_coriolis_zero_twist(self):
        """Tests that the Coriolis matrix vanishes at rest."""
        matrix = coriolis_matrix(self.props, None, np.zeros(6))
        assert np.array_equal(matrix, np.zeros((6, 6)))

    def test_coriolis_translation(self):
        """Tests the top-right block for a pure translation."""
        v = np.array([1.0, 0.0, 0.0])
        matrix = coriolis_matrix(self.props, None, np.concatenate([v,
                                                                   [0] * 3]))
        assert np.allclose(matrix[:3, 3:], -18 * skew(v))

    def test_coriolis_skew_symmetric(self):
        """Tests that the Coriolis matrix is skew-symmetric and does no
        work, even with added mass and an offset reference point.

        """
        rng = np.random.default_rng(3)
        props = compose_mass_properties(l_assembly())
        added = np.diag([2.0, 3.0, 4.0, 0.1, 0.2, 0.3])
        for _ in range(20):
            twist = rng.normal(size=6)
            matrix = coriolis_matrix(props, added, twist,
                                     com_offset=(0.01, -0.02, 0.03))
            assert np.allclose(matrix + matrix.T, 0, atol=1e-12)
            assert abs(twist @ matrix @ twist) < 1e-9
