# test_morphology.py - unit tests for the morphology module
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Unit tests for the :mod:`cubesub.morphology` module."""
import math
from unittest import TestCase

import numpy as np
from scipy.integrate import quad
from scipy.spatial.transform import Rotation

from cubesub.capability import reachable_wrench_space
from cubesub.capability import WrenchSpace
from cubesub.control import build_allocation
from cubesub.exceptions import ConditioningError
from cubesub.exceptions import DegeneracyError
from cubesub.exceptions import IllegalArgumentError
from cubesub.exceptions import TopologyError
from cubesub.hydro import fibonacci_directions
from cubesub.morphology import check_closed
from cubesub.morphology import dirichlet_energy
from cubesub.morphology import harmonic_basis
from cubesub.morphology import radial_surface
from cubesub.morphology import real_sph_harm
from cubesub.morphology import sphere_surface
from cubesub.morphology import willmore_energy

from .helpers import single_cube

#: A regular tetrahedron and its outward faces.
TETRAHEDRON = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]],
                       dtype=float) / math.sqrt(3)
TETRAHEDRON_FACES = np.array([[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]])


class TestTopology(TestCase):
    """Tests for :func:`check_closed` and :func:`radial_surface`."""

    def test_tetrahedron(self):
        """Tests that a tetrahedron is a closed surface."""
        check_closed(TETRAHEDRON_FACES, 4)

    def test_open(self):
        """Tests that a single triangle has a boundary."""
        with self.assertRaises(TopologyError):
            check_closed([[0, 1, 2]], 3)

    def test_inconsistent_orientation(self):
        """Tests that a flipped face is detected."""
        faces = TETRAHEDRON_FACES.copy()
        faces[3] = [1, 2, 3]
        with self.assertRaises(TopologyError):
            check_closed(faces, 4)

    def test_extra_vertex(self):
        """Tests that an unused vertex changes the Euler characteristic."""
        with self.assertRaises(TopologyError):
            check_closed(TETRAHEDRON_FACES, 5)

    def test_wrench_space_surface(self):
        """Tests the surface of the force space of the default module."""
        model = build_allocation(single_cube())
        space = reachable_wrench_space(model, n_s=60)
        surface = radial_surface(space)
        assert surface.euler_characteristic == 2
        assert np.allclose(surface.vertices, space.boundary_points())

    def test_outward_faces(self):
        """Tests that every face of a sphere points away from the
        origin.

        """
        surface = sphere_surface(fibonacci_directions(100))
        corners = surface.vertices[surface.faces]
        normals = np.cross(corners[:, 1] - corners[:, 0],
                           corners[:, 2] - corners[:, 0])
        centers = corners.mean(axis=1)
        assert np.all(np.einsum('ij,ij->i', normals, centers) > 0)

    def test_mostly_zero(self):
        """Tests that a space with mostly zero radii is degenerate."""
        extents = np.ones(100)
        extents[:60] = 0
        space = WrenchSpace(mode='force',
                            direction_set=fibonacci_directions(100),
                            extents=extents)
        with self.assertRaises(DegeneracyError):
            radial_surface(space)

    def test_half_zero(self):
        """Tests that exactly half of the radii may be zero."""
        extents = np.ones(100)
        extents[:50] = 0
        space = WrenchSpace(mode='force',
                            direction_set=fibonacci_directions(100),
                            extents=extents)
        surface = radial_surface(space)
        assert surface.euler_characteristic == 2


class TestWillmoreEnergy(TestCase):
    """Tests for :func:`willmore_energy`."""

    def test_sphere(self):
        """Tests that a finely sampled sphere has nearly zero energy and a
        total curvature of 4π.

        """
        surface = sphere_surface(fibonacci_directions(2000))
        result = willmore_energy(surface, full_output=True)
        assert abs(result.gauss - 4 * math.pi) < 1e-9
        assert abs(result.energy) < 0.5
        assert np.all(result.vertex_area > 0)
        assert abs(result.vertex_area.sum() - 4 * math.pi) < 0.1
        assert np.allclose(np.median(result.mean_curvature), 1, atol=0.05)

    def test_scale_invariant(self):
        """Tests that scaling a surface leaves its energy unchanged."""
        directions = fibonacci_directions(300)
        small = willmore_energy(sphere_surface(directions, 1.0))
        large = willmore_energy(sphere_surface(directions, 5.0))
        assert abs(small - large) < 1e-9

    def test_wrench_space(self):
        """Tests that a faceted wrench space bends more than a sphere."""
        directions = fibonacci_directions(300)
        model = build_allocation(single_cube())
        space = reachable_wrench_space(model, directions=directions)
        bumpy = willmore_energy(radial_surface(space))
        smooth = willmore_energy(sphere_surface(directions))
        assert bumpy > smooth

    def test_prolate_spheroid(self):
        """Tests a spheroid with axes 2:1:1 against the energy integrated
        from its principal curvatures, with the error falling as the mesh
        is refined.

        """

        def integrand(theta):
            # Meridian and parallel curvatures of the spheroid.
            stretch = 1.0 + 3.0 * math.sin(theta) ** 2
            meridian = 2.0 / stretch ** 1.5
            parallel = 2.0 / stretch ** 0.5
            area = 2 * math.pi * math.sin(theta) * math.sqrt(stretch)
            return (meridian - parallel) ** 2 / 4 * area

        expected = quad(integrand, 0, math.pi)[0]
        assert 2.5 < expected < 3.5

        def error(count):
            directions = fibonacci_directions(count)
            d = directions.directions
            radii = 1 / np.sqrt(d[:, 0] ** 2 + d[:, 1] ** 2
                                + d[:, 2] ** 2 / 4)
            space = WrenchSpace(mode='force', direction_set=directions,
                                extents=radii)
            surface = radial_surface(space)
            result = willmore_energy(surface, full_output=True)
            assert abs(result.gauss - 4 * math.pi) < 1e-9
            return abs(result.energy - expected)

        coarse = error(1000)
        fine = error(8000)
        assert fine < coarse
        assert fine < 0.2 * expected


class TestDirichletEnergy(TestCase):
    """Tests for :func:`dirichlet_energy` and the spherical harmonic
    basis.

    """

    def setUp(self):
        self.directions = fibonacci_directions(500)

    def test_low_degree_harmonics(self):
        """Tests the values of the first real harmonics."""
        x = [[1.0, 0.0, 0.0]]
        dipole = math.sqrt(3 / (4 * math.pi))
        z = [[0.0, 0.0, 1.0]]
        assert np.allclose(real_sph_harm(0, 0, x), 1 / math.sqrt(4 * math.pi))
        assert np.allclose(real_sph_harm(1, 0, z), dipole)
        assert np.allclose(real_sph_harm(1, 1, x), dipole)
        assert np.allclose(real_sph_harm(1, -1, x), 0)

    def test_basis_orthonormal(self):
        """Tests that the basis is nearly orthonormal over a fine, nearly
        uniform sampling.

        """
        directions = fibonacci_directions(4000).directions
        basis = harmonic_basis(directions, l_max=4)
        gram = basis.T @ basis * 4 * math.pi / len(directions)
        assert basis.shape == (4000, 25)
        assert np.allclose(gram, np.eye(25), atol=0.02)

    def test_constant(self):
        """Tests that a sphere has zero energy."""
        energy = dirichlet_energy(self.directions, np.full(500, 3.0))
        assert abs(energy) < 1e-12

    def test_single_harmonic(self):
        """Tests the energy of one degree-one harmonic with coefficient
        0.1.

        """
        radii = 1 + 0.1 * real_sph_harm(1, 0, self.directions.directions)
        result = dirichlet_energy(self.directions, radii, full_output=True)
        assert abs(result.energy - 0.02) < 1e-4
        spectrum = result.spectrum()
        assert len(spectrum) == 11
        assert abs(spectrum[1] - 0.01) < 1e-6
        assert abs(result.coefficients[(0, 0)]
                   - math.sqrt(4 * math.pi)) < 1e-6
        assert result.condition_number < 1e3

    def test_higher_harmonic(self):
        """Tests that ``1 + ε Y₅³`` has energy ``30 ε²``."""
        epsilon = 0.05
        radii = 1 + epsilon * real_sph_harm(5, 3, self.directions.directions)
        result = dirichlet_energy(self.directions, radii, full_output=True)
        assert abs(result.energy - 30 * epsilon ** 2) < 1e-9
        assert abs(result.coefficients[(5, 3)] - epsilon) < 1e-10

    def test_rotation_invariant(self):
        """Tests that rotating a band-limited radius function leaves its
        energy unchanged.

        """
        rng = np.random.default_rng(9)
        coefficients = np.zeros(121)
        coefficients[0] = 4.0
        coefficients[1:36] = 0.05 * rng.normal(size=35)
        directions = self.directions.directions
        turn = Rotation.from_rotvec([0.5, -1.2, 0.8])
        radii = harmonic_basis(directions) @ coefficients
        turned = harmonic_basis(turn.inv().apply(directions)) @ coefficients
        energy = dirichlet_energy(directions, radii)
        assert energy > 0
        assert abs(dirichlet_energy(directions, turned) - energy) \
            < 1e-8 * energy

    def test_scaling(self):
        """Tests that scaling the radii by ``c`` scales the energy by
        ``c²``.

        """
        model = build_allocation(single_cube())
        space = reachable_wrench_space(model, directions=self.directions)
        energy = dirichlet_energy(self.directions, space.radii)
        scaled = dirichlet_energy(self.directions, 3 * space.radii)
        assert energy > 0
        assert abs(scaled - 9 * energy) < 1e-9 * scaled

    def test_too_few_directions(self):
        """Tests that a fit needs at least as many directions as
        coefficients.

        """
        directions = fibonacci_directions(50)
        with self.assertRaises(ConditioningError) as context:
            dirichlet_energy(directions, np.ones(50), l_max=10)
        assert context.exception.condition_number == math.inf

    def test_mismatched_radii(self):
        """Tests that there must be one radius per direction."""
        with self.assertRaises(IllegalArgumentError):
            dirichlet_energy(self.directions, np.ones(10))
