# morphology.py - surface energies of capability spaces
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Surface energies that score the shape of a wrench or power space.

A space is turned into a closed triangle mesh, a :class:`RadialSurface`,
whose vertex ``i`` is the direction ``p_i`` scaled by the radius ``r_i``
and whose faces are those of the convex hull of the unit directions.

:func:`willmore_energy` measures the bending of that mesh with discrete
mean and Gaussian curvatures, and :func:`dirichlet_energy` measures the
roughness of the radius function through its real spherical harmonic
spectrum.

"""
from dataclasses import dataclass
import logging
import math

import numpy as np
from scipy import sparse
from scipy.spatial import ConvexHull

try:
    from scipy.special import sph_harm_y
except ImportError:
    from scipy.special import sph_harm

    def sph_harm_y(degree, order, polar, azimuth):
        return sph_harm(order, degree, azimuth, polar)

from .exceptions import ConditioningError
from .exceptions import DegeneracyError
from .exceptions import IllegalArgumentError
from .exceptions import TopologyError
from .hydro import DirectionSet

logger = logging.getLogger(__name__)

#: Default maximum spherical harmonic degree.
DEFAULT_L_MAX = 10

#: Largest fraction of zero radii accepted by :func:`radial_surface`.
MAX_ZERO_FRACTION = 0.5

#: Largest condition number accepted for the spherical harmonic fit.
MAX_CONDITION_NUMBER = 1e10


def _edges(faces):
    edges = np.concatenate([faces[:, [0, 1]], faces[:, [1, 2]],
                            faces[:, [2, 0]]])
    return edges


def check_closed(faces, n_vertices):
    """Raises :exc:`TopologyError` unless the triangles `faces` form a
    closed, consistently oriented surface of Euler characteristic two over
    `n_vertices` vertices.

    """
    faces = np.asarray(faces)
    directed = _edges(faces)
    undirected = np.sort(directed, axis=1)
    _, counts = np.unique(undirected, axis=0, return_counts=True)
    if np.any(counts != 2):
        raise TopologyError('mesh has boundary or non-manifold edges')
    if len(np.unique(directed, axis=0)) != len(directed):
        raise TopologyError('mesh is not consistently oriented')
    euler = n_vertices - len(counts) + len(faces)
    if euler != 2:
        raise TopologyError('mesh has Euler characteristic {0}, not'
                            ' 2'.format(euler))


def _outward_faces(directions):
    hull = ConvexHull(directions)
    faces = hull.simplices.copy()
    corners = directions[faces]
    normals = np.cross(corners[:, 1] - corners[:, 0],
                       corners[:, 2] - corners[:, 0])
    inward = np.einsum('ij,ij->i', normals, corners.mean(axis=1)) < 0
    faces[inward] = faces[inward][:, [0, 2, 1]]
    return faces


@dataclass(frozen=True, eq=False)
class RadialSurface(object):
    """A closed triangle mesh with vertex ``i`` at ``radii[i] *
    directions[i]``.

    `faces` is an ``m × 3`` integer array of outward-oriented triangles.

    """
    direction_set: DirectionSet
    radii: np.ndarray
    faces: np.ndarray

    def __post_init__(self):
        radii = np.asarray(self.radii, dtype=float)
        if radii.shape != (len(self.direction_set), ):
            raise IllegalArgumentError('expected one radius per direction')
        if not np.all(np.isfinite(radii)):
            raise IllegalArgumentError('radii must be finite')
        faces = np.asarray(self.faces, dtype=int)
        check_closed(faces, len(radii))
        object.__setattr__(self, 'radii', radii)
        object.__setattr__(self, 'faces', faces)

    @property
    def vertices(self):
        return self.radii[:, np.newaxis] * self.direction_set.directions

    @property
    def euler_characteristic(self):
        edges = np.unique(np.sort(_edges(self.faces), axis=1), axis=0)
        return len(self.radii) - len(edges) + len(self.faces)


def radial_surface(space, radii=None):
    """Returns the :class:`RadialSurface` of `space`, a wrench or power
    space (anything with a ``direction_set`` and ``radii``).

    Raises :exc:`DegeneracyError` if more than half of the radii are zero.

    """
    directions = space.direction_set
    radii = np.asarray(space.radii if radii is None else radii, dtype=float)
    if len(directions) < 4:
        raise IllegalArgumentError('at least four directions are required')
    zeros = np.count_nonzero(radii == 0)
    if zeros > MAX_ZERO_FRACTION * len(radii):
        raise DegeneracyError('{0} of {1} radii are zero'.format(zeros,
                                                                 len(radii)))
    faces = _outward_faces(directions.directions)
    return RadialSurface(direction_set=directions, radii=radii, faces=faces)


def sphere_surface(directions, radius=1.0):
    """Returns the :class:`RadialSurface` of a sphere of `radius` sampled
    at `directions`.

    """
    if not isinstance(directions, DirectionSet):
        directions = DirectionSet(directions)
    radii = np.full(len(directions), float(radius))
    return RadialSurface(directions, radii,
                         _outward_faces(directions.directions))


@dataclass(frozen=True, eq=False)
class WillmoreEnergy(object):
    """Discrete Willmore energy of a surface.

    `energy` is ``bending - gauss`` where `bending` is ``Σ H_i² a_i`` and
    `gauss` is ``Σ K_i a_i``. `mean_curvature` is signed by the outward
    normal, and `vertex_area` holds the mixed Voronoi areas ``a_i``.

    """
    energy: float
    bending: float
    gauss: float
    mean_curvature: np.ndarray
    gaussian_curvature: np.ndarray
    vertex_area: np.ndarray


def _corner_geometry(vertices, faces):
    """Returns per-face areas and, for each corner, the angle and its
    cotangent, each as an ``m × 3`` array.

    """
    corners = vertices[faces]
    angles = np.empty(faces.shape)
    cotangents = np.empty(faces.shape)
    for c in range(3):
        u = corners[:, (c + 1) % 3] - corners[:, c]
        v = corners[:, (c + 2) % 3] - corners[:, c]
        cross = np.linalg.norm(np.cross(u, v), axis=1)
        dot = np.einsum('ij,ij->i', u, v)
        angles[:, c] = np.arctan2(cross, dot)
        with np.errstate(divide='ignore', invalid='ignore'):
            cotangents[:, c] = dot / cross
    areas = 0.5 * np.linalg.norm(
        np.cross(corners[:, 1] - corners[:, 0],
                 corners[:, 2] - corners[:, 0]), axis=1)
    return areas, angles, cotangents


def _mixed_areas(vertices, faces, areas, angles, cotangents):
    n = len(vertices)
    mixed = np.zeros(n)
    obtuse = angles > math.pi / 2
    for c in range(3):
        i = faces[:, c]
        j = faces[:, (c + 1) % 3]
        k = faces[:, (c + 2) % 3]
        ij = np.sum((vertices[j] - vertices[i]) ** 2, axis=1)
        ik = np.sum((vertices[k] - vertices[i]) ** 2, axis=1)
        voronoi = (ik * cotangents[:, (c + 1) % 3]
                   + ij * cotangents[:, (c + 2) % 3]) / 8.0
        share = np.where(obtuse.any(axis=1),
                         np.where(obtuse[:, c], areas / 2.0, areas / 4.0),
                         voronoi)
        np.add.at(mixed, i, share)
    return mixed


def cotangent_laplacian(vertices, faces, cotangents):
    """Returns the sparse cotangent Laplacian ``L`` with
    ``(L x)_i = Σ_j (cot α_ij + cot β_ij)(x_i - x_j)``.

    """
    n = len(vertices)
    rows, cols, weights = [], [], []
    for c in range(3):
        j = faces[:, (c + 1) % 3]
        k = faces[:, (c + 2) % 3]
        w = cotangents[:, c]
        rows.extend([j, k, j, k])
        cols.extend([k, j, j, k])
        weights.extend([-w, -w, w, w])
    matrix = sparse.coo_matrix((np.concatenate(weights),
                                (np.concatenate(rows),
                                 np.concatenate(cols))), shape=(n, n))
    return matrix.tocsr()


def willmore_energy(surface, full_output=False):
    """Returns the discrete Willmore energy ``Σ H_i² a_i - Σ K_i a_i`` of
    `surface`.

    The mean curvature ``H_i`` is half the norm of the cotangent mean
    curvature normal divided by the mixed Voronoi area ``a_i``, and the
    Gaussian curvature ``K_i`` is the angle defect divided by ``a_i``.
    Triangles of zero area are ignored. With `full_output`, a
    :class:`WillmoreEnergy` is returned.

    """
    faces = np.asarray(surface.faces)
    vertices = surface.vertices
    check_closed(faces, len(vertices))
    areas, angles, cotangents = _corner_geometry(vertices, faces)
    valid = areas > 1e-14 * max(1.0, areas.max(initial=0.0))
    faces, areas = faces[valid], areas[valid]
    angles, cotangents = angles[valid], cotangents[valid]
    mixed = _mixed_areas(vertices, faces, areas, angles, cotangents)
    laplacian = cotangent_laplacian(vertices, faces, cotangents)
    curvature_normal = laplacian @ vertices
    angle_sums = np.zeros(len(vertices))
    for c in range(3):
        np.add.at(angle_sums, faces[:, c], angles[:, c])
    defects = 2.0 * math.pi - angle_sums
    # Outward vertex normals, weighted by face area.
    face_normals = np.cross(vertices[faces[:, 1]] - vertices[faces[:, 0]],
                            vertices[faces[:, 2]] - vertices[faces[:, 0]])
    normals = np.zeros_like(vertices)
    for c in range(3):
        np.add.at(normals, faces[:, c], face_normals)
    present = mixed > 0
    mean = np.zeros(len(vertices))
    gaussian = np.zeros(len(vertices))
    norms = np.linalg.norm(curvature_normal, axis=1)
    signs = np.sign(np.einsum('ij,ij->i', curvature_normal, normals))
    signs[signs == 0] = 1.0
    mean[present] = (signs * norms)[present] / (4.0 * mixed[present])
    gaussian[present] = defects[present] / mixed[present]
    bending = float(np.sum(mean[present] ** 2 * mixed[present]))
    gauss = float(np.sum(defects[present]))
    energy = bending - gauss
    logger.debug('Willmore energy %.6g (bending %.6g, total curvature %.6g)',
                 energy, bending, gauss)
    if full_output:
        return WillmoreEnergy(energy=energy, bending=bending, gauss=gauss,
                              mean_curvature=mean,
                              gaussian_curvature=gaussian,
                              vertex_area=mixed)
    return energy


def harmonic_index(degree, order):
    """Returns the column of the real harmonic ``(degree, order)`` in the
    basis of :func:`harmonic_basis`.

    """
    return degree * degree + degree + order


def real_sph_harm(degree, order, directions):
    """Returns the real orthonormal spherical harmonic of `degree` and
    `order` evaluated at the unit vectors `directions`.

    """
    directions = np.asarray(directions, dtype=float).reshape(-1, 3)
    polar = np.arccos(np.clip(directions[:, 2], -1.0, 1.0))
    azimuth = np.arctan2(directions[:, 1], directions[:, 0])
    value = sph_harm_y(degree, abs(order), polar, azimuth)
    if order > 0:
        return math.sqrt(2.0) * (-1) ** order * value.real
    if order < 0:
        return math.sqrt(2.0) * (-1) ** order * value.imag
    return value.real


def harmonic_basis(directions, l_max=DEFAULT_L_MAX):
    """Returns the ``n × (l_max + 1)²`` matrix of real orthonormal spherical
    harmonics up to degree `l_max` at `directions`.

    """
    directions = np.asarray(directions, dtype=float).reshape(-1, 3)
    columns = [real_sph_harm(l, m, directions)
               for l in range(l_max + 1) for m in range(-l, l + 1)]
    return np.column_stack(columns)


@dataclass(frozen=True, eq=False)
class DirichletEnergy(object):
    """Spherical harmonic Dirichlet energy of a radius function.

    `coefficients` maps ``(l, m)`` to the fitted coefficient ``a_{l,m}``.

    """
    energy: float
    coefficients: dict
    condition_number: float
    l_max: int

    def spectrum(self):
        """Returns ``Σ_m a_{l,m}²`` for each degree ``l``."""
        power = np.zeros(self.l_max + 1)
        for (l, _), a in self.coefficients.items():
            power[l] += a * a
        return power


def dirichlet_energy(directions, radii, l_max=DEFAULT_L_MAX,
                     full_output=False):
    """Returns ``Σ_l Σ_m l (l + 1) a_{l,m}²`` where ``a`` are the least
    squares coefficients of `radii` in real orthonormal spherical harmonics
    up to degree `l_max`.

    Raises :exc:`ConditioningError` when the harmonic matrix is rank
    deficient or too badly conditioned. With `full_output`, a
    :class:`DirichletEnergy` is returned.

    """
    if isinstance(directions, DirectionSet):
        directions = directions.directions
    directions = np.asarray(directions, dtype=float)
    radii = np.asarray(radii, dtype=float)
    if len(radii) != len(directions):
        raise IllegalArgumentError('expected one radius per direction')
    size = (l_max + 1) ** 2
    if len(directions) < size:
        raise ConditioningError('{0} directions cannot determine {1}'
                                ' harmonic coefficients'.format(
                                    len(directions), size),
                                condition_number=math.inf)
    basis = harmonic_basis(directions, l_max)
    coefficients, _, rank, singular = np.linalg.lstsq(basis, radii,
                                                      rcond=None)
    condition = (float(singular[0] / singular[-1]) if singular[-1] > 0
                 else math.inf)
    if rank < size or condition > MAX_CONDITION_NUMBER:
        raise ConditioningError('harmonic fit is rank deficient (rank {0} of'
                                ' {1})'.format(rank, size),
                                condition_number=condition)
    degrees = np.array([l for l in range(l_max + 1)
                        for _ in range(-l, l + 1)])
    energy = float(np.sum(degrees * (degrees + 1) * coefficients ** 2))
    logger.debug('Dirichlet energy %.6g, condition number %.3g', energy,
                 condition)
    if full_output:
        keys = [(l, m) for l in range(l_max + 1) for m in range(-l, l + 1)]
        return DirichletEnergy(energy=energy,
                               coefficients=dict(zip(keys, coefficients)),
                               condition_number=condition, l_max=l_max)
    return energy
