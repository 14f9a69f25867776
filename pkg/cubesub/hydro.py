# hydro.py - direction-indexed drag lookup tables
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Monte Carlo approximation of the frontal area of an assembly and the
drag lookup table built from it.

The frontal area of an assembly along a flow direction ``d`` is estimated
by sampling points uniformly inside every module, rotating the point cloud
so that ``d`` becomes the ``z`` axis, dropping the ``z`` coordinate and
measuring the area of the α-shape of the resulting planar cloud. Repeating
this for every direction of a Fibonacci sphere gives a :class:`DragLUT`,
which :func:`query_drag` turns into a drag wrench for any body twist.

"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
import logging
import math

import numpy as np
from scipy.spatial import cKDTree
from scipy.spatial import ConvexHull
from scipy.spatial import Delaunay
from scipy.spatial import QhullError
from shapely.geometry import MultiPoint

from .exceptions import IllegalArgumentError
from .helpers import as_vector
from .helpers import skew
from .vehicle import DEFAULT_WATER_DENSITY

logger = logging.getLogger(__name__)

#: Default drag coefficient of a bluff cube.
DEFAULT_DRAG_COEFFICIENT = 1.05

#: Default number of directions in a drag lookup table.
DEFAULT_DIRECTIONS = 200

#: Exponent applied to the angular rate in the rotational drag law.
ROTATIONAL_DRAG_EXPONENT = 5.0 / 3.0

#: Number of neighboring directions used when interpolating a lookup table.
INTERPOLATION_NEIGHBORS = 3

#: Message attached to the area of a cloud whose projection has no area.
COLLINEAR_WARNING = 'projected point cloud is collinear; area is zero'


@dataclass(frozen=True, eq=False)
class DirectionSet(object):
    """An ordered set of distinct unit vectors covering the sphere.

    `directions` is an ``n_s × 3`` array.

    """
    directions: np.ndarray

    def __post_init__(self):
        directions = np.array(self.directions, dtype=float)
        if directions.ndim != 2 or directions.shape[1] != 3:
            raise IllegalArgumentError('directions must be an n × 3 array')
        norms = np.linalg.norm(directions, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-9):
            raise IllegalArgumentError('directions must be unit vectors')
        directions.setflags(write=False)
        object.__setattr__(self, 'directions', directions)

    def __len__(self):
        return len(self.directions)

    def __iter__(self):
        return iter(self.directions)

    @property
    def n_s(self):
        """The number of directions."""
        return len(self.directions)

    @cached_property
    def tree(self):
        """A :class:`scipy.spatial.cKDTree` over the directions."""
        return cKDTree(self.directions)

    def rotated(self, rotation):
        """Returns the direction set rotated by the 3×3 matrix `rotation`."""
        return DirectionSet(self.directions @ np.asarray(rotation).T)


def fibonacci_directions(n_s):
    """Returns `n_s` nearly uniform directions on the unit sphere.

    Direction ``i`` has polar angle ``arccos(1 - 2 i / n_s)`` and azimuth
    ``π (1 + √5) i``, so the first direction is always ``(0, 0, 1)``.

    """
    if int(n_s) != n_s or n_s < 1:
        raise IllegalArgumentError('the number of directions must be a'
                                   ' positive integer')
    i = np.arange(int(n_s), dtype=float)
    phi = np.arccos(1.0 - 2.0 * i / n_s)
    theta = math.pi * (1.0 + math.sqrt(5.0)) * i
    directions = np.column_stack([np.cos(theta) * np.sin(phi),
                                  np.sin(theta) * np.sin(phi),
                                  np.cos(phi)])
    return DirectionSet(directions)


def rotation_to_z(direction):
    """Returns the proper rotation taking the unit vector `direction` to
    ``e_z`` about the axis ``direction × e_z``.

    ``e_z`` maps to the identity and ``-e_z`` to ``diag(1, -1, -1)``, the
    half turn about ``e_x``.

    """
    d = as_vector(direction, 3, 'direction')
    ez = np.array([0.0, 0.0, 1.0])
    v = np.cross(d, ez)
    s = np.linalg.norm(v)
    c = float(np.dot(d, ez))
    if s < 1e-12:
        return np.eye(3) if c > 0 else np.diag([1.0, -1.0, -1.0])
    k = skew(v)
    return np.eye(3) + k + k @ k * ((1.0 - c) / s ** 2)


def sample_body_points(assembly, count_per_module, seed=0):
    """Returns points drawn uniformly inside every module of `assembly`.

    The result is a ``(len(assembly) * count_per_module) × 3`` array in
    the assembly frame. The same `seed` always gives the same points.

    """
    if count_per_module < 1:
        raise IllegalArgumentError('at least one point per module is'
                                   ' required')
    rng = np.random.default_rng(seed)
    half = assembly.edge_length / 2.0
    clouds = [center + rng.uniform(-half, half, size=(count_per_module, 3))
              for center in assembly.module_centers()]
    return np.concatenate(clouds)


def default_alpha(planar, edge_length=None):
    """Returns the default α-shape circumradius threshold for the planar
    cloud `planar`.

    This is twice the expected spacing of the points, ``sqrt(A / n)``
    where ``A`` is the area of the convex hull, and never less than a
    quarter of `edge_length` when given.

    """
    planar = np.asarray(planar, dtype=float)
    try:
        hull_area = ConvexHull(planar).volume
    except QhullError:
        hull_area = 0.0
    alpha = 2.0 * math.sqrt(hull_area / len(planar))
    if edge_length is not None:
        alpha = max(alpha, edge_length / 4.0)
    return alpha


def alpha_shape_area(planar, alpha):
    """Returns the area of the α-shape of the planar cloud `planar`.

    The α-shape here is the union of the Delaunay triangles whose
    circumradius is less than `alpha`. Clouds with fewer than four points,
    or with no two-dimensional extent, fall back to the area of their
    convex hull.

    """
    planar = np.asarray(planar, dtype=float)
    if len(planar) < 4:
        return MultiPoint([tuple(p) for p in planar]).convex_hull.area
    try:
        triangulation = Delaunay(planar)
    except QhullError:
        return MultiPoint([tuple(p) for p in planar]).convex_hull.area
    corners = planar[triangulation.simplices]
    a = np.linalg.norm(corners[:, 0] - corners[:, 1], axis=1)
    b = np.linalg.norm(corners[:, 1] - corners[:, 2], axis=1)
    c = np.linalg.norm(corners[:, 2] - corners[:, 0], axis=1)
    e1 = corners[:, 1] - corners[:, 0]
    e2 = corners[:, 2] - corners[:, 0]
    areas = 0.5 * np.abs(e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])
    with np.errstate(divide='ignore', invalid='ignore'):
        circumradii = a * b * c / (4.0 * areas)
    keep = (areas > 0) & (circumradii < alpha)
    return float(areas[keep].sum())


def projected_area(points, direction, alpha=None, edge_length=None,
                   full_output=False):
    """Returns the area of the silhouette of `points` seen along
    `direction`.

    The points are rotated by :func:`rotation_to_z` and projected onto the
    ``xy`` plane; the area of the α-shape of the projection is returned.
    If `alpha` is ``None``, :func:`default_alpha` is used with
    `edge_length`.

    If the projection is collinear, the area is zero and a warning is
    logged. With `full_output`, a pair ``(area, warning)`` is returned
    where `warning` is ``None`` or a message describing the degeneracy.

    """
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] != 3:
        raise IllegalArgumentError('points must be an n × 3 array')
    if len(points) < 3:
        raise IllegalArgumentError('at least three points are required to'
                                   ' measure an area')
    if alpha is not None and not alpha > 0:
        raise IllegalArgumentError('alpha must be positive')
    rotation = rotation_to_z(direction)
    planar = (points @ rotation.T)[:, :2]
    if alpha is None:
        alpha = default_alpha(planar, edge_length)
    area = alpha_shape_area(planar, alpha)
    warning = None
    if area == 0.0:
        warning = COLLINEAR_WARNING
        logger.warning(warning)
    if full_output:
        return area, warning
    return area


def rotational_drag_scale(rate):
    """Returns the speed factor applied to the rotational drag coefficient
    at angular rate `rate` (in radians per second).

    """
    return rate ** ROTATIONAL_DRAG_EXPONENT


@dataclass(frozen=True, eq=False)
class DragLUT(object):
    """A direction-indexed drag lookup table.

    `frontal_area` holds one area, in square meters, per direction of
    `direction_set`. `rho` is the water density and `c_d` the drag
    coefficient. `seed`, `samples` and `alpha` record how the table was
    built (`alpha` is ``None`` when the default was used).

    """
    direction_set: DirectionSet
    frontal_area: np.ndarray
    rho: float = DEFAULT_WATER_DENSITY
    c_d: float = DEFAULT_DRAG_COEFFICIENT
    seed: int = 0
    samples: int = 0
    alpha: float = None

    def __post_init__(self):
        area = np.array(self.frontal_area, dtype=float)
        if area.shape != (len(self.direction_set), ):
            raise IllegalArgumentError('expected one frontal area per'
                                       ' direction')
        if np.any(~np.isfinite(area)) or np.any(area <= 0):
            raise IllegalArgumentError('frontal areas must be positive')
        area.setflags(write=False)
        object.__setattr__(self, 'frontal_area', area)

    @property
    def n_s(self):
        return len(self.direction_set)

    @property
    def force_coefficients(self):
        """Per-direction translational drag coefficients ``½ ρ C_d A``."""
        return 0.5 * self.rho * self.c_d * self.frontal_area

    @property
    def torque_coefficients(self):
        """Per-direction rotational drag coefficients ``½ ρ C_d A``."""
        return 0.5 * self.rho * self.c_d * self.frontal_area

    def area(self, direction):
        """Returns the frontal area along the unit vector `direction`,
        interpolated by inverse distance weighting over the nearest
        directions of the table.

        """
        k = min(INTERPOLATION_NEIGHBORS, self.n_s)
        distances, indices = self.direction_set.tree.query(direction, k=k)
        distances = np.atleast_1d(distances)
        indices = np.atleast_1d(indices)
        if distances[0] < 1e-12:
            return float(self.frontal_area[indices[0]])
        weights = 1.0 / distances
        return float(weights @ self.frontal_area[indices] / weights.sum())


def build_drag_lut(assembly, n_s=DEFAULT_DIRECTIONS,
                   rho=DEFAULT_WATER_DENSITY, c_d=DEFAULT_DRAG_COEFFICIENT,
                   samples=None, alpha=None, seed=0, workers=1):
    """Returns the :class:`DragLUT` of `assembly`.

    `samples` is the number of Monte Carlo points per module; if ``None``,
    the ``body_points`` of the first module is used. One frontal area is
    computed for each of the `n_s` directions of
    :func:`fibonacci_directions`, possibly in `workers` threads. The result
    does not depend on `workers`.

    """
    if not rho > 0 or not c_d > 0:
        raise IllegalArgumentError('water density and drag coefficient must'
                                   ' be positive')
    if samples is None:
        samples = assembly.modules[0].module.body_points
    directions = fibonacci_directions(n_s)
    points = sample_body_points(assembly, samples, seed)
    edge_length = assembly.edge_length

    def area(direction):
        return projected_area(points, direction, alpha, edge_length)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            areas = list(executor.map(area, directions))
    else:
        areas = [area(d) for d in directions]
    for direction, value in zip(directions, areas):
        logger.debug('frontal area along %s: %.6g', direction, value)
    logger.info('built drag table for %s: %d directions, %d points',
                assembly.name, n_s, len(points))
    return DragLUT(direction_set=directions, frontal_area=areas, rho=rho,
                   c_d=c_d, seed=seed, samples=samples, alpha=alpha)


def query_drag(lut, relative_twist):
    """Returns the drag wrench acting on a body moving with body-frame
    `relative_twist` ``(v, ω)`` through still water.

    The force is ``-½ ρ C_d A(v̂) ‖v‖ v`` and the torque is
    ``-½ ρ C_d A(ω̂) ‖ω‖^(5/3) ω̂``, where ``A`` is interpolated by
    :meth:`DragLUT.area`. The result never has a positive inner product
    with `relative_twist`.

    """
    twist = as_vector(relative_twist, 6, 'relative twist')
    wrench = np.zeros(6)
    v, omega = twist[:3], twist[3:]
    speed = np.linalg.norm(v)
    if speed > 0:
        k = 0.5 * lut.rho * lut.c_d * lut.area(v / speed)
        wrench[:3] = -k * speed * v
    rate = np.linalg.norm(omega)
    if rate > 0:
        axis = omega / rate
        k = 0.5 * lut.rho * lut.c_d * lut.area(axis)
        wrench[3:] = -k * rotational_drag_scale(rate) * axis
    return wrench
