# capability.py - reachable wrench spaces, power spaces and thrust metrics
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Capability metrics of a thruster layout.

The reachable wrench space along a unit direction ``d`` is the largest
``λ`` such that some thrusts within the thruster limits produce the
wrench ``λ e(d)``, where ``e(d)`` places ``d`` in the force rows (mode
``'force'``) or the torque rows (mode ``'torque'``) of a wrench. Unless
`free_rows` is set, the other three rows are required to be zero. Each
extent is found by solving a linear program with :func:`scipy.optimize.linprog`.

The power space gives, per direction, the electrical power drawn when the
unit wrench ``e(d)`` is allocated with the pseudo-inverse. The volume of
the maximum inscribed ellipsoid of a wrench space is found with
:mod:`cvxpy`, and the thrust variance measures how evenly the thrusters
share the effort.

"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import logging
import math

import cvxpy as cp
import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull
from scipy.spatial import QhullError

from .control import thruster_power
from .exceptions import IllegalArgumentError
from .helpers import as_vector
from .hydro import DirectionSet
from .hydro import fibonacci_directions

logger = logging.getLogger(__name__)

#: The two wrench frames.
MODES = ('force', 'torque')

#: The two thrust variance weightings.
WEIGHTINGS = ('power', 'wrench')

#: Default number of directions of a capability space.
DEFAULT_SPACE_DIRECTIONS = 500

#: Feasibility tolerance passed to the linear programming solver.
LP_TOLERANCE = 1e-10

#: Residual below which a unit wrench counts as attainable.
ATTAINABLE_TOLERANCE = 1e-9


def _check_mode(mode):
    if mode not in MODES:
        raise IllegalArgumentError('mode must be one of {0}, got'
                                   ' {1!r}'.format(MODES, mode))


def _direction_set(n_s, directions, minimum=1):
    if directions is not None:
        if not isinstance(directions, DirectionSet):
            directions = DirectionSet(directions)
        return directions
    if n_s < minimum:
        raise IllegalArgumentError('at least {0} directions are'
                                   ' required'.format(minimum))
    return fibonacci_directions(n_s)


def embed_direction(direction, mode):
    """Returns the 6-vector with `direction` in the force rows (`mode` is
    ``'force'``) or in the torque rows (`mode` is ``'torque'``).

    """
    _check_mode(mode)
    wrench = np.zeros(6)
    rows = slice(0, 3) if mode == 'force' else slice(3, 6)
    wrench[rows] = as_vector(direction, 3, 'direction')
    return wrench


def wrench_extent(model, direction, mode='force', free_rows=False,
                  full_output=False):
    """Returns the largest ``λ ≥ 0`` such that ``λ e(d)`` is produced by
    thrusts within the limits of `model`.

    If `free_rows` is ``True``, only the rows of `mode` are constrained and
    the complementary rows may take any value. With `full_output`, a pair
    ``(λ, thrusts)`` is returned, where `thrusts` attain the extent.

    """
    target = embed_direction(direction, mode)
    n_t = model.n_t
    rows = slice(None)
    if free_rows:
        rows = slice(0, 3) if mode == 'force' else slice(3, 6)
    a_eq = np.hstack([model.jacobian[rows], -target[rows, np.newaxis]])
    b_eq = np.zeros(a_eq.shape[0])
    cost = np.zeros(n_t + 1)
    cost[-1] = -1.0
    bounds = list(zip(model.f_min, model.f_max)) + [(0, None)]
    options = dict(primal_feasibility_tolerance=LP_TOLERANCE,
                   dual_feasibility_tolerance=LP_TOLERANCE)
    result = linprog(cost, A_eq=a_eq, b_eq=b_eq, bounds=bounds,
                     method='highs-ds', options=options)
    if result.status != 0 or result.x is None:
        logger.debug('no extent along %s (%s)', direction, result.message)
        extent, thrusts = 0.0, np.zeros(n_t)
    else:
        extent = max(0.0, float(result.x[-1]))
        thrusts = result.x[:n_t]
    if full_output:
        return extent, thrusts
    return extent


def total_max_power(model):
    """Returns the sum over the thrusters of `model` of the larger of the
    powers drawn at the two thrust limits.

    """
    return float(sum(max(thruster_power(t.f_min, t.power_poly),
                         thruster_power(t.f_max, t.power_poly))
                     for t in model.thrusters))


@dataclass(frozen=True, eq=False)
class WrenchSpace(object):
    """Radial extents of the reachable wrench space in one wrench frame.

    `extents` holds one ``λ`` per direction of `direction_set`, and
    `thrusts` the thrusts attaining each extent (one row per direction).
    If `normalized`, extents were divided by the total maximum thruster
    power.

    """
    mode: str
    direction_set: DirectionSet
    extents: np.ndarray
    thrusts: np.ndarray = None
    normalized: bool = False
    free_rows: bool = False

    def __post_init__(self):
        _check_mode(self.mode)
        extents = np.asarray(self.extents, dtype=float)
        if extents.shape != (len(self.direction_set), ):
            raise IllegalArgumentError('expected one extent per direction')
        if np.any(~np.isfinite(extents)) or np.any(extents < 0):
            raise IllegalArgumentError('extents must be finite and'
                                       ' nonnegative')
        object.__setattr__(self, 'extents', extents)

    @property
    def directions(self):
        return self.direction_set.directions

    @property
    def radii(self):
        return self.extents

    def boundary_points(self):
        """Returns the points ``λ_d d``, one row per direction."""
        return self.extents[:, np.newaxis] * self.directions


def reachable_wrench_space(model, mode='force', n_s=DEFAULT_SPACE_DIRECTIONS,
                           free_rows=False, normalize=False, directions=None,
                           workers=1):
    """Returns the :class:`WrenchSpace` of `model` in the frame `mode`.

    The extent along each of the `n_s` Fibonacci directions (or along each
    of `directions`, if given) is computed by :func:`wrench_extent`. The
    directions are independent and may be solved in `workers` threads.

    """
    _check_mode(mode)
    directions = _direction_set(n_s, directions, minimum=4)

    def solve(direction):
        return wrench_extent(model, direction, mode, free_rows,
                             full_output=True)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(solve, directions))
    else:
        results = [solve(d) for d in directions]
    extents = np.array([extent for extent, _ in results])
    thrusts = np.array([forces for _, forces in results])
    if normalize:
        total = total_max_power(model)
        if total > 0:
            extents = extents / total
    logger.info('%s wrench space: %d directions, max extent %.6g', mode,
                len(directions), extents.max())
    return WrenchSpace(mode=mode, direction_set=directions, extents=extents,
                       thrusts=thrusts, normalized=normalize,
                       free_rows=free_rows)


@dataclass(frozen=True, eq=False)
class PowerSpace(object):
    """Power drawn to produce a unit wrench along each direction.

    `power` holds Watts per direction, ``nan`` where `attainable` is
    ``False``; `thrusts` holds the pseudo-inverse thrusts, one row per
    direction.

    """
    mode: str
    direction_set: DirectionSet
    power: np.ndarray
    attainable: np.ndarray
    thrusts: np.ndarray = None

    @property
    def directions(self):
        return self.direction_set.directions

    @property
    def radii(self):
        return np.where(self.attainable, self.power, 0.0)

    def total(self):
        """Returns the total power over all attainable directions."""
        return float(self.power[self.attainable].sum())


def _power_polynomials(model, thruster_models):
    if thruster_models is None:
        return [t.power_poly for t in model.thrusters]
    polys = [getattr(t, 'power_poly', t) for t in thruster_models]
    if len(polys) != model.n_t:
        raise IllegalArgumentError('expected one thruster model per'
                                   ' thruster')
    return polys


def power_space(model, thruster_models=None, n_s=DEFAULT_SPACE_DIRECTIONS,
                mode='force', directions=None):
    """Returns the :class:`PowerSpace` of `model`.

    For each direction, the unit wrench ``e(d)`` is allocated with the
    pseudo-inverse and the power of each thruster is evaluated with its
    power polynomial. `thruster_models` is a sequence of power polynomial
    coefficients or of objects with a ``power_poly`` attribute, one per
    thruster; it defaults to the thrusters of `model`.

    """
    _check_mode(mode)
    directions = _direction_set(n_s, directions)
    polys = _power_polynomials(model, thruster_models)
    powers, attainable, thrusts = [], [], []
    for direction in directions:
        target = embed_direction(direction, mode)
        forces = model.pseudo_inverse @ target
        ok = np.linalg.norm(model.jacobian @ forces - target)
        ok = ok < ATTAINABLE_TOLERANCE
        attainable.append(ok)
        thrusts.append(forces)
        if ok:
            powers.append(sum(float(thruster_power(f, c))
                              for f, c in zip(forces, polys)))
        else:
            powers.append(math.nan)
    attainable = np.array(attainable, dtype=bool)
    if not attainable.all():
        logger.warning('%d of %d unit %ss are not attainable',
                       (~attainable).sum(), len(attainable), mode)
    return PowerSpace(mode=mode, direction_set=directions,
                      power=np.array(powers), attainable=attainable,
                      thrusts=np.array(thrusts))


@dataclass(frozen=True, eq=False)
class InscribedEllipsoid(object):
    """Maximum volume ellipsoid ``{B u + c : ‖u‖ ≤ 1}`` inscribed in a
    convex hull.

    `degenerate` is ``True`` when the hull is flat, in which case `volume`
    is zero and `matrix` and `center` are ``None``.

    """
    volume: float
    matrix: np.ndarray = None
    center: np.ndarray = None
    degenerate: bool = False


def inscribed_ellipsoid(points):
    """Returns the :class:`InscribedEllipsoid` of the convex hull of the
    three-dimensional `points`.

    The hull is converted to its half-space representation ``A x ≤ b`` and
    ``log det B`` is maximized subject to ``‖B aᵢ‖ + aᵢ·c ≤ bᵢ``.

    """
    points = np.asarray(points, dtype=float)
    if len(points) < 4 or not np.any(points):
        return InscribedEllipsoid(volume=0.0, degenerate=True)
    try:
        hull = ConvexHull(points)
    except QhullError:
        logger.warning('wrench space is flat; inscribed volume is zero')
        return InscribedEllipsoid(volume=0.0, degenerate=True)
    normals = hull.equations[:, :3]
    offsets = -hull.equations[:, 3]
    matrix = cp.Variable((3, 3), PSD=True)
    center = cp.Variable(3)
    constraints = [cp.norm(matrix @ normals[i], 2) + normals[i] @ center
                   <= offsets[i] for i in range(len(normals))]
    problem = cp.Problem(cp.Maximize(cp.log_det(matrix)), constraints)
    problem.solve()
    if matrix.value is None or problem.status not in (cp.OPTIMAL,
                                                      cp.OPTIMAL_INACCURATE):
        logger.warning('inscribed ellipsoid problem ended with status %s',
                       problem.status)
        return InscribedEllipsoid(volume=0.0, degenerate=True)
    value = 0.5 * (matrix.value + matrix.value.T)
    volume = 4.0 / 3.0 * math.pi * max(0.0, float(np.linalg.det(value)))
    return InscribedEllipsoid(volume=volume, matrix=value,
                              center=np.asarray(center.value),
                              degenerate=False)


def mie_volume(space, full_output=False):
    """Returns the volume of the maximum inscribed ellipsoid of the convex
    hull of the boundary points of `space`.

    A flat or empty space has volume zero; with `full_output`, the whole
    :class:`InscribedEllipsoid` (whose ``degenerate`` flag is then set) is
    returned instead of the volume.

    """
    ellipsoid = inscribed_ellipsoid(space.boundary_points())
    if full_output:
        return ellipsoid
    return ellipsoid.volume


@dataclass(frozen=True, eq=False)
class ThrustVariance(object):
    """Distribution of thruster effort.

    `distributions` holds the absolute thrust of each thruster (columns)
    for each sampled direction (rows), `means` the per-thruster mean of the
    absolute thrust and `variance` the variance of `means`.

    """
    variance: float
    means: np.ndarray
    distributions: np.ndarray
    weighting: str
    mode: str


def thrust_variance(model, thruster_models=None, n_s=DEFAULT_SPACE_DIRECTIONS,
                    weighting='power', mode=None, directions=None):
    """Returns the :class:`ThrustVariance` of `model`.

    With `weighting` ``'power'``, the thrusts are the pseudo-inverse
    allocation of the unit wrench along each attainable direction (in the
    force frame unless `mode` says otherwise). With ``'wrench'``, they are
    the thrusts attaining the reachable wrench extent along each direction
    (in the torque frame unless `mode` says otherwise).

    `thruster_models` is passed on to :func:`power_space` and must hold one
    model per thruster whichever the weighting.

    """
    if weighting not in WEIGHTINGS:
        raise IllegalArgumentError('weighting must be one of'
                                   ' {0}'.format(WEIGHTINGS))
    _power_polynomials(model, thruster_models)
    if weighting == 'power':
        mode = mode or 'force'
        space = power_space(model, thruster_models, n_s=n_s, mode=mode,
                            directions=directions)
        thrusts = space.thrusts[space.attainable]
    else:
        mode = mode or 'torque'
        space = reachable_wrench_space(model, mode=mode, n_s=n_s,
                                       directions=directions)
        thrusts = space.thrusts
    if len(thrusts) == 0:
        raise IllegalArgumentError('no attainable direction to sample')
    distributions = np.abs(thrusts)
    means = distributions.mean(axis=0)
    return ThrustVariance(variance=float(np.var(means)), means=means,
                          distributions=distributions, weighting=weighting,
                          mode=mode)
