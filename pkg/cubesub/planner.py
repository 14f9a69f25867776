# planner.py - minimum snap trajectories and reference paths
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Minimum snap trajectory planning through timed waypoints.

:func:`plan_min_snap` finds, independently for each axis, the piecewise
polynomial of order seven through the waypoints that minimizes the
integrated squared fourth derivative, with continuous velocity and
acceleration at interior waypoints and the body at rest at both ends. The
equality-constrained quadratic program is solved through its optimality
(KKT) linear system, with the time of each segment normalized to
``[0, 1]``.

:func:`sample_trajectory` turns a :class:`TrajectoryPlan` into reference
poses for the controller. The waypoint generators :func:`spiral_waypoints`
and :func:`mobius_waypoints` produce the reference paths of the tracking
scenarios.

"""
from dataclasses import dataclass
import logging
import math

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.linalg import block_diag

from .control import Reference
from .exceptions import ConditioningError
from .exceptions import IllegalArgumentError

logger = logging.getLogger(__name__)

#: Default polynomial order of each segment.
DEFAULT_ORDER = 7

#: Order of the derivative whose square is minimized.
SNAP = 4

#: Highest derivative required to be continuous at interior waypoints.
CONTINUITY = 2

#: Largest condition number accepted for the optimality system.
MAX_CONDITION_NUMBER = 1e13

#: The yaw profiles of a plan.
YAW_PROFILES = ('fixed', 'tangent', 'waypoints')

#: Horizontal speed below which the tangent yaw falls back to the path
#: direction.
TANGENT_SPEED = 1e-6


def _falling(i, m):
    """Returns ``i! / (i - m)!``, zero when ``i < m``."""
    if i < m:
        return 0.0
    return float(math.factorial(i) // math.factorial(i - m))


def snap_hessian(order=DEFAULT_ORDER):
    """Returns the matrix ``Q`` with ``βᵀ Q β = ∫₀¹ (p⁽⁴⁾(τ))² dτ`` for
    ``p(τ) = Σ β_i τ^i``.

    """
    size = order + 1
    hessian = np.zeros((size, size))
    for i in range(SNAP, size):
        for j in range(SNAP, size):
            hessian[i, j] = (_falling(i, SNAP) * _falling(j, SNAP)
                             / (i + j - 2 * SNAP + 1))
    return hessian


def _derivative_row(order, m, tau):
    """Returns the row ``r`` with ``r · β = p⁽ᵐ⁾(τ)``."""
    return np.array([_falling(i, m) * (tau ** (i - m) if i >= m else 0.0)
                     for i in range(order + 1)])


def solve_axis(values, durations, order=DEFAULT_ORDER):
    """Returns the ``M × (order + 1)`` normalized coefficients ``β`` of the
    minimum snap polynomials through `values` with segment `durations`.

    Segment ``k`` is ``Σ β_{k,i} τ^i`` for ``τ = (t - t_k) / T_k``.

    """
    values = np.asarray(values, dtype=float)
    durations = np.asarray(durations, dtype=float)
    segments = len(durations)
    size = order + 1
    reference = durations.mean()
    hessian = block_diag(*[(T / reference) ** -(2 * SNAP - 1)
                           * snap_hessian(order) for T in durations])
    rows, rhs = [], []

    def constraint(entries, value):
        row = np.zeros(segments * size)
        for k, coefficients in entries:
            row[k * size:(k + 1) * size] += coefficients
        rows.append(row)
        rhs.append(value)

    for k in range(segments):
        constraint([(k, _derivative_row(order, 0, 0.0))], values[k])
        constraint([(k, _derivative_row(order, 0, 1.0))], values[k + 1])
    for k in range(segments - 1):
        for m in range(1, CONTINUITY + 1):
            constraint([(k, _derivative_row(order, m, 1.0)
                         / durations[k] ** m),
                        (k + 1, -_derivative_row(order, m, 0.0)
                         / durations[k + 1] ** m)], 0.0)
    for m in range(1, CONTINUITY + 1):
        constraint([(0, _derivative_row(order, m, 0.0))], 0.0)
        constraint([(segments - 1, _derivative_row(order, m, 1.0))], 0.0)
    a = np.array(rows)
    b = np.array(rhs)
    n = segments * size
    kkt = np.block([[2.0 * hessian, a.T],
                    [a, np.zeros((len(a), len(a)))]])
    condition = np.linalg.cond(kkt)
    if not condition < MAX_CONDITION_NUMBER:
        raise ConditioningError('minimum snap system is too badly'
                                ' conditioned', condition_number=condition)
    solution = np.linalg.solve(kkt, np.concatenate([np.zeros(n), b]))
    return solution[:n].reshape(segments, size)


def _physical(normalized, durations):
    """Converts normalized coefficients to coefficients in ``t - t_k``."""
    powers = np.arange(normalized.shape[-1])
    return normalized / np.asarray(durations)[:, np.newaxis] ** powers


@dataclass(frozen=True, eq=False)
class TrajectoryPlan(object):
    """A piecewise polynomial trajectory.

    `times` are the ``M + 1`` waypoint times and `waypoints` the ``M + 1``
    positions. `coefficients` has shape ``(axes, M, order + 1)``; segment
    ``k`` of axis ``a`` is ``Σ_i coefficients[a, k, i] (t - times[k])^i``.
    The first three axes are ``x``, ``y`` and ``z``; a fourth axis, if
    present, is the planned yaw. `yaw_profile` is one of
    :data:`YAW_PROFILES` and `fixed_yaw` the yaw used by the ``'fixed'``
    profile.

    """
    times: np.ndarray
    waypoints: np.ndarray
    coefficients: np.ndarray
    yaw_profile: str = 'fixed'
    fixed_yaw: float = 0.0
    waypoint_yaws: np.ndarray = None

    @property
    def durations(self):
        return np.diff(self.times)

    @property
    def order(self):
        return self.coefficients.shape[-1] - 1

    @property
    def segment_count(self):
        return len(self.durations)

    @property
    def t_start(self):
        return float(self.times[0])

    @property
    def t_end(self):
        return float(self.times[-1])

    def segment(self, t):
        """Returns the index of the segment containing time `t`, clamped to
        the plan.

        """
        index = np.searchsorted(self.times, t, side='right') - 1
        return int(np.clip(index, 0, self.segment_count - 1))

    def evaluate(self, t, derivative=0, axes=slice(0, 3)):
        """Returns the `derivative` of the selected `axes` at time `t`.

        Times outside the plan are clamped to its ends.

        """
        t = min(max(t, self.t_start), self.t_end)
        k = self.segment(t)
        s = t - self.times[k]
        result = []
        for coefficients in self.coefficients[axes, k]:
            result.append(P.polyval(s, P.polyder(coefficients, derivative)
                                    if derivative else coefficients))
        return np.array(result)

    def snap_cost(self, axes=slice(0, 3)):
        """Returns ``Σ_axes Σ_k ∫ (p_k⁽⁴⁾(t))² dt``."""
        hessian = snap_hessian(self.order)
        powers = np.arange(self.order + 1)
        total = 0.0
        for axis in self.coefficients[axes]:
            for coefficients, T in zip(axis, self.durations):
                beta = coefficients * T ** powers
                total += T ** -(2 * SNAP - 1) * beta @ hessian @ beta
        return float(total)

    def continuity_residuals(self):
        """Returns, for each derivative up to the continuity order, the
        largest jump at an interior waypoint over all axes.

        """
        residuals = np.zeros(CONTINUITY + 1)
        for k in range(self.segment_count - 1):
            T = self.durations[k]
            for m in range(CONTINUITY + 1):
                for axis in self.coefficients:
                    left = P.polyval(T, P.polyder(axis[k], m) if m
                                     else axis[k])
                    right = (P.polyder(axis[k + 1], m)[0] if m
                             else axis[k + 1][0])
                    residuals[m] = max(residuals[m], abs(left - right))
        return residuals

    def yaw(self, t):
        """Returns the yaw and its first two derivatives at time `t`."""
        if self.yaw_profile == 'waypoints':
            return tuple(float(self.evaluate(t, m, slice(3, 4))[0])
                         for m in range(3))
        if self.yaw_profile == 'tangent':
            return self._tangent_yaw(t)
        return self.fixed_yaw, 0.0, 0.0

    def _tangent_yaw(self, t):
        v = self.evaluate(t, 1)
        a = self.evaluate(t, 2)
        j = self.evaluate(t, 3)
        speed2 = v[0] ** 2 + v[1] ** 2
        if speed2 < TANGENT_SPEED ** 2:
            k = self.segment(t)
            chord = self.waypoints[k + 1] - self.waypoints[k]
            if np.hypot(chord[0], chord[1]) == 0:
                return self.fixed_yaw, 0.0, 0.0
            return math.atan2(chord[1], chord[0]), 0.0, 0.0
        cross = v[0] * a[1] - v[1] * a[0]
        rate = cross / speed2
        cross_rate = v[0] * j[1] - v[1] * j[0]
        accel = (cross_rate / speed2
                 - cross * 2.0 * (v[0] * a[0] + v[1] * a[1]) / speed2 ** 2)
        return math.atan2(v[1], v[0]), rate, accel

    def reference(self, t):
        """Returns the :class:`~cubesub.control.Reference` at time `t`."""
        yaw, yaw_rate, yaw_accel = self.yaw(t)
        orientation = np.array([math.cos(yaw / 2), 0.0, 0.0,
                                math.sin(yaw / 2)])
        return Reference(position=self.evaluate(t, 0),
                         orientation=orientation,
                         velocity=self.evaluate(t, 1),
                         acceleration=self.evaluate(t, 2),
                         angular_velocity=(0.0, 0.0, yaw_rate),
                         angular_acceleration=(0.0, 0.0, yaw_accel))


def plan_min_snap(waypoints, times, order=DEFAULT_ORDER, yaw=None):
    """Returns the minimum snap :class:`TrajectoryPlan` through `waypoints`
    reached at `times`.

    `yaw` selects the yaw profile: ``None`` or a number holds a fixed yaw,
    ``'tangent'`` follows the horizontal direction of travel and a
    sequence of one yaw per waypoint plans the (unwrapped) yaws as a
    fourth minimum snap axis.

    Raises :exc:`IllegalArgumentError` unless there are at least two
    waypoints with strictly increasing times, and
    :exc:`ConditioningError` if the durations are too disparate.

    """
    waypoints = np.asarray(waypoints, dtype=float)
    times = np.asarray(times, dtype=float)
    if waypoints.ndim != 2 or waypoints.shape[1] != 3:
        raise IllegalArgumentError('waypoints must be an n × 3 array')
    if len(waypoints) < 2:
        raise IllegalArgumentError('at least two waypoints are required')
    if times.shape != (len(waypoints), ):
        raise IllegalArgumentError('expected one time per waypoint')
    if not np.all(np.isfinite(waypoints)) or not np.all(np.isfinite(times)):
        raise IllegalArgumentError('waypoints and times must be finite')
    if np.any(np.diff(times) <= 0):
        raise IllegalArgumentError('waypoint times must be strictly'
                                   ' increasing')
    if order < 2 * CONTINUITY + 1:
        raise IllegalArgumentError('polynomial order must be at least'
                                   ' {0}'.format(2 * CONTINUITY + 1))
    durations = np.diff(times)
    axes = [waypoints[:, a] for a in range(3)]
    profile, fixed_yaw, waypoint_yaws = 'fixed', 0.0, None
    if isinstance(yaw, str):
        if yaw not in YAW_PROFILES[:2]:
            raise IllegalArgumentError('unknown yaw profile'
                                       ' {0!r}'.format(yaw))
        profile = yaw
    elif yaw is not None and np.ndim(yaw) > 0:
        waypoint_yaws = np.unwrap(np.asarray(yaw, dtype=float))
        if waypoint_yaws.shape != (len(waypoints), ):
            raise IllegalArgumentError('expected one yaw per waypoint')
        axes.append(waypoint_yaws)
        profile = 'waypoints'
    elif yaw is not None:
        fixed_yaw = float(yaw)
    coefficients = np.array([_physical(solve_axis(values, durations, order),
                                       durations) for values in axes])
    logger.debug('planned %d segments over %.3f s', len(durations),
                 times[-1] - times[0])
    return TrajectoryPlan(times=times, waypoints=waypoints,
                          coefficients=coefficients, yaw_profile=profile,
                          fixed_yaw=fixed_yaw, waypoint_yaws=waypoint_yaws)


@dataclass(frozen=True, eq=False)
class ReferenceSeries(object):
    """Reference samples of a plan on a uniform time base.

    `yaws` has one row ``(ψ, ψ̇, ψ̈)`` per sample.

    """
    times: np.ndarray
    positions: np.ndarray
    velocities: np.ndarray
    accelerations: np.ndarray
    yaws: np.ndarray

    def __len__(self):
        return len(self.times)

    def orientations(self):
        half = self.yaws[:, 0] / 2.0
        zeros = np.zeros_like(half)
        return np.column_stack([np.cos(half), zeros, zeros, np.sin(half)])


def sample_trajectory(plan, dt):
    """Returns the :class:`ReferenceSeries` of `plan` sampled every `dt`
    seconds from its start, with the end time always included.

    """
    if not dt > 0:
        raise IllegalArgumentError('sampling interval must be positive')
    count = int(math.floor((plan.t_end - plan.t_start) / dt + 1e-9))
    times = plan.t_start + dt * np.arange(count + 1)
    if plan.t_end - times[-1] > 1e-9:
        times = np.append(times, plan.t_end)
    return reference_series(plan, times)


def reference_series(plan, times):
    """Returns the :class:`ReferenceSeries` of `plan` at `times`, which are
    clamped to the plan.

    """
    times = np.asarray(times, dtype=float)
    return ReferenceSeries(
        times=times,
        positions=np.array([plan.evaluate(t, 0) for t in times]),
        velocities=np.array([plan.evaluate(t, 1) for t in times]),
        accelerations=np.array([plan.evaluate(t, 2) for t in times]),
        yaws=np.array([plan.yaw(t) for t in times]))


def _check_count(count):
    if count < 8:
        raise IllegalArgumentError('at least eight waypoints are required')


def spiral_waypoints(radius, pitch, turns, count):
    """Returns `count` waypoints uniformly spaced in angle along a
    cylindrical spiral ``(r cos t, r sin t, pitch t / 2π)`` of `turns`
    turns, starting at ``(radius, 0, 0)``.

    """
    _check_count(count)
    if not radius > 0 or not turns > 0 or pitch < 0:
        raise IllegalArgumentError('spiral geometry must be positive')
    t = np.linspace(0.0, 2.0 * math.pi * turns, count)
    return np.column_stack([radius * np.cos(t), radius * np.sin(t),
                            pitch * t / (2.0 * math.pi)])


def mobius_waypoints(radius, half_width, count):
    """Returns `count` waypoints uniformly spaced in parameter along the
    boundary of a Möbius strip with center circle of `radius` and
    `half_width`.

    The boundary is traversed once, twice around the center circle, so the
    last waypoint coincides with the first.

    """
    _check_count(count)
    if not radius > 0 or half_width < 0:
        raise IllegalArgumentError('Möbius geometry must be positive')
    t = np.linspace(0.0, 4.0 * math.pi, count)
    ring = radius + half_width * np.cos(t / 2.0)
    return np.column_stack([ring * np.cos(t), ring * np.sin(t),
                            half_width * np.sin(t / 2.0)])


def allocate_times(positions, speed, t_start=0.0, min_duration=0.1):
    """Returns waypoint times for `positions` traversed at the nominal
    `speed`, each segment taking its chord length divided by `speed` and
    at least `min_duration` seconds.

    """
    if not speed > 0:
        raise IllegalArgumentError('speed must be positive')
    positions = np.asarray(positions, dtype=float)
    chords = np.linalg.norm(np.diff(positions, axis=0), axis=1)
    durations = np.maximum(chords / speed, min_duration)
    return t_start + np.concatenate([[0.0], np.cumsum(durations)])
