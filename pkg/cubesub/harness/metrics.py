# metrics.py - tracking error and docking detection
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Metrics computed from simulated traces.

:func:`rmse` compares a :class:`~cubesub.dynamics.Trace` with a reference
series and :func:`docking_check` decides when two bodies have docked,
that is, when the distance between their centers has stayed within a
tolerance band around one module length for a full time window.

"""
from dataclasses import dataclass
import logging

import numpy as np
from scipy.spatial.transform import Rotation
from scipy.spatial.transform import Slerp

from ..exceptions import IllegalArgumentError
from ..helpers import quat_error_vector

logger = logging.getLogger(__name__)

#: Default time, in seconds, that the docking distance must hold.
DEFAULT_DOCKING_WINDOW = 1.0

#: Default half width, in meters, of the docking distance band.
DEFAULT_DOCKING_TOLERANCE = 0.005

#: Slack used when comparing sample times.
TIME_TOLERANCE = 1e-9


@dataclass(frozen=True)
class TrackingError(object):
    """Root mean square tracking errors.

    `position` is in meters and `orientation` in radians (the norm of the
    rotation vector of the attitude error); `samples` is the number of
    samples compared.

    """
    position: float
    orientation: float
    samples: int


def _orientations(series):
    orientations = series.orientations
    return orientations() if callable(orientations) else orientations


def _resample(reference, times):
    """Returns the reference positions and orientations at `times`, which
    lie within the reference time span.

    """
    ref_times = np.asarray(reference.times, dtype=float)
    positions = np.asarray(reference.positions, dtype=float)
    quats = np.asarray(_orientations(reference), dtype=float)
    if len(ref_times) == len(times) and np.allclose(ref_times, times,
                                                    rtol=0, atol=1e-12):
        return positions, quats
    resampled = np.column_stack([np.interp(times, ref_times, positions[:, a])
                                 for a in range(3)])
    if len(ref_times) == 1:
        return resampled, np.repeat(quats, len(times), axis=0)
    rotations = Rotation.from_quat(quats[:, [1, 2, 3, 0]])
    xyzw = Slerp(ref_times, rotations)(times).as_quat()
    return resampled, xyzw[:, [3, 0, 1, 2]]


def rmse(trace, reference):
    """Returns the :class:`TrackingError` of `trace` against `reference`.

    `reference` is a :class:`~cubesub.planner.ReferenceSeries`, another
    trace or anything with ``times``, ``positions`` and ``orientations``.
    Trace samples outside the reference time span are ignored; the
    reference is interpolated onto the remaining sample times. Raises
    :exc:`IllegalArgumentError` if the two do not overlap in time.

    """
    times = np.asarray(trace.times, dtype=float)
    ref_times = np.asarray(reference.times, dtype=float)
    if len(times) == 0 or len(ref_times) == 0:
        raise IllegalArgumentError('cannot compare empty series')
    inside = ((times >= ref_times[0] - TIME_TOLERANCE)
              & (times <= ref_times[-1] + TIME_TOLERANCE))
    if not inside.any():
        raise IllegalArgumentError('trace and reference do not overlap in'
                                   ' time')
    sample_times = np.clip(times[inside], ref_times[0], ref_times[-1])
    positions, quats = _resample(reference, sample_times)
    position_error = np.linalg.norm(trace.positions[inside] - positions,
                                    axis=1)
    attitude_error = np.array([
        np.linalg.norm(quat_error_vector(desired, actual))
        for desired, actual in zip(quats, trace.orientations[inside])])
    return TrackingError(
        position=float(np.sqrt(np.mean(position_error ** 2))),
        orientation=float(np.sqrt(np.mean(attitude_error ** 2))),
        samples=int(inside.sum()))


class DockingMonitor(object):
    """Incrementally detects docking between two bodies.

    Docking happens once the distance between the two body centers has
    stayed within `tolerance` of `distance` for `window` seconds. Feed
    samples in time order to :meth:`update`.

    """

    def __init__(self, distance, window=DEFAULT_DOCKING_WINDOW,
                 tolerance=DEFAULT_DOCKING_TOLERANCE):
        if not distance > 0 or not window >= 0 or not tolerance > 0:
            raise IllegalArgumentError('docking distance, window and'
                                       ' tolerance must be positive')
        self.distance = distance
        self.window = window
        self.tolerance = tolerance

        #: Time at which the distance last entered the band, or ``None``.
        self.entered = None

        #: Time at which docking was detected, or ``None``.
        self.docked_at = None

    def in_band(self, first, second):
        gap = np.linalg.norm(np.subtract(first, second))
        return abs(gap - self.distance) <= self.tolerance

    def update(self, t, first, second):
        """Records the positions of the two bodies at time `t` and returns
        the docking time if docking has been detected.

        """
        if self.docked_at is not None:
            return self.docked_at
        if not self.in_band(first, second):
            self.entered = None
            return None
        if self.entered is None:
            self.entered = t
        if t - self.entered >= self.window - TIME_TOLERANCE:
            self.docked_at = self.entered + self.window
            logger.info('docking detected at t = %.3f s', self.docked_at)
        return self.docked_at


def docking_check(first, second, length, window=DEFAULT_DOCKING_WINDOW,
                  tolerance=DEFAULT_DOCKING_TOLERANCE):
    """Returns the time at which the bodies traced by `first` and `second`
    docked, or ``None``.

    The traces must share their time base. The returned time is the first
    time at which the center distance has been within `tolerance` of
    `length` for the whole preceding `window`.

    """
    times = np.asarray(first.times, dtype=float)
    if len(times) != len(second.times) or not np.allclose(
            times, second.times, rtol=0, atol=TIME_TOLERANCE):
        raise IllegalArgumentError('traces must share their time base')
    monitor = DockingMonitor(length, window, tolerance)
    for t, a, b in zip(times, first.positions, second.positions):
        docked = monitor.update(t, a, b)
        if docked is not None:
            return docked
    return None
