# plotting.py - SVG renderings of spaces, trajectories and thrust spreads
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Optional SVG plots.

The functions here draw on :class:`matplotlib.figure.Figure` objects
directly rather than through :mod:`matplotlib.pyplot`, so they hold no
global state and may be called from several threads. SVG files are
written without a creation date and with a fixed hash salt, so plotting
the same data twice produces identical files.

"""
import matplotlib
from matplotlib.figure import Figure
import numpy as np

#: Settings applied while writing SVG files.
SVG_PARAMS = {'svg.hashsalt': 'cubesub', 'svg.fonttype': 'none'}


def _save(figure, path):
    with matplotlib.rc_context(SVG_PARAMS):
        figure.savefig(path, format='svg', metadata={'Date': None})


def plot_space(space, path, title=None):
    """Writes a three-dimensional scatter plot of the boundary points of a
    wrench or power space to the SVG file `path`.

    """
    points = space.radii[:, np.newaxis] * space.directions
    figure = Figure(figsize=(6, 6))
    axes = figure.add_subplot(projection='3d')
    axes.scatter(points[:, 0], points[:, 1], points[:, 2], s=4,
                 c=space.radii, cmap='viridis')
    unit = 'N' if space.mode == 'force' else 'N·m'
    axes.set_xlabel('x ({0})'.format(unit))
    axes.set_ylabel('y ({0})'.format(unit))
    axes.set_zlabel('z ({0})'.format(unit))
    axes.set_title(title or '{0} space'.format(space.mode))
    _save(figure, path)


def plot_trajectory(trace, reference, path, title=None):
    """Writes the traced path and, if given, the reference path to the SVG
    file `path`.

    """
    figure = Figure(figsize=(10, 5))
    path_axes = figure.add_subplot(1, 2, 1, projection='3d')
    positions = trace.positions
    path_axes.plot(positions[:, 0], positions[:, 1], positions[:, 2],
                   label='simulated')
    if reference is not None:
        ref = reference.positions
        path_axes.plot(ref[:, 0], ref[:, 1], ref[:, 2], '--',
                       label='reference')
    path_axes.set_xlabel('x (m)')
    path_axes.set_ylabel('y (m)')
    path_axes.set_zlabel('z (m)')
    path_axes.legend()
    error_axes = figure.add_subplot(1, 2, 2)
    if reference is not None and len(reference) == len(trace):
        error = np.linalg.norm(positions - reference.positions, axis=1)
        error_axes.plot(trace.times, 100.0 * error)
        error_axes.set_ylabel('position error (cm)')
    else:
        speed = np.linalg.norm(trace.twists[:, :3], axis=1)
        error_axes.plot(trace.times, speed)
        error_axes.set_ylabel('speed (m/s)')
    error_axes.set_xlabel('t (s)')
    error_axes.grid(True)
    if title:
        figure.suptitle(title)
    _save(figure, path)


def plot_violins(variance, path, title=None):
    """Writes violin plots of the per-thruster absolute thrust
    distributions of a :class:`~cubesub.capability.ThrustVariance` to the
    SVG file `path`.

    """
    distributions = variance.distributions
    count = distributions.shape[1]
    figure = Figure(figsize=(max(4, 0.6 * count + 2), 4))
    axes = figure.add_subplot()
    axes.violinplot([distributions[:, i] for i in range(count)],
                    showmeans=True)
    axes.set_xticks(range(1, count + 1))
    axes.set_xlabel('thruster')
    axes.set_ylabel('|thrust| (N)')
    axes.set_title(title or 'σ² = {0:.4g} ({1} weighting)'.format(
        variance.variance, variance.weighting))
    _save(figure, path)
