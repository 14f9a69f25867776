# serializers.py - JSON and CSV serializers for CubeSub objects
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Classes for serialization of CubeSub objects to JSON documents, plus
writers for the CSV and OFF file formats.

The abstract base class :class:`Serializer` can be used to implement
custom serialization. Every document produced here round-trips through
:mod:`cubesub.serialization.deserializers`, and :func:`dumps` writes
documents with sorted keys and floats rounded to
:data:`~cubesub.helpers.JSON_DIGITS` significant digits so that repeated
runs produce byte-identical files.

"""
import csv
import json

import numpy as np
from scipy.spatial.transform import Rotation

from .deserializers import FORMAT_VERSION
from .deserializers import LUT_MAGIC
from .exceptions import MultipleExceptions
from .exceptions import SerializationException
from ..capability import PowerSpace
from ..capability import WrenchSpace
from ..helpers import quat_from_rotation
from ..helpers import round_floats

#: Column names of the state part of a trace CSV file.
TRACE_COLUMNS = ('t', 'x', 'y', 'z', 'qw', 'qx', 'qy', 'qz', 'roll',
                 'pitch', 'yaw', 'u', 'v', 'w', 'p', 'q', 'r', 'fx', 'fy',
                 'fz', 'tx', 'ty', 'tz')

#: Column names of a sampled reference CSV file.
REFERENCE_COLUMNS = ('t', 'x', 'y', 'z', 'vx', 'vy', 'vz', 'ax', 'ay', 'az',
                     'yaw')


def dumps(document):
    """Returns `document` as a deterministic JSON string."""
    return json.dumps(round_floats(document), sort_keys=True, indent=2) + '\n'


class Serializer(object):
    """An object that, when called, returns a dictionary representation of
    a given CubeSub object.

    **This is a base class with no implementation.**

    """

    def serialize(self, instance, only=None):
        """Returns a dictionary representation of the specified instance.

        `only` is a collection of element names to restrict the result
        to. If it is ``None``, every element is included.

        **This method is not implemented in this base class; subclasses
        must override this method.**

        """
        raise NotImplementedError

    def serialize_many(self, instances, only=None):
        """Returns a list of dictionary representations of `instances`.

        Each failure is collected and a single :exc:`MultipleExceptions`
        is raised if any instance could not be serialized.

        """
        result = []
        failed = []
        for instance in instances:
            try:
                result.append(self.serialize(instance, only=only))
            except SerializationException as exception:
                failed.append(exception)
        if failed:
            raise MultipleExceptions(failed)
        return result


def _filter(document, only):
    if only is None:
        return document
    only = set(only) | {'version', 'kind'}
    return {k: v for k, v in document.items() if k in only}


class AssemblySerializer(Serializer):
    """Serializes an :class:`~cubesub.vehicle.Assembly` to the
    ``assembly.json`` format.

    Modules are listed under their names; two different module
    specifications sharing a name are disambiguated with a numeric
    suffix.

    """

    def serialize(self, instance, only=None):
        names = {}
        modules = {}
        placements = []
        for placement in instance.modules:
            module = placement.module
            key = names.get(id(module))
            if key is None:
                key = module.name
                suffix = 1
                while key in modules:
                    suffix += 1
                    key = '{0}{1}'.format(module.name, suffix)
                names[id(module)] = key
                modules[key] = self._module(module)
            rotation = Rotation.from_matrix(placement.orientation)
            placements.append({
                'module': key,
                'cell': list(placement.cell),
                'orientation': quat_from_rotation(rotation),
            })
        document = dict(version=FORMAT_VERSION, name=instance.name,
                        modules=modules, placements=placements)
        return _filter(document, only)

    def _module(self, module):
        return {
            'edge_length': module.edge_length,
            'mass': module.mass,
            'inertia': module.inertia,
            'body_points': module.body_points,
            'thrusters': [self._thruster(t) for t in module.thrusters],
        }

    def _thruster(self, thruster):
        return {
            'position': thruster.position,
            'direction': thruster.direction,
            'f_min': thruster.f_min,
            'f_max': thruster.f_max,
            'cmd_poly': thruster.cmd_poly,
            'power_poly': thruster.power_poly,
            'command_range': list(thruster.command_range),
        }


class SpaceSerializer(Serializer):
    """Serializes a :class:`~cubesub.capability.WrenchSpace` or
    :class:`~cubesub.capability.PowerSpace`.

    `metrics` is an optional dictionary of scalar metrics (such as the
    inscribed ellipsoid volume or a thrust variance) added to every
    document under ``"metrics"``.

    """

    def __init__(self, metrics=None):
        self.metrics = metrics

    def serialize(self, instance, only=None):
        document = dict(version=FORMAT_VERSION, mode=instance.mode,
                        directions=instance.directions)
        if isinstance(instance, WrenchSpace):
            document.update(kind='wrench', extents=instance.extents,
                            normalized=instance.normalized,
                            free_rows=instance.free_rows)
        elif isinstance(instance, PowerSpace):
            power = [float(p) if ok else None
                     for p, ok in zip(instance.power, instance.attainable)]
            document.update(kind='power', power=power,
                            total=instance.total())
        else:
            raise SerializationException(instance, 'not a capability space')
        if self.metrics:
            document['metrics'] = dict(self.metrics)
        return _filter(document, only)


class PlanSerializer(Serializer):
    """Serializes a :class:`~cubesub.planner.TrajectoryPlan`.

    Coefficients are listed per axis and per segment in increasing order
    of the local time ``t - t_k`` in seconds.

    """

    def serialize(self, instance, only=None):
        document = dict(version=FORMAT_VERSION, kind='plan',
                        order=instance.order, times=instance.times,
                        durations=instance.durations,
                        waypoints=instance.waypoints,
                        coefficients=instance.coefficients,
                        snap_cost=instance.snap_cost(),
                        yaw_profile=instance.yaw_profile)
        if instance.yaw_profile == 'fixed':
            document['yaw'] = instance.fixed_yaw
        return _filter(document, only)


def _write_rows(f, header, rows):
    writer = csv.writer(f, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(x)) for x in row])


def write_trace_csv(f, trace, extra=None):
    """Writes `trace` to the file object `f` as CSV.

    `extra` is an optional dictionary mapping a column prefix to an array
    with one row per sample (for instance per-thruster forces); each of
    its columns is appended as ``prefix0``, ``prefix1``, and so on.

    """
    columns = [np.asarray(trace.times)[:, None], trace.positions,
               trace.orientations, trace.eulers(), trace.twists,
               trace.wrenches]
    header = list(TRACE_COLUMNS)
    for prefix, values in sorted((extra or {}).items()):
        values = np.asarray(values, dtype=float).reshape(len(trace), -1)
        header.extend('{0}{1}'.format(prefix, i)
                      for i in range(values.shape[1]))
        columns.append(values)
    _write_rows(f, header, np.hstack(columns))


def write_reference_csv(f, series):
    """Writes a :class:`~cubesub.planner.ReferenceSeries` to `f` as CSV."""
    rows = np.column_stack([series.times, series.positions,
                            series.velocities, series.accelerations,
                            series.yaws])
    _write_rows(f, REFERENCE_COLUMNS, rows)


def write_drag_lut(f, lut):
    """Writes a :class:`~cubesub.hydro.DragLUT` to `f` as versioned CSV.

    The first line identifies the format and version, the next two hold
    the construction parameters and the remaining rows hold one direction
    and its frontal area each.

    """
    f.write('{0} {1}\n'.format(LUT_MAGIC, FORMAT_VERSION))
    writer = csv.writer(f, lineterminator='\n')
    writer.writerow(['n_s', 'rho', 'c_d', 'seed', 'samples', 'alpha'])
    alpha = '' if lut.alpha is None else repr(float(lut.alpha))
    writer.writerow([lut.n_s, repr(float(lut.rho)), repr(float(lut.c_d)),
                     lut.seed, lut.samples, alpha])
    rows = np.column_stack([lut.direction_set.directions, lut.frontal_area])
    _write_rows(f, ['x', 'y', 'z', 'area'], rows)


def write_off(f, surface):
    """Writes a :class:`~cubesub.morphology.RadialSurface` to `f` in the
    ASCII OFF triangle mesh format.

    """
    vertices = surface.vertices
    f.write('OFF\n')
    f.write('{0} {1} 0\n'.format(len(vertices), len(surface.faces)))
    for vertex in vertices:
        f.write(' '.join(repr(float(x)) for x in vertex) + '\n')
    for face in surface.faces:
        f.write('3 ' + ' '.join(str(int(i)) for i in face) + '\n')
