# deserializers.py - model objects from JSON and CSV documents
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Classes for deserialization of JSON documents to CubeSub objects.

The abstract base class :class:`Deserializer` can be used to implement
custom deserialization. :class:`AssemblyDeserializer` reads the
``assembly.json`` format, :class:`SpaceDeserializer` reads the wrench and
power space documents written by :mod:`cubesub.serialization.serializers`
and :class:`PlanDeserializer` reads a waypoint document and plans the
trajectory it describes.

Documents may refer to other documents either by the name of a bundled
configuration (such as ``"double"``) or by a path relative to the file in
which the reference appears; see :func:`resolve_reference`.

"""
import csv
from importlib import resources
import json
import os

import numpy as np

from .exceptions import DeserializationException
from .exceptions import InvalidField
from .exceptions import MissingField
from .exceptions import MultipleExceptions
from .exceptions import UnknownReference
from .exceptions import UnsupportedVersion
from ..capability import MODES
from ..capability import PowerSpace
from ..capability import WrenchSpace
from ..dynamics import Trace
from ..exceptions import IllegalArgumentError
from ..helpers import as_matrix
from ..helpers import as_vector
from ..helpers import is_cube_rotation
from ..helpers import rotation_from_quat
from ..hydro import DirectionSet
from ..hydro import DragLUT
from ..planner import allocate_times
from ..planner import DEFAULT_ORDER
from ..planner import plan_min_snap
from ..vehicle import DEFAULT_MAX_THRUST
from ..vehicle import default_thrusters
from ..vehicle import Assembly
from ..vehicle import ModuleSpec
from ..vehicle import Placement
from ..vehicle import ThrusterSpec

#: Version of the JSON document formats.
FORMAT_VERSION = 1

#: Name of the package directory holding the bundled configurations.
DATA_PACKAGE = 'cubesub.data'

#: First line of a drag lookup table CSV file.
LUT_MAGIC = '# cubesub-draglut'

#: Sentinel for required elements.
_REQUIRED = object()


def bundled_names():
    """Returns the sorted names of the bundled configurations."""
    names = [entry.name[:-len('.json')]
             for entry in resources.files(DATA_PACKAGE).iterdir()
             if entry.name.endswith('.json')]
    return sorted(names)


def resolve_reference(reference, base_path=None):
    """Returns the file path named by `reference`.

    A reference without a directory separator or ``.json`` suffix names a
    bundled configuration. Any other reference is a path, taken relative
    to the directory `base_path` when it is not absolute. Raises
    :exc:`UnknownReference` if no such file exists.

    """
    if not isinstance(reference, str) or not reference:
        raise UnknownReference(reference)
    if os.sep not in reference and '/' not in reference \
            and not reference.endswith('.json'):
        resource = resources.files(DATA_PACKAGE) / (reference + '.json')
        if not resource.is_file():
            raise UnknownReference(reference)
        return str(resource)
    path = reference
    if base_path is not None and not os.path.isabs(path):
        path = os.path.join(base_path, path)
    if not os.path.isfile(path):
        raise UnknownReference(reference)
    return path


def load_document(reference, base_path=None):
    """Returns the parsed JSON document named by `reference` and the
    directory containing it.

    """
    path = resolve_reference(reference, base_path)
    try:
        with open(path) as f:
            document = json.load(f)
    except ValueError as exception:
        raise DeserializationException(detail='{0} is not valid JSON:'
                                       ' {1}'.format(path, exception))
    return document, os.path.dirname(os.path.abspath(path))


def get_field(data, field, within=None, default=_REQUIRED):
    """Returns ``data[field]``, or `default` if given and the element is
    absent. Raises :exc:`MissingField` if a required element is absent.

    """
    if not isinstance(data, dict):
        raise InvalidField(within or 'document', 'expected an object')
    if field not in data or data[field] is None:
        if default is _REQUIRED:
            raise MissingField(field, within)
        return default
    return data[field]


def vector_field(data, field, size, within=None, default=_REQUIRED):
    """Returns the finite `size`-vector ``data[field]``."""
    value = get_field(data, field, within, default)
    if value is None:
        return None
    try:
        return as_vector(value, size, field)
    except (IllegalArgumentError, TypeError, ValueError) as exception:
        raise InvalidField(field, str(exception))


def number_field(data, field, within=None, default=_REQUIRED, positive=False):
    """Returns ``data[field]`` as a float."""
    value = get_field(data, field, within, default)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidField(field, 'expected a number')
    if positive and not value > 0:
        raise InvalidField(field, 'must be positive')
    return float(value)


def integer_field(data, field, within=None, default=_REQUIRED, minimum=None):
    """Returns ``data[field]`` as an integer."""
    value = get_field(data, field, within, default)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidField(field, 'expected an integer')
    if minimum is not None and value < minimum:
        raise InvalidField(field, 'must be at least {0}'.format(minimum))
    return value


def check_version(document):
    """Raises :exc:`UnsupportedVersion` unless `document` declares (or
    implies) the current format version.

    """
    version = get_field(document, 'version', default=FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise UnsupportedVersion(version, FORMAT_VERSION)


class Deserializer(object):
    """An object that transforms a dictionary representation of a JSON
    document into a CubeSub object.

    `base_path` is the directory against which relative references in the
    document are resolved.

    **This is a base class with no implementation.**

    """

    def __init__(self, base_path=None):
        self.base_path = base_path

    def deserialize(self, document):
        """Creates and returns a new object described by the dictionary
        `document`.

        **This method is not implemented in this base class; subclasses
        must override this method.**

        """
        raise NotImplementedError

    def load(self, reference):
        """Loads the document named by `reference` (see
        :func:`resolve_reference`) and deserializes it, resolving its own
        references relative to its location.

        """
        document, directory = load_document(reference, self.base_path)
        return type(self)(base_path=directory).deserialize(document)


class AssemblyDeserializer(Deserializer):
    """Deserializes an ``assembly.json`` document to an
    :class:`~cubesub.vehicle.Assembly`.

    The document has an optional ``"modules"`` object mapping module names
    to module specifications and a ``"placements"`` list; each placement
    names a ``"module"`` (the default cube if omitted), a lattice
    ``"cell"`` and an optional ``"orientation"`` quaternion ``(w, x, y,
    z)``. A document may instead be a string referring to another assembly
    document.

    """

    def deserialize(self, document):
        if isinstance(document, str):
            return self.load(document)
        check_version(document)
        name = get_field(document, 'name', default='assembly')
        specs = get_field(document, 'modules', default={})
        if not isinstance(specs, dict):
            raise InvalidField('modules', 'expected an object')
        modules = {}
        errors = []
        for key, spec in sorted(specs.items()):
            try:
                modules[key] = self._module(spec, key)
            except DeserializationException as exception:
                errors.append(exception)
        placements = get_field(document, 'placements')
        if not isinstance(placements, list):
            raise InvalidField('placements', 'expected a list')
        result = []
        for index, placement in enumerate(placements):
            try:
                result.append(self._placement(placement, modules, index))
            except DeserializationException as exception:
                errors.append(exception)
        if len(errors) == 1:
            raise errors[0]
        if errors:
            raise MultipleExceptions(errors)
        return Assembly(result, name=name)

    def _module(self, spec, key):
        within = 'module "{0}"'.format(key)
        edge_length = number_field(spec, 'edge_length', within,
                                   default=ModuleSpec.edge_length,
                                   positive=True)
        mass = number_field(spec, 'mass', within, default=ModuleSpec.mass,
                            positive=True)
        inertia = get_field(spec, 'inertia', within, default=None)
        if inertia is not None:
            try:
                inertia = as_matrix(inertia, (3, 3), 'inertia')
            except (IllegalArgumentError, TypeError, ValueError) as exc:
                raise InvalidField('inertia', str(exc))
        body_points = integer_field(spec, 'body_points', within,
                                    default=ModuleSpec.body_points,
                                    minimum=1)
        thrusters = get_field(spec, 'thrusters', within, default='default')
        if thrusters == 'default':
            max_thrust = number_field(spec, 'max_thrust', within,
                                      default=DEFAULT_MAX_THRUST,
                                      positive=True)
            thrusters = default_thrusters(edge_length, max_thrust)
        elif isinstance(thrusters, list):
            thrusters = [self._thruster(t, i, key)
                         for i, t in enumerate(thrusters)]
        else:
            raise InvalidField('thrusters', 'expected "default" or a list')
        try:
            return ModuleSpec(edge_length=edge_length, mass=mass,
                              inertia=inertia, thrusters=thrusters,
                              body_points=body_points, name=key)
        except IllegalArgumentError as exception:
            raise InvalidField(key, exception.detail)

    def _thruster(self, spec, index, key):
        within = 'thruster {0} of module "{1}"'.format(index, key)
        kw = dict(position=vector_field(spec, 'position', 3, within),
                  direction=vector_field(spec, 'direction', 3, within))
        direction = kw['direction']
        norm = np.linalg.norm(direction)
        if norm == 0:
            raise InvalidField('direction', 'must be nonzero')
        kw['direction'] = direction / norm
        for field in ('f_min', 'f_max'):
            value = number_field(spec, field, within, default=None)
            if value is not None:
                kw[field] = value
        for field in ('cmd_poly', 'power_poly'):
            value = get_field(spec, field, within, default=None)
            if value is not None:
                kw[field] = vector_field(spec, field, len(value), within)
        command_range = get_field(spec, 'command_range', within,
                                  default=None)
        if command_range is not None:
            kw['command_range'] = tuple(vector_field(spec, 'command_range',
                                                     2, within))
        try:
            return ThrusterSpec(**kw)
        except IllegalArgumentError as exception:
            raise InvalidField(within, exception.detail)

    def _placement(self, placement, modules, index):
        within = 'placement {0}'.format(index)
        key = get_field(placement, 'module', within, default=None)
        if key is None:
            module = modules.get('default') or ModuleSpec()
        elif key in modules:
            module = modules[key]
        else:
            raise InvalidField('module', 'no module named'
                               ' "{0}"'.format(key))
        cell = get_field(placement, 'cell', within)
        if (not isinstance(cell, list) or len(cell) != 3
                or not all(isinstance(c, int) and not isinstance(c, bool)
                           for c in cell)):
            raise InvalidField('cell', 'expected three integers')
        orientation = np.eye(3)
        quat = vector_field(placement, 'orientation', 4, within,
                            default=None)
        if quat is not None:
            if np.linalg.norm(quat) == 0:
                raise InvalidField('orientation', 'quaternion must be'
                                   ' nonzero')
            matrix = rotation_from_quat(quat / np.linalg.norm(quat))
            matrix = matrix.as_matrix()
            orientation = np.rint(matrix)
            if (not np.allclose(matrix, orientation, atol=1e-6)
                    or not is_cube_rotation(orientation)):
                raise InvalidField('orientation', 'not one of the 24 cube'
                                   ' rotations')
        return Placement(module, tuple(cell), orientation)


def load_assembly(reference, base_path=None):
    """Returns the :class:`~cubesub.vehicle.Assembly` named by
    `reference`, a bundled configuration name or a path.

    """
    return AssemblyDeserializer(base_path=base_path).load(reference)


class SpaceDeserializer(Deserializer):
    """Deserializes a wrench or power space document to a
    :class:`~cubesub.capability.WrenchSpace` or
    :class:`~cubesub.capability.PowerSpace`.

    """

    def deserialize(self, document):
        check_version(document)
        kind = get_field(document, 'kind')
        mode = get_field(document, 'mode', default='force')
        if mode not in MODES:
            raise InvalidField('mode', 'expected one of {0}'.format(MODES))
        directions = get_field(document, 'directions')
        try:
            directions = DirectionSet(np.asarray(directions, dtype=float))
        except (IllegalArgumentError, TypeError, ValueError) as exception:
            raise InvalidField('directions', str(exception))
        if kind == 'wrench':
            extents = vector_field(document, 'extents', len(directions))
            try:
                return WrenchSpace(mode=mode, direction_set=directions,
                                   extents=extents,
                                   normalized=bool(document.get(
                                       'normalized', False)))
            except IllegalArgumentError as exception:
                raise InvalidField('extents', exception.detail)
        if kind == 'power':
            power = get_field(document, 'power')
            if not isinstance(power, list) or len(power) != len(directions):
                raise InvalidField('power', 'expected one value per'
                                   ' direction')
            attainable = np.array([p is not None for p in power])
            values = np.array([np.nan if p is None else p for p in power],
                              dtype=float)
            return PowerSpace(mode=mode, direction_set=directions,
                              power=values, attainable=attainable)
        raise InvalidField('kind', 'expected "wrench" or "power"')


class PlanDeserializer(Deserializer):
    """Deserializes a waypoint document and returns the minimum snap
    :class:`~cubesub.planner.TrajectoryPlan` through its waypoints.

    The document has ``"positions"`` and either ``"times"`` or a nominal
    ``"speed"`` from which times are allocated by chord length. An
    optional ``"yaw"`` is a number, ``"tangent"`` or one yaw per waypoint,
    and ``"order"`` sets the polynomial order.

    """

    def deserialize(self, document):
        check_version(document)
        positions = get_field(document, 'positions')
        try:
            positions = np.asarray(positions, dtype=float)
        except (TypeError, ValueError) as exception:
            raise InvalidField('positions', str(exception))
        if positions.ndim != 2 or positions.shape[1] != 3:
            raise InvalidField('positions', 'expected a list of 3-vectors')
        times = get_field(document, 'times', default=None)
        if times is None:
            speed = number_field(document, 'speed', positive=True)
            times = allocate_times(positions, speed)
        else:
            times = vector_field(document, 'times', len(positions))
        yaw = get_field(document, 'yaw', default=None)
        order = integer_field(document, 'order', default=DEFAULT_ORDER,
                              minimum=5)
        try:
            return plan_min_snap(positions, times, order=order, yaw=yaw)
        except IllegalArgumentError as exception:
            raise InvalidField('positions', exception.detail)


def read_drag_lut(f):
    """Returns the :class:`~cubesub.hydro.DragLUT` stored in the CSV file
    object `f`.

    """
    header = f.readline().strip()
    if not header.startswith(LUT_MAGIC):
        raise DeserializationException(detail='not a drag table file')
    version = header[len(LUT_MAGIC):].strip()
    if version != str(FORMAT_VERSION):
        raise UnsupportedVersion(version, FORMAT_VERSION)
    reader = csv.reader(f)
    params = dict(zip(next(reader), next(reader)))
    next(reader)
    rows = [[float(x) for x in row] for row in reader if row]
    if not rows:
        raise MissingField('rows', 'drag table')
    rows = np.array(rows)
    alpha = params.get('alpha')
    return DragLUT(direction_set=DirectionSet(rows[:, :3]),
                   frontal_area=rows[:, 3], rho=float(params['rho']),
                   c_d=float(params['c_d']), seed=int(params['seed']),
                   samples=int(params['samples']),
                   alpha=float(alpha) if alpha else None)


def read_trace_csv(f):
    """Returns the :class:`~cubesub.dynamics.Trace` stored in the CSV file
    object `f`, as written by
    :func:`~cubesub.serialization.serializers.write_trace_csv`.

    Columns beyond the state and wrench columns are ignored.

    """
    reader = csv.reader(f)
    header = next(reader)
    if header[:2] != ['t', 'x']:
        raise DeserializationException(detail='not a trace file')
    rows = np.array([[float(x) for x in row] for row in reader if row])
    if rows.size == 0:
        raise MissingField('rows', 'trace')
    return Trace(times=rows[:, 0], positions=rows[:, 1:4],
                 orientations=rows[:, 4:8], twists=rows[:, 11:17],
                 wrenches=rows[:, 17:23])
