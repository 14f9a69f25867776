# vehicle.py - cube modules, lattice assemblies and rigid-body properties
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Single cube modules, lattice assemblies of modules, and the composite
rigid-body quantities derived from them.

A :class:`ModuleSpec` describes one cube: its edge length, mass, inertia
about its own center of mass and its thrusters (:class:`ThrusterSpec`),
all in the module frame whose origin is the cube center. An
:class:`Assembly` places modules at integer lattice cells, each with one
of the 24 proper cube rotations. Cell ``c`` of an assembly with edge
length ``L`` has its center at ``c * L + L / 2`` in the assembly frame.

The functions :func:`compose_mass_properties`, :func:`mass_matrix` and
:func:`coriolis_matrix` compute the composite total mass, center of mass,
inertia (via the parallel axis theorem), the 6×6 mass matrix and the 6×6
Coriolis-centripetal matrix.

"""
from collections import deque
from dataclasses import dataclass
from dataclasses import field
import logging

import numpy as np
from numpy.polynomial import polynomial as P

from .exceptions import ConfigurationError
from .exceptions import IllegalArgumentError
from .exceptions import StructuralError
from .helpers import as_matrix
from .helpers import as_vector
from .helpers import is_cube_rotation
from .helpers import is_spd
from .helpers import is_symmetric
from .helpers import skew

logger = logging.getLogger(__name__)

#: Default cube edge length, in meters.
DEFAULT_EDGE_LENGTH = 0.21

#: Default displaced volume of one module, in cubic meters.
#:
#: The hull is partly flooded, so this is less than the full cube volume.
#: The default module mass makes the module neutrally buoyant in water of
#: density :data:`DEFAULT_WATER_DENSITY`.
DEFAULT_DISPLACED_VOLUME = 0.009

#: Density of water, in kilograms per cubic meter.
DEFAULT_WATER_DENSITY = 1000.0

#: Default module mass, in kilograms.
DEFAULT_MASS = DEFAULT_WATER_DENSITY * DEFAULT_DISPLACED_VOLUME

#: Default thruster force limit, in Newtons.
DEFAULT_MAX_THRUST = 10.0

#: Default thrust-from-command polynomial, ``f(u) = 10 u``.
DEFAULT_CMD_POLY = (0.0, 10.0, 0.0, 0.0, 0.0, 0.0)

#: Default power-from-thrust polynomial, ``P(f) = 25 f^2``.
DEFAULT_POWER_POLY = (0.0, 0.0, 25.0, 0.0, 0.0, 0.0)

#: Default range of the normalized thruster command.
DEFAULT_COMMAND_RANGE = (-1.0, 1.0)

#: Default number of interior Monte Carlo samples per module.
DEFAULT_BODY_POINTS = 20000

#: Tolerance on the norm of a thruster direction.
UNIT_TOLERANCE = 1e-9

#: The six face-neighbor offsets of a lattice cell.
FACE_NEIGHBORS = ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0),
                  (0, 0, 1), (0, 0, -1))


def _freeze(array):
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class ThrusterSpec(object):
    """A single thruster of a module.

    `position` is the location of the thruster in meters and `direction`
    the unit vector along which positive thrust acts, both in the module
    frame. `f_min` and `f_max` bound the thrust in Newtons. `cmd_poly`
    holds the coefficients ``c_u`` of the polynomial mapping a normalized
    command to thrust, and `power_poly` the coefficients ``c_f`` of the
    polynomial mapping thrust to electrical power; both are in increasing
    order over the basis ``[1, x, ..., x^5]``. `command_range` is the
    interval of commands over which `cmd_poly` must be strictly monotone.

    """
    position: np.ndarray
    direction: np.ndarray
    f_min: float = -DEFAULT_MAX_THRUST
    f_max: float = DEFAULT_MAX_THRUST
    cmd_poly: np.ndarray = field(default=DEFAULT_CMD_POLY)
    power_poly: np.ndarray = field(default=DEFAULT_POWER_POLY)
    command_range: tuple = DEFAULT_COMMAND_RANGE

    def __post_init__(self):
        position = as_vector(self.position, 3, 'thruster position')
        direction = as_vector(self.direction, 3, 'thruster direction')
        if abs(np.linalg.norm(direction) - 1.0) > UNIT_TOLERANCE:
            raise IllegalArgumentError('thruster direction must be a unit'
                                       ' vector')
        if not self.f_min <= 0 <= self.f_max:
            raise IllegalArgumentError('thrust limits must satisfy'
                                       ' f_min <= 0 <= f_max')
        cmd_poly = np.asarray(self.cmd_poly, dtype=float)
        power_poly = np.asarray(self.power_poly, dtype=float)
        low, high = self.command_range
        if not low < high:
            raise IllegalArgumentError('command range must be increasing')
        grid = np.linspace(low, high, 1001)
        steps = np.diff(P.polyval(grid, cmd_poly))
        if not (np.all(steps > 0) or np.all(steps < 0)):
            raise IllegalArgumentError('thrust polynomial must be strictly'
                                       ' monotone over the command range')
        object.__setattr__(self, 'position', _freeze(position))
        object.__setattr__(self, 'direction', _freeze(direction))
        object.__setattr__(self, 'f_min', float(self.f_min))
        object.__setattr__(self, 'f_max', float(self.f_max))
        object.__setattr__(self, 'cmd_poly', _freeze(cmd_poly))
        object.__setattr__(self, 'power_poly', _freeze(power_poly))
        object.__setattr__(self, 'command_range', (float(low), float(high)))

    def transformed(self, rotation, offset):
        """Returns a copy of this thruster rotated by `rotation` and then
        translated by `offset`.

        """
        rotation = np.asarray(rotation, dtype=float)
        return ThrusterSpec(position=rotation @ self.position + offset,
                            direction=rotation @ self.direction,
                            f_min=self.f_min, f_max=self.f_max,
                            cmd_poly=self.cmd_poly,
                            power_poly=self.power_poly,
                            command_range=self.command_range)

    @property
    def wrench(self):
        """The unit-thrust wrench ``[r; p × r]`` of this thruster."""
        return np.concatenate([self.direction,
                               np.cross(self.position, self.direction)])


def default_thrusters(edge_length=DEFAULT_EDGE_LENGTH,
                      max_thrust=DEFAULT_MAX_THRUST):
    """Returns the default twelve-thruster layout of a cube module.

    One thruster sits at the midpoint of each edge of the cube and pushes
    along that edge. The thrusters are ordered by the axis of their edge
    (the four edges along ``x`` first, then ``y``, then ``z``), and within
    an axis by quadrant, counterclockwise about the axis starting at
    ``(+, +)``.

    The layout is mapped onto itself by every proper rotation of the cube,
    so reachable spaces and thrust shares are the same along any two
    directions related by such a rotation. Force and torque decouple: a
    pure force along an axis is shared equally by the four thrusters on
    the edges parallel to it, and the allocation Jacobian has rank six.

    """
    h = edge_length / 2.0
    quadrants = ((1, 1), (-1, 1), (-1, -1), (1, -1))
    thrusters = []
    for axis in range(3):
        first, second = (axis + 1) % 3, (axis + 2) % 3
        direction = np.zeros(3)
        direction[axis] = 1.0
        for a, b in quadrants:
            position = np.zeros(3)
            position[first] = a * h
            position[second] = b * h
            thrusters.append(ThrusterSpec(position=position,
                                          direction=direction,
                                          f_min=-max_thrust,
                                          f_max=max_thrust))
    return tuple(thrusters)


def cube_inertia(mass, edge_length):
    """Returns the inertia tensor of a homogeneous cube about its center."""
    return np.eye(3) * mass * edge_length ** 2 / 6.0


@dataclass(frozen=True, eq=False)
class ModuleSpec(object):
    """A single cube module.

    `edge_length` is in meters, `mass` in kilograms and `inertia` is the
    symmetric positive definite inertia tensor about the module's own
    center of mass, in kg·m². If `inertia` is ``None``, the inertia of a
    homogeneous cube is used. If `thrusters` is ``None``, the default
    layout of :func:`default_thrusters` is used. `body_points` is the
    number of interior Monte Carlo samples drawn for drag estimation.

    """
    edge_length: float = DEFAULT_EDGE_LENGTH
    mass: float = DEFAULT_MASS
    inertia: np.ndarray = None
    thrusters: tuple = None
    body_points: int = DEFAULT_BODY_POINTS
    name: str = 'cube'

    def __post_init__(self):
        if not self.edge_length > 0:
            raise IllegalArgumentError('edge length must be positive')
        if not self.mass > 0:
            raise IllegalArgumentError('module mass must be positive')
        if int(self.body_points) < 1:
            raise IllegalArgumentError('body_points must be positive')
        inertia = self.inertia
        if inertia is None:
            inertia = cube_inertia(self.mass, self.edge_length)
        inertia = as_matrix(inertia, (3, 3), 'module inertia')
        if not is_spd(inertia):
            raise IllegalArgumentError('module inertia must be symmetric'
                                       ' positive definite')
        thrusters = self.thrusters
        if thrusters is None:
            thrusters = default_thrusters(self.edge_length)
        object.__setattr__(self, 'edge_length', float(self.edge_length))
        object.__setattr__(self, 'mass', float(self.mass))
        object.__setattr__(self, 'inertia', _freeze(inertia))
        object.__setattr__(self, 'thrusters', tuple(thrusters))
        object.__setattr__(self, 'body_points', int(self.body_points))


def default_module():
    """Returns the default cube module."""
    return ModuleSpec()


@dataclass(frozen=True, eq=False)
class Placement(object):
    """A module placed in an assembly at integer lattice `cell` with the
    proper cube rotation `orientation` (module frame to assembly frame).

    """
    module: ModuleSpec
    cell: tuple
    orientation: np.ndarray = None

    def __post_init__(self):
        cell = tuple(int(c) for c in self.cell)
        if len(cell) != 3 or any(c != v for c, v in zip(cell, self.cell)):
            raise IllegalArgumentError('lattice cells must be integer'
                                       ' 3-vectors')
        orientation = self.orientation
        if orientation is None:
            orientation = np.eye(3)
        if not is_cube_rotation(orientation):
            raise IllegalArgumentError('module orientation must be one of the'
                                       ' 24 proper cube rotations')
        object.__setattr__(self, 'cell', cell)
        object.__setattr__(self, 'orientation',
                           _freeze(np.rint(orientation)))


def _check_structure(placements):
    if not placements:
        raise StructuralError('an assembly needs at least one module')
    edges = {p.module.edge_length for p in placements}
    if len(edges) > 1:
        raise StructuralError('all modules of an assembly must share one edge'
                              ' length')
    seen = {}
    for placement in placements:
        if placement.cell in seen:
            raise StructuralError('two modules share lattice cell'
                                  ' {0}'.format(placement.cell),
                                  cells=[placement.cell])
        seen[placement.cell] = placement
    # Breadth-first search over face-sharing neighbors.
    start = placements[0].cell
    reached = {start}
    queue = deque([start])
    while queue:
        x, y, z = queue.popleft()
        for dx, dy, dz in FACE_NEIGHBORS:
            neighbor = (x + dx, y + dy, z + dz)
            if neighbor in seen and neighbor not in reached:
                reached.add(neighbor)
                queue.append(neighbor)
    if len(reached) != len(seen):
        unreached = sorted(set(seen) - reached)
        raise StructuralError('assembly is not face-connected; unreachable'
                              ' cells: {0}'.format(unreached),
                              cells=unreached)


@dataclass(frozen=True, eq=False)
class Assembly(object):
    """A face-connected lattice of cube modules.

    `modules` is a sequence of :class:`Placement` objects. Constructing an
    assembly checks the lattice invariants and raises
    :exc:`StructuralError` if there are no modules, if two modules share a
    cell or if the face-adjacency graph of the cells is disconnected.

    """
    modules: tuple
    name: str = 'assembly'

    def __post_init__(self):
        placements = tuple(self.modules)
        _check_structure(placements)
        object.__setattr__(self, 'modules', placements)

    def __len__(self):
        return len(self.modules)

    @property
    def edge_length(self):
        """The common edge length of the modules, in meters."""
        return self.modules[0].module.edge_length

    @property
    def cells(self):
        """The lattice cells, in module order."""
        return [p.cell for p in self.modules]

    def module_centers(self):
        """Returns an ``N × 3`` array of module centers in the assembly
        frame, ``cell * L + L / 2``.

        """
        length = self.edge_length
        return np.array(self.cells, dtype=float) * length + length / 2.0

    def thrusters(self):
        """Returns every thruster of every module, expressed in the
        assembly frame, in module order.

        """
        result = []
        for placement, center in zip(self.modules, self.module_centers()):
            for thruster in placement.module.thrusters:
                result.append(thruster.transformed(placement.orientation,
                                                   center))
        return result

    def translated(self, offset):
        """Returns a copy with every cell shifted by the integer 3-vector
        `offset`.

        """
        offset = np.asarray(offset, dtype=int)
        placements = [Placement(p.module, tuple(np.add(p.cell, offset)),
                                p.orientation) for p in self.modules]
        return Assembly(placements, name=self.name)

    def rotated(self, rotation):
        """Returns a copy rotated about the assembly-frame origin by the
        proper cube rotation `rotation`.

        Module centers are rotated (cells move accordingly) and each module
        orientation is composed with `rotation`.

        """
        if not is_cube_rotation(rotation):
            raise IllegalArgumentError('assemblies can only be rotated by'
                                       ' proper cube rotations')
        rotation = np.rint(np.asarray(rotation, dtype=float))
        placements = []
        for placement in self.modules:
            center = np.asarray(placement.cell, dtype=float) + 0.5
            cell = np.rint(rotation @ center - 0.5).astype(int)
            placements.append(Placement(placement.module, tuple(cell),
                                        rotation @ placement.orientation))
        return Assembly(placements, name=self.name)

    def merged(self, other, offset, name=None):
        """Returns a new assembly containing the modules of this assembly
        and those of `other` shifted by the integer cell `offset`.

        """
        shifted = other.translated(offset)
        name = name or '{0}+{1}'.format(self.name, other.name)
        return Assembly(self.modules + shifted.modules, name=name)


def merge_assemblies(first, second, offset, name=None):
    """Returns the assembly formed by docking `second`, shifted by the
    integer cell `offset`, onto `first`.

    Raises :exc:`StructuralError` if the result overlaps or is
    disconnected.

    """
    return first.merged(second, offset, name=name)


def line_assembly(count, module=None, axis=0, name=None):
    """Returns `count` copies of `module` (the default module if ``None``)
    in a straight line along lattice `axis`.

    """
    if count < 1:
        raise IllegalArgumentError('count must be positive')
    module = module or default_module()
    placements = []
    for i in range(count):
        cell = [0, 0, 0]
        cell[axis] = i
        placements.append(Placement(module, tuple(cell)))
    return Assembly(placements, name=name or 'line{0}'.format(count))


def l_assembly(module=None, name='triple'):
    """Returns three modules in an L shape in the horizontal plane."""
    module = module or default_module()
    cells = [(0, 0, 0), (1, 0, 0), (0, 1, 0)]
    return Assembly([Placement(module, c) for c in cells], name=name)


@dataclass(frozen=True, eq=False)
class MassProperties(object):
    """Composite rigid-body properties of an assembly.

    `total_mass` is in kilograms, `com` is the center of mass in the
    assembly frame, `inertia` the inertia tensor about `com` and
    `module_offsets` the ``N × 3`` array of vectors from `com` to each
    module center.

    """
    total_mass: float
    com: np.ndarray
    inertia: np.ndarray
    module_offsets: np.ndarray


def compose_mass_properties(assembly):
    """Returns the :class:`MassProperties` of `assembly`.

    The total mass is the sum of the module masses and the center of mass
    the mass-weighted mean of the module centers. Each module inertia is
    rotated into the assembly frame by its orientation and shifted to the
    composite center of mass with the parallel axis theorem.

    """
    if not isinstance(assembly, Assembly):
        raise IllegalArgumentError('expected an Assembly')
    masses = np.array([p.module.mass for p in assembly.modules])
    centers = assembly.module_centers()
    total = masses.sum()
    com = masses @ centers / total
    offsets = centers - com
    inertia = np.zeros((3, 3))
    for placement, mass, r in zip(assembly.modules, masses, offsets):
        rotation = placement.orientation
        own = rotation @ placement.module.inertia @ rotation.T
        inertia += own + mass * (np.dot(r, r) * np.eye(3) - np.outer(r, r))
    inertia = 0.5 * (inertia + inertia.T)
    return MassProperties(total_mass=float(total), com=_freeze(com),
                          inertia=_freeze(inertia),
                          module_offsets=_freeze(offsets))


def _added_mass(added_mass):
    if added_mass is None:
        return np.zeros((6, 6))
    added_mass = as_matrix(added_mass, (6, 6), 'added mass')
    if not is_symmetric(added_mass):
        raise ConfigurationError('added mass matrix must be symmetric')
    if np.linalg.eigvalsh(added_mass)[0] < -1e-9 * max(
            1.0, np.abs(added_mass).max()):
        raise ConfigurationError('added mass matrix must be positive'
                                 ' semidefinite')
    return added_mass


def mass_matrix(props, added_mass=None, com_offset=None):
    """Returns the 6×6 mass matrix of a rigid body with properties `props`
    plus the added mass matrix `added_mass` (zero if ``None``).

    `com_offset` is the vector from the reference point to the center of
    mass (zero if ``None``, that is, dynamics expressed at the center of
    mass). The rigid-body part is::

        [ M I₃        -M S(r) ]
        [ M S(r)       I_o    ]

    where ``S`` is the cross-product matrix and ``I_o`` the inertia about
    the reference point. Raises :exc:`ConfigurationError` if the result is
    not symmetric positive definite.

    """
    mass = props.total_mass
    r = np.zeros(3) if com_offset is None else as_vector(com_offset, 3,
                                                         'com offset')
    s = skew(r)
    inertia = props.inertia + mass * (np.dot(r, r) * np.eye(3)
                                      - np.outer(r, r))
    matrix = np.block([[mass * np.eye(3), -mass * s],
                       [mass * s, inertia]])
    matrix = matrix + _added_mass(added_mass)
    if not is_spd(matrix):
        raise ConfigurationError('mass matrix is not symmetric positive'
                                 ' definite')
    return matrix


def coriolis_from_mass_matrix(matrix, twist):
    """Returns the Coriolis-centripetal matrix induced by the symmetric 6×6
    mass matrix `matrix` at body twist `twist` ``= (v, ω)``.

    The result is skew-symmetric, so it does no work along `twist`.

    """
    twist = np.asarray(twist, dtype=float)
    v, omega = twist[:3], twist[3:]
    linear = skew(matrix[:3, :3] @ v + matrix[:3, 3:] @ omega)
    angular = skew(matrix[3:, :3] @ v + matrix[3:, 3:] @ omega)
    return np.block([[np.zeros((3, 3)), -linear],
                     [-linear, -angular]])


def coriolis_matrix(props, added_mass, twist, com_offset=None):
    """Returns the 6×6 Coriolis-centripetal matrix of a rigid body with
    properties `props` and added mass `added_mass` at body twist `twist`.

    With the reference point at the center of mass, the blocks are built
    from the cross-product matrices of ``M v``, ``M_A v``, ``I ω`` and
    ``M_A ω``; in general they are built from the full mass matrix of
    :func:`mass_matrix`. The result ``C`` always satisfies ``C = -Cᵀ``.

    """
    twist = as_vector(twist, 6, 'twist')
    return coriolis_from_mass_matrix(mass_matrix(props, added_mass,
                                                 com_offset), twist)
