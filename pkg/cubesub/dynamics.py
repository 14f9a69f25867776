# dynamics.py - six degree of freedom rigid-body simulation
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Equations of motion of a single module or an assembly, and a fixed-step
integrator for them.

The state of a body is a :class:`BodyState`: position and orientation in
the world frame, and the twist ``ν = (v, ω)`` in the body frame. The
orientation is a unit quaternion, which keeps the kinematics free of the
Euler-angle singularity; Euler angles (roll, pitch, yaw in the ZYX
convention) are available on demand. The body obeys ::

    M ν̇ + C(ν) ν + D(v_r) + g(η) = τ

where ``M`` is the mass matrix of a :class:`PlantModel`, ``C`` the
Coriolis-centripetal matrix induced by ``M``, ``D`` the drag wrench of
:func:`cubesub.hydro.query_drag` at the velocity relative to the water and
``g`` the restoring wrench.

"""
from dataclasses import dataclass
from dataclasses import field
from functools import cached_property
import logging
import math

import numpy as np
from scipy.spatial.transform import Rotation

from .exceptions import ConfigurationError
from .exceptions import DivergenceError
from .exceptions import IllegalArgumentError
from .exceptions import SingularityError
from .helpers import IDENTITY_QUAT
from .helpers import as_matrix
from .helpers import as_vector
from .helpers import is_spd
from .helpers import quat_rate
from .helpers import rotation_from_quat
from .hydro import query_drag
from .vehicle import compose_mass_properties
from .vehicle import coriolis_from_mass_matrix
from .vehicle import mass_matrix

logger = logging.getLogger(__name__)

#: Default integration time step, in seconds.
DEFAULT_DT = 0.01

#: Pitch angles closer than this to a right angle make the Euler-angle
#: kinematic transform singular.
SINGULARITY_TOLERANCE = 1e-6


@dataclass(frozen=True, eq=False)
class BodyState(object):
    """Pose and twist of a rigid body.

    `position` is in meters in the world frame, `orientation` is the
    world-from-body unit quaternion ``(w, x, y, z)`` and `twist` is the
    body-frame ``(v, ω)`` in meters and radians per second. The quaternion
    is normalized on construction.

    """
    position: np.ndarray = field(default_factory=lambda: np.zeros(3))
    orientation: np.ndarray = field(default_factory=lambda: IDENTITY_QUAT)
    twist: np.ndarray = field(default_factory=lambda: np.zeros(6))

    def __post_init__(self):
        quat = as_vector(self.orientation, 4, 'orientation')
        norm = np.linalg.norm(quat)
        if norm == 0:
            raise IllegalArgumentError('orientation quaternion must be'
                                       ' nonzero')
        object.__setattr__(self, 'position',
                           as_vector(self.position, 3, 'position'))
        object.__setattr__(self, 'orientation', quat / norm)
        object.__setattr__(self, 'twist', as_vector(self.twist, 6, 'twist'))

    @classmethod
    def from_array(cls, array):
        """Returns the state packed in the 13-vector `array`."""
        array = np.asarray(array, dtype=float)
        return cls(array[:3], array[3:7], array[7:13])

    def as_array(self):
        """Returns this state packed as ``[position, orientation, twist]``."""
        return np.concatenate([self.position, self.orientation, self.twist])

    @property
    def rotation(self):
        """The world-from-body rotation matrix."""
        return rotation_from_quat(self.orientation).as_matrix()

    @property
    def linear_velocity(self):
        return self.twist[:3]

    @property
    def angular_velocity(self):
        return self.twist[3:]

    def euler(self):
        """Returns the ``(roll, pitch, yaw)`` angles of the orientation in the
        ZYX convention.

        """
        return euler_from_quat(self.orientation)


def euler_from_quat(quat):
    """Returns ZYX ``(roll, pitch, yaw)`` of a scalar-first quaternion."""
    yaw, pitch, roll = rotation_from_quat(quat).as_euler('ZYX')
    return np.array([roll, pitch, yaw])


def rotation_from_euler(euler):
    """Returns the world-from-body rotation matrix for ZYX ``(roll, pitch,
    yaw)``.

    """
    roll, pitch, yaw = euler
    return Rotation.from_euler('ZYX', [yaw, pitch, roll]).as_matrix()


def kinematic_transform(orientation=None, euler=None):
    """Returns the 6×6 kinematic transform ``J(η)`` mapping the body twist
    to the rate of the Euler-angle pose.

    Either a scalar-first quaternion `orientation` or ZYX Euler angles
    `euler` ``(roll, pitch, yaw)`` must be given. The upper-left block is
    the body-to-world rotation and the lower-right block maps body angular
    velocity to Euler-angle rates.

    Raises :exc:`SingularityError` if the pitch is within
    :data:`SINGULARITY_TOLERANCE` of a right angle.

    """
    if euler is None:
        if orientation is None:
            raise IllegalArgumentError('an orientation or Euler angles are'
                                       ' required')
        euler = euler_from_quat(orientation)
    roll, pitch, yaw = as_vector(euler, 3, 'Euler angles')
    if abs(abs(pitch) - math.pi / 2) < SINGULARITY_TOLERANCE:
        raise SingularityError('Euler-angle rates are undefined at pitch'
                               ' {0:.9f}'.format(pitch))
    sr, cr = math.sin(roll), math.cos(roll)
    cp, tp = math.cos(pitch), math.tan(pitch)
    rates = np.array([[1.0, sr * tp, cr * tp],
                      [0.0, cr, -sr],
                      [0.0, sr / cp, cr / cp]])
    transform = np.zeros((6, 6))
    transform[:3, :3] = rotation_from_euler((roll, pitch, yaw))
    transform[3:, 3:] = rates
    return transform


@dataclass(frozen=True, eq=False)
class PlantModel(object):
    """The dynamic model of a rigid body in water.

    `mass_matrix` is the symmetric positive definite 6×6 matrix including
    any added mass. `drag` is a :class:`~cubesub.hydro.DragLUT`, or
    ``None`` to disable drag. `restoring` is a function of a
    :class:`BodyState` returning the restoring wrench, or ``None`` for zero.
    `ambient_flow` is a function of world position returning the
    world-frame water velocity, or ``None`` for still water.

    """
    mass_matrix: np.ndarray
    drag: object = None
    restoring: object = None
    ambient_flow: object = None

    def __post_init__(self):
        matrix = as_matrix(self.mass_matrix, (6, 6), 'mass matrix')
        if not is_spd(matrix):
            raise ConfigurationError('mass matrix is not symmetric positive'
                                     ' definite')
        matrix = 0.5 * (matrix + matrix.T)
        matrix.setflags(write=False)
        object.__setattr__(self, 'mass_matrix', matrix)

    @cached_property
    def inverse_mass(self):
        return np.linalg.inv(self.mass_matrix)

    def flow(self, position):
        """Returns the world-frame water velocity at `position`."""
        if self.ambient_flow is None:
            return np.zeros(3)
        return as_vector(self.ambient_flow(position), 3, 'ambient flow')

    def restoring_wrench(self, state):
        if self.restoring is None:
            return np.zeros(6)
        return as_vector(self.restoring(state), 6, 'restoring wrench')

    def without_drag(self):
        """Returns a copy of this plant with drag disabled."""
        return PlantModel(self.mass_matrix, None, self.restoring,
                          self.ambient_flow)


def plant_for_assembly(assembly, drag=None, added_mass=None, restoring=None,
                       ambient_flow=None):
    """Returns the :class:`PlantModel` of `assembly` with dynamics expressed
    at its center of mass.

    """
    props = compose_mass_properties(assembly)
    return PlantModel(mass_matrix(props, added_mass), drag, restoring,
                      ambient_flow)


def relative_twist(state, plant):
    """Returns the body twist relative to the surrounding water,
    ``(v - Rᵀ u, ω)`` where ``u`` is the ambient flow.

    """
    twist = state.twist.copy()
    if plant.ambient_flow is not None:
        twist[:3] -= state.rotation.T @ plant.flow(state.position)
    return twist


def drag_wrench(state, plant):
    """Returns the drag wrench on a body in `state`, zero without drag."""
    if plant.drag is None:
        return np.zeros(6)
    return query_drag(plant.drag, relative_twist(state, plant))


def kinetic_energy(state, plant):
    """Returns ``½ νᵀ M ν``."""
    return 0.5 * state.twist @ plant.mass_matrix @ state.twist


@dataclass(frozen=True, eq=False)
class StateDerivative(object):
    """Time derivative of a :class:`BodyState`."""
    position: np.ndarray
    orientation: np.ndarray
    twist: np.ndarray

    def as_array(self):
        return np.concatenate([self.position, self.orientation, self.twist])


def state_derivative(state, plant, applied_wrench):
    """Returns the :class:`StateDerivative` of `state` under the body-frame
    `applied_wrench`.

    The twist derivative is ``M⁻¹ (τ - C(ν) ν - D(v_r) - g(η))``, the
    position derivative ``R v`` and the quaternion derivative
    ``½ q ⊗ (0, ω)``.

    """
    wrench = as_vector(applied_wrench, 6, 'applied wrench')
    nu = state.twist
    coriolis = coriolis_from_mass_matrix(plant.mass_matrix, nu)
    net = (wrench - coriolis @ nu + drag_wrench(state, plant)
           - plant.restoring_wrench(state))
    twist_rate = plant.inverse_mass @ net
    position_rate = state.rotation @ nu[:3]
    return StateDerivative(position_rate, quat_rate(state.orientation, nu[3:]),
                           twist_rate)


def _derivative(array, plant, wrench_source, t):
    if not np.all(np.isfinite(array)) or not np.any(array[3:7]):
        raise DivergenceError(time=t)
    state = BodyState.from_array(array)
    wrench = wrench_source(t, state)
    return state_derivative(state, plant, wrench).as_array()


def rk4_step(state, plant, wrench_source, t, dt):
    """Advances `state` from time `t` by one classical fourth-order
    Runge-Kutta step of length `dt` and returns the new state.

    `wrench_source` is a function of ``(t, state)`` returning the applied
    body wrench; it is evaluated at every stage. Raises
    :exc:`DivergenceError` if the new state is not finite.

    """
    y = state.as_array()
    k1 = _derivative(y, plant, wrench_source, t)
    k2 = _derivative(y + 0.5 * dt * k1, plant, wrench_source, t + 0.5 * dt)
    k3 = _derivative(y + 0.5 * dt * k2, plant, wrench_source, t + 0.5 * dt)
    k4 = _derivative(y + dt * k3, plant, wrench_source, t + dt)
    y = y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if not np.all(np.isfinite(y)) or np.linalg.norm(y[3:7]) == 0:
        raise DivergenceError(time=t + dt)
    return BodyState.from_array(y)


@dataclass(frozen=True, eq=False)
class Trace(object):
    """A time-indexed sequence of body states.

    Every array has one row per sample: `times` in seconds, `positions`,
    `orientations` (scalar-first quaternions), `twists` and the applied
    `wrenches` at each sample time.

    """
    times: np.ndarray
    positions: np.ndarray
    orientations: np.ndarray
    twists: np.ndarray
    wrenches: np.ndarray

    def __len__(self):
        return len(self.times)

    def state(self, index):
        """Returns the :class:`BodyState` at sample `index`."""
        return BodyState(self.positions[index], self.orientations[index],
                         self.twists[index])

    @property
    def final_state(self):
        return self.state(-1)

    def eulers(self):
        """Returns the ZYX Euler angles of every sample."""
        return np.array([euler_from_quat(q) for q in self.orientations])

    def kinetic_energies(self, plant):
        matrix = plant.mass_matrix
        return 0.5 * np.einsum('ij,jk,ik->i', self.twists, matrix,
                               self.twists)


class TraceRecorder(object):
    """Accumulates samples and builds a :class:`Trace`."""

    def __init__(self):
        self.times = []
        self.states = []
        self.wrenches = []

    def record(self, t, state, wrench):
        self.times.append(t)
        self.states.append(state)
        self.wrenches.append(np.asarray(wrench, dtype=float))

    def trace(self):
        return Trace(times=np.array(self.times),
                     positions=np.array([s.position for s in self.states]),
                     orientations=np.array([s.orientation
                                            for s in self.states]),
                     twists=np.array([s.twist for s in self.states]),
                     wrenches=np.array(self.wrenches))


def step_count(t_start, t_end, dt):
    """Returns the number of steps of length at most `dt` covering
    ``[t_start, t_end]``.

    """
    if not dt > 0:
        raise IllegalArgumentError('time step must be positive')
    if t_end < t_start:
        raise IllegalArgumentError('end time precedes start time')
    return int(math.ceil((t_end - t_start) / dt - 1e-9))


def integrate(state, plant, wrench_source, dt=DEFAULT_DT, t_end=1.0,
              t_start=0.0):
    """Integrates the motion of a body from `state` at `t_start` to
    `t_end` with fixed steps of `dt` and returns the :class:`Trace`.

    `wrench_source` is a function of ``(t, state)``. Sample times are
    ``t_start + k dt``; the last step is shortened to end at `t_end`. The
    quaternion is renormalized after every step. Raises
    :exc:`DivergenceError` with the time of the first non-finite state.

    """
    steps = step_count(t_start, t_end, dt)
    recorder = TraceRecorder()
    t = t_start
    for k in range(steps):
        recorder.record(t, state, wrench_source(t, state))
        t_next = min(t_start + (k + 1) * dt, t_end)
        state = rk4_step(state, plant, wrench_source, t, t_next - t)
        t = t_next
    recorder.record(t, state, wrench_source(t, state))
    logger.debug('integrated %d steps to t = %.3f s', steps, t)
    return recorder.trace()
