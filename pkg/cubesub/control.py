# control.py - feedforward PD control and thrust allocation
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Model-based feedforward PD control, pseudo-inverse thrust allocation and
the polynomial thruster models.

:func:`pd_wrench` computes the body wrench requested by the controller,
:func:`build_allocation` builds the thrust allocation model of an assembly
and :func:`allocate` turns a requested wrench into per-thruster forces,
clipped to the thruster limits.

"""
from dataclasses import dataclass
from dataclasses import field
import logging

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.optimize import brentq

from .dynamics import drag_wrench
from .exceptions import IllegalArgumentError
from .helpers import IDENTITY_QUAT
from .helpers import as_vector
from .helpers import quat_error_vector
from .vehicle import compose_mass_properties
from .vehicle import coriolis_from_mass_matrix

logger = logging.getLogger(__name__)

#: Relative singular value cutoff used for rank and pseudo-inverse.
RANK_TOLERANCE = 1e-10

#: Warning carried by an allocation model that cannot produce every wrench.
RANK_WARNING = ('allocation Jacobian has rank {0} < 6; only a subspace of'
                ' wrenches is attainable')


@dataclass(frozen=True)
class GainSet(object):
    """Diagonal proportional gains `kp` and derivative gains `kd`, each a
    6-vector ordered as ``(x, y, z, roll, pitch, yaw)``.

    """
    kp: tuple
    kd: tuple

    def __post_init__(self):
        kp = as_vector(self.kp, 6, 'kp')
        kd = as_vector(self.kd, 6, 'kd')
        if np.any(kp < 0) or np.any(kd < 0):
            raise IllegalArgumentError('gains must be nonnegative')
        object.__setattr__(self, 'kp', tuple(kp))
        object.__setattr__(self, 'kd', tuple(kd))


#: Gains tuned on the spiral tracking scenario for the default module.
DEFAULT_GAINS = GainSet(kp=(20.0, 20.0, 20.0, 5.0, 5.0, 5.0),
                        kd=(15.0, 15.0, 15.0, 2.0, 2.0, 2.0))


def _zeros():
    return np.zeros(3)


@dataclass(frozen=True, eq=False)
class Reference(object):
    """A desired pose with its derivatives.

    `position`, `velocity` and `acceleration` are in the world frame;
    `orientation` is a scalar-first quaternion and `angular_velocity` and
    `angular_acceleration` are expressed in the body frame of the desired
    pose.

    """
    position: np.ndarray
    orientation: np.ndarray = field(default_factory=lambda: IDENTITY_QUAT)
    velocity: np.ndarray = field(default_factory=_zeros)
    acceleration: np.ndarray = field(default_factory=_zeros)
    angular_velocity: np.ndarray = field(default_factory=_zeros)
    angular_acceleration: np.ndarray = field(default_factory=_zeros)

    def __post_init__(self):
        for name in ('position', 'velocity', 'acceleration',
                     'angular_velocity', 'angular_acceleration'):
            object.__setattr__(self, name, as_vector(getattr(self, name), 3,
                                                     name))
        quat = as_vector(self.orientation, 4, 'orientation')
        object.__setattr__(self, 'orientation', quat / np.linalg.norm(quat))


def pose_error(state, reference):
    """Returns the world-frame position error and the world-frame rotation
    vector of ``q_des ⊗ q⁻¹``.

    """
    return (reference.position - state.position,
            quat_error_vector(reference.orientation, state.orientation))


def pd_wrench(state, reference, gains, plant):
    """Returns the body wrench requested by the feedforward PD controller.

    The proportional and derivative terms act on the pose error and its
    rate, mapped into the body frame; the feedforward terms are
    ``M ν̇_d + C(ν) ν + D(v_r) + g(η)`` evaluated with the plant model,
    where ``ν̇_d`` is the desired acceleration in the body frame.

    """
    kp = np.asarray(gains.kp)
    kd = np.asarray(gains.kd)
    rotation = state.rotation
    position_error, attitude_error = pose_error(state, reference)
    velocity_error = reference.velocity - rotation @ state.twist[:3]
    rate_error = reference.angular_velocity - state.twist[3:]
    feedback = np.concatenate([
        rotation.T @ (kp[:3] * position_error + kd[:3] * velocity_error),
        kp[3:] * (rotation.T @ attitude_error) + kd[3:] * rate_error,
    ])
    omega = state.twist[3:]
    body_velocity = rotation.T @ reference.velocity
    desired_rate = np.concatenate([
        rotation.T @ reference.acceleration - np.cross(omega, body_velocity),
        reference.angular_acceleration,
    ])
    coriolis = coriolis_from_mass_matrix(plant.mass_matrix, state.twist)
    feedforward = (plant.mass_matrix @ desired_rate + coriolis @ state.twist
                   - drag_wrench(state, plant)
                   + plant.restoring_wrench(state))
    return feedback + feedforward


@dataclass(frozen=True, eq=False)
class AllocationModel(object):
    """Thrust allocation model of a set of thrusters.

    Column ``i`` of the 6×n `jacobian` is ``[r_i; p_i × r_i]`` for the
    direction ``r_i`` and position ``p_i`` (relative to the center of mass)
    of thruster ``i``. `pseudo_inverse` is the Moore-Penrose inverse of
    `jacobian`. `f_min` and `f_max` are the per-thruster limits, `rank` the
    rank of `jacobian` and `warning` a message when the rank is less than
    six. `thrusters` are the thruster specifications in the center of mass
    frame.

    """
    jacobian: np.ndarray
    pseudo_inverse: np.ndarray
    f_min: np.ndarray
    f_max: np.ndarray
    rank: int
    thrusters: tuple
    warning: str = None

    @property
    def n_t(self):
        """The number of thrusters."""
        return self.jacobian.shape[1]

    @property
    def controllable(self):
        return self.rank == 6


def allocation_from_thrusters(thrusters):
    """Returns the :class:`AllocationModel` of `thrusters`, whose positions
    are taken relative to the reference point of the model.

    """
    thrusters = tuple(thrusters)
    if not thrusters:
        raise IllegalArgumentError('at least one thruster is required')
    jacobian = np.column_stack([t.wrench for t in thrusters])
    pseudo_inverse = np.linalg.pinv(jacobian, rcond=RANK_TOLERANCE)
    rank = int(np.linalg.matrix_rank(jacobian,
                                     tol=RANK_TOLERANCE
                                     * np.abs(jacobian).max()))
    warning = None
    if rank < 6:
        warning = RANK_WARNING.format(rank)
        logger.warning(warning)
    f_min = np.array([t.f_min for t in thrusters])
    f_max = np.array([t.f_max for t in thrusters])
    for array in (jacobian, pseudo_inverse, f_min, f_max):
        array.setflags(write=False)
    return AllocationModel(jacobian=jacobian, pseudo_inverse=pseudo_inverse,
                           f_min=f_min, f_max=f_max, rank=rank,
                           thrusters=thrusters, warning=warning)


def build_allocation(assembly, props=None):
    """Returns the :class:`AllocationModel` of every thruster of
    `assembly`, with positions relative to its center of mass.

    If `props` is ``None``, the mass properties are computed with
    :func:`~cubesub.vehicle.compose_mass_properties`.

    """
    if props is None:
        props = compose_mass_properties(assembly)
    thrusters = [t.transformed(np.eye(3), -props.com)
                 for t in assembly.thrusters()]
    return allocation_from_thrusters(thrusters)


@dataclass(frozen=True, eq=False)
class AllocationResult(object):
    """Per-thruster forces produced by :func:`allocate`.

    `thrusts` are the clipped forces, `unclipped` the pseudo-inverse
    solution, `clipped` a boolean array marking saturated thrusters,
    `wrench` the wrench actually produced and `residual` the norm of the
    difference between `wrench` and the request.

    """
    thrusts: np.ndarray
    unclipped: np.ndarray
    clipped: np.ndarray
    wrench: np.ndarray
    residual: float

    @property
    def saturated(self):
        return bool(self.clipped.any())


def allocate(model, wrench):
    """Returns the :class:`AllocationResult` for the requested body
    `wrench`.

    The minimum-norm forces ``J⁺ τ`` are clipped to the thruster limits
    without redistribution.

    """
    wrench = as_vector(wrench, 6, 'wrench')
    unclipped = model.pseudo_inverse @ wrench
    thrusts = np.clip(unclipped, model.f_min, model.f_max)
    clipped = thrusts != unclipped
    produced = model.jacobian @ thrusts
    residual = float(np.linalg.norm(produced - wrench))
    if clipped.any():
        logger.debug('clipped %d of %d thrusters', clipped.sum(), model.n_t)
    return AllocationResult(thrusts=thrusts, unclipped=unclipped,
                            clipped=clipped, wrench=produced,
                            residual=residual)


def thrust_from_command(command, cmd_poly):
    """Returns the thrust, in Newtons, for the normalized `command` under
    the polynomial with increasing-order coefficients `cmd_poly`.

    """
    return P.polyval(command, np.asarray(cmd_poly, dtype=float))


def command_from_thrust(thrust, cmd_poly, command_range=(-1.0, 1.0)):
    """Returns the command in `command_range` producing `thrust`.

    `cmd_poly` must be strictly monotone over `command_range`. The command
    is found by bracketed root finding. Raises
    :exc:`IllegalArgumentError` if `thrust` is not attainable.

    """
    low, high = command_range
    f_low = thrust_from_command(low, cmd_poly)
    f_high = thrust_from_command(high, cmd_poly)
    if not min(f_low, f_high) <= thrust <= max(f_low, f_high):
        msg = 'thrust {0} N is outside the attainable range [{1}, {2}]'
        raise IllegalArgumentError(msg.format(thrust, min(f_low, f_high),
                                              max(f_low, f_high)))
    if thrust == f_low:
        return float(low)
    if thrust == f_high:
        return float(high)

    def residual(u):
        return thrust_from_command(u, cmd_poly) - thrust

    return brentq(residual, low, high, xtol=1e-14, rtol=1e-15)


def thruster_power(thrust, power_poly):
    """Returns the electrical power, in Watts, drawn at `thrust` under the
    polynomial with increasing-order coefficients `power_poly`.

    """
    return P.polyval(thrust, np.asarray(power_poly, dtype=float))
