# scenario.py - scenario configuration
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Scenario configuration and its JSON deserializer.

A scenario describes one experiment: a trajectory tracking run (kind
``'track'``), a scripted wrench run (kind ``'teleop'``) or a two-body
self-assembly run (kind ``'self_assembly'``). Every random choice of a run
is derived from the single top-level ``seed``.

A minimal tracking scenario looks like this::

    {
        "version": 1,
        "kind": "track",
        "assembly": "single",
        "trajectory": {"type": "spiral", "radius": 1.0, "pitch": 0.5,
                       "turns": 2, "count": 17, "speed": 0.2},
        "dt": 0.01
    }

"""
from dataclasses import dataclass
from dataclasses import field
import math

import numpy as np

from ..control import DEFAULT_GAINS
from ..control import GainSet
from ..dynamics import BodyState
from ..dynamics import DEFAULT_DT
from ..exceptions import CubeSubError
from ..exceptions import IllegalArgumentError
from ..helpers import as_matrix
from ..hydro import DEFAULT_DIRECTIONS
from ..hydro import DEFAULT_DRAG_COEFFICIENT
from ..planner import allocate_times
from ..planner import DEFAULT_ORDER
from ..planner import mobius_waypoints
from ..planner import plan_min_snap
from ..planner import spiral_waypoints
from ..serialization import AssemblyDeserializer
from ..serialization import check_version
from ..serialization import Deserializer
from ..serialization import get_field
from ..serialization import integer_field
from ..serialization import InvalidField
from ..serialization import number_field
from ..serialization import vector_field
from ..vehicle import DEFAULT_WATER_DENSITY
from .metrics import DEFAULT_DOCKING_TOLERANCE
from .metrics import DEFAULT_DOCKING_WINDOW

#: The kinds of scenario.
KINDS = ('track', 'teleop', 'self_assembly')

#: The trajectory types.
TRAJECTORY_TYPES = ('spiral', 'mobius', 'waypoints')

#: Default nominal speed, in meters per second, along planned paths.
DEFAULT_SPEED = 0.2

#: The time step must be smaller than the shortest segment duration
#: divided by this factor.
SEGMENT_STEPS = 10


@dataclass(frozen=True, eq=False)
class PlantConfig(object):
    """Parameters of the plant models built for each simulated body.

    `n_s`, `samples`, `alpha`, `rho` and `c_d` configure the drag lookup
    table (see :func:`~cubesub.hydro.build_drag_lut`); `drag` disables it
    when ``False``. `added_mass` is a 6×6 matrix or ``None`` and
    `ambient_flow` a constant world-frame water velocity or ``None``.

    """
    rho: float = DEFAULT_WATER_DENSITY
    c_d: float = DEFAULT_DRAG_COEFFICIENT
    n_s: int = DEFAULT_DIRECTIONS
    samples: int = None
    alpha: float = None
    drag: bool = True
    added_mass: np.ndarray = None
    ambient_flow: np.ndarray = None
    workers: int = 1


@dataclass(frozen=True, eq=False)
class TrajectoryConfig(object):
    """A planned path.

    `kind` is one of :data:`TRAJECTORY_TYPES`. The spiral uses `radius`,
    `pitch`, `turns` and `count`; the Möbius path uses `radius`,
    `half_width` and `count`; explicit waypoints use `positions` and
    optionally `times`. Without times, waypoint times are allocated at the
    nominal `speed`. Generated paths are shifted by `origin`.

    """
    kind: str = 'waypoints'
    radius: float = 1.0
    pitch: float = 0.0
    turns: float = 1.0
    half_width: float = 0.0
    count: int = 17
    positions: np.ndarray = None
    times: np.ndarray = None
    speed: float = DEFAULT_SPEED
    yaw: object = None
    order: int = DEFAULT_ORDER
    origin: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def waypoints(self):
        """Returns the waypoint positions of this path."""
        if self.kind == 'spiral':
            points = spiral_waypoints(self.radius, self.pitch, self.turns,
                                      self.count)
        elif self.kind == 'mobius':
            points = mobius_waypoints(self.radius, self.half_width,
                                      self.count)
        else:
            points = np.asarray(self.positions, dtype=float)
        return points + self.origin

    def plan(self):
        """Returns the minimum snap plan of this path."""
        positions = self.waypoints()
        times = self.times
        if times is None:
            times = allocate_times(positions, self.speed)
        return plan_min_snap(positions, times, order=self.order,
                             yaw=self.yaw)


@dataclass(frozen=True, eq=False)
class BodyConfig(object):
    """One body of a self-assembly scenario, driven along a straight line
    from `start` to `goal` with constant `yaw`.

    """
    name: str
    assembly: object
    start: np.ndarray
    goal: np.ndarray
    yaw: float = 0.0


@dataclass(frozen=True)
class DockingConfig(object):
    """Docking detection parameters.

    `distance` is the center distance at which the bodies touch; ``None``
    means one module edge length. With `merge`, docked bodies are merged
    into one assembly that continues the run.

    """
    window: float = DEFAULT_DOCKING_WINDOW
    tolerance: float = DEFAULT_DOCKING_TOLERANCE
    distance: float = None
    merge: bool = True


@dataclass(frozen=True)
class Perturbation(object):
    """Standard deviations of the seeded initial pose perturbation, in
    meters per axis for `position` and radians for `yaw`.

    """
    position: float = 0.0
    yaw: float = 0.0

    def sample(self, rng):
        """Returns a position offset and a yaw offset drawn from `rng`."""
        offset = rng.normal(0.0, self.position, 3) if self.position else \
            np.zeros(3)
        yaw = float(rng.normal(0.0, self.yaw)) if self.yaw else 0.0
        return offset, yaw


@dataclass(frozen=True, eq=False)
class Scenario(object):
    """A complete experiment description.

    `assembly` is the simulated :class:`~cubesub.vehicle.Assembly` of the
    ``'track'`` and ``'teleop'`` kinds; `bodies` are the two
    :class:`BodyConfig` objects of a ``'self_assembly'`` run. `teleop` is
    a sequence of ``(t, wrench)`` pairs applied from time ``t`` on.
    `t_end` of ``None`` ends a tracking run with its plan.
    `initial_state` of ``None`` starts a tracking run at rest at the start
    of its plan.

    """
    kind: str = 'track'
    name: str = 'scenario'
    seed: int = 0
    assembly: object = None
    plant: PlantConfig = field(default_factory=PlantConfig)
    gains: GainSet = DEFAULT_GAINS
    trajectory: TrajectoryConfig = None
    teleop: tuple = ()
    dt: float = DEFAULT_DT
    t_end: float = None
    initial_state: BodyState = None
    perturbation: Perturbation = field(default_factory=Perturbation)
    bodies: tuple = ()
    approach_time: float = 20.0
    docking: DockingConfig = field(default_factory=DockingConfig)

    def validate(self):
        """Checks the scenario and returns its plan, if any.

        Raises :exc:`IllegalArgumentError` if the time step is not
        positive, if the run has no end or if the time step is not
        smaller than a tenth of the shortest planned segment.

        """
        if self.kind not in KINDS:
            raise IllegalArgumentError('unknown scenario kind'
                                       ' {0!r}'.format(self.kind))
        if not self.dt > 0:
            raise IllegalArgumentError('time step must be positive')
        plan = None
        if self.kind == 'track':
            if self.assembly is None or self.trajectory is None:
                raise IllegalArgumentError('a tracking scenario needs an'
                                           ' assembly and a trajectory')
            plan = self.trajectory.plan()
            shortest = float(plan.durations.min())
            if not self.dt < shortest / SEGMENT_STEPS:
                msg = ('time step {0} s is not below a tenth of the shortest'
                       ' segment ({1} s)')
                raise IllegalArgumentError(msg.format(self.dt, shortest))
        elif self.kind == 'teleop':
            if self.assembly is None or self.t_end is None:
                raise IllegalArgumentError('a teleoperation scenario needs'
                                           ' an assembly and an end time')
        else:
            if len(self.bodies) != 2:
                raise IllegalArgumentError('a self-assembly scenario needs'
                                           ' exactly two bodies')
            if self.t_end is None or not self.approach_time > 0:
                raise IllegalArgumentError('a self-assembly scenario needs'
                                           ' an end time and a positive'
                                           ' approach time')
            if not self.dt < self.approach_time / SEGMENT_STEPS:
                raise IllegalArgumentError('time step is too long for the'
                                           ' approach time')
        return plan


class ScenarioDeserializer(Deserializer):
    """Deserializes a ``scenario.json`` document to a :class:`Scenario`.

    Assembly references are resolved relative to `base_path`, the
    directory of the scenario file. Numerical errors raised while
    validating the scenario (for instance an ill-conditioned plan) are
    reported as :exc:`~cubesub.serialization.InvalidField`.

    """

    def deserialize(self, document):
        check_version(document)
        kind = get_field(document, 'kind', default='track')
        if kind not in KINDS:
            raise InvalidField('kind', 'expected one of {0}'.format(KINDS))
        assemblies = AssemblyDeserializer(base_path=self.base_path)
        assembly = get_field(document, 'assembly', default=None)
        if assembly is not None:
            assembly = assemblies.deserialize(assembly)
        kw = dict(
            kind=kind,
            name=get_field(document, 'name', default=kind),
            seed=integer_field(document, 'seed', default=0, minimum=0),
            assembly=assembly,
            plant=self._plant(get_field(document, 'plant', default={})),
            gains=self._gains(get_field(document, 'gains', default=None)),
            dt=number_field(document, 'dt', default=DEFAULT_DT,
                            positive=True),
            t_end=number_field(document, 't_end', default=None,
                               positive=True),
            perturbation=self._perturbation(
                get_field(document, 'perturbation', default={})),
        )
        trajectory = get_field(document, 'trajectory', default=None)
        if trajectory is not None:
            kw['trajectory'] = self._trajectory(trajectory)
        kw['teleop'] = self._teleop(get_field(document, 'teleop',
                                              default=[]))
        initial = get_field(document, 'initial_state', default=None)
        if initial is not None:
            kw['initial_state'] = BodyState(
                vector_field(initial, 'position', 3, 'initial_state',
                             default=np.zeros(3)),
                vector_field(initial, 'orientation', 4, 'initial_state',
                             default=np.array([1.0, 0.0, 0.0, 0.0])),
                vector_field(initial, 'twist', 6, 'initial_state',
                             default=np.zeros(6)))
        bodies = get_field(document, 'bodies', default=[])
        kw['bodies'] = tuple(self._body(body, index, assemblies)
                             for index, body in enumerate(bodies))
        kw['approach_time'] = number_field(document, 'approach_time',
                                           default=20.0, positive=True)
        docking = get_field(document, 'docking', default={})
        kw['docking'] = DockingConfig(
            window=number_field(docking, 'window', 'docking',
                                default=DEFAULT_DOCKING_WINDOW),
            tolerance=number_field(docking, 'tol', 'docking',
                                   default=DEFAULT_DOCKING_TOLERANCE,
                                   positive=True),
            distance=number_field(docking, 'distance', 'docking',
                                  default=None, positive=True),
            merge=bool(get_field(docking, 'merge', 'docking',
                                 default=True)))
        try:
            scenario = Scenario(**kw)
            scenario.validate()
        except IllegalArgumentError as exception:
            raise InvalidField('scenario', exception.detail)
        except CubeSubError as exception:
            raise InvalidField('trajectory', exception.detail)
        return scenario

    def _plant(self, data):
        kw = {}
        for name in ('rho', 'c_d', 'alpha'):
            value = number_field(data, name, 'plant', default=None,
                                 positive=True)
            if value is not None:
                kw[name] = value
        for name in ('n_s', 'samples', 'workers'):
            value = integer_field(data, name, 'plant', default=None,
                                  minimum=1)
            if value is not None:
                kw[name] = value
        kw['drag'] = bool(get_field(data, 'drag', 'plant', default=True))
        added_mass = get_field(data, 'added_mass', 'plant', default=None)
        if added_mass is not None:
            try:
                kw['added_mass'] = as_matrix(added_mass, (6, 6),
                                             'added_mass')
            except (IllegalArgumentError, TypeError, ValueError) as exc:
                raise InvalidField('added_mass', str(exc))
        kw['ambient_flow'] = vector_field(data, 'ambient_flow', 3, 'plant',
                                          default=None)
        return PlantConfig(**kw)

    def _gains(self, data):
        if data is None:
            return DEFAULT_GAINS
        try:
            return GainSet(kp=vector_field(data, 'kp', 6, 'gains'),
                           kd=vector_field(data, 'kd', 6, 'gains'))
        except IllegalArgumentError as exception:
            raise InvalidField('gains', exception.detail)

    def _perturbation(self, data):
        return Perturbation(
            position=number_field(data, 'position', 'perturbation',
                                  default=0.0),
            yaw=number_field(data, 'yaw', 'perturbation', default=0.0))

    def _trajectory(self, data):
        kind = get_field(data, 'type', 'trajectory')
        if kind not in TRAJECTORY_TYPES:
            raise InvalidField('type', 'expected one of'
                               ' {0}'.format(TRAJECTORY_TYPES))
        kw = dict(kind=kind, yaw=get_field(data, 'yaw', default=None),
                  speed=number_field(data, 'speed', 'trajectory',
                                     default=DEFAULT_SPEED, positive=True),
                  order=integer_field(data, 'order', 'trajectory',
                                      default=DEFAULT_ORDER, minimum=5),
                  origin=vector_field(data, 'origin', 3, 'trajectory',
                                      default=np.zeros(3)))
        if kind == 'waypoints':
            positions = get_field(data, 'positions', 'trajectory')
            try:
                positions = np.asarray(positions, dtype=float)
            except (TypeError, ValueError) as exception:
                raise InvalidField('positions', str(exception))
            if positions.ndim != 2 or positions.shape[1] != 3:
                raise InvalidField('positions', 'expected a list of'
                                   ' 3-vectors')
            kw['positions'] = positions
            kw['times'] = vector_field(data, 'times', len(positions),
                                       'trajectory', default=None)
        else:
            kw['radius'] = number_field(data, 'radius', 'trajectory',
                                        positive=True)
            kw['count'] = integer_field(data, 'count', 'trajectory',
                                        default=17, minimum=8)
            if kind == 'spiral':
                kw['pitch'] = number_field(data, 'pitch', 'trajectory',
                                           default=0.0)
                kw['turns'] = number_field(data, 'turns', 'trajectory',
                                           default=1.0, positive=True)
            else:
                kw['half_width'] = number_field(data, 'half_width',
                                                'trajectory', default=0.0)
        return TrajectoryConfig(**kw)

    def _teleop(self, data):
        if not isinstance(data, list):
            raise InvalidField('teleop', 'expected a list')
        script = []
        for index, entry in enumerate(data):
            within = 'teleop entry {0}'.format(index)
            t = number_field(entry, 't', within)
            script.append((t, vector_field(entry, 'wrench', 6, within)))
        script.sort(key=lambda pair: pair[0])
        return tuple(script)

    def _body(self, data, index, assemblies):
        within = 'body {0}'.format(index)
        yaw = number_field(data, 'yaw', within, default=0.0)
        if not math.isfinite(yaw):
            raise InvalidField('yaw', 'must be finite')
        return BodyConfig(
            name=get_field(data, 'name', within, default='body{0}'.format(
                index)),
            assembly=assemblies.deserialize(get_field(data, 'assembly',
                                                      within)),
            start=vector_field(data, 'start', 3, within),
            goal=vector_field(data, 'goal', 3, within),
            yaw=yaw)


def load_scenario(reference, base_path=None):
    """Returns the :class:`Scenario` named by `reference`, a bundled
    configuration name or a path.

    """
    return ScenarioDeserializer(base_path=base_path).load(reference)
