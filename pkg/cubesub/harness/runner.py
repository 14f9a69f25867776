# runner.py - closed-loop scenario runner
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Runs scenarios and collects their results.

Each simulated body runs the same loop at every sample time: the
controller requests a body wrench, the allocation turns it into clipped
thruster forces, and the wrench those forces produce is held constant over
the following fourth-order Runge-Kutta step. Every series of a body is
recorded at the sample times, so the metrics in :attr:`SimResult.summary`
can be recomputed from the exported series.

In a self-assembly run the two bodies are monitored for docking after
every sample; once docked they are merged between two steps into a single
body whose mass properties, drag table and allocation are rebuilt from the
merged lattice.

"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import logging
import math

import numpy as np
from numpy.random import default_rng

from ..control import allocate
from ..control import build_allocation
from ..control import pd_wrench
from ..control import Reference
from ..control import thruster_power
from ..dynamics import BodyState
from ..dynamics import PlantModel
from ..dynamics import rk4_step
from ..dynamics import step_count
from ..dynamics import TraceRecorder
from ..helpers import nearest_cube_rotation
from ..helpers import quat_multiply
from ..hydro import build_drag_lut
from ..planner import plan_min_snap
from ..planner import reference_series
from ..planner import ReferenceSeries
from ..vehicle import Assembly
from ..vehicle import compose_mass_properties
from ..vehicle import mass_matrix
from ..vehicle import Placement
from .metrics import DockingMonitor
from .metrics import rmse
from .scenario import PlantConfig

logger = logging.getLogger(__name__)


def build_plant(assembly, config=None, seed=0, props=None):
    """Returns the :class:`~cubesub.dynamics.PlantModel` of `assembly`
    configured by the :class:`~cubesub.harness.scenario.PlantConfig`
    `config`, with its drag table built from `seed`.

    """
    config = config or PlantConfig()
    if props is None:
        props = compose_mass_properties(assembly)
    lut = None
    if config.drag:
        lut = build_drag_lut(assembly, n_s=config.n_s, rho=config.rho,
                             c_d=config.c_d, samples=config.samples,
                             alpha=config.alpha, seed=seed,
                             workers=config.workers)
    flow = None
    if config.ambient_flow is not None:
        velocity = np.array(config.ambient_flow, dtype=float)

        def flow(position):
            return velocity

    return PlantModel(mass_matrix(props, config.added_mass), lut, None, flow)


def _yaw_quat(yaw):
    return np.array([math.cos(yaw / 2.0), 0.0, 0.0, math.sin(yaw / 2.0)])


def tracking_controller(plan, gains):
    """Returns a controller following `plan` with the PD `gains`."""

    def controller(t, state, plant):
        return pd_wrench(state, plan.reference(t), gains, plant)

    return controller


def hold_controller(reference, gains):
    """Returns a controller holding the constant `reference`."""

    def controller(t, state, plant):
        return pd_wrench(state, reference, gains, plant)

    return controller


def scripted_controller(script):
    """Returns a controller requesting, at time ``t``, the wrench of the
    last entry of `script` (a sorted sequence of ``(time, wrench)`` pairs)
    whose time is not after ``t``, and zero before the first entry.

    """
    times = np.array([entry[0] for entry in script], dtype=float)
    wrenches = [np.asarray(entry[1], dtype=float) for entry in script]

    def controller(t, state, plant):
        index = int(np.searchsorted(times, t + 1e-12, side='right')) - 1
        return wrenches[index] if index >= 0 else np.zeros(6)

    return controller


class SimulatedBody(object):
    """One closed-loop body of a run.

    `controller` is a function of ``(t, state, plant)`` returning the
    requested body wrench. `reference` is a function of an array of times
    returning a :class:`~cubesub.planner.ReferenceSeries`, or ``None``
    when the body follows no reference.

    """

    def __init__(self, name, assembly, plant, state, controller,
                 reference=None, props=None):
        self.name = name
        self.assembly = assembly
        self.props = props or compose_mass_properties(assembly)
        self.plant = plant
        self.allocation = build_allocation(assembly, self.props)
        self.state = state
        self.controller = controller
        self.reference = reference
        self.recorder = TraceRecorder()
        self.thrusts = []
        self.power = []
        self.saturated = []
        self._power_polys = [t.power_poly for t in self.allocation.thrusters]
        self._held = np.zeros(6)

    def actuate(self, t):
        """Computes and records the actuation at sample time `t`."""
        requested = self.controller(t, self.state, self.plant)
        result = allocate(self.allocation, requested)
        power = sum(thruster_power(f, poly)
                    for f, poly in zip(result.thrusts, self._power_polys))
        self.recorder.record(t, self.state, result.wrench)
        self.thrusts.append(result.thrusts)
        self.power.append(float(power))
        self.saturated.append(result.saturated)
        self._held = result.wrench

    def advance(self, t, dt):
        held = self._held
        self.state = rk4_step(self.state, self.plant,
                              lambda _t, _state: held, t, dt)

    def summary(self, trace):
        """Returns the summary metrics of this body for its `trace`."""
        times = trace.times
        power = np.array(self.power)
        result = {
            'samples': len(trace),
            'energy': float(np.sum(power[:-1] * np.diff(times))),
            'saturation_steps': int(np.sum(self.saturated[:-1])),
            'peak_power': float(power.max()),
            'position_rmse': None,
            'orientation_rmse': None,
        }
        if self.reference is not None:
            error = rmse(trace, self.reference(times))
            result.update(position_rmse=error.position,
                          orientation_rmse=error.orientation)
        return result


@dataclass(frozen=True, eq=False)
class SimResult(object):
    """The outcome of a scenario run.

    Every dictionary is keyed by body name. `traces` holds the
    :class:`~cubesub.dynamics.Trace` of each body and `references` the
    :class:`~cubesub.planner.ReferenceSeries` on the same time base (or
    ``None``). `thrusts` holds the clipped thruster forces and `power` the
    total electrical power at each sample. `summary` holds the metrics of
    each body and, for self-assembly runs, the docking and merge times.
    `assemblies` and `mass_properties` describe each body.

    """
    name: str
    kind: str
    seed: int
    traces: dict
    references: dict
    thrusts: dict
    power: dict
    summary: dict
    assemblies: dict
    mass_properties: dict


def _collect(scenario, bodies, extra=None):
    traces = {}
    references = {}
    summary = {}
    for body in bodies:
        trace = body.recorder.trace()
        traces[body.name] = trace
        references[body.name] = (None if body.reference is None
                                 else body.reference(trace.times))
        summary[body.name] = body.summary(trace)
    summary.update(extra or {})
    return SimResult(name=scenario.name, kind=scenario.kind,
                     seed=scenario.seed, traces=traces,
                     references=references,
                     thrusts={b.name: np.array(b.thrusts) for b in bodies},
                     power={b.name: np.array(b.power) for b in bodies},
                     summary=summary,
                     assemblies={b.name: b.assembly for b in bodies},
                     mass_properties={b.name: b.props for b in bodies})


def _perturbed(state, perturbation, rng):
    offset, yaw = perturbation.sample(rng)
    orientation = quat_multiply(_yaw_quat(yaw), state.orientation)
    return BodyState(state.position + offset, orientation, state.twist)


def run_scenario(scenario):
    """Runs a ``'track'`` or ``'teleop'`` `scenario` and returns its
    :class:`SimResult`.

    Self-assembly scenarios are passed on to :func:`run_self_assembly`.
    Raises :exc:`~cubesub.exceptions.DivergenceError` with the time of
    failure if the simulation diverges.

    """
    if scenario.kind == 'self_assembly':
        return run_self_assembly(scenario)
    plan = scenario.validate()
    rng = default_rng(scenario.seed)
    props = compose_mass_properties(scenario.assembly)
    plant = build_plant(scenario.assembly, scenario.plant, scenario.seed,
                        props)
    if plan is not None:
        controller = tracking_controller(plan, scenario.gains)
        t_start = plan.t_start
        t_end = plan.t_end if scenario.t_end is None else scenario.t_end

        def reference(times):
            return reference_series(plan, times)

        start = plan.reference(t_start)
        state = BodyState(start.position, start.orientation)
    else:
        controller = scripted_controller(scenario.teleop)
        reference = None
        t_start, t_end = 0.0, scenario.t_end
        state = BodyState()
    if scenario.initial_state is not None:
        state = scenario.initial_state
    state = _perturbed(state, scenario.perturbation, rng)
    body = SimulatedBody(scenario.assembly.name, scenario.assembly, plant,
                         state, controller, reference, props)
    _run([body], t_start, t_end, scenario.dt)
    result = _collect(scenario, [body])
    logger.info('scenario %s finished: %s', scenario.name,
                result.summary[body.name])
    return result


def _run(bodies, t_start, t_end, dt, after_actuation=None):
    steps = step_count(t_start, t_end, dt)
    t = t_start
    for k in range(steps):
        for body in bodies:
            body.actuate(t)
        if after_actuation is not None:
            bodies = after_actuation(t, bodies)
        t_next = min(t_start + (k + 1) * dt, t_end)
        for body in bodies:
            body.advance(t, t_next - t)
        t = t_next
    for body in bodies:
        body.actuate(t)
    return bodies


def merge_bodies(first, second, plant_config, seed, gains, t,
                 name='merged'):
    """Merges two docked :class:`SimulatedBody` objects into one and
    returns it.

    The lattice of `second` is expressed in the frame of `first`, with its
    relative orientation snapped to the nearest cube rotation and its
    cells rounded to the lattice. The merged body conserves the total
    linear and angular momentum of the pair and holds its pose at the
    merge time `t`.

    """
    length = first.assembly.edge_length
    rot_a = first.state.rotation
    rot_b = second.state.rotation
    relative = nearest_cube_rotation(rot_a.T @ rot_b)
    placements = list(first.assembly.modules)
    for placement in second.assembly.modules:
        center = np.asarray(placement.cell, dtype=float) * length \
            + length / 2.0 - second.props.com
        world = second.state.position + rot_b @ center
        local = rot_a.T @ (world - first.state.position) + first.props.com
        cell = np.rint(local / length - 0.5).astype(int)
        placements.append(Placement(placement.module, tuple(cell),
                                    relative @ placement.orientation))
    assembly = Assembly(placements, name=name)
    props = compose_mass_properties(assembly)
    position = first.state.position + rot_a @ (props.com - first.props.com)

    parts = [(b.props, b.state, b.state.rotation) for b in (first, second)]
    velocity = sum(p.total_mass * (r @ s.twist[:3])
                   for p, s, r in parts) / props.total_mass
    momentum = np.zeros(3)
    for part_props, state, rotation in parts:
        spin = rotation @ part_props.inertia @ state.twist[3:]
        lever = np.cross(state.position - position,
                         rotation @ state.twist[:3] - velocity)
        momentum += spin + part_props.total_mass * lever
    inertia = rot_a @ props.inertia @ rot_a.T
    omega = np.linalg.solve(inertia, momentum)
    state = BodyState(position, first.state.orientation,
                      np.concatenate([rot_a.T @ velocity, rot_a.T @ omega]))

    yaw = float(first.state.euler()[2])
    hold = Reference(position=position, orientation=_yaw_quat(yaw))

    def reference(times):
        count = len(times)
        return ReferenceSeries(times=np.asarray(times, dtype=float),
                               positions=np.tile(position, (count, 1)),
                               velocities=np.zeros((count, 3)),
                               accelerations=np.zeros((count, 3)),
                               yaws=np.tile([yaw, 0.0, 0.0], (count, 1)))

    plant = build_plant(assembly, plant_config, seed, props)
    logger.info('merged %s and %s into %d modules at t = %.3f s',
                first.name, second.name, len(assembly), t)
    return SimulatedBody(name, assembly, plant, state,
                         hold_controller(hold, gains), reference, props)


def run_self_assembly(scenario):
    """Runs a ``'self_assembly'`` `scenario` and returns its
    :class:`SimResult`.

    Each body follows a straight rest-to-rest line from its start to its
    goal over the approach time and then holds the goal. The summary holds
    ``docked_at`` (``None`` if the bodies never docked) and ``merged_at``.

    """
    scenario.validate()
    rng = default_rng(scenario.seed)
    bodies = []
    for config in scenario.bodies:
        plan = plan_min_snap([config.start, config.goal],
                             [0.0, scenario.approach_time], yaw=config.yaw)
        start = plan.reference(0.0)
        state = _perturbed(BodyState(start.position, start.orientation),
                           scenario.perturbation, rng)

        def reference(times, plan=plan):
            return reference_series(plan, times)

        plant = build_plant(config.assembly, scenario.plant, scenario.seed)
        bodies.append(SimulatedBody(
            config.name, config.assembly, plant, state,
            tracking_controller(plan, scenario.gains), reference))
    docking = scenario.docking
    distance = docking.distance or bodies[0].assembly.edge_length
    monitor = DockingMonitor(distance, docking.window, docking.tolerance)
    finished = list(bodies)
    events = {'docked_at': None, 'merged_at': None}

    def after_actuation(t, active):
        if len(active) != 2:
            return active
        first, second = active
        docked = monitor.update(t, first.state.position,
                                second.state.position)
        if docked is None or events['docked_at'] is not None:
            return active
        events['docked_at'] = docked
        if not docking.merge:
            return active
        merged = merge_bodies(first, second, scenario.plant, scenario.seed,
                              scenario.gains, t)
        merged.actuate(t)
        events['merged_at'] = t
        finished.append(merged)
        return [merged]

    _run(bodies, 0.0, scenario.t_end, scenario.dt, after_actuation)
    result = _collect(scenario, finished, events)
    logger.info('self-assembly %s finished: docked at %s', scenario.name,
                events['docked_at'])
    return result


def run_batch(scenarios, workers=1):
    """Runs every scenario, possibly in `workers` threads, and returns the
    results in order.

    """
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(run_scenario, scenarios))
    return [run_scenario(s) for s in scenarios]
