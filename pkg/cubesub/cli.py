# cli.py - the cubesub command-line interface
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""The ``cubesub`` command.

Every command reads JSON configuration documents, named either by the
name of a bundled configuration (such as ``single`` or ``spiral``) or by
a path, and writes JSON, CSV, OFF or SVG files. The exit status is 0 on
success, 1 when an input is invalid and 2 when a computation fails
numerically.

"""
from dataclasses import replace
from functools import wraps
import logging
import os.path

import click

from . import __version__
from .capability import DEFAULT_SPACE_DIRECTIONS
from .capability import mie_volume
from .capability import MODES
from .capability import power_space
from .capability import reachable_wrench_space
from .capability import thrust_variance
from .control import build_allocation
from .exceptions import NUMERICAL_ERRORS
from .exceptions import VALIDATION_ERRORS
from .harness import benchmark_report
from .harness import BenchmarkDeserializer
from .harness import KINDS
from .harness import run_batch
from .harness import ScenarioDeserializer
from .hydro import build_drag_lut
from .hydro import DEFAULT_DIRECTIONS
from .morphology import DEFAULT_L_MAX
from .morphology import dirichlet_energy
from .morphology import radial_surface
from .morphology import willmore_energy
from .planner import sample_trajectory
from .plotting import plot_space
from .plotting import plot_trajectory
from .plotting import plot_violins
from .serialization import AssemblyDeserializer
from .serialization import DeserializationException
from .serialization import dumps
from .serialization import load_document
from .serialization import MultipleExceptions
from .serialization import PlanDeserializer
from .serialization import PlanSerializer
from .serialization import read_drag_lut
from .serialization import SpaceDeserializer
from .serialization import SpaceSerializer
from .serialization import write_drag_lut
from .serialization import write_off
from .serialization import write_reference_csv
from .serialization import write_trace_csv
from .store import create_session
from .store import record_report
from .store import record_result
from .vehicle import compose_mass_properties

logger = logging.getLogger(__name__)

#: Exit status for invalid inputs.
EXIT_VALIDATION = 1

#: Exit status for numerical failures.
EXIT_NUMERICAL = 2

#: Format of log records written to standard error.
LOG_FORMAT = '%(levelname)s %(name)s: %(message)s'

#: Exceptions reported with :data:`EXIT_VALIDATION`.
INPUT_ERRORS = VALIDATION_ERRORS + (DeserializationException,
                                    MultipleExceptions, OSError)


class CommandFailed(click.ClickException):
    """A :exc:`click.ClickException` carrying the exit status of a
    failure.

    """

    def __init__(self, message, exit_code):
        super(CommandFailed, self).__init__(message)
        self.exit_code = exit_code


def reports_errors(func):
    """Decorator that turns CubeSub exceptions raised by a command into
    :exc:`CommandFailed` with the matching exit status.

    """
    @wraps(func)
    def wrapped(*args, **kw):
        try:
            return func(*args, **kw)
        except INPUT_ERRORS as exception:
            logger.debug('invalid input', exc_info=True)
            raise CommandFailed(str(exception), EXIT_VALIDATION)
        except NUMERICAL_ERRORS as exception:
            logger.debug('numerical failure', exc_info=True)
            raise CommandFailed(str(exception), EXIT_NUMERICAL)
    return wrapped


def _open(path):
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    return open(path, 'w', newline='')


def _write(path, text):
    with _open(path) as f:
        f.write(text)


def _emit(document, output):
    text = dumps(document)
    if output is None:
        click.echo(text, nl=False)
    else:
        _write(output, text)
        logger.info('wrote %s', output)


def _load_assembly(reference):
    return AssemblyDeserializer().deserialize(reference)


def _kind_of(document):
    if not isinstance(document, dict):
        return None
    if document.get('kind') in KINDS:
        return 'scenario'
    if document.get('kind') in ('wrench', 'power'):
        return 'space'
    if 'placements' in document:
        return 'assembly'
    if 'positions' in document:
        return 'plan'
    if 'assemblies' in document:
        return 'bench'
    return None


#: Deserializer classes by document kind.
DESERIALIZERS = {
    'assembly': AssemblyDeserializer,
    'bench': BenchmarkDeserializer,
    'plan': PlanDeserializer,
    'scenario': ScenarioDeserializer,
    'space': SpaceDeserializer,
}


@click.group()
@click.option('--verbose', '-v', is_flag=True,
              help='Log progress and debugging details.')
@click.version_option(__version__, prog_name='cubesub')
def main(verbose):
    """Models, simulates and analyzes lattice assemblies of underwater
    cube modules.

    """
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING,
                        format=LOG_FORMAT, force=True)


@main.group()
def config():
    """Check configuration documents."""


@config.command('validate')
@click.argument('references', nargs=-1, required=True)
@click.option('--kind', type=click.Choice(sorted(DESERIALIZERS)),
              help='Document kind; guessed from the document if omitted.')
@reports_errors
def validate(references, kind):
    """Validate assembly, scenario, plan, space and benchmark documents."""
    for reference in references:
        document, directory = load_document(reference)
        document_kind = kind or _kind_of(document)
        if document_kind is None:
            raise DeserializationException(
                detail='cannot tell the kind of {0}'.format(reference))
        result = DESERIALIZERS[document_kind](base_path=directory) \
            .deserialize(document)
        if document_kind == 'assembly':
            props = compose_mass_properties(result)
            detail = '{0} modules, {1:.6g} kg'.format(len(result),
                                                       props.total_mass)
        else:
            detail = document_kind
        click.echo('{0}: ok ({1})'.format(reference, detail))


@main.group()
def draglut():
    """Build and inspect drag lookup tables."""


@draglut.command('build')
@click.argument('assembly')
@click.option('--output', '-o', required=True, type=click.Path(),
              help='CSV file to write.')
@click.option('--n-s', default=DEFAULT_DIRECTIONS, show_default=True,
              type=click.IntRange(min=1), help='Number of directions.')
@click.option('--samples', type=click.IntRange(min=3),
              help='Monte Carlo points per module.')
@click.option('--seed', default=0, show_default=True,
              type=click.IntRange(min=0))
@click.option('--rho', type=float, help='Water density, kg/m³.')
@click.option('--c-d', type=float, help='Drag coefficient.')
@click.option('--alpha', type=float, help='α-shape radius, meters.')
@click.option('--workers', default=1, type=click.IntRange(min=1))
@reports_errors
def draglut_build(assembly, output, n_s, samples, seed, rho, c_d, alpha,
                  workers):
    """Build the drag lookup table of ASSEMBLY."""
    kw = {name: value for name, value in (('rho', rho), ('c_d', c_d))
          if value is not None}
    lut = build_drag_lut(_load_assembly(assembly), n_s=n_s, samples=samples,
                         alpha=alpha, seed=seed, workers=workers, **kw)
    with _open(output) as f:
        write_drag_lut(f, lut)
    click.echo('wrote {0} directions to {1}'.format(lut.n_s, output))


@draglut.command('show')
@click.argument('path', type=click.Path(exists=True, dir_okay=False))
@reports_errors
def draglut_show(path):
    """Summarize the drag lookup table stored at PATH."""
    with open(path, newline='') as f:
        lut = read_drag_lut(f)
    area = lut.frontal_area
    _emit({'n_s': lut.n_s, 'rho': lut.rho, 'c_d': lut.c_d, 'seed': lut.seed,
           'samples': lut.samples, 'alpha': lut.alpha,
           'area': {'min': area.min(), 'max': area.max(),
                    'mean': area.mean()}}, None)


def _space_options(func):
    func = click.option('--svg', type=click.Path(),
                        help='Also plot the space to this SVG file.')(func)
    func = click.option('--output', '-o', type=click.Path(),
                        help='JSON file to write (default: stdout).')(func)
    func = click.option('--n-s', default=DEFAULT_SPACE_DIRECTIONS,
                        show_default=True, type=click.IntRange(min=4),
                        help='Number of directions.')(func)
    return click.option('--mode', default='force', show_default=True,
                        type=click.Choice(MODES))(func)


@main.command()
@click.argument('assembly')
@_space_options
@click.option('--normalize', is_flag=True,
              help='Divide extents by the total maximum thruster power.')
@click.option('--free-rows', is_flag=True,
              help='Leave the complementary wrench components free.')
@click.option('--workers', default=1, type=click.IntRange(min=1))
@reports_errors
def wrench(assembly, mode, n_s, output, svg, normalize, free_rows, workers):
    """Compute the reachable wrench space of ASSEMBLY."""
    model = build_allocation(_load_assembly(assembly))
    space = reachable_wrench_space(model, mode=mode, n_s=n_s,
                                   free_rows=free_rows, normalize=normalize,
                                   workers=workers)
    variance = thrust_variance(model, weighting='wrench', mode=mode,
                               directions=space.direction_set)
    metrics = {'mie_volume': mie_volume(space),
               'variance_wrench': variance.variance}
    _emit(SpaceSerializer(metrics=metrics).serialize(space), output)
    if svg:
        plot_space(space, svg)


@main.command()
@click.argument('assembly')
@_space_options
@click.option('--violins', type=click.Path(),
              help='Also plot per-thruster thrust distributions to this SVG'
              ' file.')
@reports_errors
def power(assembly, mode, n_s, output, svg, violins):
    """Compute the power space of ASSEMBLY."""
    model = build_allocation(_load_assembly(assembly))
    space = power_space(model, n_s=n_s, mode=mode)
    variance = thrust_variance(model, weighting='power', mode=mode,
                               directions=space.direction_set)
    metrics = {'total_power': space.total(),
               'variance_power': variance.variance}
    _emit(SpaceSerializer(metrics=metrics).serialize(space), output)
    if svg:
        plot_space(space, svg)
    if violins:
        plot_violins(variance, violins)


@main.command()
@click.argument('space')
@click.option('--l-max', default=DEFAULT_L_MAX, show_default=True,
              type=click.IntRange(min=0),
              help='Maximum spherical harmonic degree.')
@click.option('--off', type=click.Path(),
              help='Also write the radial surface mesh to this OFF file.')
@click.option('--output', '-o', type=click.Path(),
              help='JSON file to write (default: stdout).')
@reports_errors
def morph(space, l_max, off, output):
    """Compute the Willmore and Dirichlet energies of the space stored in
    SPACE (a document written by the wrench or power command).

    """
    document, directory = load_document(space)
    space = SpaceDeserializer(base_path=directory).deserialize(document)
    surface = radial_surface(space)
    willmore = willmore_energy(surface, full_output=True)
    dirichlet = dirichlet_energy(space.direction_set, surface.radii, l_max,
                                 full_output=True)
    _emit({'mode': space.mode, 'l_max': l_max,
           'willmore': willmore.energy,
           'bending': willmore.bending,
           'total_gaussian_curvature': willmore.gauss,
           'dirichlet': dirichlet.energy,
           'spectrum': dirichlet.spectrum(),
           'condition_number': dirichlet.condition_number}, output)
    if off:
        with _open(off) as f:
            write_off(f, surface)


@main.command()
@click.argument('reference')
@click.option('--output', '-o', type=click.Path(),
              help='JSON file to write (default: stdout).')
@click.option('--csv', 'csv_path', type=click.Path(),
              help='Also write the sampled reference to this CSV file.')
@click.option('--dt', default=0.05, show_default=True,
              type=click.FloatRange(min=0, min_open=True),
              help='Sampling period of the CSV file, seconds.')
@reports_errors
def plan(reference, output, csv_path, dt):
    """Plan the minimum snap trajectory of REFERENCE, a waypoint document
    or a tracking scenario.

    """
    document, directory = load_document(reference)
    if _kind_of(document) == 'scenario':
        scenario = ScenarioDeserializer(base_path=directory) \
            .deserialize(document)
        if scenario.trajectory is None:
            raise DeserializationException(detail='scenario has no'
                                           ' trajectory')
        result = scenario.trajectory.plan()
    else:
        result = PlanDeserializer(base_path=directory).deserialize(document)
    _emit(PlanSerializer().serialize(result), output)
    if csv_path:
        with _open(csv_path) as f:
            write_reference_csv(f, sample_trajectory(result, dt))


def _override(scenario, seed, n_s, samples):
    if seed is not None:
        scenario = replace(scenario, seed=seed)
    plant = {}
    if n_s is not None:
        plant['n_s'] = n_s
    if samples is not None:
        plant['samples'] = samples
    if plant:
        scenario = replace(scenario, plant=replace(scenario.plant, **plant))
    return scenario


def export_result(result, directory, svg=False):
    """Writes the traces, references and summary of the
    :class:`~cubesub.harness.SimResult` `result` to `directory`.

    Files are named after the scenario and the body:
    ``<name>_<body>.csv`` holds the trace with the thruster forces
    (``f0``, ``f1``, ...) and the electrical power, ``<name>_<body>
    _reference.csv`` the sampled reference and ``<name>_summary.json`` the
    summary metrics. With `svg`, each trace is also plotted to
    ``<name>_<body>.svg``.

    """
    prefix = os.path.join(directory, result.name)
    for body, trace in result.traces.items():
        extra = {'f': result.thrusts[body], 'power': result.power[body]}
        with _open('{0}_{1}.csv'.format(prefix, body)) as f:
            write_trace_csv(f, trace, extra)
        reference = result.references[body]
        if reference is not None:
            with _open('{0}_{1}_reference.csv'.format(prefix, body)) as f:
                write_reference_csv(f, reference)
        if svg:
            plot_trajectory(trace, reference,
                            '{0}_{1}.svg'.format(prefix, body),
                            '{0}: {1}'.format(result.name, body))
    _write(prefix + '_summary.json', dumps({
        'name': result.name, 'kind': result.kind, 'seed': result.seed,
        'summary': result.summary}))


def _session(database):
    return None if database is None else create_session(database)


@main.command()
@click.argument('scenarios', nargs=-1, required=True)
@click.option('--output-dir', '-d', default='.', show_default=True,
              type=click.Path(file_okay=False),
              help='Directory receiving traces and summaries.')
@click.option('--seed', type=click.IntRange(min=0),
              help='Override the scenario seed.')
@click.option('--n-s', type=click.IntRange(min=1),
              help='Override the drag table directions.')
@click.option('--samples', type=click.IntRange(min=3),
              help='Override the Monte Carlo points per module.')
@click.option('--svg', is_flag=True, help='Also plot every trace.')
@click.option('--workers', default=1, type=click.IntRange(min=1),
              help='Run scenarios concurrently.')
@click.option('--database', metavar='URI',
              help='Record the runs in this database.')
@reports_errors
def simulate(scenarios, output_dir, seed, n_s, samples, svg, workers,
             database):
    """Run the closed-loop SCENARIOS and export their traces."""
    loaded = []
    for reference in scenarios:
        document, directory = load_document(reference)
        scenario = ScenarioDeserializer(base_path=directory) \
            .deserialize(document)
        loaded.append(_override(scenario, seed, n_s, samples))
    results = run_batch(loaded, workers=workers)
    session = _session(database)
    for result in results:
        export_result(result, output_dir, svg)
        if session is not None:
            record_result(session, result)
        click.echo(dumps({result.name: result.summary}), nl=False)


@main.command()
@click.argument('config_reference', metavar='CONFIG', default='bench')
@click.option('--output-dir', '-d', type=click.Path(file_okay=False),
              help='Write bench.json and bench.txt to this directory.')
@click.option('--seed', type=click.IntRange(min=0),
              help='Override the configured seed.')
@click.option('--n-s', type=click.IntRange(min=4),
              help='Override the configured number of directions.')
@click.option('--database', metavar='URI',
              help='Record the report in this database.')
@reports_errors
def bench(config_reference, output_dir, seed, n_s, database):
    """Compute the capability benchmark of the assemblies listed in
    CONFIG (the bundled ``bench`` configuration by default).

    """
    document, directory = load_document(config_reference)
    settings = BenchmarkDeserializer(base_path=directory) \
        .deserialize(document)
    if seed is not None:
        settings = replace(settings, seed=seed)
    if n_s is not None:
        settings = replace(settings, n_s=n_s)
    report = benchmark_report(settings)
    table = report.table()
    if output_dir is not None:
        _write(os.path.join(output_dir, 'bench.json'),
               dumps(report.as_document()))
        _write(os.path.join(output_dir, 'bench.txt'), table)
    session = _session(database)
    if session is not None:
        record_report(session, report)
    click.echo(table, nl=False)
    if report.errors and not report.rows:
        raise CommandFailed('every benchmark configuration failed',
                            EXIT_VALIDATION)
