# benchmark.py - capability benchmark over several assemblies
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""The capability benchmark.

For every assembly configuration the benchmark computes fourteen metrics
(:data:`METRICS`): the Dirichlet and Willmore energies of the power space
and of the reachable wrench space in the force and torque frames, the
total unit-wrench power in both frames, the inscribed ellipsoid volume of
the wrench space in both frames and the two thrust variances. A
configuration that fails is reported with its error and does not prevent
the others from being evaluated.

"""
from dataclasses import dataclass
from dataclasses import field
import logging

from ..capability import DEFAULT_SPACE_DIRECTIONS
from ..capability import mie_volume
from ..capability import MODES
from ..capability import power_space
from ..capability import reachable_wrench_space
from ..capability import thrust_variance
from ..control import build_allocation
from ..exceptions import CubeSubError
from ..hydro import fibonacci_directions
from ..morphology import DEFAULT_L_MAX
from ..morphology import dirichlet_energy
from ..morphology import radial_surface
from ..morphology import willmore_energy
from ..serialization import check_version
from ..serialization import DeserializationException
from ..serialization import Deserializer
from ..serialization import get_field
from ..serialization import integer_field
from ..serialization import InvalidField
from ..serialization import load_assembly
from ..serialization import MultipleExceptions

logger = logging.getLogger(__name__)

#: Names of the benchmark metrics, in report order.
METRICS = (
    'dirichlet_power_force',
    'dirichlet_power_torque',
    'dirichlet_wrench_force',
    'dirichlet_wrench_torque',
    'willmore_power_force',
    'willmore_power_torque',
    'willmore_wrench_force',
    'willmore_wrench_torque',
    'total_power_force',
    'total_power_torque',
    'mie_volume_force',
    'mie_volume_torque',
    'variance_power',
    'variance_wrench',
)

#: The assemblies benchmarked when a configuration names none.
DEFAULT_ASSEMBLIES = ('single', 'double', 'triple', 'bluerov2_heavy')


@dataclass(frozen=True)
class BenchmarkConfig(object):
    """Parameters of a benchmark run.

    `assemblies` are references to assembly documents (see
    :func:`~cubesub.serialization.resolve_reference`), `n_s` the number of
    directions of every space and `l_max` the harmonic degree of the
    Dirichlet energy. With `normalize`, wrench extents are divided by the
    total maximum thruster power.

    """
    assemblies: tuple = DEFAULT_ASSEMBLIES
    n_s: int = DEFAULT_SPACE_DIRECTIONS
    l_max: int = DEFAULT_L_MAX
    normalize: bool = False
    seed: int = 0
    workers: int = 1
    base_path: str = field(default=None, compare=False)


class BenchmarkDeserializer(Deserializer):
    """Deserializes a ``bench.json`` document to a
    :class:`BenchmarkConfig`.

    """

    def deserialize(self, document):
        check_version(document)
        assemblies = get_field(document, 'assemblies',
                               default=list(DEFAULT_ASSEMBLIES))
        if not isinstance(assemblies, list) or not assemblies \
                or not all(isinstance(a, str) for a in assemblies):
            raise InvalidField('assemblies', 'expected a list of'
                               ' references')
        return BenchmarkConfig(
            assemblies=tuple(assemblies),
            n_s=integer_field(document, 'n_s',
                              default=DEFAULT_SPACE_DIRECTIONS, minimum=4),
            l_max=integer_field(document, 'l_max', default=DEFAULT_L_MAX,
                                minimum=0),
            normalize=bool(get_field(document, 'normalize', default=False)),
            seed=integer_field(document, 'seed', default=0, minimum=0),
            workers=integer_field(document, 'workers', default=1,
                                  minimum=1),
            base_path=self.base_path)


@dataclass(frozen=True, eq=False)
class BenchmarkReport(object):
    """Benchmark results.

    `rows` maps each assembly reference to its metrics dictionary, in the
    configured order; `errors` maps each failed reference to its error
    message.

    """
    config: BenchmarkConfig
    rows: dict
    errors: dict

    def as_document(self):
        """Returns the report as a JSON-ready dictionary."""
        return {
            'version': 1,
            'seed': self.config.seed,
            'n_s': self.config.n_s,
            'l_max': self.config.l_max,
            'normalize': self.config.normalize,
            'metrics': list(METRICS),
            'rows': self.rows,
            'errors': self.errors,
        }

    def table(self):
        """Returns the report as an aligned text table with one row per
        metric and one column per assembly.

        """
        names = list(self.rows) + list(self.errors)
        header = ['metric'] + names
        lines = [header]
        for metric in METRICS:
            line = [metric]
            for name in names:
                value = self.rows.get(name, {}).get(metric)
                line.append('-' if value is None
                            else '{0:.4g}'.format(value))
            lines.append(line)
        widths = [max(len(line[i]) for line in lines)
                  for i in range(len(header))]
        text = []
        for line in lines:
            cells = [line[0].ljust(widths[0])]
            cells.extend(cell.rjust(width)
                         for cell, width in zip(line[1:], widths[1:]))
            text.append('  '.join(cells).rstrip())
        for name, message in self.errors.items():
            text.append('{0}: {1}'.format(name, message))
        return '\n'.join(text) + '\n'


def _morphology(space, l_max):
    surface = radial_surface(space)
    return (dirichlet_energy(space.direction_set, surface.radii, l_max),
            willmore_energy(surface))


def assembly_metrics(assembly, config=None):
    """Returns the dictionary of :data:`METRICS` for `assembly`."""
    config = config or BenchmarkConfig()
    model = build_allocation(assembly)
    directions = fibonacci_directions(config.n_s)
    metrics = {}
    for mode in MODES:
        power = power_space(model, mode=mode, directions=directions)
        wrench = reachable_wrench_space(model, mode=mode,
                                        directions=directions,
                                        normalize=config.normalize,
                                        workers=config.workers)
        for kind, space in (('power', power), ('wrench', wrench)):
            dirichlet, willmore = _morphology(space, config.l_max)
            metrics['dirichlet_{0}_{1}'.format(kind, mode)] = dirichlet
            metrics['willmore_{0}_{1}'.format(kind, mode)] = willmore
        metrics['total_power_{0}'.format(mode)] = power.total()
        metrics['mie_volume_{0}'.format(mode)] = mie_volume(wrench)
    metrics['variance_power'] = thrust_variance(
        model, weighting='power', directions=directions).variance
    metrics['variance_wrench'] = thrust_variance(
        model, weighting='wrench', directions=directions).variance
    return {name: float(metrics[name]) for name in METRICS}


def benchmark_report(config):
    """Returns the :class:`BenchmarkReport` of every assembly of the
    :class:`BenchmarkConfig` `config`.

    """
    rows = {}
    errors = {}
    for reference in config.assemblies:
        try:
            assembly = load_assembly(reference, config.base_path)
            rows[reference] = assembly_metrics(assembly, config)
        except (CubeSubError, DeserializationException,
                MultipleExceptions) as exception:
            logger.warning('benchmark of %s failed: %s', reference,
                           exception)
            errors[reference] = str(exception)
        else:
            logger.info('benchmarked %s', reference)
    return BenchmarkReport(config=config, rows=rows, errors=errors)
