# store.py - SQLAlchemy models recording simulation and benchmark runs
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""A small relational store of finished runs.

Each :class:`Run` records one simulation or benchmark, its seed and its
JSON summary; each scalar metric of the run is also stored as a
:class:`Metric` row so that runs can be compared by metric. The store is
written by the ``simulate`` and ``bench`` commands when they are given a
database URI and read by the HTTP API (see :mod:`cubesub.views`).

"""
from datetime import datetime
from datetime import timezone
import logging
import numbers

from sqlalchemy import Column
from sqlalchemy import create_engine
from sqlalchemy import DateTime
from sqlalchemy import Float
from sqlalchemy import ForeignKey
from sqlalchemy import Integer
from sqlalchemy import JSON
from sqlalchemy import Unicode
from sqlalchemy.orm import declarative_base
from sqlalchemy.orm import relationship
from sqlalchemy.orm import sessionmaker

from .helpers import round_floats

logger = logging.getLogger(__name__)

#: The database used when none is configured.
DEFAULT_DATABASE_URI = 'sqlite://'

Base = declarative_base()


class Run(Base):
    """A finished simulation (``'track'``, ``'teleop'`` or
    ``'self_assembly'``) or benchmark (``'bench'``) run.

    """
    __tablename__ = 'run'
    id = Column(Integer, primary_key=True)
    kind = Column(Unicode, nullable=False)
    name = Column(Unicode, nullable=False)
    seed = Column(Integer, nullable=False, default=0)
    created = Column(DateTime, nullable=False)
    summary = Column(JSON, nullable=False)
    metrics = relationship('Metric', back_populates='run',
                           cascade='all, delete-orphan',
                           order_by='Metric.id')

    def as_document(self):
        return {
            'id': self.id,
            'kind': self.kind,
            'name': self.name,
            'seed': self.seed,
            'created': self.created.isoformat(),
            'summary': self.summary,
            'metrics': {m.name: m.value for m in self.metrics},
        }


class Metric(Base):
    """One scalar metric of a :class:`Run`.

    Metrics of multi-body or multi-assembly runs are named
    ``<body>.<metric>``.

    """
    __tablename__ = 'metric'
    id = Column(Integer, primary_key=True)
    run_id = Column(Integer, ForeignKey('run.id'), nullable=False)
    name = Column(Unicode, nullable=False)
    value = Column(Float)
    run = relationship('Run', back_populates='metrics')


def create_session(uri=DEFAULT_DATABASE_URI):
    """Creates the tables in the database at `uri` (if necessary) and
    returns a new session bound to it.

    """
    engine = create_engine(uri)
    Base.metadata.create_all(engine)
    return sessionmaker(bind=engine)()


def _flatten(summary, prefix=''):
    for key, value in summary.items():
        name = '{0}{1}'.format(prefix, key)
        if isinstance(value, dict):
            yield from _flatten(value, name + '.')
        elif isinstance(value, numbers.Real) and not isinstance(value, bool):
            yield name, float(value)


def record_run(session, kind, name, seed, summary, created=None):
    """Adds a :class:`Run` with the given `summary` dictionary, and one
    :class:`Metric` for each of its (possibly nested) real values, then
    commits `session` and returns the run.

    """
    summary = round_floats(summary)
    run = Run(kind=kind, name=name, seed=seed, summary=summary,
              created=created or datetime.now(timezone.utc).replace(
                  tzinfo=None))
    run.metrics = [Metric(name=metric, value=value)
                   for metric, value in _flatten(summary)]
    session.add(run)
    session.commit()
    logger.info('recorded %s run %s as #%d', kind, name, run.id)
    return run


def record_result(session, result):
    """Records a :class:`~cubesub.harness.SimResult`."""
    return record_run(session, result.kind, result.name, result.seed,
                      result.summary)


def record_report(session, report, name='bench'):
    """Records a :class:`~cubesub.harness.BenchmarkReport`."""
    summary = dict(report.rows)
    if report.errors:
        summary['errors'] = dict(report.errors)
    return record_run(session, 'bench', name, report.config.seed, summary)
