# test_store.py - unit tests for the run store
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Unit tests for the :mod:`cubesub.store` module."""
from datetime import datetime

import numpy as np

from cubesub.harness import BenchmarkConfig
from cubesub.harness import BenchmarkReport
from cubesub.store import Metric
from cubesub.store import record_report
from cubesub.store import record_run
from cubesub.store import Run

from .helpers import DatabaseTestBase


class TestRecordRun(DatabaseTestBase):
    """Tests for :func:`record_run`."""

    def test_flattened_metrics(self):
        """Tests that nested real values become named metrics."""
        summary = {
            'left': {'energy': 12.5, 'samples': 100, 'position_rmse': None},
            'docked_at': 16.25,
            'merged': True,
        }
        run = record_run(self.session, 'self_assembly', 'pair', 4, summary,
                         created=datetime(2026, 1, 2, 3, 4, 5))
        assert run.id is not None
        document = run.as_document()
        assert document['created'] == '2026-01-02T03:04:05'
        assert document['seed'] == 4
        assert document['metrics'] == {'left.energy': 12.5,
                                       'left.samples': 100.0,
                                       'docked_at': 16.25}
        assert document['summary']['left']['position_rmse'] is None
        assert self.session.query(Metric).count() == 3

    def test_numpy_values(self):
        """Tests that numpy values are stored as plain numbers."""
        summary = {'peak_power': np.float64(1 / 3), 'flag': np.bool_(True)}
        run = record_run(self.session, 'track', 'numpy', 0, summary)
        assert run.summary == {'peak_power': 0.333333333333, 'flag': True}
        assert [m.name for m in run.metrics] == ['peak_power']

    def test_cascade(self):
        """Tests that deleting a run deletes its metrics."""
        run = record_run(self.session, 'track', 'gone', 0, {'a': 1.0})
        self.session.delete(run)
        self.session.commit()
        assert self.session.query(Run).count() == 0
        assert self.session.query(Metric).count() == 0


class TestRecordReport(DatabaseTestBase):
    """Tests for :func:`record_report`."""

    def test_errors(self):
        """Tests that failed assemblies are kept in the summary only."""
        report = BenchmarkReport(config=BenchmarkConfig(seed=2),
                                 rows={'single': {'mie_volume_force': 2.0}},
                                 errors={'broken': 'cannot resolve'})
        run = record_report(self.session, report)
        assert run.kind == 'bench'
        assert run.seed == 2
        assert run.summary['errors'] == {'broken': 'cannot resolve'}
        assert [m.name for m in run.metrics] == ['single.mie_volume_force']
