# test_views.py - unit tests for the HTTP API
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Unit tests for the views of the HTTP API."""
from datetime import datetime

from cubesub.store import record_run
from cubesub.views import JSON_MIMETYPE

from .helpers import check_sole_error
from .helpers import loads
from .helpers import ManagerTestBase


class TestRuns(ManagerTestBase):
    """Tests for fetching recorded runs."""

    def setUp(self):
        super(TestRuns, self).setUp()
        record_run(self.session, 'track', 'spiral', 0,
                   {'single': {'position_rmse': 0.01}},
                   created=datetime(2026, 1, 1))
        record_run(self.session, 'bench', 'bench', 0,
                   {'single': {'mie_volume_force': 3.0}},
                   created=datetime(2026, 2, 1))
        record_run(self.session, 'track', 'mobius', 1,
                   {'double': {'position_rmse': 0.02}},
                   created=datetime(2026, 3, 1))

    def test_list(self):
        """Tests that runs are listed newest first."""
        response = self.app.get('/api/runs')
        assert response.status_code == 200
        assert response.mimetype == JSON_MIMETYPE
        document = loads(response.data)
        names = [run['name'] for run in document['data']]
        assert names == ['mobius', 'bench', 'spiral']
        assert document['meta']['total'] == 3

    def test_filter_kind(self):
        """Tests filtering runs by kind."""
        document = loads(self.app.get('/api/runs?kind=track').data)
        assert [run['name'] for run in document['data']] == ['mobius',
                                                             'spiral']
        document = loads(self.app.get('/api/runs?kind=teleop').data)
        assert document['data'] == []

    def test_filter_since(self):
        """Tests filtering runs by creation time, with and without a time
        zone.

        """
        response = self.app.get('/api/runs?since=2026-01-15')
        names = [run['name'] for run in loads(response.data)['data']]
        assert names == ['mobius', 'bench']
        response = self.app.get('/api/runs?since=2026-02-01T02:00:00%2B03:00')
        names = [run['name'] for run in loads(response.data)['data']]
        assert names == ['mobius', 'bench']

    def test_bad_since(self):
        """Tests that an unparseable timestamp is a bad request."""
        response = self.app.get('/api/runs?since=yesterday-ish')
        check_sole_error(response, 400, ['Unable to parse', 'since'])

    def test_get(self):
        """Tests fetching a single run with its metrics."""
        response = self.app.get('/api/runs/2')
        assert response.status_code == 200
        document = loads(response.data)['data']
        assert document['kind'] == 'bench'
        assert document['metrics'] == {'single.mie_volume_force': 3.0}

    def test_not_found(self):
        """Tests that fetching a missing run is a 404."""
        response = self.app.get('/api/runs/42')
        check_sole_error(response, 404, 'No run with ID 42')


class TestEvaluate(ManagerTestBase):
    """Tests for evaluating a posted assembly."""

    def test_mass(self):
        """Tests the mass properties of a bundled assembly."""
        response = self.app.post('/api/evaluate/mass', json='double')
        assert response.status_code == 200
        document = loads(response.data)
        data = document['data']
        assert data['total_mass'] == 18.0
        assert data['com'] == [0.21, 0.105, 0.105]
        assert document['meta'] == {'assembly': 'double', 'metric': 'mass'}

    def test_wrench(self):
        """Tests the wrench space of a posted document."""
        assembly = {'name': 'mine', 'placements': [{'cell': [0, 0, 0]}]}
        response = self.app.post('/api/evaluate/wrench?n_s=20&mode=torque',
                                 json=assembly)
        assert response.status_code == 200
        data = loads(response.data)['data']
        assert data['kind'] == 'wrench'
        assert data['mode'] == 'torque'
        assert len(data['extents']) == 20
        assert data['metrics']['mie_volume'] > 0

    def test_power(self):
        """Tests the power space of a bundled assembly."""
        response = self.app.post('/api/evaluate/power?n_s=10', json='single')
        assert response.status_code == 200
        data = loads(response.data)['data']
        assert data['kind'] == 'power'
        assert all(p > 0 for p in data['power'])

    def test_unknown_metric(self):
        """Tests that an unknown metric is a 404."""
        response = self.app.post('/api/evaluate/speed', json='single')
        check_sole_error(response, 404, ['Unknown metric', 'speed'])

    def test_bad_mode(self):
        """Tests that the mode must be force or torque."""
        response = self.app.post('/api/evaluate/wrench?mode=moment',
                                 json='single')
        check_sole_error(response, 400, 'mode must be one of')

    def test_bad_directions(self):
        """Tests the validation of the number of directions."""
        response = self.app.post('/api/evaluate/wrench?n_s=many',
                                 json='single')
        check_sole_error(response, 400, 'n_s must be an integer')
        response = self.app.post('/api/evaluate/wrench?n_s=3',
                                 json='single')
        check_sole_error(response, 400, 'n_s must be between')
        response = self.app.post('/api/evaluate/wrench?n_s=5000',
                                 json='single')
        check_sole_error(response, 400, 'n_s must be between')

    def test_bad_json(self):
        """Tests that the body must be JSON."""
        response = self.app.post('/api/evaluate/mass', data='{"placements"',
                                 content_type='application/json')
        check_sole_error(response, 400, 'Unable to decode JSON body')

    def test_unknown_assembly(self):
        """Tests that an unknown bundled name is a 404."""
        response = self.app.post('/api/evaluate/mass', json='octopus')
        check_sole_error(response, 404, ['Unknown bundled assembly',
                                         'octopus'])

    def test_invalid_document(self):
        """Tests that a bad placement is reported."""
        assembly = {'placements': [{'cell': [0, 0, 'x']}]}
        response = self.app.post('/api/evaluate/mass', json=assembly)
        check_sole_error(response, 400, 'invalid "cell" element')

    def test_multiple_errors(self):
        """Tests that every bad placement is reported."""
        assembly = {'placements': [{'cell': 'x'}, {'module': 'nope',
                                                   'cell': [1, 0, 0]}]}
        response = self.app.post('/api/evaluate/mass', json=assembly)
        assert response.status_code == 400
        errors = loads(response.data)['errors']
        assert len(errors) == 2
        assert all(error['title'] == 'Invalid document' for error in errors)

    def test_structural_error(self):
        """Tests that two modules in one cell are rejected."""
        assembly = {'placements': [{'cell': [0, 0, 0]}, {'cell': [0, 0, 0]}]}
        response = self.app.post('/api/evaluate/mass', json=assembly)
        assert response.status_code == 400
        errors = loads(response.data)['errors']
        assert errors[0]['title'] == 'Invalid assembly'
