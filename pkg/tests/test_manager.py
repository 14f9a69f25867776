# test_manager.py - unit tests for the manager module
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Unit tests for the :mod:`cubesub.manager` module."""
from cubesub import APIManager
from cubesub import create_app
from cubesub.store import record_run

from .helpers import FlaskTestBase
from .helpers import loads


class TestAPIManager(FlaskTestBase):
    """Tests for registering the API on an application."""

    def test_constructor_app(self):
        """Tests that giving the application to the constructor registers
        the API immediately.

        """
        manager = APIManager(self.flaskapp, session=self.session)
        assert self.flaskapp.extensions['cubesub'] is manager
        response = self.app.get('/api/runs')
        assert response.status_code == 200

    def test_init_app(self):
        """Tests registering the API after construction."""
        manager = APIManager(session=self.session)
        response = self.app.get('/api/runs')
        assert response.status_code == 404
        manager.init_app(self.flaskapp)
        response = self.app.get('/api/runs')
        assert response.status_code == 200

    def test_url_prefix(self):
        """Tests a custom URL prefix."""
        APIManager(self.flaskapp, session=self.session, url_prefix='/v1')
        assert self.app.get('/v1/runs').status_code == 200
        assert self.app.get('/api/runs').status_code == 404

    def test_shared_session(self):
        """Tests that runs recorded in the session are served."""
        APIManager(self.flaskapp, session=self.session)
        record_run(self.session, 'teleop', 'push', 0, {'energy': 1.0})
        document = loads(self.app.get('/api/runs').data)
        assert [run['name'] for run in document['data']] == ['push']

    def test_configured_database(self):
        """Tests that a manager without a session uses the configured
        database.

        """
        self.flaskapp.config['CUBESUB_DATABASE_URI'] = 'sqlite://'
        manager = APIManager(self.flaskapp)
        assert manager.session is not None
        document = loads(self.app.get('/api/runs').data)
        assert document['data'] == []


class TestCreateApp(FlaskTestBase):
    """Tests for :func:`create_app`."""

    def test_create_app(self):
        """Tests that the factory serves the API."""
        app = create_app({'TESTING': True})
        client = app.test_client()
        response = client.post('/api/evaluate/mass', json='single')
        assert response.status_code == 200
        assert loads(response.data)['data']['total_mass'] == 9.0
        assert app.config['CUBESUB_DATABASE_URI'] == 'sqlite://'
