# manager.py - Flask application serving recorded runs and evaluations
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Provides the class that exposes the run store and the capability
evaluators as a JSON API on a :class:`~flask.Flask` application.

"""
from flask import Blueprint
from flask import Flask

from .store import create_session
from .store import DEFAULT_DATABASE_URI
from .store import Run
from .views import EvaluationAPI
from .views import RunAPI

#: The default URL prefix of the API.
DEFAULT_URL_PREFIX = '/api'

#: Name of the application configuration key holding the database URI.
DATABASE_URI_KEY = 'CUBESUB_DATABASE_URI'


class APIManager(object):
    """Registers the CubeSub API on a :class:`~flask.Flask` application.

    `session` is the :class:`~sqlalchemy.orm.session.Session` from which
    runs are read. If it is ``None``, :meth:`init_app` creates one bound to
    the database named by the application's ``CUBESUB_DATABASE_URI``
    configuration value (an in-memory SQLite database by default).

    If `app` is given, :meth:`init_app` is called immediately. For
    example::

        from flask import Flask
        from cubesub import APIManager
        from cubesub.store import create_session

        app = Flask(__name__)
        manager = APIManager(app, session=create_session('sqlite:///runs.db'))

    This creates the endpoints

    - ``GET /api/runs`` (query parameters ``kind`` and ``since``),
    - ``GET /api/runs/<id>``,
    - ``POST /api/evaluate/<metric>`` for ``wrench``, ``power`` and
      ``mass``.

    """

    def __init__(self, app=None, session=None, url_prefix=DEFAULT_URL_PREFIX):
        self.app = app
        self.session = session
        self.url_prefix = url_prefix
        if app is not None:
            self.init_app(app)

    def create_blueprint(self):
        """Returns the :class:`~flask.Blueprint` containing every
        endpoint.

        """
        blueprint = Blueprint('cubesub', __name__, url_prefix=self.url_prefix)
        runs = RunAPI.as_view('runs', self.session, Run)
        blueprint.add_url_rule('/runs', view_func=runs, methods=['GET'])
        blueprint.add_url_rule('/runs/<int:run_id>', view_func=runs,
                               methods=['GET'])
        evaluate = EvaluationAPI.as_view('evaluate')
        blueprint.add_url_rule('/evaluate/<metric>', view_func=evaluate,
                               methods=['POST'])
        return blueprint

    def init_app(self, app):
        """Registers the API on `app`."""
        if self.session is None:
            uri = app.config.setdefault(DATABASE_URI_KEY,
                                        DEFAULT_DATABASE_URI)
            self.session = create_session(uri)
        app.register_blueprint(self.create_blueprint())
        app.extensions['cubesub'] = self


def create_app(config=None):
    """Returns a new :class:`~flask.Flask` application serving the API.

    `config` is an optional dictionary of configuration values.

    """
    app = Flask(__name__)
    app.config.update(config or {})
    APIManager(app)
    return app
