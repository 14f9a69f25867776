# helpers.py - helper functions for unit tests
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Helper functions and base classes for unit tests."""
import json
import shutil
import tempfile
from unittest import TestCase

from flask import Flask
import numpy as np
from scipy.spatial import ConvexHull

from cubesub import APIManager
from cubesub.capability import embed_direction
from cubesub.control import allocation_from_thrusters
from cubesub.store import create_session
from cubesub.vehicle import Assembly
from cubesub.vehicle import ModuleSpec
from cubesub.vehicle import Placement
from cubesub.vehicle import ThrusterSpec
from cubesub.vehicle import line_assembly as _line_assembly

loads = json.loads


def single_cube(**kw):
    """Returns a one-module assembly of the default cube.

    Keyword arguments are passed to :class:`~cubesub.vehicle.ModuleSpec`.

    """
    module = ModuleSpec(**kw)
    return Assembly([Placement(module, (0, 0, 0))], name='single')


def line_assembly(count, **kw):
    """Returns `count` default cubes in a line along the ``x`` axis."""
    return _line_assembly(count, ModuleSpec(**kw) if kw else None)


def thruster_model(positions, directions, f_max=10.0):
    """Returns the allocation model of thrusters at `positions` along
    `directions`, each limited to ``[-f_max, f_max]``.

    """
    thrusters = [ThrusterSpec(position=p, direction=np.asarray(d, dtype=float)
                              / np.linalg.norm(d), f_min=-f_max,
                              f_max=f_max)
                 for p, d in zip(positions, directions)]
    return allocation_from_thrusters(thrusters)


def ray_extent(model, direction, mode='force'):
    """Returns the extent of the zonotope ``{J f : f_min ≤ f ≤ f_max}``
    along ``e(direction)`` by enumerating its vertices.

    The images of the corners of the thrust box are hulled, and the ray
    ``λ e`` leaves the hull at the smallest ``b_k / (h_k · e)`` over the
    facets ``h_k · x ≤ b_k`` with ``h_k · e > 0``. Only models of rank six
    whose limits contain zero in their interior are supported.

    """
    target = embed_direction(direction, mode)
    jacobian = model.jacobian
    corners = np.array(np.meshgrid(*[(lo, hi) for lo, hi in
                                     zip(model.f_min, model.f_max)]))
    corners = corners.reshape(model.n_t, -1).T
    points = corners @ jacobian.T
    hull = ConvexHull(points)
    normals = hull.equations[:, :-1]
    offsets = -hull.equations[:, -1]
    rates = normals @ target
    positive = rates > 1e-12
    return float(np.min(offsets[positive] / rates[positive]))


def check_sole_error(response, status, strings):
    """Asserts that the response is an errors response with a single
    error object whose detail message contains all of the given strings.

    `strings` may also be a single string object to check.

    `status` is the expected status code for the sole error object in
    the response.

    """
    if isinstance(strings, str):
        strings = [strings]
    assert response.status_code == status
    document = loads(response.data)
    errors = document['errors']
    assert len(errors) == 1
    error = errors[0]
    assert error['status'] == status
    assert all(s in error['detail'] for s in strings)


class TemporaryDirectoryTestBase(TestCase):
    """Base class for tests that write files.

    The directory can be accessed at ``self.directory`` and is removed
    after each test.

    """

    def setUp(self):
        self.directory = tempfile.mkdtemp(prefix='cubesub-test-')

    def tearDown(self):
        shutil.rmtree(self.directory, ignore_errors=True)


class DatabaseMixin(object):
    """A class that accesses a database via a connection URI.

    Subclasses can override the :meth:`database_uri` method to return a
    connection URI for the desired database backend.

    """

    def database_uri(self):
        """The database connection URI to use for the SQLAlchemy engine.

        By default, this returns the URI for the SQLite in-memory
        database.

        """
        return 'sqlite://'


class DatabaseTestBase(TestCase, DatabaseMixin):
    """Base class for tests that use the run store.

    The session is accessible at ``self.session``.

    """

    def setUp(self):
        self.session = create_session(self.database_uri())

    def tearDown(self):
        self.session.close()


class FlaskTestBase(DatabaseTestBase):
    """Base class for tests which use a Flask application.

    The Flask test client can be accessed at ``self.app``. The Flask
    application itself is accessible at ``self.flaskapp``.

    """

    def setUp(self):
        """Creates the Flask application without registering the API."""
        super(FlaskTestBase, self).setUp()
        app = Flask(__name__)
        app.config['TESTING'] = True
        app.logger.disabled = True
        self.flaskapp = app
        self.app = app.test_client()


class ManagerTestBase(FlaskTestBase):
    """Base class for tests that use an :class:`~cubesub.APIManager`
    bound to the test session.

    The :class:`~cubesub.APIManager` instance for use in tests is
    accessible at ``self.manager``.

    """

    def setUp(self):
        super(ManagerTestBase, self).setUp()
        self.manager = APIManager(self.flaskapp, session=self.session)
