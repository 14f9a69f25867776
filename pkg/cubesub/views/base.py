# base.py - helpers and base classes for the HTTP views
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Helpers shared by the HTTP views.

Every response body is a JSON document written by
:func:`~cubesub.serialization.dumps`, so numpy arrays may appear in
documents and floats are rounded the same way as in files written by the
command-line interface. Errors are reported as documents of the form::

    {"errors": [{"status": 400, "title": "...", "detail": "..."}]}

"""
from flask import current_app
from flask import Response
from flask.views import MethodView

from ..serialization import DeserializationException
from ..serialization import dumps
from ..serialization import MultipleExceptions

#: The Content-Type of every response.
JSON_MIMETYPE = 'application/json'


def jsonify(document, status=200):
    """Returns a :class:`~flask.Response` whose body is `document`."""
    return Response(dumps(document), status=status, mimetype=JSON_MIMETYPE)


def error(status=None, title=None, detail=None):
    """Returns a dictionary representation of one error.

    At least one of the arguments must not be ``None``.

    """
    if status is None and title is None and detail is None:
        raise ValueError('At least one of the arguments must not be None.')
    return {'status': status, 'title': title, 'detail': detail}


def errors_response(status, errors):
    """Returns a response with status code `status` whose body lists the
    error dictionaries `errors`.

    """
    return jsonify({'errors': errors}, status)


def error_response(status=400, cause=None, **kw):
    """Returns an error response with a single error.

    If `cause` is given, it is logged with its traceback. This is a
    convenience function for::

        errors_response(status, [error(status=status, **kw)])

    """
    if cause is not None:
        current_app.logger.exception(str(cause))
    kw['status'] = status
    return errors_response(status, [error(**kw)])


def errors_from_deserialization(exception):
    """Returns an error response for a :exc:`DeserializationException` or
    a :exc:`MultipleExceptions` wrapping several of them.

    """
    current_app.logger.exception(str(exception))
    if isinstance(exception, MultipleExceptions):
        exceptions = exception.exceptions
    else:
        exceptions = [exception]
    errors = []
    for inner in exceptions:
        status = getattr(inner, 'status', 400)
        errors.append(error(status=status, title='Invalid document',
                            detail=str(inner)))
    status = max(e['status'] for e in errors)
    return errors_response(status, errors)


class ModelView(MethodView):
    """Base class for views of the SQLAlchemy model `model` in the
    session `session`.

    """

    def __init__(self, session, model, *args, **kw):
        super(ModelView, self).__init__(*args, **kw)
        self.session = session
        self.model = model


#: Exceptions signalling a bad request document.
DOCUMENT_ERRORS = (DeserializationException, MultipleExceptions)
