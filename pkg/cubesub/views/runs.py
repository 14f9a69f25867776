# runs.py - views of recorded runs
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Read-only views of the runs recorded in the store.

``GET /runs`` lists runs, newest first, optionally filtered by the
``kind`` and ``since`` query parameters; ``GET /runs/<id>`` returns one
run with its metrics.

"""
from datetime import timezone

from dateutil.parser import parse as parse_datetime
from flask import request

from .base import error_response
from .base import jsonify
from .base import ModelView


def _since(value):
    """Parses the `since` query parameter as a naive UTC datetime."""
    moment = parse_datetime(value)
    if moment.tzinfo is not None:
        moment = moment.astimezone(timezone.utc).replace(tzinfo=None)
    return moment


class RunAPI(ModelView):
    """Provides :http:method:`get` requests on recorded runs."""

    def get(self, run_id=None):
        if run_id is not None:
            run = self.session.get(self.model, run_id)
            if run is None:
                detail = 'No run with ID {0}'.format(run_id)
                return error_response(404, title='Not found', detail=detail)
            return jsonify({'data': run.as_document()})
        query = self.session.query(self.model)
        kind = request.args.get('kind')
        if kind is not None:
            query = query.filter(self.model.kind == kind)
        since = request.args.get('since')
        if since is not None:
            try:
                query = query.filter(self.model.created >= _since(since))
            except (ValueError, OverflowError) as exception:
                detail = 'Unable to parse "since" timestamp {0!r}'
                return error_response(400, cause=exception,
                                      title='Bad query parameter',
                                      detail=detail.format(since))
        runs = query.order_by(self.model.created.desc(),
                              self.model.id.desc()).all()
        return jsonify({'data': [run.as_document() for run in runs],
                        'meta': {'total': len(runs)}})
