# evaluate.py - views evaluating capability metrics of posted assemblies
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Views for evaluating a metric of an assembly document posted by the
client.

The request body is an ``assembly.json`` document or the name of a
bundled assembly as a JSON string; file references are not resolved.
The ``wrench`` and ``power`` metrics accept ``mode`` and ``n_s`` query
parameters.

"""
from flask import request
from flask.views import MethodView

from ..capability import DEFAULT_SPACE_DIRECTIONS
from ..capability import mie_volume
from ..capability import MODES
from ..capability import power_space
from ..capability import reachable_wrench_space
from ..control import build_allocation
from ..exceptions import CubeSubError
from ..serialization import AssemblyDeserializer
from ..serialization import bundled_names
from ..serialization import SpaceSerializer
from ..vehicle import compose_mass_properties
from .base import DOCUMENT_ERRORS
from .base import error_response
from .base import errors_from_deserialization
from .base import jsonify

#: Largest number of directions a client may request.
MAX_DIRECTIONS = 2000


def _wrench(assembly, mode, n_s):
    space = reachable_wrench_space(build_allocation(assembly), mode=mode,
                                   n_s=n_s)
    metrics = {'mie_volume': mie_volume(space)}
    return SpaceSerializer(metrics=metrics).serialize(space)


def _power(assembly, mode, n_s):
    space = power_space(build_allocation(assembly), mode=mode, n_s=n_s)
    return SpaceSerializer().serialize(space)


def _mass(assembly, mode, n_s):
    props = compose_mass_properties(assembly)
    return {'kind': 'mass', 'total_mass': props.total_mass,
            'com': props.com, 'inertia': props.inertia,
            'module_offsets': props.module_offsets}


#: Evaluators by metric name.
EVALUATORS = {'wrench': _wrench, 'power': _power, 'mass': _mass}


class EvaluationAPI(MethodView):
    """Provides :http:method:`post` requests evaluating a metric of the
    posted assembly.

    """

    def post(self, metric):
        evaluator = EVALUATORS.get(metric)
        if evaluator is None:
            detail = 'Unknown metric {0!r}; expected one of {1}'
            return error_response(404, title='Unknown metric',
                                  detail=detail.format(metric,
                                                       sorted(EVALUATORS)))
        mode = request.args.get('mode', 'force')
        if mode not in MODES:
            detail = 'mode must be one of {0}'.format(MODES)
            return error_response(400, title='Bad query parameter',
                                  detail=detail)
        try:
            n_s = int(request.args.get('n_s', DEFAULT_SPACE_DIRECTIONS))
        except ValueError as exception:
            return error_response(400, cause=exception,
                                  title='Bad query parameter',
                                  detail='n_s must be an integer')
        if not 4 <= n_s <= MAX_DIRECTIONS:
            detail = 'n_s must be between 4 and {0}'.format(MAX_DIRECTIONS)
            return error_response(400, title='Bad query parameter',
                                  detail=detail)
        document = request.get_json(silent=True)
        if document is None:
            return error_response(400, title='Bad request',
                                  detail='Unable to decode JSON body')
        if isinstance(document, str) and document not in bundled_names():
            detail = 'Unknown bundled assembly {0!r}'.format(document)
            return error_response(404, title='Unknown assembly',
                                  detail=detail)
        try:
            assembly = AssemblyDeserializer().deserialize(document)
        except DOCUMENT_ERRORS as exception:
            return errors_from_deserialization(exception)
        except CubeSubError as exception:
            return error_response(400, cause=exception,
                                  title='Invalid assembly',
                                  detail=str(exception))
        try:
            result = evaluator(assembly, mode, n_s)
        except CubeSubError as exception:
            return error_response(422, cause=exception,
                                  title='Evaluation failed',
                                  detail=str(exception))
        return jsonify({'data': result, 'meta': {'assembly': assembly.name,
                                                 'metric': metric}})
