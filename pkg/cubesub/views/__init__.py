# __init__.py - indicates that this directory is a Python package
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Flask views of the HTTP API."""
from .base import error
from .base import error_response
from .base import errors_response
from .base import jsonify
from .base import JSON_MIMETYPE
from .evaluate import EvaluationAPI
from .evaluate import EVALUATORS
from .runs import RunAPI

__all__ = [
    'error',
    'error_response',
    'errors_response',
    'EvaluationAPI',
    'EVALUATORS',
    'JSON_MIMETYPE',
    'jsonify',
    'RunAPI',
]
