# __init__.py - indicates that this directory is a Python package
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Provides serialization and deserialization of CubeSub objects to and
from JSON, CSV and OFF files.

"""
from .deserializers import AssemblyDeserializer
from .deserializers import bundled_names
from .deserializers import check_version
from .deserializers import Deserializer
from .deserializers import FORMAT_VERSION
from .deserializers import get_field
from .deserializers import integer_field
from .deserializers import load_assembly
from .deserializers import load_document
from .deserializers import number_field
from .deserializers import PlanDeserializer
from .deserializers import read_drag_lut
from .deserializers import read_trace_csv
from .deserializers import resolve_reference
from .deserializers import SpaceDeserializer
from .deserializers import vector_field
from .exceptions import DeserializationException
from .exceptions import InvalidField
from .exceptions import MissingField
from .exceptions import MultipleExceptions
from .exceptions import SerializationException
from .exceptions import UnknownReference
from .exceptions import UnsupportedVersion
from .serializers import AssemblySerializer
from .serializers import dumps
from .serializers import PlanSerializer
from .serializers import Serializer
from .serializers import SpaceSerializer
from .serializers import write_drag_lut
from .serializers import write_off
from .serializers import write_reference_csv
from .serializers import write_trace_csv

__all__ = [
    'AssemblyDeserializer',
    'AssemblySerializer',
    'bundled_names',
    'check_version',
    'DeserializationException',
    'Deserializer',
    'dumps',
    'FORMAT_VERSION',
    'get_field',
    'integer_field',
    'InvalidField',
    'load_assembly',
    'load_document',
    'MissingField',
    'MultipleExceptions',
    'number_field',
    'PlanDeserializer',
    'PlanSerializer',
    'read_drag_lut',
    'read_trace_csv',
    'resolve_reference',
    'SerializationException',
    'Serializer',
    'SpaceDeserializer',
    'SpaceSerializer',
    'UnknownReference',
    'UnsupportedVersion',
    'vector_field',
    'write_drag_lut',
    'write_off',
    'write_reference_csv',
    'write_trace_csv',
]

