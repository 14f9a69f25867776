# __init__.py - bundled configuration documents
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Bundled assembly, scenario and benchmark documents.

Each ``name.json`` file in this package can be referred to by ``name``
wherever a document reference is accepted; see
:func:`cubesub.serialization.resolve_reference`.

"""
