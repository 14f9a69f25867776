# __init__.py - indicates that this directory is a Python package
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Unit tests for CubeSub.

There is one module per module of the :mod:`cubesub` package. The
modules :mod:`test_views` and :mod:`test_manager` exercise the HTTP API
through the Flask test client, and :mod:`test_cli` runs the
``cubesub`` command through :class:`click.testing.CliRunner`.

Run the full test suite from the command-line using ``pytest``.

"""
