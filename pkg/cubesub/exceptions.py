# exceptions.py - exceptions raised by CubeSub
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Exceptions raised by the modeling, simulation and analysis functions
of CubeSub.

Every exception in this module is a subclass of :exc:`CubeSubError`, so
client code can catch all of them at once. The command-line interface
maps :data:`VALIDATION_ERRORS` to exit code 1 and
:data:`NUMERICAL_ERRORS` to exit code 2.

"""


class CubeSubError(Exception):
    """Base class for all exceptions raised by CubeSub.

    `detail` is an optional string describing the problem in more
    detail; it is stored in the :attr:`detail` attribute and used as the
    message of the exception.

    """

    def __init__(self, detail=None, *args, **kw):
        if detail is not None:
            args = (detail, ) + args
        super(CubeSubError, self).__init__(*args, **kw)

        #: A string describing the problem in more detail.
        self.detail = detail


class IllegalArgumentError(CubeSubError, ValueError):
    """This exception is raised when a calling function has provided illegal
    arguments to a function or method.

    """
    pass


class StructuralError(CubeSubError):
    """Raised when an assembly violates its lattice invariants: two modules
    share a cell, the face-adjacency graph is disconnected, or there are no
    modules at all.

    `cells` is the list of offending lattice cells, if known.

    """

    def __init__(self, detail=None, cells=None, *args, **kw):
        super(StructuralError, self).__init__(detail, *args, **kw)

        #: The lattice cells involved in the problem.
        self.cells = cells or []


class ConfigurationError(CubeSubError):
    """Raised when a model cannot be built from otherwise well-formed
    inputs, for example when a mass matrix is not symmetric positive
    definite or a scenario reference cannot be resolved.

    """
    pass


class SingularityError(CubeSubError):
    """Raised when the Euler-angle kinematic transform is requested at a
    pitch angle too close to plus or minus a right angle.

    """
    pass


class DivergenceError(CubeSubError):
    """Raised when a simulation produces a non-finite state.

    `time` is the simulation time, in seconds, of the first non-finite
    state.

    """

    def __init__(self, detail=None, time=None, *args, **kw):
        if detail is None and time is not None:
            detail = 'simulation diverged at t = {0:.6f} s'.format(time)
        super(DivergenceError, self).__init__(detail, *args, **kw)

        #: Simulation time at which the state stopped being finite.
        self.time = time


class ConditioningError(CubeSubError):
    """Raised when a linear system is too badly conditioned to be solved
    reliably.

    `condition_number` is the estimated condition number of the system.

    """

    def __init__(self, detail=None, condition_number=None, *args, **kw):
        super(ConditioningError, self).__init__(detail, *args, **kw)

        #: Estimated condition number of the offending system.
        self.condition_number = condition_number


class DegeneracyError(CubeSubError):
    """Raised when a parameter space is too degenerate (for example, mostly
    zero extents) for a surface to be built from it.

    """
    pass


class TopologyError(CubeSubError):
    """Raised when a triangle mesh is not a closed, orientable surface."""
    pass


#: Exceptions that indicate invalid input; the CLI exits with status 1.
VALIDATION_ERRORS = (IllegalArgumentError, StructuralError, ConfigurationError)

#: Exceptions that indicate a numerical failure; the CLI exits with status 2.
NUMERICAL_ERRORS = (SingularityError, DivergenceError, ConditioningError,
                    DegeneracyError, TopologyError)
