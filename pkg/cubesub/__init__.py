# __init__.py - indicates that this directory is a Python package
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Models, simulates and analyzes reconfigurable lattice assemblies of
thruster-driven underwater cube modules.

"""
# The following names are available as part of the public API for CubeSub.
# End users of this package can import these names by doing ``from cubesub
# import compose_mass_properties``, for example.
from .capability import mie_volume
from .capability import power_space
from .capability import PowerSpace
from .capability import reachable_wrench_space
from .capability import thrust_variance
from .capability import wrench_extent
from .capability import WrenchSpace
from .control import allocate
from .control import build_allocation
from .control import DEFAULT_GAINS
from .control import GainSet
from .control import pd_wrench
from .control import Reference
from .control import thruster_power
from .dynamics import BodyState
from .dynamics import PlantModel
from .dynamics import rk4_step
from .dynamics import Trace
from .exceptions import ConditioningError
from .exceptions import ConfigurationError
from .exceptions import CubeSubError
from .exceptions import DegeneracyError
from .exceptions import DivergenceError
from .exceptions import IllegalArgumentError
from .exceptions import SingularityError
from .exceptions import StructuralError
from .exceptions import TopologyError
from .helpers import cube_rotations
from .hydro import build_drag_lut
from .hydro import DirectionSet
from .hydro import DragLUT
from .hydro import fibonacci_directions
from .hydro import projected_area
from .hydro import query_drag
from .hydro import rotation_to_z
from .hydro import sample_body_points
from .manager import APIManager
from .manager import create_app
from .morphology import dirichlet_energy
from .morphology import radial_surface
from .morphology import RadialSurface
from .morphology import willmore_energy
from .planner import plan_min_snap
from .planner import sample_trajectory
from .planner import TrajectoryPlan
from .vehicle import Assembly
from .vehicle import compose_mass_properties
from .vehicle import coriolis_matrix
from .vehicle import l_assembly
from .vehicle import line_assembly
from .vehicle import mass_matrix
from .vehicle import MassProperties
from .vehicle import merge_assemblies
from .vehicle import ModuleSpec
from .vehicle import ThrusterSpec

#: The current version of this package.
#:
#: This should be the same as the version specified in the :file:`setup.py`
#: file.
__version__ = '0.1.0.dev0'

__all__ = [
    'allocate',
    'APIManager',
    'Assembly',
    'BodyState',
    'build_allocation',
    'build_drag_lut',
    'compose_mass_properties',
    'ConditioningError',
    'ConfigurationError',
    'coriolis_matrix',
    'create_app',
    'cube_rotations',
    'CubeSubError',
    'DEFAULT_GAINS',
    'DegeneracyError',
    'DirectionSet',
    'dirichlet_energy',
    'DivergenceError',
    'DragLUT',
    'fibonacci_directions',
    'GainSet',
    'IllegalArgumentError',
    'l_assembly',
    'line_assembly',
    'mass_matrix',
    'MassProperties',
    'merge_assemblies',
    'mie_volume',
    'ModuleSpec',
    'pd_wrench',
    'plan_min_snap',
    'PlantModel',
    'power_space',
    'PowerSpace',
    'projected_area',
    'query_drag',
    'radial_surface',
    'RadialSurface',
    'reachable_wrench_space',
    'Reference',
    'rk4_step',
    'rotation_to_z',
    'sample_body_points',
    'sample_trajectory',
    'SingularityError',
    'StructuralError',
    'thrust_variance',
    'thruster_power',
    'ThrusterSpec',
    'TopologyError',
    'Trace',
    'TrajectoryPlan',
    'willmore_energy',
    'wrench_extent',
    'WrenchSpace',
]
