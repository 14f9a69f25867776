# __init__.py - indicates that this directory is a Python package
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Scenario configuration, the closed-loop runner, tracking and docking
metrics and the capability benchmark.

"""
from .benchmark import assembly_metrics
from .benchmark import benchmark_report
from .benchmark import BenchmarkConfig
from .benchmark import BenchmarkDeserializer
from .benchmark import BenchmarkReport
from .benchmark import METRICS
from .metrics import docking_check
from .metrics import DockingMonitor
from .metrics import rmse
from .metrics import TrackingError
from .runner import build_plant
from .runner import merge_bodies
from .runner import run_batch
from .runner import run_scenario
from .runner import run_self_assembly
from .runner import SimResult
from .runner import SimulatedBody
from .scenario import BodyConfig
from .scenario import DockingConfig
from .scenario import KINDS
from .scenario import load_scenario
from .scenario import Perturbation
from .scenario import PlantConfig
from .scenario import Scenario
from .scenario import ScenarioDeserializer
from .scenario import TrajectoryConfig

__all__ = [
    'assembly_metrics',
    'benchmark_report',
    'BenchmarkConfig',
    'BenchmarkDeserializer',
    'BenchmarkReport',
    'BodyConfig',
    'build_plant',
    'docking_check',
    'DockingConfig',
    'DockingMonitor',
    'KINDS',
    'load_scenario',
    'merge_bodies',
    'METRICS',
    'Perturbation',
    'PlantConfig',
    'rmse',
    'run_batch',
    'run_scenario',
    'run_self_assembly',
    'Scenario',
    'ScenarioDeserializer',
    'SimResult',
    'SimulatedBody',
    'TrackingError',
    'TrajectoryConfig',
]
