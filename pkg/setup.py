# setup.py - packaging and distribution configuration for CubeSub
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""CubeSub models, simulates and analyzes reconfigurable lattice
assemblies of thruster-driven underwater cube modules.

It composes the rigid-body properties of an assembly, approximates its
direction-dependent drag by Monte Carlo projection, simulates closed-loop
six degree of freedom motion, computes reachable wrench and power spaces
and their surface energies, and plans minimum snap trajectories. Recorded
runs can be browsed through a small `Flask`_ JSON API backed by
`SQLAlchemy`_.

.. _Flask: http://flask.pocoo.org
.. _SQLAlchemy: https://sqlalchemy.org

"""
import codecs
import os.path
import re
from setuptools import setup, find_packages

#: A regular expression capturing the version number from Python code.
VERSION_RE = r"^__version__ = ['\"]([^'\"]*)['\"]"

#: The installation requirements for CubeSub.
REQUIREMENTS = [
    'click>=8.0',
    'cvxpy>=1.3',
    'flask>=2.2',
    'matplotlib>=3.5',
    'numpy>=1.22',
    'python-dateutil>2.2',
    'scipy>=1.10',
    'shapely>=2.0',
    'sqlalchemy>=1.4',
]

#: The absolute path to this file.
HERE = os.path.abspath(os.path.dirname(__file__))


def read(*parts):
    """Reads the entire contents of the file whose path is given as `parts`."""
    with codecs.open(os.path.join(HERE, *parts), 'r') as f:
        return f.read()


def find_version(*file_path):
    """Returns the version number appearing in the file in the given file
    path.

    Each positional argument indicates a member of the path.

    """
    version_file = read(*file_path)
    version_match = re.search(VERSION_RE, version_file, re.MULTILINE)
    if version_match:
        return version_match.group(1)
    raise RuntimeError('Unable to find version string.')


setup(
    author='The CubeSub developers',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: BSD License',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering',
        'Topic :: Scientific/Engineering :: Physics',
    ],
    description=('Modeling, simulation and capability analysis of modular'
                 ' underwater cube robots'),
    entry_points={'console_scripts': ['cubesub = cubesub.cli:main']},
    install_requires=REQUIREMENTS,
    include_package_data=True,
    keywords=['underwater', 'modular robots', 'simulation', 'trajectory'],
    license='BSD',
    long_description=__doc__,
    name='CubeSub',
    package_data={'cubesub.data': ['*.json']},
    platforms='any',
    packages=find_packages(exclude=['tests', 'tests.*']),
    python_requires='>=3.8',
    test_suite='tests',
    tests_require=['pytest'],
    version=find_version('cubesub', '__init__.py'),
    zip_safe=False
)
