# -*- coding: utf-8 -*-
#
# CubeSub documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing
# dir. All configuration values have a default; values that are commented out
# serve to show the default.
import os
import sys

# Make the package importable for autodoc without installing it.
sys.path.insert(0, os.path.abspath('..'))

# -- General configuration ----------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
    'sphinxcontrib.httpdomain',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'CubeSub'
copyright = u'2026 the CubeSub developers and contributors'

# The full version, including alpha/beta/rc tags, is taken from the package
# itself so that the documentation never needs to be edited on release.
from cubesub import __version__ as release  # noqa: E402
if 'dev' in release:
    release = release.split('dev')[0] + 'dev'
version = '.'.join(release.split('.')[:2])

exclude_patterns = ['_build']
pygments_style = 'sphinx'

# Heavy numerical dependencies are not needed to render the API pages.
autodoc_mock_imports = ['cvxpy']
autodoc_member_order = 'bysource'

# -- Options for HTML output --------------------------------------------------

html_theme = 'alabaster'
html_static_path = []
htmlhelp_basename = 'CubeSubdoc'

# -- Options for LaTeX output -------------------------------------------------

latex_documents = [
    ('index', 'CubeSub.tex', u'CubeSub Documentation',
     u'the CubeSub developers', 'manual'),
]
latex_domain_indices = False
latex_elements = {
    'papersize': 'a4paper',
    'pointsize': '12pt',
}

# -- Options for manual page output -------------------------------------------

man_pages = [
    ('cli', 'cubesub', u'CubeSub command-line interface',
     [u'the CubeSub developers'], 1)
]

intersphinx_mapping = {
    'flask': ('https://flask.palletsprojects.com/en/latest', None),
    'numpy': ('https://numpy.org/doc/stable', None),
    'python3': ('https://docs.python.org/3', None),
    'scipy': ('https://docs.scipy.org/doc/scipy', None),
    'sqlalchemy': ('https://docs.sqlalchemy.org/en/latest', None),
}
