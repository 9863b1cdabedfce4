# -*- coding: utf-8 -*-
#
# bridgemc documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing dir.

import sys

sys.path.insert(0, './')
sys.path.insert(0, '../src')

from bridgemc import __version__  # noqa

# -- General configuration -----------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.intersphinx',
    'sphinx.ext.coverage',
    'sphinx.ext.viewcode',
    'sphinx.ext.mathjax',
    'bridgemc_doc_utils',
]

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'contents'

project = u'bridgemc'
copyright = u'2026, the bridgemc authors'

version = __version__
release = __version__

exclude_patterns = ['_build']

pygments_style = 'sphinx'

# -- Options for HTML output ---------------------------------------------------

html_theme = 'alabaster'

htmlhelp_basename = 'bridgemcdoc'

# -- Options for manual page output --------------------------------------------

man_pages = [
    ('man/bridgemc', 'bridgemc', u'bridgemc command-line tool', [u'the bridgemc authors'], 1),
]

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
}
