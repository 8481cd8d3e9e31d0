# -*- coding: utf-8 -*-
#
# ionxtalk documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import os
import sys
sys.path.insert(0, os.path.abspath('..'))

import ionxtalk as ix


# -- General configuration ------------------------------------------------

extensions = ['sphinx.ext.autodoc',
    'sphinx.ext.imgmath',
    'sphinx.ext.viewcode']

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

project = 'ionxtalk'
copyright = '2026, the ionxtalk developers'
author = 'the ionxtalk developers'

version = ix.__version__
release = version

language = None

exclude_patterns = ['_build', 'build', 'Thumbs.db', '.DS_Store']

pygments_style = 'sphinx'

todo_include_todos = False


# -- Options for HTML output ----------------------------------------------

html_theme = 'default'

htmlhelp_basename = 'ionxtalkdoc'


# -- Options for LaTeX output ---------------------------------------------

latex_elements = {}

latex_documents = [
    (master_doc, 'ionxtalk.tex', 'ionxtalk Documentation',
     author, 'manual'),
]


# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'ionxtalk', 'ionxtalk Documentation',
     [author], 1)
]
