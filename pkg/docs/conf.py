# -*- coding: utf-8 -*-
#
# mulshift documentation build configuration file.
#
import os
import sys

sys.path.insert(0, os.path.abspath('..'))

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.doctest',
    'sphinx.ext.coverage',
    'sphinx.ext.viewcode',
    'sphinx.ext.mathjax',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'mulshift'
copyright = u'2020, mulshift developers'
author = u'mulshift developers'
version = u'latest'
release = u'latest'

language = None
exclude_patterns = ['_build']
pygments_style = 'sphinx'
todo_include_todos = False

# -- Options for HTML output ----------------------------------------------

html_theme = 'alabaster'
html_theme_options = {
    'description': 'mulshift -- multiplicative functions on shifted primes',
    'page_width': 'auto',
}
html_title = 'mulshift - multiplicative functions on shifted primes'
html_short_title = 'mulshift Docs'
html_static_path = []
html_last_updated_fmt = '%b %d, %Y'
htmlhelp_basename = 'mulshiftdoc'

# -- Options for LaTeX / manual output ------------------------------------

latex_documents = [
    (master_doc, 'mulshift.tex', u'mulshift Documentation', author, 'manual'),
]
man_pages = [
    (master_doc, 'mulshift', u'mulshift Documentation', [author], 1)
]
