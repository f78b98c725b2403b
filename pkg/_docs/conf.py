import datetime
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).parent.parent / 'blockade/src/kerrlibs'))  # So that sphinx.ext.autodoc can find code.

# don't automatically add parentheses after function and method references
add_function_parentheses = False

# Configuration for the Sphinx documentation builder.
# A complete list of built-in Sphinx configuration values:
# https://www.sphinx-doc.org/en/master/usage/configuration.html


#######################
# Project information #
#######################

project = "Kerrlibs"
author = "The kerrlibs developers"

html_title = project + " documentation"

copyright = "%s, %s" % (datetime.date.today().year, author)


##############
# Extensions #
##############

extensions = [
    "myst_parser",
    "sphinx.ext.autodoc",
    'sphinx.ext.intersphinx',
    "sphinx.ext.mathjax",
    "sphinx.ext.napoleon",
]

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable', None),
    'scipy': ('https://docs.scipy.org/doc/scipy', None),
}

maximum_signature_line_length = 80

exclude_patterns = [
    "_build",
]


# Options for sphinx.ext.autodoc

autodoc_typehints = 'signature'

autoclass_content = 'class'

autodoc_member_order = 'bysource'

add_module_names = False

autodoc_default_options = {
    'members': None,  # None here means "yes"
    'exclude-members': (
        '__annotations__,'
        '__dict__,'
        '__hash__,'
        '__init__,'
        '__module__,'
        '__weakref__,'
        '__repr__,'
        '__eq__,'
    ),
    'undoc-members': None,
    'show-inheritance': None,
}
