#!/usr/bin/env python3
"""LICENSE
Copyright 2026 The mascontrol developers

This file is part of mascontrol.

mascontrol is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.

mascontrol is distributed in the hope that it will be useful,
but WITHOUT ANY WARRANTY; without even the implied warranty of
MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
GNU General Public License for more details.

You should have received a copy of the GNU General Public License
along with mascontrol.  If not, see <http://www.gnu.org/licenses/>.
LICENSE"""

# noinspection PyPackageRequirements
import sphinx_rtd_theme
# noinspection PyPackageRequirements
from sphinx.ext.autodoc import between

# noinspection PyShadowingBuiltins
copyright = '2026 The mascontrol developers'
author = 'The mascontrol developers'
project = 'mascontrol'

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.mathjax",
    "sphinx.ext.viewcode"
]
master_doc = "index"

# The package modules are named after their classes
autodoc_member_order = "bysource"
add_module_names = False
modindex_common_prefix = ["mascontrol."]
exclude_patterns = ["**/test/**"]

with open("../../../version", "r") as version_file:
    version = version_file.read().strip()
    release = version

# HTML Theme Config
html_theme = 'sphinx_rtd_theme'
html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]


def skip_member(app, what, name, obj, skip, options):
    """
    Documents constructors and hides the test package
    :param app: The sphinx app
    :param what: The type of the documented object
    :param name: The member's name
    :param obj: The member
    :param skip: Whether autodoc would skip the member
    :param options: The autodoc directive options
    :return: Whether to skip the member
    """
    if name == "__init__":
        return False
    if getattr(obj, "__module__", "").startswith("mascontrol.test"):
        return True
    return skip


def setup(app):
    """
    Registers the listeners that strip the license headers from module
    docstrings and select the documented members
    :param app: The sphinx app
    :return: None
    """
    app.connect('autodoc-process-docstring',
                between('^.*LICENSE.*$', exclude=True))
    app.connect("autodoc-skip-member", skip_member)
    return app
