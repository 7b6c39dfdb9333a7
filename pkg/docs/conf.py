"""Sphinx configuration."""
from datetime import datetime


project = "Bettisect"
author = "Bettisect developers"
copyright = f"{datetime.now().year}, Bettisect developers"
extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx.ext.mathjax",
    "sphinx_click",
]
autodoc_typehints = "description"
html_theme = "furo"
