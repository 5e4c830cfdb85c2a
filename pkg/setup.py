"""Build script for the optional compiled jet kernel.

The package works without the extension (a pure-Python backend is selected
at import time); set RULEDGEO_SKIP_EXT=1 to skip compilation entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("RULEDGEO_SKIP_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("ruledgeo._jet_cy", ["src/ruledgeo/_jet_cy.pyx"])],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
