"""Build script for the optional compiled skein kernel.

The package works without the extension (a pure-Python kernel is selected
at import time); set CONWAYLAB_PURE_PYTHON=1 to skip compilation entirely.
"""

import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("CONWAYLAB_PURE_PYTHON"):
    ext_modules = cythonize(
        [
            Extension(
                "conwaylab._kernel._speedups",
                ["src/conwaylab/_kernel/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level="3",
    )

setup(ext_modules=ext_modules)
