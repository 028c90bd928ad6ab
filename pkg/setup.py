"""Build script.

The compiled kernel (gridtb._speedups) is optional: if Cython or a C
compiler is unavailable the package installs anyway and falls back to
the pure-Python kernel at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/gridtb/_speedups.pyx"],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
