"""Build script for the optional compiled distance kernels.

The package works without the extension (a NumPy fallback is selected at
import time), so a failed compile only costs speed, not functionality.
"""

from setuptools import setup

try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/hscluster/_backend/_hotloops.pyx"],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
    include_dirs = [numpy.get_include()]
except ImportError:
    ext_modules = []
    include_dirs = []

setup(ext_modules=ext_modules, include_dirs=include_dirs)
