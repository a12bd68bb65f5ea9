import os

from setuptools import setup

ext_modules = []
if os.environ.get("RANGECOO_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools.extension import Extension

        ext_modules = cythonize(
            [Extension("rangecoo._speedups", ["src/rangecoo/_speedups.pyx"])],
            language_level=3,
        )
    except ImportError:
        # No Cython at build time: install pure-Python only, kernels.py
        # falls back at import time.
        pass

setup(ext_modules=ext_modules)
