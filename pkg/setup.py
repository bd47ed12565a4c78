"""Build script for the optional Cython simulation kernel.

The package works without the extension: shinohara.montecarlo falls back
to a pure-Python trial loop that produces bit-identical results.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("shinohara._mckernel", ["src/shinohara/_mckernel.pyx"])],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
