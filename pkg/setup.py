"""Builds the optional compiled kernels.

Without Cython (or a C compiler) the package installs pure-Python and
``dcurrent.kernels`` falls back to ``_kernels_py``.
"""
from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("dcurrent._ckernels", ["src/dcurrent/_ckernels.pyx"], extra_compile_args=["-O2"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
