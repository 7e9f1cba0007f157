"""Build script: compiles the optional kernel extension when Cython and a
C toolchain are available; the package is fully functional without it (the
pure-Python kernels are selected at import)."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/acsphere/_core_c.pyx",
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
