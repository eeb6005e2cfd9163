import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "blochgf._kernels_cy",
                ["src/blochgf/_kernels_cy.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    # Pure-python fallback is selected at import time; the package works
    # without the compiled core, just slower on the quadrature hot loops.
    ext_modules = []

setup(ext_modules=ext_modules)
