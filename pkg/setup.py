import os

import numpy
from setuptools import Extension, setup

# The compiled kernels are optional: without Cython or a compiler the package
# installs with the numpy fallback only.
ext_modules = []
if os.getenv("CONFLOW_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "conflow._ckernels",
                    ["src/conflow/_ckernels.pyx"],
                    include_dirs=[numpy.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
                "initializedcheck": False,
            },
        )

setup(ext_modules=ext_modules)
