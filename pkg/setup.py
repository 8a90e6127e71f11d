"""Build the optional Cython kernels; the package falls back to numpy if they are absent."""
import os

import numpy as np
from setuptools import Extension, setup

ext_modules = []
if os.environ.get("GRIGSHIFT_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "grigshift._core",
                    ["src/grigshift/_core.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )

setup(ext_modules=ext_modules)
