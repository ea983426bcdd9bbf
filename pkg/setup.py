import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("HARMGERM_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "harmgerm._kernels._speedups",
                    ["src/harmgerm/_kernels/_speedups.pyx"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython at build time: install pure-Python only, the kernel
        # selector falls back automatically.
        pass

setup(ext_modules=ext_modules)
