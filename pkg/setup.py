"""Build the optional compiled kernels.

The package works without them: ``homx.kernels`` falls back to the
pure-Python implementation when the extension cannot be imported.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("HOMX_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "homx._ckernels",
                    ["src/homx/_ckernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
