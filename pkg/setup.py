"""Build script: compiles the optional Cython kernels.

The package works without the extension (a NumPy fallback is selected at
import time), so any failure here downgrades to a pure-Python install
instead of aborting.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "aggbench._ext",
                ["src/aggbench/_ext.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError as exc:
    sys.stderr.write(f"aggbench: Cython unavailable ({exc}); installing without compiled kernels\n")

setup(ext_modules=ext_modules)
