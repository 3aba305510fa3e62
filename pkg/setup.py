"""Build script for the optional compiled kernel extension.

The package is fully functional without the extension (the NumPy fallback in
``tumls.kernels`` is selected at import time), so a failed compile downgrades
to a warning instead of aborting the install.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "tumls.kernels._native",
                ["src/tumls/kernels/_native.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - exercised only on broken toolchains
    sys.stderr.write(f"tumls: skipping native kernel build ({exc}); "
                     "the NumPy fallback will be used\n")

setup(ext_modules=ext_modules)
