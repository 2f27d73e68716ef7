"""Build script: compiles the optional accelerator extension.

The package is fully functional without the extension (a pure Python
backend is selected at import time), so the extension is marked optional
and any build failure is non-fatal.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "flagalg._kernels",
                sources=["src/flagalg/_kernels.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
