"""Build script: compiles the optional fast kernels when Cython is available.

The package is fully functional without the extension; knotdeform._kernels
falls back to the pure-Python implementations at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "knotdeform._ckernels",
                ["src/knotdeform/_ckernels.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
