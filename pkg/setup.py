"""Build script for the optional compiled kernel core.

The package works without the extension (a pure-Python fallback is selected
at import time), so a missing compiler only costs speed, not correctness.
"""

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "latentmark._kernels._core",
                ["src/latentmark/_kernels/_core.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
