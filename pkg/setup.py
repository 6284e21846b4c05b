"""Build script for the optional compiled propagator kernel.

The package works without the extension (a NumPy fallback is selected at
import time), so a failed extension build only costs speed, not features.
"""

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "usc_radiance._propagate",
                ["src/usc_radiance/_propagate.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
