import os

from setuptools import Extension, setup


def extensions():
    """Cythonize the batch scorer unless disabled or Cython is unavailable.

    The package works without the extension: eef_textcat.kernels falls back
    to the scipy.sparse implementation at import time.
    """
    if os.environ.get("EEF_TEXTCAT_NO_EXTENSION"):
        return []
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "eef_textcat._kernels_cy",
        sources=["src/eef_textcat/_kernels_cy.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    )
    return cythonize(
        [ext],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )


setup(ext_modules=extensions())
