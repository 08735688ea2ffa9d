"""Build script: compiles the optional Cython term-map kernel.

The extension is marked optional; a failed build falls back to the pure
Python kernel in toricpke._pykernel.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "toricpke._ckernel",
                ["src/toricpke/_ckernel.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
