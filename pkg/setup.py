"""Build script for the optional compiled enumeration kernel.

The package works without the extension (a numpy fallback is selected at
import time), so any failure here degrades to a pure-Python build instead
of aborting the install.  Set SIMPLEX_BALL_NO_EXT=1 to skip compilation.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Swallow compiler failures; the importer falls back to pure numpy."""

    def run(self):
        try:
            build_ext.run(self)
        except Exception as exc:  # missing compiler, broken toolchain
            print(f"warning: building the compiled kernel failed ({exc}); "
                  "the pure numpy fallback will be used")

    def build_extension(self, ext):
        try:
            build_ext.build_extension(self, ext)
        except Exception as exc:
            print(f"warning: compiling {ext.name} failed ({exc}); "
                  "the pure numpy fallback will be used")


ext_modules = []
if not os.environ.get("SIMPLEX_BALL_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "simplexball._signmax",
                    ["src/simplexball/_signmax.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            language_level=3,
        )
    except ImportError as exc:
        print(f"warning: Cython/numpy unavailable ({exc}); "
              "building without the compiled kernel")

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
