"""Build script: compiles the optional fast kernel extension.

The package is pure Python; the Cython extension in certoset/_kernels is a
drop-in accelerator.  If Cython or a C compiler is unavailable the build
falls back to the pure backend without failing.
"""

import warnings

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, etc.
            warnings.warn(f"skipping fast kernel build: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"skipping fast kernel build ({ext.name}): {exc}")


ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/certoset/_kernels/_fast.pyx"],
        language_level="3",
    )
except ImportError:
    warnings.warn("Cython not available; installing with pure-Python kernels only")

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
