"""Build script: compiles the optional scanning extension.

The package works without the extension (a pure-Python scanner is selected
at import time), so a missing compiler only costs speed, not functionality.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Swallow compiler failures; the pure-Python kernel takes over."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # CompileError, DistutilsPlatformError, ...
            warnings.warn(f"compiled kernel skipped ({exc}); using pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"compiled kernel skipped ({exc}); using pure-Python fallback")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [
            Extension(
                "rmra._kernel_c",
                ["src/rmra/_kernel_c.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
