"""Build hook for the optional compiled stepping kernels.

The package is fully functional without the extension: curverec.kernels
falls back to the pure-Python implementation when the compiled module is
absent, so any build failure here downgrades gracefully instead of
blocking installation.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class _OptionalBuildExt(build_ext):
    """Build the extension if possible; never fail the install over it."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler or toolchain missing
            print(f"curverec: skipping compiled kernels ({exc!r}); "
                  "pure-Python fallback will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"curverec: skipping {ext.name} ({exc!r}); "
                  "pure-Python fallback will be used")


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [
            Extension(
                "curverec._kernels",
                ["src/curverec/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": 3},
    )


setup(ext_modules=_extensions(), cmdclass={"build_ext": _OptionalBuildExt})
