"""Build shim: compile the optional Keccak accelerator when possible.

The package is pure Python; the extension only speeds up hashing.  Any
build failure (no compiler, no Cython) downgrades to the interpreted
sponge instead of failing the install.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:
            print(f"skipping optional keccak extension: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"skipping optional keccak extension: {exc}")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [Extension("lumen._keccak_native", ["src/lumen/_keccak_native.pyx"])],
        language_level=3,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
