"""Build the optional Cython sweep kernel.

If Cython or a C compiler is unavailable the package still installs and
falls back to the numpy implementation in ``obslab._kernel_py``.
"""

import platform
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"warning: compiled kernel not built ({exc}); using fallback", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: failed to build {ext.name} ({exc}); using fallback", file=sys.stderr)


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    from setuptools import Extension

    args = ["-O3"]
    if platform.machine().lower() in ("x86_64", "amd64"):
        args.append("-mpopcnt")
    ext = Extension("obslab._kernel", ["src/obslab/_kernel.pyx"], extra_compile_args=args)
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
