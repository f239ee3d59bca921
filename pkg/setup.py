"""Build script for the optional compiled counting kernels.

The package is fully functional without the extension: qmcpairs._backend
falls back to the numpy implementation in qmcpairs._kernels_py when
qmcpairs._kernels is not importable.  Building the extension needs either
Cython (to regenerate the C source) or the pregenerated _kernels.c.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class BuildFailed(Exception):
    pass


class optional_build_ext(build_ext):
    """Build the extension if possible, otherwise install pure Python."""

    def run(self):
        try:
            build_ext.run(self)
        except Exception:
            raise BuildFailed()

    def build_extension(self, ext):
        try:
            build_ext.build_extension(self, ext)
        except Exception:
            raise BuildFailed()


def get_extensions():
    pyx = os.path.join("src", "qmcpairs", "_kernels.pyx")
    c = os.path.join("src", "qmcpairs", "_kernels.c")
    try:
        from Cython.Build import cythonize

        return cythonize(
            [Extension("qmcpairs._kernels", [pyx])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        if os.path.exists(c):
            return [Extension("qmcpairs._kernels", [c])]
        return []


def run_setup(with_ext):
    setup(
        ext_modules=get_extensions() if with_ext else [],
        cmdclass={"build_ext": optional_build_ext} if with_ext else {},
    )


try:
    run_setup(True)
except BuildFailed:
    print("WARNING: compiled kernels could not be built; "
          "installing with the pure Python backend.")
    run_setup(False)
