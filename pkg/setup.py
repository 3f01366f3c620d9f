import sys

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("cikit._rowred", ["src/cikit/_rowred.pyx"])],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
        },
    )
except Exception as exc:  # the pure-Python kernels take over
    sys.stderr.write(f"warning: compiled row-reduction kernel skipped ({exc})\n")

setup(ext_modules=ext_modules)
