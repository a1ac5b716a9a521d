import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("QARENA_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("qarena.chess._kernel", ["src/qarena/chess/_kernel.pyx"])],
            language_level=3,
        )
    except ImportError:
        # No Cython: install with the pure-Python kernel only.
        pass

setup(ext_modules=ext_modules)
