import os

from setuptools import setup

ext_modules = []
if not os.environ.get("TRACEHOM_PURE"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("tracehom.smith._kernel", ["src/tracehom/smith/_kernel.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
