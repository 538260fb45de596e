import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("COSUPPORT_PURE"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("cosupport._kernel._snf", ["src/cosupport/_kernel/_snf.pyx"],
                       extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
