import os

from setuptools import Extension, setup

# The compiled kernels are optional: without Cython (or a C compiler) the
# package falls back to the pure-Python implementation at import time.
ext_modules = []
if os.environ.get("UNCERTAIN_PROC_PURE") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "uncertain_proc._ckernels",
                    ["src/uncertain_proc/_ckernels.pyx"],
                    extra_compile_args=["-O3"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
