import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("CCDASSESS_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension(
                "ccdassess._kernels._core",
                ["src/ccdassess/_kernels/_core.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                # no FMA contraction: the fallback must match bit-for-bit
                extra_compile_args=["-O3", "-ffp-contract=off", "-fno-fast-math"],
            )],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
