from setuptools import Extension, setup

# The recurrence kernel is optional: without a compiler the package falls
# back to the numpy implementation selected at import time.
try:
    from Cython.Build import cythonize
    import numpy as np

    extensions = cythonize(
        [
            Extension(
                "qnetdyn.rqa._kernels",
                ["src/qnetdyn/rqa/_kernels.pyx"],
                include_dirs=[np.get_include()],
                # -ffp-contract=off: the fallback kernel must produce
                # bit-identical distances, so FMA fusion is disabled.
                extra_compile_args=["-O3", "-ffp-contract=off"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                optional=True,
            )
        ],
        language_level="3",
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
