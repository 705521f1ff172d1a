from setuptools import Extension, setup

# The compiled kernels are an optimization, not a requirement: the package
# falls back to the pure-Python twins in fockladder._kernels_py at import time.
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "fockladder._kernels_c",
                ["src/fockladder/_kernels_c.pyx"],
                # -ffp-contract=off keeps the compiled kernels bit-identical
                # to the pure-Python fallback (no FMA contraction).
                extra_compile_args=["-O3", "-ffp-contract=off"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
