from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# -ffp-contract=off keeps the compiled map bit-identical to the pure-Python
# fallback (no FMA contraction), which the determinism tests rely on.
ext_modules = [
    Extension(
        "kickedtop.classical._kernels",
        sources=["src/kickedtop/classical/_kernels.pyx"],
        extra_compile_args=["-O3", "-ffp-contract=off"],
    )
]

if cythonize is not None:
    ext_modules = cythonize(ext_modules, language_level=3)
else:
    ext_modules = []

setup(ext_modules=ext_modules)
