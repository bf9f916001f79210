"""Build script: compiles the optional C string-similarity kernel.

The package works without the extension (a pure-Python fallback is selected
at import time), so any failure here downgrades to a plain build instead of
aborting the install.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "refspect.dedup._speedups",
                ["src/refspect/dedup/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build-env dependent
    print(f"refspect: skipping C kernel ({exc}); pure-Python fallback will be used")

setup(ext_modules=ext_modules)
