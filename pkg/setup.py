"""Build script: compiles the branch-and-bound kernel when Cython is present.

The package works without the extension (a pure-Python kernel is selected at
import time), so a failed extension build degrades gracefully.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/findim/_bbx.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"findim: skipping compiled kernel ({exc}); pure-Python fallback will be used")
    ext_modules = []

setup(ext_modules=ext_modules)
