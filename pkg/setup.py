"""Build hook for the optional compiled alignment kernel.

The package is fully functional without the extension: miscuekit.align
falls back to the pure-Python kernel when miscuekit._align_fast is not
importable.  Cython is therefore not a hard build requirement.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "miscuekit._align_fast",
                ["src/miscuekit/_align_fast.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
