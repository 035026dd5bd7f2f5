"""Build script: compiles an accelerated twin of the rational PL kernels.

The kernel module ``plcoarse/_kernels/_impl.py`` is plain Python.  At build
time it is copied to ``_impl_c.py`` and compiled with Cython so both backends
can be imported side by side (``plcoarse._kernels`` picks the compiled one
when present).  If Cython or a C compiler is unavailable the package installs
with the pure-Python kernels only.
"""

import shutil
from pathlib import Path

from setuptools import setup

KERNEL_SRC = Path(__file__).parent / "src" / "plcoarse" / "_kernels" / "_impl.py"
KERNEL_TWIN = KERNEL_SRC.with_name("_impl_c.py")


def _ext_modules():
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        return []
    shutil.copyfile(KERNEL_SRC, KERNEL_TWIN)
    return cythonize(
        [
            Extension(
                "plcoarse._kernels._impl_c",
                [str(KERNEL_TWIN.relative_to(Path(__file__).parent))],
                extra_compile_args=["-O2"],
            )
        ],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )


setup(ext_modules=_ext_modules())
