from setuptools import Extension, setup
from Cython.Build import cythonize

ext_module = Extension(
    "qrecycle._kernels._fast",
    ["src/qrecycle/_kernels/_fast.pyx"],
)

setup(
    ext_modules=cythonize(ext_module, language_level="3"),
)
