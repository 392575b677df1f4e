"""Builds the pybind11 extension through the project's CMake tree."""

import os
import subprocess
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        extdir = os.path.abspath(os.path.dirname(self.get_ext_fullpath(ext.name)))
        source_dir = os.path.abspath(os.path.dirname(__file__))
        build_temp = os.path.join(self.build_temp, "cmake")
        os.makedirs(build_temp, exist_ok=True)

        cmake_args = [
            "-DHYPOHEAT_PYTHON=ON",
            "-DCMAKE_BUILD_TYPE=Release",
            f"-DPython3_EXECUTABLE={sys.executable}",
            f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={extdir}",
        ]
        subprocess.run(["cmake", "-S", source_dir, "-B", build_temp] + cmake_args, check=True)
        subprocess.run(
            ["cmake", "--build", build_temp, "--target", "_hypoheat", "-j"], check=True
        )


setup(
    packages=["hypoheat"],
    package_dir={"": "python"},
    ext_modules=[CMakeExtension("hypoheat._hypoheat")],
    cmdclass={"build_ext": CMakeBuild},
    zip_safe=False,
)
