"""CMake-driven build of the survsplit._core extension."""

import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source_dir = Path(__file__).resolve().parent
        out_dir = Path(self.get_ext_fullpath(ext.name)).resolve().parent
        build_dir = Path(self.build_temp).resolve()
        build_dir.mkdir(parents=True, exist_ok=True)

        subprocess.run(
            [
                "cmake", "-S", str(source_dir), "-B", str(build_dir),
                "-DCMAKE_BUILD_TYPE=Release",
                "-DSURVSPLIT_BUILD_TESTS=OFF",
                "-DSURVSPLIT_BUILD_CLI=OFF",
                "-DSURVSPLIT_BUILD_PYTHON=ON",
                f"-DPYTHON_EXECUTABLE={sys.executable}",
                f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={out_dir}",
            ],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_core"],
            check=True,
        )


setup(
    ext_modules=[CMakeExtension("survsplit._core")],
    cmdclass={"build_ext": CMakeBuild},
)
