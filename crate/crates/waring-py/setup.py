"""Builds the extension by shelling out to cargo; no Rust build backend
needed. Install with `pip install -e . --no-build-isolation`."""

import shutil
import subprocess
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

CDYLIB_NAMES = ["libwaring_py.so", "libwaring_py.dylib", "waring_py.dll"]


class CargoBuildExt(build_ext):
    def build_extension(self, ext):
        crate_dir = Path(__file__).resolve().parent
        subprocess.run(
            ["cargo", "build", "--release", "-p", "waring-py"],
            cwd=crate_dir,
            check=True,
        )
        # target/ lives at the workspace root, two levels up
        release_dir = crate_dir.parent.parent / "target" / "release"
        for name in CDYLIB_NAMES:
            built = release_dir / name
            if built.exists():
                dest = Path(self.get_ext_fullpath(ext.name))
                dest.parent.mkdir(parents=True, exist_ok=True)
                shutil.copy2(built, dest)
                return
        raise FileNotFoundError(f"no cdylib under {release_dir}")


setup(
    ext_modules=[Extension("waring_py", sources=[])],
    cmdclass={"build_ext": CargoBuildExt},
)
