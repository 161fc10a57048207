import subprocess
import sys

import pytest


@pytest.fixture(scope="session")
def default_manifest_path(tmp_path_factory):
    """Path of the evaluation toolkit's bundled manifest, resolved through
    the installed package so the harness itself never imports it."""
    out = subprocess.run(
        [sys.executable, "-c",
         "from importlib.resources import files; "
         "print(files('audiofragility') / 'data' / 'default_manifest.json')"],
        capture_output=True, text=True, check=True,
    )
    return out.stdout.strip()
