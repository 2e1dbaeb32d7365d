import os
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).parent.parent


def _run(*args):
    env = dict(os.environ, PYTHONPATH=str(ROOT / "src"))
    return subprocess.run(
        [sys.executable, "-m", "hopfbrace", *args],
        capture_output=True,
        text=True,
        cwd=str(ROOT),
        env=env,
    )


def test_package_execution():
    result = _run("--help")
    assert result.returncode == 0
    assert "Verify Hopf algebras, Hopf braces and their constructions." in result.stdout


def test_package_check_from_module():
    result = _run("check", "hopf", "zoo:h4")
    assert result.returncode == 0
    assert result.stdout.strip() == "h4: pass"


def test_package_version():
    result = _run("--version")
    assert result.returncode == 0
    assert "hopfbrace 1.0.0" in result.stdout
