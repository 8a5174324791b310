import subprocess
import sys
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def run_script(name, *args):
    proc = subprocess.run(
        [sys.executable, str(SCRIPTS / name), *args], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0, proc.stderr
    return proc.stdout.splitlines()


def test_stoll_dimensions_script():
    lines = run_script("stoll_dimensions.py", "--n-max", "4", "--k", "0", "2")
    assert lines[0] == "n,k,dimension,verified"
    assert lines[1] == "2,0,4,True"
    assert all(line.endswith("True") for line in lines[1:])


def test_legendre_sweep_script():
    lines = run_script("legendre_sweep.py", "--n", "2", "--points", "3")
    assert lines[0] == "n,z,which,residual"
    assert len(lines) == 1 + 3 * 3
    assert max(float(line.split(",")[3]) for line in lines[1:]) < 1e-6
