import subprocess
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


@pytest.mark.parametrize("argv", [
    ["run_verify.py", "--max-ring", "3", "--max-module", "3", "--out", "{tmp}/v.ndjson"],
    ["hunt_atlas.py", "--max-ring", "3", "--max-module", "3"],
    ["reproduce_axb.py", "--deg", "2", "--laurent-deg", "2", "--max-k", "3"],
])
def test_script_runs(tmp_path, argv):
    args = [a.replace("{tmp}", str(tmp_path)) for a in argv]
    proc = subprocess.run([sys.executable, str(SCRIPTS / args[0]), *args[1:]],
                          capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout
