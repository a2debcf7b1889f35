"""Rewrite expected/ from the current CLI; review the diff before committing."""

import json
import subprocess
import sys
from pathlib import Path

HERE = Path(__file__).parent


def run_case(case: dict) -> str:
    proc = subprocess.run(
        [sys.executable, "-m", "localgp", *case["argv"]],
        cwd=HERE, capture_output=True, text=True,
    )
    return f"exit: {proc.returncode}\n--- stdout\n{proc.stdout}--- stderr\n{proc.stderr}"


if __name__ == "__main__":
    for case in json.loads((HERE / "manifest.json").read_text()):
        (HERE / "expected" / f"{case['name']}.out").write_text(run_case(case))
