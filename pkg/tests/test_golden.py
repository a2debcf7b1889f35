import json
import sys
from pathlib import Path

import pytest

GOLDEN = Path(__file__).parent / "golden"
sys.path.insert(0, str(GOLDEN))
from regenerate import run_case  # noqa: E402

CASES = json.loads((GOLDEN / "manifest.json").read_text())


@pytest.mark.parametrize("case", CASES, ids=[c["name"] for c in CASES])
def test_golden_output(case):
    expected = (GOLDEN / "expected" / f"{case['name']}.out").read_text()
    assert run_case(case) == expected


def test_corpus_covers_every_command():
    from localgp.cli import COMMANDS

    used = {c["argv"][0] for c in CASES}
    assert used == set(COMMANDS)
