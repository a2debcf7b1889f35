import io
import json

import pytest

from localgp.cli import COMMANDS, main

ALL_COMMANDS = {
    "hilbert", "squareclass", "classify", "xi-inspect", "transfer-factor",
    "param-fiber", "compgroup", "gp-predict", "rootnum", "selftest",
}


def call(monkeypatch, capsys, argv, job=None):
    if job is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(job)))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_every_command_is_registered():
    assert set(COMMANDS) == ALL_COMMANDS


def test_hilbert_from_stdin(monkeypatch, capsys):
    code, out, err = call(monkeypatch, capsys, ["hilbert"], {"p": 2, "a": -1, "b": -1})
    assert code == 0 and err == ""
    data = json.loads(out)
    assert data["command"] == "hilbert" and data["result"]["value"] == -1
    assert "version" in data


def test_classify_gives_two_forms(monkeypatch, capsys):
    code, out, _ = call(monkeypatch, capsys, ["classify"], {"p": 3, "d": 4, "delta": "1"})
    assert code == 0 and json.loads(out)["result"]["count"] == 2


def test_array_job(monkeypatch, capsys):
    code, out, _ = call(monkeypatch, capsys, ["hilbert"], [{"p": 3, "a": 2, "b": 3}, {"p": 5, "a": 2, "b": 2}])
    data = json.loads(out)
    assert code == 0 and [r["value"] for r in data["results"]] == [-1, 1]


def test_p_flag_overrides_job(monkeypatch, capsys):
    code, out, _ = call(monkeypatch, capsys, ["hilbert", "--p", "3"], {"p": 5, "a": 2, "b": 3})
    assert code == 0 and json.loads(out)["result"]["p"] == 3


def test_output_is_deterministic(monkeypatch, capsys):
    job = {"p": 5, "d": 3, "delta": "2"}
    first = call(monkeypatch, capsys, ["classify"], job)
    second = call(monkeypatch, capsys, ["classify"], job)
    assert first == second


@pytest.mark.parametrize("argv,job,field", [
    (["hilbert"], {"p": 4, "a": 1, "b": 1}, "job.p"),
    (["hilbert"], {"p": 3, "a": 0, "b": 1}, "job.a"),
    (["hilbert"], {"p": 3, "b": 1}, "job.a"),
    (["hilbert"], {"p": 3, "a": 1.5, "b": 1}, "job.a"),
    (["hilbert"], [{"p": 3, "a": 1, "b": 1}, {"p": 3, "a": 1}], "job[1].b"),
    (["hilbert", "--p", "6"], {"a": 1, "b": 1}, "--p"),
    (["classify"], {"p": 3, "d": -1, "delta": 1}, "job.d"),
])
def test_validation_errors_exit_2_with_field(monkeypatch, capsys, argv, job, field):
    code, out, err = call(monkeypatch, capsys, argv, job)
    assert code == 2 and out == ""
    assert err.startswith(f"error: {field}:")


def test_malformed_json(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO("{\n  p: 3}"))
    assert main(["hilbert"]) == 2
    err = capsys.readouterr().err
    assert "line 2 column 3" in err


def test_missing_job_file(capsys):
    assert main(["hilbert", "--job", "/nonexistent/job.json"]) == 2
    assert capsys.readouterr().err.startswith("error: job:")


def test_text_format(monkeypatch, capsys):
    code, out, _ = call(monkeypatch, capsys, ["hilbert", "--format", "text"], {"p": 2, "a": -1, "b": -1})
    assert code == 0 and "result.value: -1" in out.splitlines()


def test_selftest_passes(monkeypatch, capsys):
    code, out, _ = call(monkeypatch, capsys, ["selftest"], {"p_list": [2, 3]})
    data = json.loads(out)["result"]
    assert code == 0 and data["failures"] == 0 and data["cases"] > 0


def test_internal_error_exit_1(monkeypatch, capsys):
    def boom(job, ctx, where="job"):
        raise RuntimeError("broken")

    monkeypatch.setitem(COMMANDS, "hilbert", boom)
    code, _, err = call(monkeypatch, capsys, ["hilbert"], {"p": 3})
    assert code == 1 and "internal error" in err


def test_unknown_command_is_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
