import json
import os
import subprocess
import sys

import pytest

from belian.cli import HANDLERS, main

EX = os.path.join(os.path.dirname(__file__), os.pardir, "cli_examples")


def ex(name):
    return os.path.join(EX, name)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_every_command_has_an_example():
    with open(ex("manifest.json")) as fh:
        cases = json.load(fh)["cases"]
    assert {c["command"] for c in cases} == set(HANDLERS)


def test_success_json(capsys):
    code, out, err = run(capsys, "kernel", "--input", ex("kernel.json"), "--format", "json")
    assert code == 0 and not err
    doc = json.loads(out)
    assert doc["command"] == "kernel" and doc["failed checks"] == []


def test_invalid_input_exit_2_with_violations(capsys):
    code, out, err = run(capsys, "validate", "--input", ex("validate_invalid.json"), "--format", "json")
    assert code == 2
    doc = json.loads(out)
    assert doc["failed checks"] == ["valid"]
    laws = {v["law"] for v in doc["report"]["violations"]}
    assert "identity" in laws
    assert all(v["location"].endswith("#/monoid") for v in doc["report"]["violations"])


def test_structural_error_has_pointer(capsys):
    code, out, err = run(capsys, "kernel", "--input", ex("malformed.json"))
    assert code == 3
    e = json.loads(err)["error"]
    assert e["code"] == "structural" and e["location"].endswith("#/morphism/source")


def test_bad_json_exit_3(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{\"monoid\": ")
    code, out, err = run(capsys, "validate", "--input", str(bad))
    assert code == 3 and json.loads(err)["error"]["code"] == "json"


def test_missing_file_exit_3(capsys, tmp_path):
    code, out, err = run(capsys, "validate", "--input", str(tmp_path / "nope.json"))
    assert code == 3 and json.loads(err)["error"]["code"] == "io"


@pytest.mark.parametrize("argv", [["frobnicate", "--input", "x.json"], ["kernel"],
                                  ["kernel", "--input", "x.json", "--cap", "0"],
                                  ["kernel", "--input", "x.json", "--cap", "33"],
                                  ["kernel", "--input", "x.json", "--format", "yaml"],
                                  ["kernel", "--input", "x.json", "--jobs", "0"]])
def test_usage_errors_exit_3(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 3
    e = json.loads(err)["error"]
    assert e["location"] == "argv" and e["code"] in ("usage", "unknown-command")


def test_out_file_matches_stdout(capsys, tmp_path):
    dest = tmp_path / "r.json"
    code, out, err = run(capsys, "image", "--input", ex("image.json"), "--format", "json", "--out", str(dest))
    assert code == 0 and dest.read_text() == out


def test_text_format_prints_summary(capsys):
    code, out, err = run(capsys, "image", "--input", ex("image.json"))
    assert code == 0 and out and not out.startswith("{")


def test_multiple_inputs_keep_order_with_jobs(capsys):
    files = [ex("kernel.json"), ex("validate_invalid.json"), ex("cokernel.json")]
    args = ["validate"] + [a for f in files for a in ("--input", f)] + ["--format", "json"]
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args, "--jobs", "3")
    assert code1 == code2 == 2
    assert out1 == out2
    res = json.loads(out1)["results"]
    assert [r["input"] for r in res] == files
    assert [r["exit"] for r in res] == [0, 2, 0]


def test_module_entry_point():
    env = dict(os.environ, PYTHONPATH=os.path.join(os.path.dirname(__file__), os.pardir, "src"))
    p = subprocess.run([sys.executable, "-m", "belian.cli", "image", "--input", ex("image.json"), "--format", "json"],
                       capture_output=True, text=True, env=env)
    assert p.returncode == 0 and json.loads(p.stdout)["command"] == "image"
