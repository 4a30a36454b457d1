"""Regenerate the golden reports from the current code. Run from the
repository root; review the diff before committing new goldens."""
import json
import os
import subprocess
import sys

HERE = os.path.dirname(os.path.abspath(__file__))


def run_case(case):
    cmd = [sys.executable, "-m", "belian.cli", case["command"], "--input", case["input"], "--format", "json"]
    cmd += case.get("flags", [])
    p = subprocess.run(cmd, cwd=HERE, capture_output=True, text=True)
    return p.returncode, p.stdout


def main():
    with open(os.path.join(HERE, "manifest.json")) as fh:
        cases = json.load(fh)["cases"]
    os.makedirs(os.path.join(HERE, "golden"), exist_ok=True)
    for case in cases:
        code, out = run_case(case)
        if code != case["exit"]:
            sys.exit(f"{case['name']}: exit {code}, expected {case['exit']}")
        with open(os.path.join(HERE, "golden", case["name"] + ".json"), "w") as fh:
            fh.write(out)
        print(f"{case['name']}: exit {code}")


if __name__ == "__main__":
    main()
