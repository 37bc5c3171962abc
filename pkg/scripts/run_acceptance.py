"""Run the ten acceptance criteria outside pytest and print one PASS/FAIL line each."""

import pathlib
import runpy
import sys

if __name__ == "__main__":
    sys.argv = [sys.argv[0]]
    path = pathlib.Path(__file__).resolve().parents[1] / "tests" / "test_acceptance.py"
    runpy.run_path(str(path), run_name="__main__")
