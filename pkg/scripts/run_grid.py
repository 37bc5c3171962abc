"""Run verification suites over a list of Cartan types and write one JSON report per run.

Example: ``python scripts/run_grid.py --suites triangularity,duality --types A2,B2 --out results``
"""

import argparse
import json
import pathlib
import sys

from gmacdonald.params import MODES
from gmacdonald import suites

SUITES = {
    "diagonalization": suites.check_diagonalization,
    "triangularity": suites.check_triangularity,
    "symmetry": suites.check_symmetry,
    "commutativity": suites.check_commutativity,
    "dual_oracle": suites.check_dual_oracle,
    "duality": suites.check_duality,
    "pieri_lr": suites.check_pieri_lr,
    "small_weights": suites.check_small_weights,
    "additive_constant": suites.check_additive_constant,
    "lemmas": suites.check_lemmas,
}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--suites", default=",".join(SUITES), help="comma separated suite names")
    ap.add_argument("--types", default="A2,B2,G2", help="comma separated Cartan types")
    ap.add_argument("--out", default="results", help="output directory")
    args = ap.parse_args(argv)
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    ok = True
    for name in args.suites.split(","):
        check = SUITES[name]
        for ct in args.types.split(","):
            for mode in MODES:
                rep = check(ct, mode)
                print(rep.line(), flush=True)
                (out / f"{name}_{ct}_{mode}.json").write_text(json.dumps(rep.to_json(), indent=2, sort_keys=True))
                ok &= rep.passed
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
