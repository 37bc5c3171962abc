"""Write the golden Table 1 data by instantiating the table's row patterns.

This deliberately does not import the package: the rows below are the
printed patterns (chains of small fundamental weights, "(0<)" marking a
quasi-minuscule bottom), expanded for each rank.
"""

import json
import sys
from pathlib import Path


def row_A(n):
    return [([i], False) for i in range(1, n + 1)]


def row_B(n):
    return [(list(range(1, n)), True), ([n], False)]


def row_C(n):
    return [(list(range(1, 2 * ((n - 1) // 2) + 2, 2)), False), (list(range(2, 2 * (n // 2) + 1, 2)), True)]


def row_D(n):
    return [(list(range(1, 2 * ((n - 1) // 2), 2)), False), (list(range(2, 2 * (n // 2) - 1, 2)), True),
            ([n - 1], False), ([n], False)]


EXCEPTIONAL = {
    "E6": [([1, 5], False), ([2], True), ([6, 3], False)],
    "E7": [([1, 6], True), ([7, 2], False)],
    "E8": [([8, 1], True)],
    "F4": [([4, 1], True)],
    "G2": [([1], True)],
}

CLASSICAL = {"A": (row_A, range(1, 9)), "B": (row_B, range(2, 6)), "C": (row_C, range(2, 6)),
             "D": (row_D, range(3, 7))}
# the "# chains" column as printed, per family
PRINTED_CHAINS = {"A": lambda n: n, "B": lambda n: 2, "C": lambda n: 2, "D": lambda n: 4}


def entry(name, chains, printed_chains):
    nonempty = [(c, qm) for c, qm in chains if c]
    out = {"type": name,
           "chains": [{"weights": c, "quasi_minuscule_bottom": qm} for c, qm in nonempty],
           "num_weights": sum(len(c) for c, _ in nonempty),
           "num_chains": len(nonempty)}
    if printed_chains != len(nonempty):
        out["note"] = (f"the printed family count is {printed_chains}; the row pattern instantiated "
                       f"at this rank has {len(nonempty)} nonempty chains")
        out["printed_num_chains"] = printed_chains
    return out


def main(paths):
    rows = []
    for fam, (fn, ranks) in CLASSICAL.items():
        for n in ranks:
            rows.append(entry(f"{fam}{n}", fn(n), PRINTED_CHAINS[fam](n)))
    for name, chains in EXCEPTIONAL.items():
        rows.append(entry(name, chains, len(chains)))
    text = json.dumps({"schema_version": 1, "rows": rows}, indent=1) + "\n"
    for p in paths:
        Path(p).write_text(text)


if __name__ == "__main__":
    root = Path(__file__).resolve().parent.parent
    main(sys.argv[1:] or [root / "tests/fixtures/table1.json", root / "src/gmacdonald/data/table1.json"])
