"""The ten acceptance criteria, run exactly, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` (the lines appear in the terminal
summary) or ``python tests/test_acceptance.py``.
"""

import time

import pytest

from gmacdonald.params import MODES
from gmacdonald.suites import (
    TABLE1_TYPES, check_additive_constant, check_commutativity, check_diagonalization, check_dual_oracle,
    check_duality, check_lemmas, check_pieri_lr, check_small_weights, check_symmetry, check_table1,
    check_triangularity,
)
from gmacdonald.rootsys import CartanType

GRID_TYPES = ("A2", "A3", "B2", "B3", "C3", "D4", "G2")
RANK3_TYPES = tuple(t for t in GRID_TYPES if CartanType.parse(t).rank <= 3)
SMALL_WEIGHT_TYPES = tuple(t for t in TABLE1_TYPES if CartanType.parse(t).rank <= 4) + ("F4",)
LEMMA_TYPES = ("A2", "A3", "A4", "B2", "B3", "B4", "C3", "D4", "F4", "G2")

RESULTS: dict = {}


def run_grid(check, types, modes=MODES):
    reports = [check(ct, mode) for ct in types for mode in modes]
    return reports


def summarize(n: int, title: str, reports, elapsed: float, limit: float | None = None) -> bool:
    checks = sum(r.checks for r in reports)
    skipped = sum(len(r.skipped) for r in reports)
    failures = [f"{r.claim} {r.cartan_type} {r.mode}: {f}" for r in reports for f in r.failures]
    ok = not failures and checks > 0 and (limit is None or elapsed < limit)
    note = f"{checks} exact checks"
    if skipped:
        note += f", {skipped} outside the Pieri cone skipped"
    if limit is not None:
        note += f", {elapsed:.1f}s of {limit:.0f}s"
    else:
        note += f", {elapsed:.1f}s"
    if failures:
        note += f"; first failure: {failures[0]}"
    RESULTS[n] = f"criterion {n:2d} {'PASS' if ok else 'FAIL'} {title}: {note}"
    print(RESULTS[n])
    return ok


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def criterion_1():
    rep, dt = timed(lambda: [check_table1(TABLE1_TYPES)])
    return summarize(1, "Table 1 reproduction", rep, dt, limit=30)


def criterion_2():
    reps, dt = timed(lambda: run_grid(check_diagonalization, GRID_TYPES))
    return summarize(2, "diagonalization", reps, dt, limit=600)


def criterion_3():
    reps, dt = timed(lambda: run_grid(check_dual_oracle, RANK3_TYPES))
    return summarize(3, "Pieri recursion vs Gram-Schmidt at t=q^k", reps, dt)


def criterion_4():
    reps, dt = timed(lambda: run_grid(check_symmetry, ("A2", "B2", "G2")))
    return summarize(4, "symmetry under the Macdonald inner product", reps, dt)


def criterion_5():
    reps, dt = timed(lambda: run_grid(check_triangularity, GRID_TYPES))
    return summarize(5, "triangularity", reps, dt)


def criterion_6():
    reps, dt = timed(lambda: run_grid(check_commutativity, ("A3", "B3", "C3", "D4")))
    return summarize(6, "commutativity", reps, dt)


def criterion_7():
    reps, dt = timed(lambda: run_grid(check_duality, RANK3_TYPES))
    return summarize(7, "duality and P(rho)=1", reps, dt)


def criterion_8():
    reps, dt = timed(lambda: run_grid(check_pieri_lr, RANK3_TYPES))
    return summarize(8, "Pieri and LR expansions", reps, dt)


def criterion_9():
    def run():
        return run_grid(check_small_weights, SMALL_WEIGHT_TYPES) + run_grid(check_additive_constant, TABLE1_TYPES)

    reps, dt = timed(run)
    return summarize(9, "small-weight closed form and additive constant", reps, dt)


def criterion_10():
    reps, dt = timed(lambda: run_grid(check_lemmas, LEMMA_TYPES))
    return summarize(10, "appendix lemmas", reps, dt)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9, criterion_10]


@pytest.mark.slow
@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 11)])
def test_criterion(criterion):
    assert criterion(), RESULTS.get(CRITERIA.index(criterion) + 1)


if __name__ == "__main__":
    import sys

    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
