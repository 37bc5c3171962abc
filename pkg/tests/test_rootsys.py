import json
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from gmacdonald.rootsys import (
    CartanType, RootSystemError, all_small_weights, build_root_system, classify_weight,
    dominance_leq, dominant_representative, dominant_weights_below, format_chains, is_small,
    orbit, saturated_set, small_fundamental_chains, weyl_group_order,
)
from gmacdonald.suites import TABLE1_TYPES, normalize_chains

NUM_ROOTS = {"A": lambda n: n * (n + 1), "B": lambda n: 2 * n * n, "C": lambda n: 2 * n * n,
             "D": lambda n: 2 * n * (n - 1)}
EXCEPTIONAL_ROOTS = {"E6": 72, "E7": 126, "E8": 240, "F4": 48, "G2": 12}
SMALL_TYPES = ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4", "G2"]


def n_roots(ct):
    c = CartanType.parse(ct)
    return EXCEPTIONAL_ROOTS.get(ct) or NUM_ROOTS[c.family](c.rank)


@pytest.mark.parametrize("ct", TABLE1_TYPES)
def test_root_count(ct):
    R = build_root_system(ct)
    assert len(R.roots) == n_roots(ct)
    assert len(R.positive_roots) == n_roots(ct) // 2


def test_g2_cartan_matrix():
    assert build_root_system("G2").cartan_matrix == ((2, -1), (-3, 2))


@pytest.mark.parametrize("ct", ["A2", "B3", "C3", "D4", "F4", "G2"])
def test_cartan_matrix_rows_are_simple_roots(ct):
    R = build_root_system(ct)
    for i in range(R.rank):
        assert R.simple_root_weight(i + 1).coords == R.cartan_matrix[i]


@pytest.mark.parametrize("ct", ["A1", "A3", "B2", "B3", "C3", "D4", "F4", "G2", "E6"])
def test_regular_orbit_has_weyl_group_order(ct):
    R = build_root_system(ct)
    assert len(orbit(R.weight(R.rho)).points) == weyl_group_order(R.cartan_type)


@pytest.mark.parametrize("ct", ["B3", "C4", "F4", "G2"])
def test_dual_swaps_long_and_short(ct):
    R = build_root_system(ct)
    D = R.dual()
    assert D.dual() is R
    assert len(D.roots) == len(R.roots)
    long_R = sum(R.is_long(a) for a in R.roots)
    long_D = sum(D.is_long(a) for a in D.roots)
    assert long_R + long_D == len(R.roots)


def test_unknown_type_rejected():
    with pytest.raises(RootSystemError):
        build_root_system("Z3")
    with pytest.raises(RootSystemError):
        build_root_system("E5")


def weights(ct, bound=3):
    R = build_root_system(ct)
    return st.lists(st.integers(-bound, bound), min_size=R.rank, max_size=R.rank).map(
        lambda c: R.weight(tuple(c)))


def dominant_weights(ct, bound=3):
    R = build_root_system(ct)
    return st.lists(st.integers(0, bound), min_size=R.rank, max_size=R.rank).map(
        lambda c: R.weight(tuple(c)))


@pytest.mark.parametrize("ct", ["A3", "B3", "G2"])
@given(data=st.data())
def test_dominance_is_a_partial_order(ct, data):
    a, b, c = (data.draw(dominant_weights(ct)) for _ in range(3))
    assert dominance_leq(a, a)
    if dominance_leq(a, b) and dominance_leq(b, a):
        assert a.coords == b.coords
    if dominance_leq(a, b) and dominance_leq(b, c):
        assert dominance_leq(a, c)


@pytest.mark.parametrize("ct", ["A2", "B3", "C3", "G2"])
@given(data=st.data())
def test_orbit_closed_under_simple_reflections(ct, data):
    w = data.draw(weights(ct))
    pts = {p.coords for p in orbit(dominant_representative(w)[0]).points}
    assert w.coords in pts
    R = w.system
    for p in pts:
        for i in range(R.rank):
            assert R.reflect(p, i) in pts
    assert sum(all(x >= 0 for x in p) for p in pts) == 1


@pytest.mark.parametrize("ct", ["A3", "B2", "C3", "G2"])
@given(data=st.data())
def test_dominant_weights_below(ct, data):
    lam = data.draw(dominant_weights(ct))
    below = dominant_weights_below(lam)
    assert lam.coords in [m.coords for m in below]
    for m in below:
        assert m.is_dominant and dominance_leq(m, lam)


@pytest.mark.parametrize("ct", SMALL_TYPES)
def test_highest_short_root_is_quasi_minuscule(ct):
    R = build_root_system(ct)
    theta = R.weight(R.coords_of(R.highest_short_root))
    assert classify_weight(theta) == "quasi_minuscule"


@pytest.mark.parametrize("ct", SMALL_TYPES)
def test_small_weights_saturated_set_is_small(ct):
    R = build_root_system(ct)
    for w in all_small_weights(R):
        assert is_small(w)
        for v in saturated_set(w):
            assert max(abs(R.coroot_pairing(v.ambient, a)) for a in R.positive_roots) <= 2


def test_minuscule_examples():
    assert classify_weight(build_root_system("A4").fundamental(2)) == "minuscule"
    assert classify_weight(build_root_system("B3").fundamental(3)) == "minuscule"
    assert classify_weight(build_root_system("C3").fundamental(1)) == "minuscule"
    assert classify_weight(build_root_system("E8").fundamental(2)) == "not_small"


GOLDEN = Path(__file__).parent / "fixtures" / "table1.json"


@pytest.mark.parametrize("ct", TABLE1_TYPES)
def test_table1_row(ct):
    rows = {r["type"]: r for r in json.loads(GOLDEN.read_text())["rows"]}
    assert normalize_chains(small_fundamental_chains(ct)) == normalize_chains(rows[ct])


def test_e7_display():
    assert format_chains(small_fundamental_chains("E7")) == "(0<)w1<w6, w7<w2"


@pytest.mark.parametrize("ct", TABLE1_TYPES)
def test_rho_is_half_sum_of_positive_roots(ct):
    R = build_root_system(ct)
    two_rho = [sum(x) for x in zip(*R.positive_roots)]
    assert tuple(2 * x for x in R.ambient(R.rho)) == tuple(two_rho)
    assert R.rho == (1,) * R.rank


@pytest.mark.parametrize("ct", ["A3", "B3", "C4", "D4", "F4"])
@given(data=st.data())
def test_orbit_size_divides_weyl_order(ct, data):
    w = data.draw(dominant_weights(ct, 2))
    assert weyl_group_order(w.system.cartan_type) % len(orbit(w).points) == 0


@pytest.mark.parametrize("ct", ["A4", "B4", "C4", "D5", "E6", "F4", "G2"])
def test_weights_below_small_weights(ct):
    R = build_root_system(ct)
    for w in all_small_weights(R):
        fundamental = sum(w.coords) == 1
        for mu in dominant_weights_below(w):
            assert classify_weight(mu) in ("zero", "minuscule", "quasi_minuscule", "small_other")
            if fundamental:
                assert sum(mu.coords) <= 1
