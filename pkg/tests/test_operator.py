import itertools

import pytest

from gmacdonald.operator import (
    OperatorSpec, U_coefficient, V_coefficient, eigenvalue, eigenvalue_at, expand, verify_commutativity,
    verify_symmetry,
)
from gmacdonald.params import AdmissiblePair, RegimeError, draw_params, point
from gmacdonald.pieri import _dual_spec
from gmacdonald.rootsys import classify_weight, dominant_weights_below
from gmacdonald.suites import weight_grid


def test_a2_additive_constant_closed_form():
    # sum over the roots nu of V_nu + U_{0,nu} at rho_{t,S}, worked out by hand
    pair = AdmissiblePair.of("A2")
    prm = draw_params(pair, 11)
    omega = pair.Lam.weight((1, 1))
    spec = OperatorSpec(pair, omega)
    x = point(pair, None, "S")
    total = 0
    for nu in pair.Lam._orbit_of_dominant(omega.coords):
        total += V_coefficient(spec, nu, x, prm) + U_coefficient(spec, (0, 0), nu, x, prm)
    t = prm.t("s")
    assert total == (t + 1) ** 2 * (t * t + t + 1) / t**2


@pytest.mark.parametrize("ct", ["A3", "B3", "C3", "G2"])
def test_minuscule_and_top_eigenvalue_coefficients(ct, mode):
    pair = AdmissiblePair.of(ct, mode)
    prm = draw_params(pair, 0)
    for i in range(1, pair.Lam.rank + 1):
        omega = pair.Lam.fundamental(i)
        if classify_weight(omega) == "not_small":
            continue
        eps = eigenvalue(OperatorSpec(pair, omega), prm).eps
        assert eps[omega.coords] == 1
        assert set(eps) == {m.coords for m in dominant_weights_below(omega)}


@pytest.mark.parametrize("ct", ["A2", "B2", "G2"])
def test_triangularity_and_constant(ct, mode):
    pair = AdmissiblePair.of(ct, mode)
    prm = draw_params(pair, 2)
    zero = (0,) * pair.R.rank
    for omega in [pair.Lam.fundamental(i) for i in range(1, pair.Lam.rank + 1)]:
        if classify_weight(omega) == "not_small":
            continue
        spec = OperatorSpec(pair, omega)
        assert expand(spec, {zero: prm.one()}, prm) == {zero: eigenvalue_at(spec, pair.R.weight(zero), prm)}
        for lam in weight_grid(pair.R, 2):
            got = expand(spec, {lam.coords: prm.one()}, prm)
            assert set(got) <= {m.coords for m in dominant_weights_below(lam)}
            assert got[lam.coords] == eigenvalue_at(spec, lam, prm)


@pytest.mark.parametrize("ct", ["B2", "A3"])
def test_commutativity(ct):
    pair = AdmissiblePair.of(ct)
    prm = draw_params(pair, 4)
    specs = [OperatorSpec(pair, pair.Lam.fundamental(i)) for i in range(1, pair.Lam.rank + 1)]
    for a, b in itertools.combinations(specs, 2):
        assert verify_commutativity(a, b, pair.R.weight((1,) + (0,) * (pair.R.rank - 1)), prm)["passed"]


def test_symmetry_regime():
    pair = AdmissiblePair.of("A2")
    spec = OperatorSpec(pair, pair.Lam.fundamental(1))
    lam, mu = pair.R.weight((1, 0)), pair.R.weight((0, 1))
    with pytest.raises(RegimeError):
        verify_symmetry(spec, lam, mu, draw_params(pair, 0, "qpower", k={"s": 1}))
    with pytest.raises(RegimeError):
        verify_symmetry(spec, lam, mu, draw_params(pair, 0))
    assert verify_symmetry(spec, lam, mu, draw_params(pair, 0, "qpower", k={"s": 2}))["passed"]


@pytest.mark.parametrize("ct", ["A2", "B2", "C3", "G2"])
def test_vanishing_filter(ct, mode):
    # V of the dual pair at lambda + rho_{t,S} vanishes whenever lambda + nu leaves the dominant cone
    pair = AdmissiblePair.of(ct, mode)
    dual = pair.dual_pair()
    prm = draw_params(pair, 6)
    R = pair.R
    hits = 0
    for i in range(1, R.rank + 1):
        omega = R.fundamental(i)
        if classify_weight(omega) == "not_small":
            continue
        spec = _dual_spec(pair, omega)
        for lam in weight_grid(R, 2):
            x = point(dual, lam, "R_dual")
            for mu in dominant_weights_below(omega):
                for nu in R._orbit_of_dominant(mu.coords):
                    if min(a + b for a, b in zip(lam.coords, nu)) < 0:
                        hits += 1
                        assert V_coefficient(spec, nu, x, prm) == 0
    assert hits
