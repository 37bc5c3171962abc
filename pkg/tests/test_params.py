import pytest

from gmacdonald.params import (
    MODES, AdmissiblePair, RegimeError, draw_params, evaluate_exponential, point, series_for,
)
from gmacdonald.series import LaurentSeries

TYPES = ["A2", "B2", "B3", "C3", "D4", "F4", "G2"]


@pytest.mark.parametrize("ct", TYPES)
def test_dual_pair_swaps_roles(ct, mode):
    pair = AdmissiblePair.of(ct, mode)
    dual = pair.dual_pair()
    assert dual.Lam is pair.R and dual.R is pair.Lam
    assert dual.mode == mode


@pytest.mark.parametrize("ct", TYPES)
def test_labels_are_weyl_invariant(ct, mode):
    pair = AdmissiblePair.of(ct, mode)
    R = pair.R
    for a in R.roots:
        for s in R.simple_roots:
            k = R.coroot_pairing(a, s)
            b = tuple(x - k * y for x, y in zip(a, s))
            assert pair.label(b) == pair.label(a)


@pytest.mark.parametrize("ct", ["A2", "B2", "C3", "G2"])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_rho_point_at_qpower(ct, k, mode):
    # with t_alpha = q_alpha^k for every root, rho_{t,S} = k rho_R
    pair = AdmissiblePair.of(ct, mode)
    prm = draw_params(pair, 5, "qpower", k={"s": k, "l": k})
    R = pair.R
    rho = R.ambient(R.rho)
    for a in R.roots:
        got = evaluate_exponential(pair, prm, a, point(pair, None, "S"))
        assert got == prm.q_power(k * R.inner(a, rho))


def test_draws_are_seeded():
    pair = AdmissiblePair.of("B2")
    assert draw_params(pair, 3).describe() == draw_params(pair, 3).describe()
    assert draw_params(pair, 3).describe() != draw_params(pair, 4).describe()
    a = draw_params(pair, 3)
    assert a.q != a.t("s") and a.t("s") != a.t("l")


def test_qpower_needs_k():
    with pytest.raises(RegimeError):
        draw_params(AdmissiblePair.of("A2"), 0, "qpower")


def test_series_params_deform_t_only():
    pair = AdmissiblePair.of("B2")
    prm = draw_params(pair, 1, "qpower", k={"s": 1, "l": 2})
    s = series_for(prm, 8)
    assert s is series_for(prm, 8)
    assert s.Q == prm.Q
    for lab in pair.labels:
        assert isinstance(s.T[lab], LaurentSeries)
        assert s.T[lab].at_zero() == prm.T[lab]
    with pytest.raises(RegimeError):
        series_for(draw_params(pair, 1), 8)


def test_formal_backend_matches_specialization():
    sympy = pytest.importorskip("sympy")
    pair = AdmissiblePair.of("A2")
    formal = draw_params(pair, 0, backend="formal")
    spec = draw_params(pair, 0)
    x = point(pair, (1, 0), "R_dual")
    val = evaluate_exponential(pair, formal, (1, 1, -2), x)
    subs = {formal.Q: sympy.Rational(int(spec.Q.numerator), int(spec.Q.denominator))}
    subs.update({formal.T[k]: sympy.Rational(int(v.numerator), int(v.denominator)) for k, v in spec.T.items()})
    assert sympy.nsimplify(val.subs(subs)) == sympy.Rational(str(evaluate_exponential(pair, spec, (1, 1, -2), x)))
