import pytest

from gmacdonald.params import AdmissiblePair, draw_params
from gmacdonald.pieri import (
    chains, expand_in_P_basis, lr_product, pieri_expand, small_weight_polynomial, verify_lr, verify_pieri,
    verify_quasi_minuscule_form,
)
from gmacdonald.polynomials import macdonald_polynomial
from gmacdonald.rootsys import RootSystemError, all_small_weights, classify_weight, dominance_leq
from gmacdonald.suites import weight_grid


def small(R):
    return [w for w in all_small_weights(R) if any(w.coords)]


@pytest.mark.parametrize("ct", ["A2", "B2", "C3", "G2"])
def test_chains_are_ascending_and_end_at_omega(ct):
    R = AdmissiblePair.of(ct).R
    for omega in small(R):
        cs = chains(omega)
        assert (omega.coords,) in cs
        for ch in cs:
            assert ch[-1] == omega.coords
            for a, b in zip(ch, ch[1:]):
                assert a != b and dominance_leq(R.weight(a), R.weight(b))


@pytest.mark.parametrize("ct", ["A2", "B2"])
@pytest.mark.parametrize("regime", ["generic", "qpower"])
def test_pieri_and_lr_against_direct_products(ct, regime, mode):
    pair = AdmissiblePair.of(ct, mode)
    prm = draw_params(pair, 8, regime, k={"s": 1, "l": 2} if regime == "qpower" else None)
    for omega in small(pair.R):
        for lam in weight_grid(pair.R, 2):
            assert verify_pieri(pair, omega, lam, prm)["passed"]
            assert verify_lr(pair, omega, lam, prm)["passed"]
            if classify_weight(omega) == "quasi_minuscule":
                assert verify_quasi_minuscule_form(pair, omega, lam, prm)["passed"]


def test_pieri_support_and_top_term():
    pair = AdmissiblePair.of("B2")
    prm = draw_params(pair, 1)
    omega, lam = pair.R.fundamental(1), pair.R.weight((0, 1))
    exp = pieri_expand(pair, omega, lam, prm)
    assert set(exp.terms) == {(0, 0), (1, 0)}
    assert all(min(a + b for a, b in zip(lam.coords, nu)) >= 0 for nu in exp.terms)
    with pytest.raises(RootSystemError):
        pieri_expand(pair, pair.R.weight((2, 2)), lam, prm)


def test_lr_with_trivial_factor():
    pair = AdmissiblePair.of("A2")
    prm = draw_params(pair, 1)
    lam = pair.R.weight((1, 1))
    assert lr_product(pair, pair.R.fundamental(1), pair.R.zero(), prm).keys() == {(1, 0)}
    P = macdonald_polynomial(pair, lam, prm, normalization="duality_P")
    assert expand_in_P_basis(P.coeffs, pair, prm) == {lam.coords: 1}


@pytest.mark.parametrize("ct", ["A3", "B3", "C2", "G2"])
def test_small_weight_closed_form(ct, mode):
    pair = AdmissiblePair.of(ct, mode)
    generic = draw_params(pair, 2)
    qprm = draw_params(pair, 2, "qpower", k={"s": 2, "l": 1})
    for omega in small(pair.R):
        assert small_weight_polynomial(pair, omega, generic).coeffs == \
            macdonald_polynomial(pair, omega, generic, "pieri_recursion").coeffs
        assert small_weight_polynomial(pair, omega, qprm).coeffs == \
            macdonald_polynomial(pair, omega, qprm, "gram_schmidt").coeffs
