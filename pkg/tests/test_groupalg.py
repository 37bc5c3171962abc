import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from gmacdonald.groupalg import (
    LatticePolynomial, bar, constant_term, delta_density, from_m_basis, m_evaluate, m_product,
    macdonald_inner_product, translation,
)
from gmacdonald.params import AdmissiblePair, PointEvaluator, RegimeError, draw_params, point
from gmacdonald.rootsys import build_root_system

coeffs = st.fractions(min_value=-9, max_value=9, max_denominator=7).map(lambda f: mpq(f.numerator, f.denominator))


def polys(R, n=4, bound=2):
    key = st.lists(st.integers(-bound, bound), min_size=R.rank, max_size=R.rank).map(tuple)
    return st.dictionaries(key, coeffs, max_size=n).map(lambda d: LatticePolynomial(R, d))


A2 = build_root_system("A2")
G2 = build_root_system("G2")


@pytest.mark.parametrize("R", [A2, G2], ids=["A2", "G2"])
@given(data=st.data())
def test_ring_axioms(R, data):
    f, g, h = (data.draw(polys(R)) for _ in range(3))
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == LatticePolynomial(R, {})
    assert f * LatticePolynomial.constant(R) == f


@given(polys(A2), polys(A2))
def test_bar_is_an_involutive_ring_map(f, g):
    assert bar(bar(f)) == f
    assert bar(f * g) == bar(f) * bar(g)


@given(polys(A2))
def test_json_round_trip(f):
    assert LatticePolynomial.from_json(f.to_json(), A2) == f


@pytest.mark.parametrize("ct", ["A2", "B2", "G2"])
@given(data=st.data())
def test_translation_is_self_adjoint(ct, data):
    pair = AdmissiblePair.of(ct)
    prm = draw_params(pair, 1)
    R = pair.R
    f, g = data.draw(polys(R)), data.draw(polys(R))
    nu = data.draw(st.lists(st.integers(-2, 2), min_size=R.rank, max_size=R.rank))
    nu = pair.Lam.weight(tuple(nu))
    left = constant_term(translation(f, pair, prm, nu) * bar(g))
    right = constant_term(f * bar(translation(g, pair, prm, nu)))
    assert left == right


@pytest.mark.parametrize("ct,k", [("A2", 1), ("A2", 2), ("B2", 2), ("G2", 1), ("B3", 1), ("C3", 2)])
def test_density_symmetries(ct, k, mode):
    pair = AdmissiblePair.of(ct, mode)
    prm = draw_params(pair, 0, "qpower", k={"s": k, "l": k})
    D = delta_density(pair, prm)
    assert bar(D) == D
    assert D.is_w_invariant()


def test_density_needs_qpower():
    pair = AdmissiblePair.of("A2")
    with pytest.raises(RegimeError):
        delta_density(pair, draw_params(pair, 0))


def test_inner_product_is_symmetric():
    pair = AdmissiblePair.of("B2")
    prm = draw_params(pair, 2, "qpower", k={"s": 1, "l": 2})
    R = pair.R
    f = from_m_basis(R, {(1, 0): mpq(1), (0, 0): mpq(3)})
    g = from_m_basis(R, {(0, 2): mpq(2), (0, 0): mpq(-1, 2)})
    assert macdonald_inner_product(f, g, pair, prm) == macdonald_inner_product(g, f, pair, prm)


m_keys = st.lists(st.integers(0, 2), min_size=2, max_size=2).map(tuple)
m_polys = st.dictionaries(m_keys, coeffs, min_size=1, max_size=3)


@pytest.mark.parametrize("R", [A2, G2], ids=["A2", "G2"])
@given(f=m_polys, g=m_polys)
def test_m_basis_product_and_evaluation(R, f, g):
    direct = (from_m_basis(R, f) * from_m_basis(R, g)).to_m_basis()
    assert m_product(f, g, R) == {k: v for k, v in direct.items() if v != 0}
    pair = AdmissiblePair.of(R.name)
    ev = PointEvaluator(pair, draw_params(pair, 3), R, point(pair, (1,) * 2, "R_dual"))
    assert m_evaluate(f, R, ev) == from_m_basis(R, f).evaluate(ev)
