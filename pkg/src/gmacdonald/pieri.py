"""Pieri formula, small-weight closed form and Littlewood-Richardson type rule.

All dual-side objects (E^{R^vee}, U and V for the pair (S^vee, R^vee)) come from
the operator module instantiated on the dual pair; nothing is re-derived here.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from .groupalg import m_evaluate, m_product
from .operator import OperatorSpec, U_coefficient, V_coefficient, eigenvalue, term_coefficients
from .params import AdmissiblePair, Params, PointEvaluator, point, series_for
from .polynomials import MacdonaldPolynomial, macdonald_polynomial, normalization_c
from .series import PRECISIONS, PrecisionError, limit_at_zero
from .rootsys import RootSystemError, Weight, classify_weight, dominance_leq, dominant_weights_below

__all__ = [
    "PieriExpansion",
    "ChainExpansion",
    "pieri_coefficients",
    "pieri_expand",
    "dual_eigenpolynomial",
    "chains",
    "chain_expansion",
    "small_weight_polynomial",
    "lr_product",
    "expand_in_P_basis",
    "verify_pieri",
    "verify_quasi_minuscule_form",
    "verify_lr",
]


@dataclass
class PieriExpansion:
    lam: Weight
    omega: Weight
    terms: dict      # nu -> coefficient of P_{lambda+nu}

    def to_json(self) -> dict:
        return {"omega": list(self.omega.coords), "lambda": list(self.lam.coords),
                "terms": [{"nu": list(k), "coefficient": str(v)} for k, v in sorted(self.terms.items())]}


@dataclass
class ChainExpansion:
    omega: Weight
    chains: list     # (weights tuple, sign, product of U(rho_{t,S}))


def _dual_spec(pair: AdmissiblePair, omega: Weight) -> OperatorSpec:
    dual = pair.dual_pair()
    if omega.system is not dual.Lam:
        raise RootSystemError(f"omega must live in P = {pair.R.name}")
    cache = dual.__dict__.setdefault("_spec_cache", {})
    if omega.coords not in cache:
        cache[omega.coords] = OperatorSpec(dual, omega)
    return cache[omega.coords]


def dual_eigenpolynomial(pair: AdmissiblePair, omega: Weight, params: Params) -> dict:
    """E^{R^vee}_omega in the m-basis of C[P]."""
    if not any(omega.coords):
        return {omega.coords: params.one()}
    return dict(eigenvalue(_dual_spec(pair, omega), params).eps)


def _needs_limit(params: Params) -> bool:
    return params.regime == "qpower" and params.backend == "specialized"


def with_limit(params: Params, fn: Callable):
    """fn(params), or at t = q^k the limit of fn along the series deformation."""
    if not _needs_limit(params):
        return fn(params)
    for n in PRECISIONS:
        try:
            return fn(series_for(params, n))
        except PrecisionError:
            if n == PRECISIONS[-1]:
                raise


def pieri_coefficients(pair: AdmissiblePair, omega: Weight, lam: Weight, params: Params) -> dict:
    """{nu: coefficient of P_{lambda+nu} in E^{R^vee}_omega P_lambda}.

    Terms with lambda+nu outside the dominant cone must vanish on their own;
    this is asserted rather than filtered.
    """
    if not lam.is_dominant:
        raise RootSystemError(f"lambda must be dominant, got {lam.coords}")
    if not any(omega.coords):
        return {omega.coords: params.one()}
    dual = pair.dual_pair()
    spec = _dual_spec(pair, omega)
    if _needs_limit(params):
        # single terms may be singular at t = q^k; their sums are not
        def run(work):
            out = term_coefficients(spec, point(dual, lam, "R_dual"), work)
            return {nu: limit_at_zero(v) for nu, v in out.items()}

        out = {nu: v for nu, v in with_limit(params, run).items() if v != 0}
    else:
        out = term_coefficients(spec, point(dual, lam, "R_dual"), params)
    for nu in out:
        if min(a + b for a, b in zip(lam.coords, nu)) < 0:
            raise AssertionError(f"Pieri coefficient for non-dominant lambda+nu, nu={nu}, lambda={lam.coords}")
    return out


def pieri_expand(pair: AdmissiblePair, omega: Weight, lam: Weight, params: Params) -> PieriExpansion:
    if classify_weight(omega) == "not_small":
        raise RootSystemError(f"omega = {omega.label()} is not small")
    return PieriExpansion(lam, omega, pieri_coefficients(pair, omega, lam, params))


# ----------------------------------------------------------------------
# closed form for small weights


def chains(omega: Weight) -> list[tuple]:
    """All strictly ascending chains of dominant weights mu_1 < ... < mu_l = omega."""
    below = [m.coords for m in dominant_weights_below(omega)]
    R = omega.system
    lower = {b: [a for a in below if a != b and dominance_leq(R.weight(a), R.weight(b))] for b in below}
    out = []

    def dfs(chain):
        out.append(tuple(reversed(chain)))
        for a in lower[chain[-1]]:
            dfs(chain + [a])

    dfs([omega.coords])
    return out


def chain_expansion(pair: AdmissiblePair, omega: Weight, params: Params) -> ChainExpansion:
    dual = pair.dual_pair()
    spec = _dual_spec(pair, omega)
    x = point(dual, None, "R_dual")  # rho_{t,S}
    cache: dict = {}
    out = []
    for ch in chains(omega):
        prod = params.one()
        for a, b in zip(ch, ch[1:]):
            if (a, b) not in cache:
                cache[a, b] = with_limit(params, lambda w: limit_at_zero(U_coefficient(spec, a, b, x, w)))
            prod = prod * cache[a, b]
        out.append((ch, (-1) ** (len(ch) - 1), prod))
    return ChainExpansion(omega, out)


def small_weight_polynomial(pair: AdmissiblePair, omega: Weight, params: Params) -> MacdonaldPolynomial:
    """Monic p_omega as the alternating chain sum of E^{R^vee}_{mu_1} times U-products."""
    if classify_weight(omega) == "not_small":
        raise RootSystemError(f"omega = {omega.label()} is not small")
    R = pair.R
    acc: dict = {}
    for ch, sign, prod in chain_expansion(pair, omega, params).chains:
        E = dual_eigenpolynomial(pair, R.weight(ch[0]), params)
        for k, v in E.items():
            acc[k] = acc.get(k, 0) + sign * prod * v
    coeffs = {k: v for k, v in acc.items() if not params.is_zero(v)}
    return MacdonaldPolynomial(pair, omega, coeffs, "small_weight_closed_form", params)


def lr_product(pair: AdmissiblePair, omega: Weight, lam: Weight, params: Params) -> dict:
    """{lambda+nu: coefficient of P_{lambda+nu} in P_omega P_lambda}."""
    R = pair.R
    c = normalization_c(pair, omega, params)
    out: dict = {}
    for ch, sign, prod in chain_expansion(pair, omega, params).chains:
        for nu, v in pieri_coefficients(pair, R.weight(ch[0]), lam, params).items():
            k = tuple(a + b for a, b in zip(lam.coords, nu))
            out[k] = out.get(k, 0) + c * sign * prod * v
    return {k: v for k, v in out.items() if not params.is_zero(v)}


# ----------------------------------------------------------------------
# verification against direct multiplication


def expand_in_P_basis(f_m: dict, pair: AdmissiblePair, params: Params,
                      build: Callable | None = None) -> dict:
    """Coefficients of f in the basis P_kappa, peeling off the top weight each time."""
    R = pair.R
    build = build or (lambda w: macdonald_polynomial(pair, w, params, "auto", "duality_P"))
    f = {k: v for k, v in f_m.items() if not params.is_zero(v)}
    out = {}
    while f:
        top = max(f, key=lambda k: (R.height(k), k))
        P = build(R.weight(top))
        c = f[top] / P.leading()
        out[top] = c
        for k, v in P.coeffs.items():
            f[k] = f.get(k, 0) - c * v
        f = {k: v for k, v in f.items() if not params.is_zero(v)}
        if top in f:
            raise AssertionError(f"P_{top} is not supported below its own weight")
    return out


def _report(claim: str, passed: bool, t0: float, **kw) -> dict:
    return {"claim": claim, "passed": bool(passed), "elapsed": round(time.perf_counter() - t0, 4), **kw}


def _P(pair, w, params, route):
    return macdonald_polynomial(pair, w, params, route, "duality_P")


def verify_pieri(pair: AdmissiblePair, omega: Weight, lam: Weight, params: Params, route: str = "auto") -> dict:
    t0 = time.perf_counter()
    R = pair.R
    direct = m_product(dual_eigenpolynomial(pair, omega, params), _P(pair, lam, params, route).coeffs, R)
    got = expand_in_P_basis(direct, pair, params, lambda w: _P(pair, w, params, route))
    exp = pieri_expand(pair, omega, lam, params)
    want = {tuple(a + b for a, b in zip(lam.coords, nu)): v for nu, v in exp.terms.items()}
    return _report("pieri", got == want, t0, omega=omega.coords, lam=lam.coords, terms=len(want))


def verify_quasi_minuscule_form(pair: AdmissiblePair, omega: Weight, lam: Weight, params: Params,
                                route: str = "auto") -> dict:
    """(m_omega - m_omega(rho_{t,R^vee})) P_lambda = sum_nu V_nu(lambda+rho_{t,S}) (P_{lambda+nu} - P_lambda)."""
    if classify_weight(omega) != "quasi_minuscule":
        raise RootSystemError(f"{omega.label()} is not quasi-minuscule")
    t0 = time.perf_counter()
    R = pair.R
    dual = pair.dual_pair()
    P_lam = _P(pair, lam, params, route).coeffs
    m0 = m_evaluate({omega.coords: 1}, R, PointEvaluator(pair, params, R, point(pair, None, "R_dual")))
    left = m_product({omega.coords: params.one()}, P_lam, R)
    for k, v in P_lam.items():
        left[k] = left.get(k, 0) - m0 * v
    spec = _dual_spec(pair, omega)
    x = point(dual, lam, "R_dual")
    right: dict = {}
    for nu in R._orbit_of_dominant(omega.coords):
        k = tuple(a + b for a, b in zip(lam.coords, nu))
        if min(k) < 0:
            continue
        V = with_limit(params, lambda w: limit_at_zero(V_coefficient(spec, nu, x, w)))
        for kk, v in _P(pair, R.weight(k), params, route).coeffs.items():
            right[kk] = right.get(kk, 0) + V * v
        for kk, v in P_lam.items():
            right[kk] = right.get(kk, 0) - V * v
    diff = {k: left.get(k, 0) - right.get(k, 0) for k in set(left) | set(right)}
    ok = all(params.is_zero(v) for v in diff.values())
    return _report("quasi_minuscule_pieri", ok, t0, omega=omega.coords, lam=lam.coords)


def verify_lr(pair: AdmissiblePair, omega: Weight, lam: Weight, params: Params, route: str = "auto") -> dict:
    t0 = time.perf_counter()
    R = pair.R
    direct = m_product(_P(pair, omega, params, route).coeffs, _P(pair, lam, params, route).coeffs, R)
    got = expand_in_P_basis(direct, pair, params, lambda w: _P(pair, w, params, route))
    want = lr_product(pair, omega, lam, params)
    return _report("lr", got == want, t0, omega=omega.coords, lam=lam.coords, terms=len(want))
