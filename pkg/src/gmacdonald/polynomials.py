"""Macdonald polynomials p_lambda and their renormalization P_lambda = c_lambda p_lambda.

Two independent constructions are provided: Gram-Schmidt against the Macdonald
inner product (only available when t_alpha = q_alpha^k, where the density is a
Laurent polynomial), and a recursion driven by the Pieri formula, which works at
generic rational parameters but only reaches weights built from small
fundamental weights.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Mapping

from .groupalg import LatticePolynomial, from_m_basis, m_evaluate, m_inner_product, monomial_gram
from .operator import SingularSystemError, solve_linear
from .params import (AdmissiblePair, EvaluationPoint, Params, PointEvaluator, RegimeError, evaluate_exponential,
                     draw_params, point, series_for)
from .series import PRECISIONS, PrecisionError, limit_at_zero
from .rootsys import RootSystem, RootSystemError, Weight, classify_weight, dominant_weights_below

__all__ = [
    "MacdonaldPolynomial",
    "UnsupportedWeightError",
    "DegenerateSpecializationError",
    "gram_schmidt_polynomial",
    "pieri_recursion_polynomial",
    "pieri_recursion_at_qpower",
    "macdonald_polynomial",
    "reachable",
    "small_fundamental_weights",
    "normalization_c",
    "verify_duality",
    "verify_orthogonality",
]


class UnsupportedWeightError(RootSystemError):
    """The weight is outside the cone the Pieri recursion can reach."""


class DegenerateSpecializationError(ArithmeticError):
    """A coefficient that is nonzero for generic parameters vanished at this draw."""


@dataclass
class MacdonaldPolynomial:
    pair: AdmissiblePair
    lam: Weight
    coeffs: dict                       # m-basis, dominant coords -> coefficient
    construction: str                  # gram_schmidt | pieri_recursion | small_weight_closed_form
    params: Params = field(repr=False)
    normalization: str = "monic_p"     # or duality_P

    @property
    def poly(self) -> LatticePolynomial:
        return from_m_basis(self.pair.R, self.coeffs)

    def a(self, mu) -> object:
        """Coefficient of m_mu."""
        mu = mu.coords if isinstance(mu, Weight) else tuple(mu)
        return self.coeffs.get(mu, self.params.zero())

    def leading(self):
        return self.coeffs.get(self.lam.coords, self.params.zero())

    def monic(self) -> "MacdonaldPolynomial":
        if self.normalization == "monic_p":
            return self
        lead = self.leading()
        return replace(self, coeffs={k: v / lead for k, v in self.coeffs.items()}, normalization="monic_p")

    def renormalized(self) -> "MacdonaldPolynomial":
        """P_lambda = c_lambda p_lambda."""
        if self.normalization == "duality_P":
            return self
        c = normalization_c(self.pair, self.lam, self.params)
        return replace(self, coeffs={k: c * v for k, v in self.coeffs.items()}, normalization="duality_P")

    def at(self, x: EvaluationPoint):
        return m_evaluate(self.coeffs, self.pair.R, PointEvaluator(self.pair, self.params, self.pair.R, x))

    def to_json(self) -> dict:
        R = self.pair.R
        items = sorted(self.coeffs.items(), key=lambda kv: (-R.height(kv[0]), kv[0]))
        return {"lambda": list(self.lam.coords), "type": str(R.cartan_type), "mode": self.pair.mode,
                "construction": self.construction, "normalization": self.normalization,
                "parameters": self.params.describe(),
                "coefficients": [{"mu": list(k), "coefficient": str(v)} for k, v in items]}


def _lower_set(lam: Weight) -> list[tuple]:
    """Dominant mu <= lam in graded dominance order (height, then lexicographic)."""
    return [m.coords for m in dominant_weights_below(lam)]


def _check_dominant(pair: AdmissiblePair, lam: Weight):
    if lam.system is not pair.R:
        raise RootSystemError(f"lambda must live in P = {pair.R.name}, got {lam.system.name}")
    if not lam.is_dominant:
        raise RootSystemError(f"lambda must be dominant, got {lam.coords}")


# ----------------------------------------------------------------------
# route 1: Gram-Schmidt in the t = q^k regime


def gram_schmidt_polynomial(pair: AdmissiblePair, lam: Weight, params: Params,
                            order: Callable | None = None) -> MacdonaldPolynomial:
    """Monic p_lambda with <p_lambda, m_mu> = 0 for all dominant mu < lambda.

    ``order`` optionally re-sorts the lower set (any linear extension of the
    dominance order gives the same polynomial).
    """
    if params.regime != "qpower":
        raise RegimeError("Gram-Schmidt needs t_alpha = q_alpha^k (regime 'qpower')")
    _check_dominant(pair, lam)
    lower = [m for m in _lower_set(lam) if m != lam.coords]
    if order is not None:
        lower = sorted(lower, key=order)
    coeffs = {lam.coords: params.one()}
    if lower:
        G = monomial_gram(lower, lower, pair, params)
        rhs = [-g[0] for g in monomial_gram(lower, [lam.coords], pair, params)]
        try:
            sol = solve_linear(G, rhs, params)
        except SingularSystemError as exc:
            raise SingularSystemError(f"degenerate Gram matrix for lambda={lam.label()}: {exc}") from None
        for m, a in zip(lower, sol):
            if not params.is_zero(a):
                coeffs[m] = a
    return MacdonaldPolynomial(pair, lam, coeffs, "gram_schmidt", params)


# ----------------------------------------------------------------------
# route 2: Pieri recursion at generic parameters


def small_fundamental_weights(pair: AdmissiblePair) -> list[Weight]:
    """Small fundamental weights of R, in a linear extension of dominance."""
    R = pair.R
    ws = [R.fundamental(i) for i in range(1, R.rank + 1)]
    ws = [w for w in ws if classify_weight(w) != "not_small"]
    return sorted(ws, key=lambda w: (R.height(w.coords), w.coords))


def _saturated_dominant(omega: Weight) -> list[tuple]:
    return _lower_set(omega)


def _pieri_step(pair: AdmissiblePair, lam: Weight, memo: dict) -> tuple | None:
    """A small fundamental omega with every weight needed to isolate P_lam reachable."""
    R = pair.R
    for omega in small_fundamental_weights(pair):
        base = tuple(a - b for a, b in zip(lam.coords, omega.coords))
        if min(base) < 0:
            continue
        base_w = R.weight(base)
        needed = {base}
        for mu in _saturated_dominant(omega):
            for nu in R._orbit_of_dominant(mu):
                k = tuple(a + b for a, b in zip(base, nu))
                if min(k) >= 0 and k != lam.coords:
                    needed.add(k)
        if all(reachable(pair, R.weight(k), memo) for k in needed):
            return omega.coords, base_w
    return None


def reachable(pair: AdmissiblePair, lam: Weight, memo: dict | None = None) -> bool:
    """Whether the Pieri recursion can produce P_lam."""
    memo = pair.__dict__.setdefault("_reach_memo", {}) if memo is None else memo
    key = lam.coords
    if key not in memo:
        memo[key] = None  # guards against revisiting during the search
        memo[key] = (not any(key)) or _pieri_step(pair, lam, memo) is not None
    return bool(memo[key])


def _cone_description(pair: AdmissiblePair) -> str:
    names = ", ".join(w.label() for w in small_fundamental_weights(pair)) or "none"
    return f"small fundamental weights of {pair.R.name}: {names}"


def pieri_recursion_polynomial(pair: AdmissiblePair, lam: Weight, params: Params,
                               normalization: str = "monic_p") -> MacdonaldPolynomial:
    """P_lambda from P_0 = 1 by multiplying with E^{R^vee}_omega and isolating the top term."""
    from .pieri import pieri_coefficients, dual_eigenpolynomial
    from .groupalg import m_product

    _check_dominant(pair, lam)
    if not reachable(pair, lam):
        raise UnsupportedWeightError(
            f"{lam.label()} is not reachable by the Pieri recursion ({_cone_description(pair)})")
    memo = params.__dict__.setdefault("_pieri_memo", {})
    R = pair.R

    def build(mu: Weight) -> dict:
        key = (pair.R.name, pair.mode, mu.coords)
        if key in memo:
            return memo[key]
        if not any(mu.coords):
            out = {mu.coords: params.one()}
        else:
            omega_c, base = _pieri_step(pair, mu, pair.__dict__["_reach_memo"])
            omega = R.weight(omega_c)
            coef = pieri_coefficients(pair, omega, base, params)
            top = coef.pop(omega_c, None)
            if top is None or params.is_zero(top):
                raise DegenerateSpecializationError(
                    f"top Pieri coefficient vanished for {omega.label()} at {base.label()}")
            E = dual_eigenpolynomial(pair, omega, params)
            acc = m_product(E, build(base), R)
            for nu, c in coef.items():
                lower = R.weight(tuple(a + b for a, b in zip(base.coords, nu)))
                for k, v in build(lower).items():
                    acc[k] = acc.get(k, 0) - c * v
            out = {k: v / top for k, v in acc.items() if not params.is_zero(v)}
        memo[key] = out
        return out

    P = MacdonaldPolynomial(pair, lam, dict(build(lam)), "pieri_recursion", params, "duality_P")
    return P.monic() if normalization == "monic_p" else P


def pieri_recursion_at_qpower(pair: AdmissiblePair, lam: Weight, params: Params,
                              precision: int | None = None) -> MacdonaldPolynomial:
    """The Pieri recursion run at generic t and then specialized to the t = q^k draw ``params``.

    Individual Pieri terms can be singular at t = q^k, so the recursion runs on
    Laurent series around the draw and only the final coefficients are
    evaluated there.
    """
    for n in (precision,) if precision else PRECISIONS:
        try:
            p = pieri_recursion_polynomial(pair, lam, series_for(params, n))
            coeffs = {k: limit_at_zero(v) for k, v in p.coeffs.items()}
            break
        except PrecisionError:
            if n == (precision or PRECISIONS[-1]):
                raise
    return MacdonaldPolynomial(pair, lam, {k: v for k, v in coeffs.items() if v != 0}, "pieri_recursion", params)


MAX_REDRAWS = 5


def _pieri_with_redraw(pair: AdmissiblePair, lam: Weight, params: Params) -> MacdonaldPolynomial:
    """Pieri recursion; a vanishing top coefficient triggers a seeded redraw of (q, t).

    The polynomial returned carries the draw it was computed at in ``.params``.
    """
    try:
        return pieri_recursion_polynomial(pair, lam, params)
    except DegenerateSpecializationError as err:
        if params.backend != "specialized":
            raise
        last = err
    base = params.seed or 0
    for j in range(1, MAX_REDRAWS + 1):
        prm = draw_params(pair, base + 7919 * j)
        try:
            return pieri_recursion_polynomial(pair, lam, prm)
        except DegenerateSpecializationError as err:
            last = err
    raise DegenerateSpecializationError(f"{last} (after {MAX_REDRAWS} redraws)")


def macdonald_polynomial(pair: AdmissiblePair, lam: Weight, params: Params, route: str = "auto",
                         normalization: str = "monic_p") -> MacdonaldPolynomial:
    """Dispatch: ``auto`` is Gram-Schmidt when t = q^k and the Pieri recursion otherwise."""
    if route == "auto":
        if params.regime == "qpower":
            route = "gram_schmidt"
        elif reachable(pair, lam):
            route = "pieri_recursion"
        else:
            raise UnsupportedWeightError(
                f"{lam.label()} is not reachable by the Pieri recursion ({_cone_description(pair)}); "
                "rerun with t = q^k (for instance --k 2) to use Gram-Schmidt")
    if route == "pieri_recursion":
        if params.regime == "qpower":
            p = pieri_recursion_at_qpower(pair, lam, params)
        else:
            p = _pieri_with_redraw(pair, lam, params)
    elif route == "gram_schmidt":
        p = gram_schmidt_polynomial(pair, lam, params)
    elif route == "small_weight_closed_form":
        from .pieri import small_weight_polynomial
        p = small_weight_polynomial(pair, lam, params)
    else:
        raise ValueError(f"unknown route {route!r}")
    return p.renormalized() if normalization == "duality_P" else p


# ----------------------------------------------------------------------
# normalization and the checks built on it


def _qpochhammer(a, q, m: int, params: Params):
    out = params.one()
    for j in range(m):
        out = out * (1 - a * q**j)
    return out


def normalization_c(pair: AdmissiblePair, lam: Weight, params: Params):
    """c_lambda, chosen so that P_lambda(rho_{t,R^vee}) = 1."""
    R = pair.R
    _check_dominant(pair, lam)
    c = evaluate_exponential(pair, params, lam.ambient, point(pair, None, "R_dual"))
    at_rho_S = point(pair, None, "S")
    for a in R.positive_roots:
        m = int(R.coroot_pairing(lam.ambient, a))
        if m == 0:
            continue
        u = pair.u(a)
        qa = params.q_power(u)
        base = evaluate_exponential(pair, params, tuple(u * x for x in R.coroot(a)), at_rho_S)
        t = params.t(pair.label(a))
        c = c * _qpochhammer(base, qa, m, params) / _qpochhammer(t * base, qa, m, params)
    return c


def _report(claim: str, passed: bool, t0: float, **kw) -> dict:
    return {"claim": claim, "passed": bool(passed), "elapsed": round(time.perf_counter() - t0, 4), **kw}


def verify_duality(pair: AdmissiblePair, lam: Weight, mu: Weight, params: Params,
                   route: str = "auto") -> dict:
    """P_lambda(mu + rho_{t,R^vee}) == P^dual_mu(lambda + rho_{t,S})."""
    t0 = time.perf_counter()
    dual = pair.dual_pair()
    P = macdonald_polynomial(pair, lam, params, route, "duality_P")
    Pd = macdonald_polynomial(dual, mu, params, route, "duality_P")
    left = P.at(point(pair, mu, "R_dual"))
    right = Pd.at(point(dual, lam, "R_dual"))
    return _report("duality", left == right, t0, lam=lam.coords, mu=mu.coords,
                   left=str(left), right=str(right))


def verify_orthogonality(pair: AdmissiblePair, lams: Iterable[Weight], params: Params) -> dict:
    """Pairwise <p_lambda, p_mu>: zero off the diagonal, nonzero on it."""
    t0 = time.perf_counter()
    ps = [gram_schmidt_polynomial(pair, lam, params) for lam in lams]
    off, diag = [], []
    for i, a in enumerate(ps):
        for j, b in enumerate(ps[i:], start=i):
            v = m_inner_product(a.coeffs, b.coeffs, pair, params)
            if i == j:
                diag.append((a.lam.coords, str(v)))
            elif not params.is_zero(v):
                off.append((a.lam.coords, b.lam.coords, str(v)))
    passed = not off and all(d != "0" for _, d in diag)
    return _report("orthogonality", passed, t0, diagonal=diag, nonzero_off_diagonal=off)
