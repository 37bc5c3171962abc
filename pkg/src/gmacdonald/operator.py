"""The generalized Macdonald difference operator D_omega and its eigenvalues.

D_omega is handled operationally: its coefficients U_{nu,eta} and V_nu are
evaluated at points x, and (D_omega f)(x) is assembled from the values
f(x + nu).  Expansions in the monomial basis are recovered by interpolation
on a set of shifted dominant points and then certified at extra points,
which is the executable form of the polynomiality statement.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from gmpy2 import mpq

from .groupalg import LatticePolynomial, from_m_basis, m_inner_product, monomial_symmetric
from .params import (AdmissiblePair, EvaluationPoint, Params, PoleError, PointEvaluator, RegimeError,
                     _rand_rational, point)
from .rootsys import (RootSystem, RootSystemError, Vector, Weight, classify_weight, dominance_leq,
                      dominant_weights_below)

__all__ = [
    "OperatorSpec",
    "EigenvalueFunction",
    "PolynomialityError",
    "SingularSystemError",
    "v_factor",
    "V_coefficient",
    "U_coefficient",
    "term_coefficients",
    "apply_at",
    "expand",
    "eigenvalue",
    "eigenvalue_at",
    "verify_symmetry",
    "verify_commutativity",
    "solve_linear",
]


class PolynomialityError(AssertionError):
    """An interpolated expansion failed certification at an extra point."""


class SingularSystemError(ArithmeticError):
    pass


# ----------------------------------------------------------------------
# exact linear algebra over the coefficient field


def solve_linear(A: list[list], b: list, params: Params) -> list:
    """Solve A x = b by Gaussian elimination; raises SingularSystemError."""
    n = len(A)
    M = [list(row) + [b[i]] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not params.is_zero(M[r][col])), None)
        if piv is None:
            raise SingularSystemError(f"singular {n}x{n} system at column {col}")
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        row = [params.simplify(x / p) for x in M[col]]
        M[col] = row
        for r in range(n):
            if r != col and not params.is_zero(M[r][col]):
                f = M[r][col]
                M[r] = [params.simplify(x - f * y) for x, y in zip(M[r], row)]
    return [M[i][n] for i in range(n)]


# ----------------------------------------------------------------------
# the operator


def _subgroup_orbit_coords(L: RootSystem, start: tuple, mirrors: list[tuple]) -> list[tuple]:
    """Orbit of ``start`` (coords in L) under reflections s_a, a given as (coords, coroot functional)."""
    seen = {start}
    out = [start]
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for a, f in mirrors:
            k = sum(c * d for c, d in zip(x, f))
            if k:
                y = tuple(c - k * d for c, d in zip(x, a))
                if y not in seen:
                    seen.add(y)
                    out.append(y)
                    queue.append(y)
    return out


@dataclass
class _RootFactor:
    root: tuple          # coords of alpha in P
    label: str
    u: Fraction
    vector: Vector


class OperatorSpec:
    """D_omega for a small dominant omega in the lattice of S^vee.

    For every nu in the saturated set the constructor records the roots that
    enter V_nu and, for every eta in W_nu(w_nu^{-1} omega), those entering
    U_{nu,eta}.
    """

    def __init__(self, pair: AdmissiblePair, omega: Weight):
        if omega.system is not pair.Lam:
            raise RootSystemError(f"omega must live in {pair.Lam.name}, got {omega.lattice_tag}")
        kind = classify_weight(omega)
        if kind == "not_small":
            raise RootSystemError(f"omega = {omega.label()} is not small")
        self.pair = pair
        self.omega = omega
        self.kind = kind
        R, L = pair.R, pair.Lam
        self._factors = [_RootFactor(R.coords_of(a), pair.label(a), pair.u(a), a) for a in R.roots]
        stars = [pair.star(a) for a in R.roots]
        self.terms = []  # (nu coords, V roots [(factor, pairing)], [U root lists per eta])
        self.dominant_below = dominant_weights_below(omega)
        L_pos = [(L.positive_root_weights[i], L.positive_coroot_functionals[i])
                 for i in range(len(L.positive_roots))]
        for mu in self.dominant_below:
            for nu in L._orbit_of_dominant(mu.coords):
                nu_vec = L.ambient(nu)
                pair_nu = [R.inner(s, nu_vec) for s in stars]
                v_roots = [(f, int(p)) for f, p in zip(self._factors, pair_nu) if p > 0]
                # w_nu^{-1} omega, then its orbit under the stabilizer of nu
                _, word = L.to_dominant(nu)
                start = L.apply_word(omega.coords, tuple(reversed(word)))
                mirrors = [(a, fn) for a, fn in L_pos if sum(c * d for c, d in zip(nu, fn)) == 0]
                etas = _subgroup_orbit_coords(L, start, mirrors)
                r_nu = [(f, s) for f, s, p in zip(self._factors, stars, pair_nu) if p == 0]
                u_lists = []
                for eta in etas:
                    eta_vec = L.ambient(eta)
                    lst = []
                    for f, s in r_nu:
                        pe = R.inner(s, eta_vec)
                        if pe > 0:
                            lst.append((f, int(pe)))
                    u_lists.append((eta, lst))
                self.terms.append((nu, v_roots, u_lists))

    @property
    def saturated(self) -> list[tuple]:
        return [nu for nu, _, _ in self.terms]

    def __repr__(self):
        return f"OperatorSpec({self.pair!r}, omega={self.omega.label()})"


class _Evaluation:
    """Per-point cache of e^alpha(x) and of the v-factors."""

    def __init__(self, spec: OperatorSpec, params: Params, x: EvaluationPoint):
        self.params = params
        pair = spec.pair
        self.ev = PointEvaluator(pair, params, pair.R, x)
        self.x = x
        self.cache: dict = {}
        self.half = {lab: params.T[lab] ** (params.Dt // 2) for lab in pair.labels}
        self.tvals = {lab: params.t(lab) for lab in pair.labels}

    def e(self, f: _RootFactor):
        return self.ev(f.root)

    def v(self, f: _RootFactor, kind: int):
        """kind 0: v(e^a), 1: v(q_a e^a), 2: v(q_a^-1 e^-a).  Returns (value, zero?)."""
        key = (f.root, kind)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        z = self.e(f)
        if kind == 1:
            z = z * self.params.q_power(f.u)
        elif kind == 2:
            z = 1 / (z * self.params.q_power(f.u))
        res = _v(z, self.tvals[f.label], self.half[f.label], self.params, f)
        self.cache[key] = res
        return res


def _v(z, t, t_half, params: Params, f=None):
    den = 1 - z
    if params.is_zero(den):
        raise PoleError(f"v_alpha pole at root {getattr(f, 'root', None)}", root=getattr(f, "root", None))
    num = 1 - t * z
    if params.is_zero(num):
        return (params.zero(), True)
    return (num / (den * t_half), False)


def v_factor(z, t, params: Params):
    """t^{-1/2} (1 - t z) / (1 - z) for a parameter t given as T**Dt."""
    lab = next(k for k, T in params.T.items() if T**params.Dt == t) if params.backend == "specialized" else None
    if lab is not None:
        return _v(z, t, params.T[lab] ** (params.Dt // 2), params)[0]
    raise ValueError("t must be one of the parameters of params")


def _product(items):
    val, zero = None, False
    for x, z in items:
        if z:
            zero = True
        val = x if val is None else val * x
    return val, zero


def _V(ev: _Evaluation, v_roots) -> object:
    vals = []
    for f, p in v_roots:
        vals.append(ev.v(f, 0))
        if p == 2:
            vals.append(ev.v(f, 1))
    val, zero = _product(vals)
    if zero:
        return ev.params.zero()
    return ev.params.one() if val is None else val


def _U(ev: _Evaluation, lst) -> object:
    vals = []
    for f, p in lst:
        vals.append(ev.v(f, 0))
        if p == 2:
            vals.append(ev.v(f, 2))
    val, zero = _product(vals)
    if zero:
        return ev.params.zero()
    return ev.params.one() if val is None else val


def _find_term(spec: OperatorSpec, nu: Sequence[int]):
    nu = tuple(nu)
    for t in spec.terms:
        if t[0] == nu:
            return t
    raise RootSystemError(f"{nu} is not in the saturated set of {spec.omega.label()}")


def V_coefficient(spec: OperatorSpec, nu: Weight | Sequence[int], x: EvaluationPoint, params: Params):
    coords = nu.coords if isinstance(nu, Weight) else tuple(nu)
    return _V(_Evaluation(spec, params, x), _find_term(spec, coords)[1])


def U_coefficient(spec: OperatorSpec, nu: Weight | Sequence[int], eta: Weight | Sequence[int],
                  x: EvaluationPoint, params: Params):
    """U_{nu,eta}(x).  eta need not be in W_nu(w_nu^{-1} omega) (used for chain products)."""
    nu_c = nu.coords if isinstance(nu, Weight) else tuple(nu)
    eta_c = eta.coords if isinstance(eta, Weight) else tuple(eta)
    pair = spec.pair
    R, L = pair.R, pair.Lam
    nu_vec, eta_vec = L.ambient(nu_c), L.ambient(eta_c)
    lst = []
    for f in spec._factors:
        s = pair.star(f.vector)
        if R.inner(s, nu_vec) == 0:
            pe = R.inner(s, eta_vec)
            if pe > 0:
                lst.append((f, int(pe)))
    return _U(_Evaluation(spec, params, x), lst)


def term_coefficients(spec: OperatorSpec, x: EvaluationPoint, params: Params,
                      _ev: _Evaluation | None = None) -> dict:
    """{nu: V_nu(x) * sum_eta U_{nu,eta}(x)} over the saturated set, zero terms dropped."""
    ev = _ev or _Evaluation(spec, params, x)
    out = {}
    for nu, v_roots, u_lists in spec.terms:
        V = _V(ev, v_roots)
        if params.is_zero(V):
            continue
        s = params.zero()
        for _, lst in u_lists:
            s = s + _U(ev, lst)
        c = V * s
        if not params.is_zero(c):
            out[nu] = c
    return out


def _as_poly(f, lattice: RootSystem) -> LatticePolynomial:
    if isinstance(f, LatticePolynomial):
        return f
    return from_m_basis(lattice, f)


def apply_at(spec: OperatorSpec, f: LatticePolynomial | Mapping, x: EvaluationPoint, params: Params):
    """(D_omega f)(x) = sum_nu sum_eta U_{nu,eta}(x) V_nu(x) f(x + nu)."""
    pair = spec.pair
    f = _as_poly(f, pair.R)
    L = pair.Lam
    total = params.zero()
    for nu, c in term_coefficients(spec, x, params).items():
        xs = x.shifted(L.ambient(nu))
        ev = PointEvaluator(pair, params, pair.R, xs)
        total = total + c * f.evaluate(ev)
    return total


# ----------------------------------------------------------------------
# expansion by interpolation


def _point_params(params: Params, attempt: int) -> Params:
    import random

    rng = random.Random(1_000_003 * (params.seed or 0) + 7919 * attempt + 17)
    pt = {}
    for lab in params.T:
        pt[lab] = _rand_rational(rng, avoid={params.Q, *params.T.values(), *pt.values()})
    return params.with_point_generators(pt)


def _interpolation_support(f: LatticePolynomial) -> list[tuple]:
    L = f.lattice
    top = set()
    for k in f.to_m_basis():
        for w in dominant_weights_below(Weight(L, k)):
            top.add(w.coords)
    return sorted(top, key=lambda c: (L.height(c), c))


def expand(spec: OperatorSpec, f: LatticePolynomial | Mapping, params: Params, extra_points: int = 3,
           max_attempts: int = 5) -> dict:
    """D_omega f in the m-basis, as ``{dominant coords: coefficient}``.

    Interpolates on x_j = mu_j + rho_{tau,S} for the dominant mu_j below the
    support of f and certifies the result at ``extra_points`` further points.
    tau is the operator's own t in the generic regime; if that hits a pole or
    a singular system (and always in the t = q^k regime, where integral shifts
    collide with the poles) independent point generators are drawn instead.
    """
    pair = spec.pair
    f = _as_poly(f, pair.R)
    if not f.terms:
        return {}
    support = _interpolation_support(f)
    top = support[-1]
    R = pair.R
    extras = [tuple(c + j for c in top) for j in range(1, extra_points + 1)]
    attempts = [(params, "t")] if params.regime == "generic" and params.point_T is None else []
    attempts += [(_point_params(params, a), "point") for a in range(max_attempts)]
    last_err = None
    for prm, tau in attempts:
        try:
            pts = [point(pair, Weight(R, mu), "S", tau) for mu in support]
            rows, rhs = [], []
            for x in pts:
                ev = PointEvaluator(pair, prm, R, x)
                rows.append([_m_eval(R, mu, ev, prm) for mu in support])
                rhs.append(apply_at(spec, f, x, prm))
            coeffs = solve_linear(rows, rhs, prm)
            result = {mu: c for mu, c in zip(support, coeffs) if not prm.is_zero(c)}
            for e in extras:
                x = point(pair, Weight(R, e), "S", tau)
                ev = PointEvaluator(pair, prm, R, x)
                lhs = apply_at(spec, f, x, prm)
                val = prm.zero()
                for mu, c in result.items():
                    val = val + c * _m_eval(R, mu, ev, prm)
                if not prm.is_zero(prm.simplify(lhs - val)):
                    raise PolynomialityError(
                        f"D_{spec.omega.label()} f is not reproduced by its interpolant at {e}")
            return result
        except (PoleError, SingularSystemError) as err:
            last_err = err
            continue
    raise SingularSystemError(f"expand failed after {len(attempts)} attempts: {last_err}")


def _m_eval(L: RootSystem, mu: tuple, ev: PointEvaluator, params: Params):
    s = params.zero()
    for p in L._orbit_of_dominant(mu):
        s = s + ev(p)
    return s


# ----------------------------------------------------------------------
# eigenvalues


@dataclass
class EigenvalueFunction:
    omega: Weight
    eps: dict                      # dominant mu <= omega -> epsilon_{omega,mu}
    poly: LatticePolynomial        # E^S_omega in C[Lam]

    def at(self, pair: AdmissiblePair, params: Params, x: EvaluationPoint):
        return self.poly.evaluate(PointEvaluator(pair, params, pair.Lam, x))


def eigenvalue(spec: OperatorSpec, params: Params) -> EigenvalueFunction:
    """E^S_omega = sum over dominant mu <= omega of epsilon_{omega,mu} m_mu."""
    pair = spec.pair
    S, L = pair.S, pair.Lam
    omega = spec.omega
    eps = {}
    for mu in spec.dominant_below:
        mu_vec = mu.ambient
        S_mu = [a for a in S.positive_roots if S.inner(a, mu_vec) == 0]
        etas = _stabilizer_orbit(L, omega.ambient, S_mu)
        total = params.zero()
        for eta in etas:
            term = params.one()
            for a in S_mu:
                p = S.inner(a, eta)
                # each pairing of +-1 contributes t_a^{+-1/2}; the full power
                # t_a^<a,eta> is inconsistent with the constant term of D_omega 1
                if abs(p) == 1:
                    term = term * params.t_power(pair.label(a), Fraction(p, 2))
            total = total + term
        eps[mu.coords] = total
    poly = LatticePolynomial(L, {})
    for mu, c in eps.items():
        poly = poly + monomial_symmetric(Weight(L, mu), 1).scale(c)
    return EigenvalueFunction(omega, eps, poly)


def _stabilizer_orbit(L: RootSystem, start: Vector, mirrors: list[Vector]) -> list[Vector]:
    seen = {start}
    queue = deque([start])
    out = [start]
    while queue:
        v = queue.popleft()
        for a in mirrors:
            k = L.coroot_pairing(v, a)
            if k:
                w = tuple(x - k * y for x, y in zip(v, a))
                if w not in seen:
                    seen.add(w)
                    out.append(w)
                    queue.append(w)
    return out


def eigenvalue_at(spec: OperatorSpec, lam: Weight, params: Params, E: EigenvalueFunction | None = None):
    """E^S_omega(lambda + rho_{t,S})."""
    E = E or eigenvalue(spec, params)
    return E.at(spec.pair, params, point(spec.pair, lam, "S", "t"))


# ----------------------------------------------------------------------
# executable checks


def _report(claim: str, passed: bool, t0: float, **kw) -> dict:
    return {"claim": claim, "passed": bool(passed), "elapsed": round(time.perf_counter() - t0, 4), **kw}


def verify_symmetry(spec: OperatorSpec, lam: Weight, mu: Weight, params: Params) -> dict:
    """<D m_lam, m_mu>_Delta == <m_lam, D m_mu>_Delta in the t = q^k regime with k >= 2."""
    if params.regime != "qpower" or min(params.k.values()) < 2:
        raise RegimeError("symmetry check needs t_alpha = q_alpha^k with k >= 2")
    t0 = time.perf_counter()
    pair = spec.pair
    d_lam = expand(spec, {lam.coords: params.one()}, params)
    d_mu = expand(spec, {mu.coords: params.one()}, params)
    left = m_inner_product(d_lam, {mu.coords: params.one()}, pair, params)
    right = m_inner_product({lam.coords: params.one()}, d_mu, pair, params)
    return _report("symmetry", left == right, t0, omega=spec.omega.coords, lam=lam.coords, mu=mu.coords,
                   left=str(left), right=str(right))


def _compose(spec: OperatorSpec, f_m: dict, params: Params) -> dict:
    return expand(spec, f_m, params)


def verify_commutativity(spec1: OperatorSpec, spec2: OperatorSpec, lam: Weight, params: Params) -> dict:
    if spec1.pair != spec2.pair:
        raise RootSystemError("operators belong to different pairs")
    t0 = time.perf_counter()
    m = {lam.coords: params.one()}
    a = _compose(spec1, _compose(spec2, m, params), params)
    b = _compose(spec2, _compose(spec1, m, params), params)
    diff = {k: a.get(k, 0) - b.get(k, 0) for k in set(a) | set(b)}
    ok = all(params.is_zero(v) for v in diff.values())
    return _report("commutativity", ok, t0, omegas=[spec1.omega.coords, spec2.omega.coords], lam=lam.coords)
