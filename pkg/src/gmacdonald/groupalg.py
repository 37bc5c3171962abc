"""Sparse group algebra of a weight lattice.

A ``LatticePolynomial`` maps fundamental coordinates to exact coefficients.
W-invariant elements are also handled through their expansion in the
monomial symmetric basis, a plain ``{dominant coords: coefficient}`` dict.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from gmpy2 import mpq

from .params import AdmissiblePair, Params, PointEvaluator, RegimeError
from .rootsys import RootSystem, RootSystemError, Weight, weyl_group_order

__all__ = [
    "LatticePolynomial",
    "SizeGuardError",
    "monomial_symmetric",
    "from_m_basis",
    "bar",
    "constant_term",
    "delta_density",
    "macdonald_inner_product",
    "monomial_gram",
    "m_inner_product",
    "m_product",
    "m_evaluate",
]

MAX_TERMS = 10**6


class SizeGuardError(MemoryError):
    """A product would exceed the configured term budget."""


class LatticePolynomial:
    __slots__ = ("lattice", "terms")

    def __init__(self, lattice: RootSystem, terms: Mapping | None = None):
        self.lattice = lattice
        self.terms: dict = {k: v for k, v in (terms or {}).items() if v != 0}

    # -- constructors --------------------------------------------------
    @classmethod
    def exponential(cls, w: Weight, coeff=1) -> "LatticePolynomial":
        return cls(w.system, {w.coords: mpq(coeff) if isinstance(coeff, int) else coeff})

    @classmethod
    def constant(cls, lattice: RootSystem, c=1) -> "LatticePolynomial":
        return cls(lattice, {(0,) * lattice.rank: mpq(c) if isinstance(c, int) else c})

    # -- ring structure ------------------------------------------------
    def _check(self, other: "LatticePolynomial"):
        if other.lattice is not self.lattice:
            raise RootSystemError(f"mixed lattices: {self.lattice.name} vs {other.lattice.name}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return LatticePolynomial(self.lattice, out)

    def __neg__(self):
        return LatticePolynomial(self.lattice, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LatticePolynomial":
        return LatticePolynomial(self.lattice, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, LatticePolynomial):
            return self.scale(other)
        self._check(other)
        if len(self.terms) * len(other.terms) > 50 * MAX_TERMS:
            raise SizeGuardError(f"product of {len(self.terms)} x {len(other.terms)} terms refused")
        out: dict = {}
        get = out.get
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                k = tuple(i + j for i, j in zip(a, b))
                out[k] = get(k, 0) + x * y
            if len(out) > MAX_TERMS:
                raise SizeGuardError(f"product exceeded {MAX_TERMS} terms")
        return LatticePolynomial(self.lattice, out)

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, LatticePolynomial):
            return NotImplemented
        return self.lattice is other.lattice and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"LatticePolynomial({self.lattice.name}, {len(self.terms)} terms)"

    def coefficient(self, coords) -> object:
        return self.terms.get(tuple(coords), 0)

    def reflect(self, i: int) -> "LatticePolynomial":
        return LatticePolynomial(self.lattice, {self.lattice.reflect(k, i): v for k, v in self.terms.items()})

    def is_w_invariant(self) -> bool:
        return all(self.reflect(i) == self for i in range(self.lattice.rank))

    def to_m_basis(self) -> dict:
        """Coefficients on the dominant weights (meaningful for W-invariant input)."""
        return {k: v for k, v in self.terms.items() if all(c >= 0 for c in k)}

    def evaluate(self, ev: Callable) -> object:
        """Sum of coefficient * e^nu(x) with ``ev`` a ``PointEvaluator``."""
        total = 0
        for k, v in self.terms.items():
            total = total + v * ev(k)
        return total

    # -- serialization -------------------------------------------------
    def to_json(self) -> dict:
        return {"lattice": self.lattice.name,
                "terms": [{"weight": list(k), "coefficient": str(v)} for k, v in sorted(self.terms.items())]}

    @classmethod
    def from_json(cls, data: Mapping, lattice: RootSystem) -> "LatticePolynomial":
        if data["lattice"] != lattice.name:
            raise RootSystemError(f"lattice tag {data['lattice']} does not match {lattice.name}")
        return cls(lattice, {tuple(t["weight"]): mpq(t["coefficient"]) for t in data["terms"]})

    def to_latex(self, symmetric: bool = True) -> str:
        """Human-readable form; W-invariant input is shown in the m-basis."""
        items = sorted((self.to_m_basis() if symmetric else self.terms).items(),
                       key=lambda kv: (-self.lattice.height(kv[0]), kv[0]))
        if not items:
            return "0"
        out = []
        for k, v in items:
            cs = _latex_number(v)
            if not any(k):
                out.append(cs)
                continue
            name = ("m" if symmetric else "e") + "_{" + Weight(self.lattice, k).label().replace("w", r"\omega_") + "}"
            out.append({"1": "", "-1": "-"}.get(cs, cs) + name)
        s = " + ".join(out)
        return s.replace("+ -", "- ")


def _latex_number(v) -> str:
    try:
        c = Fraction(int(v.numerator), int(v.denominator))
    except (AttributeError, TypeError):
        return "(" + str(v) + ")"
    if c.denominator == 1:
        return str(c.numerator)
    return ("-" if c < 0 else "") + rf"\frac{{{abs(c.numerator)}}}{{{c.denominator}}}"


def monomial_symmetric(lam: Weight, coeff=1) -> LatticePolynomial:
    if not lam.is_dominant:
        raise RootSystemError(f"m_lambda needs dominant lambda, got {lam.coords}")
    c = mpq(coeff) if isinstance(coeff, int) else coeff
    return LatticePolynomial(lam.system, {p: c for p in lam.system._orbit_of_dominant(lam.coords)})


def from_m_basis(lattice: RootSystem, coeffs: Mapping) -> LatticePolynomial:
    out = {}
    for k, c in coeffs.items():
        if c == 0:
            continue
        for p in lattice._orbit_of_dominant(tuple(k)):
            out[p] = c
    return LatticePolynomial(lattice, out)


def bar(f: LatticePolynomial) -> LatticePolynomial:
    """e^lambda -> e^{-lambda}; coefficients are real so conjugation is trivial."""
    return LatticePolynomial(f.lattice, {tuple(-c for c in k): v for k, v in f.terms.items()})


def constant_term(f: LatticePolynomial):
    return f.terms.get((0,) * f.lattice.rank, mpq(0))


def translation(f: LatticePolynomial, pair: AdmissiblePair, params: Params, nu) -> LatticePolynomial:
    """T_nu e^lambda = q^<lambda, nu> e^lambda."""
    vec = nu.ambient if isinstance(nu, Weight) else tuple(nu)
    L = f.lattice
    return LatticePolynomial(L, {k: v * params.q_power(L.inner(L.ambient(k), vec)) for k, v in f.terms.items()})


# ----------------------------------------------------------------------
# Density and inner product in the t = q^k regime


def _require_qpower(params: Params):
    if params.regime != "qpower":
        raise RegimeError("the density is a Laurent polynomial only in the t = q^k regime")


def delta_density(pair: AdmissiblePair, params: Params) -> LatticePolynomial:
    """prod over all roots of (e^alpha; q_alpha)_k, the finite form of the density."""
    _require_qpower(params)
    cache = params.__dict__.setdefault("_delta_cache", {})
    key = (pair.R.name, pair.mode)
    if key in cache:
        return cache[key]
    R = pair.R
    terms = {(0,) * R.rank: params.one()}
    # interleave alpha and -alpha to keep the intermediate support balanced
    order = []
    for a in R.positive_roots:
        order.extend([a, tuple(-x for x in a)])
    for a in order:
        k = params.k[pair.label(a)]
        u = pair.u(a)
        shift = R.coords_of(a)
        for i in range(k):
            c = params.q_power(u * i)
            new = dict(terms)
            for w, v in terms.items():
                key2 = tuple(x + y for x, y in zip(w, shift))
                val = new.get(key2, 0) - c * v
                if val == 0:
                    new.pop(key2, None)
                else:
                    new[key2] = val
            terms = new
            if len(terms) > MAX_TERMS:
                raise SizeGuardError(f"density exceeded {MAX_TERMS} terms")
    out = LatticePolynomial(R, terms)
    cache[key] = out
    return out


def macdonald_inner_product(f: LatticePolynomial, g: LatticePolynomial, pair: AdmissiblePair,
                            params: Params):
    """|W|^-1 * constant term of f * bar(g) * Delta."""
    delta = delta_density(pair, params).terms
    total = params.zero()
    for a, x in f.terms.items():
        for b, y in g.terms.items():
            d = delta.get(tuple(j - i for i, j in zip(a, b)))
            if d is not None:
                total = total + x * y * d
    return total / weyl_group_order(pair.R.cartan_type)


def monomial_gram(mus: Iterable, nus: Iterable, pair: AdmissiblePair, params: Params) -> list[list]:
    """Matrix of <m_mu, m_nu> using the W-invariance of Delta."""
    R = pair.R
    delta = delta_density(pair, params).terms
    W = weyl_group_order(R.cartan_type)
    nus = [tuple(n) for n in nus]
    out = []
    for mu in mus:
        mu = tuple(mu)
        size = len(R._orbit_of_dominant(mu))
        row = []
        for nu in nus:
            s = params.zero()
            for z in R._orbit_of_dominant(nu):
                d = delta.get(tuple(a - b for a, b in zip(z, mu)))
                if d is not None:
                    s = s + d
            row.append(s * size / W)
        out.append(row)
    return out


def m_inner_product(f_m: Mapping, g_m: Mapping, pair: AdmissiblePair, params: Params):
    """Inner product of two W-invariant elements given in the m-basis."""
    fk, gk = list(f_m), list(g_m)
    if not fk or not gk:
        return params.zero()
    G = monomial_gram(fk, gk, pair, params)
    total = params.zero()
    for i, a in enumerate(fk):
        for j, b in enumerate(gk):
            total = total + f_m[a] * g_m[b] * G[i][j]
    return total


def m_product(f_m: Mapping, g_m: Mapping, lattice: RootSystem) -> dict:
    """Product of two W-invariant elements, both in the m-basis.

    Only dominant exponents of the product are accumulated: every full term of
    f is paired with every orbit point of g.
    """
    full = from_m_basis(lattice, f_m).terms
    out: dict = {}
    for mu, c in g_m.items():
        if c == 0:
            continue
        for y in lattice._orbit_of_dominant(tuple(mu)):
            for x, a in full.items():
                k = tuple(i + j for i, j in zip(x, y))
                if min(k) >= 0:
                    out[k] = out.get(k, 0) + a * c
    return {k: v for k, v in out.items() if v != 0}


def m_evaluate(f_m: Mapping, lattice: RootSystem, ev: Callable):
    """Value at a point of an m-basis expansion; ``ev`` is a ``PointEvaluator``."""
    total = 0
    for mu, c in f_m.items():
        s = 0
        for p in lattice._orbit_of_dominant(tuple(mu)):
            s = s + ev(p)
        total = total + c * s
    return total
