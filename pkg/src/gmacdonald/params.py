"""Admissible pairs, multiplicity functions and exact evaluation at shifted points.

Values live in one of three coefficient fields:

* ``specialized`` -- exact rationals (``gmpy2.mpq``).  A draw fixes rational
  generators ``Q`` and ``T_o`` and sets ``q = Q**Dq`` and ``t_o = T_o**Dt``
  so every fractional power the formulas need is again rational.
* ``series`` -- Laurent series in an auxiliary eps around a t = q^k draw
  (see ``series_params``); used to take limits of generic constructions.
* ``formal`` -- ``sympy`` expressions in the same generators; only meant for
  small closed-form checks.

Root orbits are labelled ``"s"``/``"l"`` by the length of the corresponding
root of the Bourbaki system R, so the same label is used for a root, its
coroot and every W-translate.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

import gmpy2
from gmpy2 import mpq

from .rootsys import RootSystem, RootSystemError, Vector, Weight, build_root_system

__all__ = [
    "MODES",
    "AdmissiblePair",
    "Params",
    "EvaluationPoint",
    "ExponentRecord",
    "PoleError",
    "RegimeError",
    "draw_params",
    "series_params",
    "series_for",
    "point",
    "PointEvaluator",
    "rho_pairing",
    "evaluate_exponential",
]

MODES = ("S_equals_R", "S_equals_R_dual")


class PoleError(ArithmeticError):
    """A coefficient function was evaluated on one of its poles."""

    def __init__(self, msg, root=None):
        super().__init__(msg)
        self.root = root


class RegimeError(ValueError):
    """Operation needs the t = q^k regime (or a stricter one)."""


def _lcm_denominators(values) -> int:
    d = 1
    for v in values:
        d = math.lcm(d, Fraction(v).denominator)
    return d


class AdmissiblePair:
    """The pair (R, S) with S = R or S = R^vee.

    ``Lam`` is the weight lattice of S^vee, where the operator's small weight
    lives; ``P`` is the weight lattice of R, where the polynomials live.
    """

    def __init__(self, R: RootSystem, mode: str = "S_equals_R_dual"):
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
        self.R = R
        self.mode = mode
        self.base = build_root_system(R.cartan_type)
        self.S = R if mode == "S_equals_R" else R.dual()
        self.S_dual = self.S.dual()
        self.R_dual = R.dual()

    @property
    def P(self) -> RootSystem:
        return self.R

    @property
    def Lam(self) -> RootSystem:
        return self.S_dual

    @classmethod
    def of(cls, ct: str, mode: str = "S_equals_R_dual") -> "AdmissiblePair":
        return cls(build_root_system(ct), mode)

    def dual_pair(self) -> "AdmissiblePair":
        """(S^vee, R^vee); built by the same code path with the roles swapped."""
        cache = self.__dict__
        if "_dual_pair" not in cache:
            dp = AdmissiblePair(self.S_dual, self.mode)
            cache["_dual_pair"] = dp
            dp.__dict__["_dual_pair"] = self
        return cache["_dual_pair"]

    def u(self, alpha: Vector) -> Fraction:
        self._require_root(alpha)
        if self.mode == "S_equals_R":
            return Fraction(1)
        return self.R.inner(alpha, alpha) / 2

    def star(self, alpha: Vector) -> Vector:
        u = self.u(alpha)
        return tuple(x / u for x in alpha)

    def _require_root(self, alpha):
        if tuple(alpha) not in self._root_set:
            raise RootSystemError(f"{alpha} is not a root of {self.R.name}")

    @cached_property
    def _root_set(self):
        return set(self.R.roots)

    def label(self, v: Sequence[Fraction]) -> str:
        """Orbit label of the root direction of ``v``: ``"s"`` or ``"l"``."""
        return self.base_labels[self.base.direction_key(v)]

    @cached_property
    def base_labels(self) -> dict[Vector, str]:
        b = self.base
        return {b.direction_key(a): ("l" if b.is_long(a) else "s") for a in b.roots}

    @property
    def labels(self) -> tuple[str, ...]:
        return ("s",) if self.base.cartan_type.simply_laced else ("s", "l")

    def __repr__(self):
        return f"AdmissiblePair({self.R.name}, {self.mode})"

    def __eq__(self, other):
        return isinstance(other, AdmissiblePair) and other.R is self.R and other.mode == self.mode

    def __hash__(self):
        return hash((self.R.name, self.mode))


@dataclass(frozen=True)
class ExponentRecord:
    """The monomial q^qexp * prod_o t_o^texp[o] with rational exponents."""

    qexp: Fraction = Fraction(0)
    texp: tuple[tuple[str, Fraction], ...] = ()

    def __mul__(self, other: "ExponentRecord") -> "ExponentRecord":
        t = dict(self.texp)
        for k, v in other.texp:
            t[k] = t.get(k, Fraction(0)) + v
        return ExponentRecord(self.qexp + other.qexp, tuple(sorted((k, v) for k, v in t.items() if v)))

    def is_one(self) -> bool:
        return self.qexp == 0 and not self.texp


def _denominators(ct) -> tuple[int, int]:
    """Global exponent denominators (Dq, Dt) for a Cartan type, both modes."""
    R = build_root_system(ct)
    Rv = R.dual()
    systems = (R, Rv)
    pair = AdmissiblePair(R)
    vecs = [w for s in systems for w in s.fundamental_weights] + [a for s in systems for a in s.roots]
    dq = _lcm_denominators(s.inner(x, y) for s in systems[:1] for x in vecs for y in vecs)
    tvals = []
    for side in systems:
        for lab in pair.labels:
            half = [Fraction(0)] * R.ambient_dim
            for b in side.positive_roots:
                if pair.label(b) == lab:
                    half = [h + x / 2 for h, x in zip(half, b)]
            tvals.extend(R.inner(v, half) for v in vecs)
            for a in R.positive_roots:
                for m in MODES:
                    u = Fraction(1) if m == "S_equals_R" else R.inner(a, a) / 2
                    tvals.append(u * R.inner(R.coroot(a), half))
    dt = math.lcm(2, _lcm_denominators(tvals))
    us = [R.inner(a, a) / 2 for a in R.roots] + [Rv.inner(a, a) / 2 for a in Rv.roots]
    dq = math.lcm(dq, dt * _lcm_denominators(us))
    return dq, dt


_DENOM_CACHE: dict = {}


def denominators(ct) -> tuple[int, int]:
    key = str(ct)
    if key not in _DENOM_CACHE:
        _DENOM_CACHE[key] = _denominators(ct)
    return _DENOM_CACHE[key]


@dataclass
class Params:
    """A point (q, t) of parameter space over an exact field.

    ``T`` holds the generators T_o with t_o = T_o**Dt; ``point_T`` holds the
    generators used for shifted evaluation points when they must differ from
    the operator's own t (see ``EvaluationPoint``).
    """

    Q: object
    T: dict
    Dq: int
    Dt: int
    backend: str = "specialized"
    regime: str = "generic"
    k: dict = field(default_factory=dict)
    point_T: dict | None = None
    seed: int | None = None

    @property
    def q(self):
        return self.Q**self.Dq

    def t(self, label: str):
        return self.T[label] ** self.Dt

    def one(self):
        return _sympy().Integer(1) if self.backend == "formal" else mpq(1)

    def zero(self):
        return _sympy().Integer(0) if self.backend == "formal" else mpq(0)

    def const(self, x):
        if self.backend != "formal":
            return mpq(x.numerator, x.denominator) if isinstance(x, Fraction) else mpq(x)
        return _sympy().Rational(Fraction(x).numerator, Fraction(x).denominator)

    def is_zero(self, x) -> bool:
        if self.backend != "formal":
            return x == 0
        return _sympy().cancel(x) == 0

    def simplify(self, x):
        if self.backend != "formal":
            return x
        return _sympy().factor(_sympy().cancel(x))

    def monomial(self, rec: ExponentRecord, use_point: bool = False):
        """Exact value of an exponent record."""
        gens = (self.point_T or self.T) if use_point else self.T
        e = rec.qexp * self.Dq
        if e.denominator != 1:
            raise ArithmeticError(f"q exponent {rec.qexp} not in (1/{self.Dq})Z")
        val = self.Q ** int(e) if e else self.one()
        for lab, x in rec.texp:
            f = x * self.Dt
            if f.denominator != 1:
                raise ArithmeticError(f"t exponent {x} not in (1/{self.Dt})Z")
            val = val * gens[lab] ** int(f)
        return val

    def q_power(self, x: Fraction):
        return self.monomial(ExponentRecord(Fraction(x)))

    def t_power(self, label: str, x: Fraction):
        return self.monomial(ExponentRecord(Fraction(0), ((label, Fraction(x)),)))

    def with_point_generators(self, point_T: dict) -> "Params":
        return Params(self.Q, self.T, self.Dq, self.Dt, self.backend, self.regime, self.k, point_T, self.seed)

    def describe(self) -> dict:
        def s(x):
            return str(x)

        return {"backend": self.backend, "regime": self.regime, "seed": self.seed,
                "q": s(self.q), "t": {k: s(self.t(k)) for k in sorted(self.T)},
                "k": dict(self.k), "Dq": self.Dq, "Dt": self.Dt}


def _sympy():
    import sympy

    return sympy


def _rand_rational(rng: random.Random, avoid=()) -> mpq:
    while True:
        a, b = rng.randint(2, 97), rng.randint(2, 97)
        x = mpq(a, b)
        if a != b and x not in avoid:
            return x


def draw_params(pair: AdmissiblePair, seed: int = 0, regime: str = "generic",
                k: Mapping[str, int] | None = None, backend: str = "specialized",
                q=None, t: Mapping[str, object] | None = None) -> Params:
    """A seeded exact specialization.

    ``regime="generic"``: independent rational generators.  ``regime="qpower"``:
    t_o = q_o**k_o with q_o = q**u_o; point generators are then drawn
    independently so shifted evaluation points stay off the poles.
    ``q``/``t`` pin the generators explicitly (rationals, used as Q and T_o).
    """
    ct = pair.base.cartan_type
    dq, dt = denominators(ct)
    labels = pair.labels
    if backend == "formal":
        sp = _sympy()
        Q = sp.Symbol("Q", positive=True)
        if regime == "qpower":
            T = {lab: _qpower_T(pair, Q, lab, k, dq, dt) for lab in labels}
            pt = {lab: sp.Symbol(f"X_{lab}", positive=True) for lab in labels}
            return Params(Q, T, dq, dt, backend, regime, dict(k or {}), pt, seed)
        T = {lab: sp.Symbol(f"T_{lab}", positive=True) for lab in labels}
        return Params(Q, T, dq, dt, backend, regime, {}, None, seed)
    rng = random.Random(seed)
    Q = mpq(q) if q is not None else _rand_rational(rng)
    if regime == "qpower":
        if not k:
            raise RegimeError("qpower regime needs integer exponents k")
        kk = {lab: int(k.get(lab, k.get("s", 1))) for lab in labels}
        T = {lab: _qpower_T(pair, Q, lab, kk, dq, dt) for lab in labels}
        pt = {}
        for lab in labels:
            pt[lab] = _rand_rational(rng, avoid={Q, *pt.values()})
        return Params(Q, T, dq, dt, backend, regime, kk, pt, seed)
    if regime != "generic":
        raise RegimeError(f"unknown regime {regime!r}")
    T = {}
    for lab in labels:
        if t is not None and lab in t:
            T[lab] = mpq(t[lab])
        else:
            T[lab] = _rand_rational(rng, avoid={Q, *T.values()})
    return Params(Q, T, dq, dt, backend, regime, {}, None, seed)


def series_params(params: Params, precision: int = 16) -> Params:
    """The t = q^k draw ``params`` with every T_o moved to T_o (1 + eps).

    Quantities computed with the result are Laurent series in eps whose value
    at eps = 0 is the specialization t = q^k of the generic construction.
    """
    from .series import LaurentSeries

    if params.regime != "qpower" or params.backend != "specialized":
        raise RegimeError("series parameters are built from a specialized t = q^k draw")
    T = {lab: LaurentSeries.generator(x, precision) for lab, x in params.T.items()}
    return Params(params.Q, T, params.Dq, params.Dt, "series", "generic", dict(params.k), None, params.seed)


def series_for(params: Params, precision: int = 16) -> Params:
    """Cached ``series_params`` of a t = q^k draw."""
    cache = params.__dict__.setdefault("_series_params", {})
    if precision not in cache:
        cache[precision] = series_params(params, precision)
    return cache[precision]


def _qpower_T(pair: AdmissiblePair, Q, lab, k, dq, dt):
    # u is constant on each orbit
    alpha = next(a for a in pair.R.roots if pair.label(a) == lab)
    e = pair.u(alpha) * int(k[lab]) * dq / dt
    if Fraction(e).denominator != 1:
        raise ArithmeticError("exponent denominators too small for this k")
    return Q ** int(e)


# ----------------------------------------------------------------------
# rho vectors and evaluation


def rho_parts(pair: AdmissiblePair, side: RootSystem) -> dict[str, Vector]:
    """rho_o = 1/2 * sum of the positive roots of ``side`` in orbit o."""
    cache = pair.__dict__.setdefault("_rho_parts", {})
    if side.name not in cache:
        out = {}
        for lab in pair.labels:
            v = [Fraction(0)] * side.ambient_dim
            for b in side.positive_roots:
                if pair.label(b) == lab:
                    v = [x + y / 2 for x, y in zip(v, b)]
            out[lab] = tuple(v)
        cache[side.name] = out
    return cache[side.name]


def rho_pairing(pair: AdmissiblePair, nu: Sequence[Fraction], side: RootSystem) -> ExponentRecord:
    """q^<nu, rho_{t,side}> as a monomial in the t_o."""
    parts = rho_parts(pair, side)
    nu = tuple(nu)
    return ExponentRecord(Fraction(0), tuple(sorted(
        (lab, pair.R.inner(nu, v)) for lab, v in parts.items() if pair.R.inner(nu, v) != 0)))


@dataclass(frozen=True)
class EvaluationPoint:
    """x = base + rho_{tau, side}.

    ``base`` is an ambient vector (a weight, or a weight plus a shift);
    ``side`` names the root system whose positive roots build rho; ``tau`` is
    ``"t"`` for the pair's multiplicities or ``"point"`` for the independent
    point generators of ``Params``.
    """

    base: Vector
    side: str
    tau: str = "t"

    def shifted(self, v: Sequence[Fraction]) -> "EvaluationPoint":
        return EvaluationPoint(tuple(a + b for a, b in zip(self.base, v)), self.side, self.tau)


def point(pair: AdmissiblePair, base: Weight | Sequence[Fraction] | None, side: str, tau: str = "t") -> EvaluationPoint:
    """``side`` is one of ``"S"``, ``"R_dual"``."""
    if side not in ("S", "R_dual"):
        raise ValueError(f"side must be 'S' or 'R_dual', got {side!r}")
    if base is None:
        vec = (Fraction(0),) * pair.R.ambient_dim
    elif isinstance(base, Weight):
        vec = base.ambient
    else:
        vec = tuple(Fraction(x) for x in base)
    return EvaluationPoint(vec, side, tau)


def side_system(pair: AdmissiblePair, side: str) -> RootSystem:
    return pair.S if side == "S" else pair.R_dual


def exponent_at(pair: AdmissiblePair, nu: Sequence[Fraction], x: EvaluationPoint) -> ExponentRecord:
    """Exponent record of e^nu(x) = q^<nu, x>."""
    nu = tuple(nu)
    rec = rho_pairing(pair, nu, side_system(pair, x.side))
    return ExponentRecord(pair.R.inner(nu, x.base), rec.texp)


def evaluate_exponential(pair: AdmissiblePair, params: Params, nu: Weight | Sequence[Fraction],
                         x: EvaluationPoint):
    vec = nu.ambient if isinstance(nu, Weight) else tuple(nu)
    return params.monomial(exponent_at(pair, vec, x), use_point=(x.tau == "point"))


class PointEvaluator:
    """Fast evaluation of exponentials of one lattice at one point.

    Precomputes g_i = e^{omega_i}(x) so that e^nu(x) = prod g_i^{nu_i}.
    """

    def __init__(self, pair: AdmissiblePair, params: Params, lattice: RootSystem, x: EvaluationPoint):
        self.lattice = lattice
        self.gens = [evaluate_exponential(pair, params, w, x) for w in lattice.fundamental_weights]
        self.one = params.one()
        self._pow_cache: dict = {}

    def __call__(self, coords: Sequence[int]):
        val = self.one
        cache = self._pow_cache
        for i, c in enumerate(coords):
            if c:
                key = (i, c)
                p = cache.get(key)
                if p is None:
                    p = self.gens[i] ** c
                    cache[key] = p
                val = val * p
        return val
