"""Irreducible reduced root systems and Weyl-group combinatorics.

Everything is exact: ambient vectors carry ``Fraction`` entries and weights are
stored by their integer coordinates in the fundamental-weight basis of the
lattice they belong to.  The Weyl group is never listed; orbits and stabilizers
come from breadth-first closure under simple reflections.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "CartanType",
    "RootSystem",
    "Weight",
    "OrbitData",
    "build_root_system",
    "dominance_leq",
    "orbit",
    "dominant_representative",
    "stabilizer_subsystem",
    "classify_weight",
    "small_fundamental_chains",
    "saturated_set",
    "dominant_weights_below",
    "verify_appendix_lemmas",
    "weyl_group_order",
    "RootSystemError",
    "format_chains",
    "all_small_weights",
    "is_small",
    "max_coroot_pairing",
]

Vector = tuple[Fraction, ...]
Coords = tuple[int, ...]


class RootSystemError(ValueError):
    """Invalid Cartan data, mixed lattices or violated preconditions."""


_RANK_RULES = {
    "A": (lambda n: n >= 1, "A_n requires n >= 1"),
    "B": (lambda n: n >= 2, "B_n requires n >= 2"),
    "C": (lambda n: n >= 2, "C_n requires n >= 2"),
    "D": (lambda n: n >= 3, "D_n requires n >= 3"),
    "E": (lambda n: n in (6, 7, 8), "E_n requires n in {6, 7, 8}"),
    "F": (lambda n: n == 4, "F_n requires n = 4"),
    "G": (lambda n: n == 2, "G_n requires n = 2"),
}


@dataclass(frozen=True, order=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _RANK_RULES:
            raise RootSystemError(f"unknown Cartan family {self.family!r}")
        ok, rule = _RANK_RULES[self.family]
        if not isinstance(self.rank, int) or not ok(self.rank):
            raise RootSystemError(f"invalid rank {self.rank}: {rule}")

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        text = text.strip().replace("_", "")
        if len(text) < 2 or not text[1:].isdigit():
            raise RootSystemError(f"cannot parse Cartan type {text!r}")
        return cls(text[0].upper(), int(text[1:]))

    @property
    def simply_laced(self) -> bool:
        return self.family in "ADE"

    def __str__(self):
        return f"{self.family}{self.rank}"


def weyl_group_order(ct: CartanType) -> int:
    """|W| from the product of the fundamental degrees."""
    n = ct.rank
    if ct.family == "A":
        return math.factorial(n + 1)
    if ct.family in "BC":
        return 2**n * math.factorial(n)
    if ct.family == "D":
        return 2 ** (n - 1) * math.factorial(n)
    degrees = {
        ("E", 6): (2, 5, 6, 8, 9, 12),
        ("E", 7): (2, 6, 8, 10, 12, 14, 18),
        ("E", 8): (2, 8, 12, 14, 18, 20, 24, 30),
        ("F", 4): (2, 6, 8, 12),
        ("G", 2): (2, 6),
    }[(ct.family, n)]
    return math.prod(degrees)


def _e(dim: int, *entries: tuple[int, Fraction | int]) -> Vector:
    v = [Fraction(0)] * dim
    for i, x in entries:
        v[i] = Fraction(x)
    return tuple(v)


def _bourbaki(ct: CartanType) -> tuple[list[Vector], Fraction]:
    """Bourbaki simple roots and the scale making short roots have norm 2."""
    n, fam = ct.rank, ct.family
    half = Fraction(1, 2)
    if fam == "A":
        return [_e(n + 1, (i, 1), (i + 1, -1)) for i in range(n)], Fraction(1)
    if fam in "BCD":
        roots = [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)]
        if fam == "B":
            roots.append(_e(n, (n - 1, 1)))
            return roots, Fraction(2)
        if fam == "C":
            roots.append(_e(n, (n - 1, 2)))
            return roots, Fraction(1)
        roots.append(_e(n, (n - 2, 1), (n - 1, 1)))
        return roots, Fraction(1)
    if fam == "G":
        return [_e(3, (0, 1), (1, -1)), _e(3, (0, -2), (1, 1), (2, 1))], Fraction(1)
    if fam == "F":
        return [
            _e(4, (1, 1), (2, -1)),
            _e(4, (2, 1), (3, -1)),
            _e(4, (3, 1)),
            _e(4, (0, half), (1, -half), (2, -half), (3, -half)),
        ], Fraction(2)
    e8 = [
        tuple([half] + [-half] * 6 + [half]),
        _e(8, (0, 1), (1, 1)),
    ] + [_e(8, (i - 1, -1), (i, 1)) for i in range(1, 7)]
    return [tuple(Fraction(x) for x in r) for r in e8[:n]], Fraction(1)


def _solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Exact Gaussian elimination for a square nonsingular system."""
    n = len(matrix)
    a = [list(map(Fraction, row)) + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def _inverse(matrix: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(matrix)
    cols = [_solve(matrix, [Fraction(int(i == j)) for i in range(n)]) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


class RootSystem:
    """An irreducible reduced root system together with its weight lattice.

    ``cartan_matrix[i][j] = <alpha_i, alpha_j^vee>`` (so G2 reads
    ``[[2, -1], [-3, 2]]``), hence row ``i`` holds the fundamental
    coordinates of the simple root ``alpha_i``.
    """

    def __init__(self, cartan_type: CartanType, simple_roots: Sequence[Vector],
                 scale: Fraction, name: str | None = None, dual_of: "RootSystem | None" = None):
        self.cartan_type = cartan_type
        self.simple_roots: tuple[Vector, ...] = tuple(tuple(Fraction(x) for x in r) for r in simple_roots)
        self.scale = Fraction(scale)
        self.name = name or str(cartan_type)
        self.rank = len(self.simple_roots)
        self.ambient_dim = len(self.simple_roots[0])
        self._dual = dual_of
        n = self.rank
        self.cartan_matrix: tuple[Coords, ...] = tuple(
            tuple(int(self.coroot_pairing(self.simple_roots[i], self.simple_roots[j])) for j in range(n))
            for i in range(n)
        )
        self._build_roots()

    # -- inner product -------------------------------------------------
    def inner(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
        return self.scale * sum((a * b for a, b in zip(x, y)), Fraction(0))

    def coroot(self, a: Vector) -> Vector:
        n2 = self.inner(a, a)
        return tuple(2 * x / n2 for x in a)

    def coroot_pairing(self, x: Vector, a: Vector) -> Fraction:
        """<x, a^vee>."""
        return 2 * self.inner(x, a) / self.inner(a, a)

    # -- roots ---------------------------------------------------------
    def _build_roots(self):
        n, C = self.rank, self.cartan_matrix
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        seen = set(simple)
        queue = deque(simple)
        while queue:
            beta = queue.popleft()
            for i in range(n):
                k = sum(beta[j] * C[j][i] for j in range(n))
                if k == 0:
                    continue
                gamma = tuple(beta[j] - k * (j == i) for j in range(n))
                if all(c >= 0 for c in gamma) and gamma not in seen:
                    seen.add(gamma)
                    queue.append(gamma)
        pos = sorted(seen, key=lambda r: (sum(r), tuple(-c for c in r)))
        self.positive_root_coords: tuple[Coords, ...] = tuple(pos)
        self.positive_roots: tuple[Vector, ...] = tuple(self.root_vector(r) for r in pos)
        self.roots: tuple[Vector, ...] = self.positive_roots + tuple(tuple(-x for x in a) for a in self.positive_roots)

    def root_vector(self, root_coords: Sequence[int]) -> Vector:
        v = [Fraction(0)] * self.ambient_dim
        for c, a in zip(root_coords, self.simple_roots):
            if c:
                for k in range(self.ambient_dim):
                    v[k] += c * a[k]
        return tuple(v)

    @cached_property
    def root_norms(self) -> dict[Vector, Fraction]:
        return {a: self.inner(a, a) for a in self.roots}

    @cached_property
    def short_norm(self) -> Fraction:
        return min(self.root_norms.values())

    def is_long(self, a: Vector) -> bool:
        return self.inner(a, a) > self.short_norm

    @cached_property
    def highest_root(self) -> Vector:
        return self.positive_roots[-1]

    @cached_property
    def highest_short_root(self) -> Vector:
        return max((a for a in self.positive_roots if not self.is_long(a)),
                   key=lambda a: sum(self.root_coords_of(a)))

    def root_coords_of(self, v: Vector) -> tuple[Fraction, ...]:
        """Coordinates of an ambient vector of the root span in the simple-root basis."""
        return tuple(sum(v[k] * col[k] for k in range(self.ambient_dim)) for col in self._coord_functionals)

    @cached_property
    def _coord_functionals(self) -> list[list[Fraction]]:
        # row i: ambient functional extracting the alpha_i coefficient
        gram = [[self.inner(a, b) for b in self.simple_roots] for a in self.simple_roots]
        ginv = _inverse(gram)
        out = []
        for i in range(self.rank):
            f = [Fraction(0)] * self.ambient_dim
            for j in range(self.rank):
                for k in range(self.ambient_dim):
                    f[k] += ginv[i][j] * self.scale * self.simple_roots[j][k]
            out.append(f)
        return out

    # -- weights -------------------------------------------------------
    @cached_property
    def fundamental_weights(self) -> tuple[Vector, ...]:
        cinv = self.cartan_inverse
        return tuple(self.root_vector_q(cinv[i]) for i in range(self.rank))

    def root_vector_q(self, coeffs: Sequence[Fraction]) -> Vector:
        v = [Fraction(0)] * self.ambient_dim
        for c, a in zip(coeffs, self.simple_roots):
            for k in range(self.ambient_dim):
                v[k] += c * a[k]
        return tuple(v)

    @cached_property
    def cartan_inverse(self) -> list[list[Fraction]]:
        return _inverse([[Fraction(x) for x in row] for row in self.cartan_matrix])

    def ambient(self, coords: Sequence[int]) -> Vector:
        v = [Fraction(0)] * self.ambient_dim
        for c, w in zip(coords, self.fundamental_weights):
            if c:
                for k in range(self.ambient_dim):
                    v[k] += c * w[k]
        return tuple(v)

    def coords_of(self, v: Sequence[Fraction]) -> Coords:
        """Fundamental coordinates of an ambient vector; it must lie in the weight lattice."""
        out = []
        for a in self.simple_roots:
            c = self.coroot_pairing(tuple(v), a)
            if c.denominator != 1:
                raise RootSystemError(f"vector {v} is not in the weight lattice of {self.name}")
            out.append(int(c))
        return tuple(out)

    def weight(self, coords: Iterable[int]) -> "Weight":
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise RootSystemError(f"expected {self.rank} coordinates for {self.name}, got {len(coords)}")
        return Weight(self, coords)

    def zero(self) -> "Weight":
        return Weight(self, (0,) * self.rank)

    def fundamental(self, i: int) -> "Weight":
        """The fundamental weight omega_i, 1-based as in Bourbaki."""
        return Weight(self, tuple(int(j == i - 1) for j in range(self.rank)))

    def simple_root_weight(self, i: int) -> "Weight":
        """The simple root alpha_i as a weight, 1-based."""
        return Weight(self, self.cartan_matrix[i - 1])

    @cached_property
    def positive_root_weights(self) -> tuple[Coords, ...]:
        """Fundamental coordinates of the positive roots."""
        C = self.cartan_matrix
        n = self.rank
        return tuple(tuple(sum(r[i] * C[i][j] for i in range(n)) for j in range(n))
                     for r in self.positive_root_coords)

    @cached_property
    def positive_coroot_functionals(self) -> tuple[Coords, ...]:
        """a with <lambda, alpha^vee> = sum(lambda_i * a_i) for each positive root."""
        return tuple(tuple(int(self.coroot_pairing(w, a)) for w in self.fundamental_weights)
                     for a in self.positive_roots)

    @cached_property
    def rho(self) -> Coords:
        return (1,) * self.rank

    # -- reflections ---------------------------------------------------
    def reflect(self, coords: Coords, i: int) -> Coords:
        k = coords[i]
        if k == 0:
            return coords
        row = self.cartan_matrix[i]
        return tuple(c - k * r for c, r in zip(coords, row))

    def apply_word(self, coords: Coords, word: Sequence[int]) -> Coords:
        """Apply s_{word[0]} first, then s_{word[1]}, ..."""
        for i in word:
            coords = self.reflect(coords, i)
        return coords

    def to_dominant(self, coords: Coords) -> tuple[Coords, tuple[int, ...]]:
        word = []
        while True:
            for i, c in enumerate(coords):
                if c < 0:
                    coords = self.reflect(coords, i)
                    word.append(i)
                    break
            else:
                return coords, tuple(word)

    def orbit_coords(self, coords: Coords) -> list[Coords]:
        seed, _ = self.to_dominant(coords)
        return self._orbit_of_dominant(seed)

    def _orbit_of_dominant(self, seed: Coords) -> list[Coords]:
        cache = self.__dict__.setdefault("_orbit_cache", {})
        hit = cache.get(seed)
        if hit is not None:
            return hit
        seen = {seed}
        out = [seed]
        queue = deque([seed])
        while queue:
            x = queue.popleft()
            for i in range(self.rank):
                if x[i] > 0:  # walk down only; every orbit point is reached this way
                    y = self.reflect(x, i)
                    if y not in seen:
                        seen.add(y)
                        out.append(y)
                        queue.append(y)
        cache[seed] = out
        return out

    def root_lattice_coords(self, coords: Coords) -> tuple[Fraction, ...]:
        """Coefficients of a weight in the simple-root basis."""
        cinv = self.cartan_inverse
        n = self.rank
        return tuple(sum(coords[i] * cinv[i][j] for i in range(n)) for j in range(n))

    def is_dominant(self, coords: Coords) -> bool:
        return all(c >= 0 for c in coords)

    def height(self, coords: Coords) -> Fraction:
        return sum(self.root_lattice_coords(coords), Fraction(0))

    # -- duality -------------------------------------------------------
    def dual(self) -> "RootSystem":
        """The coroot system R^vee in the same ambient space."""
        if self._dual is None:
            name = self.name[:-4] if self.name.endswith("^vee") else self.name + "^vee"
            self._dual = RootSystem(self.cartan_type, [self.coroot(a) for a in self.simple_roots],
                                    self.scale, name=name, dual_of=self)
        return self._dual

    def direction_key(self, v: Sequence[Fraction]) -> Vector:
        """Primitive-direction key shared by proportional vectors of R and R^vee."""
        nz = next(x for x in v if x != 0)
        return tuple(x / abs(nz) for x in v)

    def __repr__(self):
        return f"RootSystem({self.name})"


_SYSTEMS: dict[CartanType, RootSystem] = {}


def build_root_system(ct: CartanType | str) -> RootSystem:
    """The Bourbaki realization of ``ct`` (short roots of squared length 2)."""
    if isinstance(ct, str):
        ct = CartanType.parse(ct)
    if ct not in _SYSTEMS:
        roots, scale = _bourbaki(ct)
        _SYSTEMS[ct] = RootSystem(ct, roots, scale)
    return _SYSTEMS[ct]


@dataclass(frozen=True)
class Weight:
    """A lattice point given by fundamental coordinates in ``system``'s weight lattice."""

    system: RootSystem = field(compare=False, hash=False, repr=False)
    coords: Coords
    _tag: str = field(init=False, repr=True, default="")

    def __post_init__(self):
        object.__setattr__(self, "_tag", self.system.name)

    @property
    def lattice_tag(self) -> str:
        return self._tag

    @property
    def ambient(self) -> Vector:
        return self.system.ambient(self.coords)

    @property
    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def _check(self, other: "Weight"):
        if other.system is not self.system:
            raise RootSystemError(f"mixed lattices: {self._tag} vs {other._tag}")

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(self.system, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(self.system, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(self.system, tuple(-a for a in self.coords))

    def __rmul__(self, k: int) -> "Weight":
        return Weight(self.system, tuple(k * a for a in self.coords))

    def label(self) -> str:
        parts = []
        for i, c in enumerate(self.coords, start=1):
            if c == 1:
                parts.append(f"w{i}")
            elif c:
                parts.append(f"{c}w{i}")
        return "+".join(parts).replace("+-", "-") or "0"


@dataclass(frozen=True)
class OrbitData:
    seed: Weight
    points: tuple[Weight, ...]
    witness: tuple[tuple[int, ...], ...]


def dominance_leq(mu: Weight, lam: Weight) -> bool:
    """mu <= lam, i.e. lam - mu is a nonnegative integer combination of simple roots."""
    mu._check(lam)
    diff = tuple(a - b for a, b in zip(lam.coords, mu.coords))
    coeffs = lam.system.root_lattice_coords(diff)
    return all(c.denominator == 1 and c >= 0 for c in coeffs)


def dominant_representative(nu: Weight) -> tuple[Weight, tuple[int, ...]]:
    """Dominant weight in W nu and a word (0-based simple indices) carrying nu to it.

    Ties are broken by always reflecting at the lowest index with negative pairing.
    """
    dom, word = nu.system.to_dominant(nu.coords)
    return Weight(nu.system, dom), word


def orbit(lam: Weight) -> OrbitData:
    sysm = lam.system
    seed, _ = sysm.to_dominant(lam.coords)
    pts = sysm._orbit_of_dominant(seed)
    return OrbitData(
        seed=Weight(sysm, seed),
        points=tuple(Weight(sysm, p) for p in pts),
        witness=tuple(sysm.to_dominant(p)[1] for p in pts),
    )


def stabilizer_subsystem(x: Weight, roots_of: RootSystem | None = None) -> list[Vector]:
    """Positive roots (of ``roots_of``, default the weight's own system) orthogonal to x."""
    sysm = roots_of or x.system
    v = x.ambient
    return [a for a in sysm.positive_roots if sysm.inner(a, v) == 0]


def max_coroot_pairing(omega: Weight) -> int:
    return max((sum(c * a for c, a in zip(omega.coords, f))
                for f in omega.system.positive_coroot_functionals), default=0)


def classify_weight(omega: Weight) -> str:
    """One of ``zero``, ``minuscule``, ``quasi_minuscule``, ``small_other``, ``not_small``."""
    if not omega.is_dominant:
        raise RootSystemError(f"classify_weight needs a dominant weight, got {omega.coords}")
    if not any(omega.coords):
        return "zero"
    m = max_coroot_pairing(omega)
    if m <= 1:
        return "minuscule"
    if m > 2:
        return "not_small"
    if omega.ambient == omega.system.highest_short_root:
        return "quasi_minuscule"
    return "small_other"


def is_small(omega: Weight) -> bool:
    return classify_weight(omega) != "not_small"


def dominant_weights_below(lam: Weight) -> list[Weight]:
    """All dominant mu <= lam, ordered by increasing height then lexicographically.

    Covers in the dominance order on dominant weights are differences by positive
    roots, so closing under "subtract a positive root, keep if dominant" suffices.
    """
    if not lam.is_dominant:
        raise RootSystemError("dominant_weights_below needs a dominant weight")
    sysm = lam.system
    cache = sysm.__dict__.setdefault("_below_cache", {})
    if lam.coords in cache:
        return [Weight(sysm, c) for c in cache[lam.coords]]
    seen = {lam.coords}
    queue = deque([lam.coords])
    while queue:
        x = queue.popleft()
        for a in sysm.positive_root_weights:
            y = tuple(c - d for c, d in zip(x, a))
            if all(c >= 0 for c in y) and y not in seen:
                seen.add(y)
                queue.append(y)
    out = sorted(seen, key=lambda c: (sysm.height(c), c))
    cache[lam.coords] = out
    return [Weight(sysm, c) for c in out]


def saturated_set(omega: Weight) -> list[Weight]:
    """Union of the W-orbits of all dominant weights below omega."""
    if not omega.is_dominant:
        raise RootSystemError("saturated_set needs a dominant weight")
    out = []
    for mu in dominant_weights_below(omega):
        out.extend(orbit(mu).points)
    return out


# ----------------------------------------------------------------------
# Table of small fundamental weights


def small_fundamental_chains(ct: CartanType | str) -> dict:
    """Small fundamental weights grouped into dominance chains.

    Returns ``{"type", "chains": [{"weights": [i, ...], "quasi_minuscule_bottom": bool}],
    "num_weights", "num_chains"}`` with 1-based Bourbaki indices, each chain in
    increasing dominance order and chains sorted by their bottom index.
    """
    sysm = build_root_system(ct)
    small = [i for i in range(1, sysm.rank + 1) if is_small(sysm.fundamental(i))]
    # comparability components
    comp: dict[int, int] = {i: i for i in small}

    def find(i):
        while comp[i] != i:
            i = comp[i]
        return i

    for i in small:
        for j in small:
            if i < j:
                wi, wj = sysm.fundamental(i), sysm.fundamental(j)
                if dominance_leq(wi, wj) or dominance_leq(wj, wi):
                    comp[find(j)] = find(i)
    groups: dict[int, list[int]] = {}
    for i in small:
        groups.setdefault(find(i), []).append(i)
    chains = []
    for members in groups.values():
        import functools

        def cmp(a, b):
            if a == b:
                return 0
            if dominance_leq(sysm.fundamental(a), sysm.fundamental(b)):
                return -1
            if dominance_leq(sysm.fundamental(b), sysm.fundamental(a)):
                return 1
            raise RootSystemError(f"{ct}: w{a} and w{b} are incomparable inside one chain")

        members.sort(key=functools.cmp_to_key(cmp))
        bottom = sysm.fundamental(members[0])
        chains.append({"weights": members,
                       "quasi_minuscule_bottom": classify_weight(bottom) == "quasi_minuscule"})
    chains.sort(key=lambda c: c["weights"][0])
    return {"type": str(sysm.cartan_type), "chains": chains,
            "num_weights": len(small), "num_chains": len(chains)}


def format_chains(table: dict) -> str:
    """Render a chain table the way the printed table does, e.g. ``(0<)w1<w6, w7<w2``."""
    parts = []
    for ch in table["chains"]:
        s = "<".join(f"w{i}" for i in ch["weights"])
        parts.append(("(0<)" if ch["quasi_minuscule_bottom"] else "") + s)
    return ", ".join(parts)


# ----------------------------------------------------------------------
# Executable form of the appendix lemmas on small weights


def _subgroup_orbit(sysm: RootSystem, start: Vector, mirrors: list[Vector]) -> set[Vector]:
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for a in mirrors:
            k = sysm.coroot_pairing(v, a)
            if k:
                w = tuple(x - k * y for x, y in zip(v, a))
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return seen


def all_small_weights(sysm: RootSystem) -> list[Weight]:
    """Every small dominant weight (coordinates are bounded by 2)."""
    import itertools

    out = []
    for coords in itertools.product(range(3), repeat=sysm.rank):
        w = Weight(sysm, coords)
        if is_small(w):
            out.append(w)
    return sorted(out, key=lambda w: (sysm.height(w.coords), w.coords))


def verify_appendix_lemmas(omega: Weight, mode: str = "S_equals_R_dual") -> dict:
    """Check the orbit description and the uniqueness statements for small nu <= omega.

    ``omega`` lives in the weight lattice of S^vee; R is recovered from it and
    ``mode``.  The report lists every checked (nu, beta) case and any
    counterexamples.
    """
    lam_sys = omega.system
    if classify_weight(omega) == "not_small":
        raise RootSystemError(f"verify_appendix_lemmas needs a small weight, got {omega.coords}")
    R = lam_sys if mode == "S_equals_R_dual" else lam_sys.dual()

    def star(a: Vector) -> Vector:
        if mode == "S_equals_R":
            return a
        u = R.inner(a, a) / 2
        return tuple(x / u for x in a)

    def star_coroot(a: Vector) -> Vector:
        return R.coroot(star(a))

    w_amb = omega.ambient
    cases, failures = [], []
    for nu in dominant_weights_below(omega):
        nu_amb = nu.ambient
        fixes_both = [a for a in R.positive_roots
                      if R.inner(a, nu_amb) == 0 and R.inner(a, w_amb) == 0]
        R_nu_pos = [a for a in R.positive_roots if R.inner(a, nu_amb) == 0]

        def pairing(vec: Vector, a: Vector) -> Fraction:
            return R.inner(star(a), vec)

        # lemma on nu - alpha_*^vee
        for beta in R.positive_roots:
            if pairing(nu_amb, beta) != 2:
                continue
            target = {a for a in R.positive_roots
                      if pairing(nu_amb, a) == 2 and R.inner(a, a) == R.inner(beta, beta)}
            orb = _subgroup_orbit(R, beta, fixes_both)
            hits = []
            for a in orb:
                cand = tuple(x - y for x, y in zip(nu_amb, star_coroot(a)))
                c = lam_sys.coords_of(cand)
                if all(x >= 0 for x in c):
                    hits.append((a, c))
            ok_a = orb == target
            ok_b = len(hits) == 1 and classify_weight(Weight(lam_sys, hits[0][1])) != "not_small"
            case = {"lemma": "lower", "nu": nu.coords, "beta": R.root_coords_of(beta),
                    "orbit_matches": ok_a, "unique_dominant": ok_b,
                    "result": hits[0][1] if len(hits) == 1 else None}
            cases.append(case)
            if not (ok_a and ok_b):
                failures.append(case)
        # lemma on nu + alpha_*^vee
        if nu.coords == omega.coords:
            continue
        for beta in R_nu_pos:
            if pairing(w_amb, beta) != 2:
                continue
            target = {a for a in R_nu_pos
                      if pairing(w_amb, a) == 2 and R.inner(a, a) == R.inner(beta, beta)}
            orb = _subgroup_orbit(R, beta, fixes_both)
            hits = []
            for a in orb:
                cand = tuple(x + y for x, y in zip(nu_amb, star_coroot(a)))
                c = lam_sys.coords_of(cand)
                if all(x >= 0 for x in c):
                    hits.append((a, c))
            ok_a = orb == target
            ok_b = (len(hits) == 1
                    and dominance_leq(Weight(lam_sys, hits[0][1]), omega))
            case = {"lemma": "upper", "nu": nu.coords, "beta": R.root_coords_of(beta),
                    "orbit_matches": ok_a, "unique_dominant": ok_b,
                    "result": hits[0][1] if len(hits) == 1 else None}
            cases.append(case)
            if not (ok_a and ok_b):
                failures.append(case)
    return {"omega": omega.coords, "system": lam_sys.name, "mode": mode,
            "cases": cases, "failures": failures, "passed": not failures,
            "vacuous": not cases}
