"""Truncated Laurent series in one variable eps with exact rational coefficients.

Used to specialize generic-parameter constructions at t = q^k: the generators
are moved to T (1 + eps), every intermediate quantity is carried as a series
(so removable singularities of individual terms cause no trouble), and the
result is read off at eps = 0.  Each element tracks its absolute precision;
reading a value whose constant term is not determined raises instead of
guessing.
"""

from __future__ import annotations

from gmpy2 import mpq

__all__ = ["LaurentSeries", "PrecisionError", "limit_at_zero", "PRECISIONS"]

# working precisions tried in turn; a PrecisionError moves on to the next one
PRECISIONS = (8, 16, 32)

INF = 10**9


class PrecisionError(ArithmeticError):
    pass


class LaurentSeries:
    """eps^v * (c[0] + c[1] eps + ...) + O(eps^(v + len(c))), with c[0] != 0.

    The zero element has ``c == []`` and ``v`` equal to its absolute precision.
    """

    __slots__ = ("v", "c", "N")

    def __init__(self, v: int, c: list, N: int):
        self.N = N
        i = 0
        while i < len(c) and c[i] == 0:
            i += 1
        c = c[i:]
        v += i
        if len(c) > N:
            c = c[:N]
        self.v, self.c = v, c

    # -- constructors --------------------------------------------------
    @classmethod
    def generator(cls, x, N: int) -> "LaurentSeries":
        """x (1 + eps)."""
        x = mpq(x)
        return cls(0, [x, x] + [mpq(0)] * (N - 2), N)

    def _coerce(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return other
        x = mpq(other)
        if x == 0:
            return LaurentSeries(INF, [], self.N)
        return LaurentSeries(0, [x] + [mpq(0)] * (self.N - 1), self.N)

    @property
    def aprec(self) -> int:
        return self.v + len(self.c)

    def is_zero(self) -> bool:
        return not self.c

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        b = self._coerce(other)
        a = self
        top = min(a.aprec, b.aprec)
        if a.is_zero() and b.is_zero():
            return LaurentSeries(top, [], self.N)
        lo = min(x.v for x in (a, b) if not x.is_zero())
        lo = min(lo, top)
        out = [mpq(0)] * (top - lo)
        for x in (a, b):
            for i, ci in enumerate(x.c):
                j = x.v + i - lo
                if j >= len(out):
                    break
                out[j] += ci
        res = LaurentSeries(lo, out, self.N)
        if res.is_zero():
            res.v = top
        return res

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.v, [-x for x in self.c], self.N)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        b = self._coerce(other)
        a = self
        if a.is_zero() or b.is_zero():
            # O(eps^p) times something of valuation w is O(eps^(p+w))
            if a.is_zero() and b.is_zero():
                return LaurentSeries(min(INF, a.v + b.v), [], self.N)
            z, nz = (a, b) if a.is_zero() else (b, a)
            return LaurentSeries(min(INF, z.v + nz.v), [], self.N)
        n = min(len(a.c), len(b.c))
        ac, bc = a.c, b.c
        out = []
        for k in range(n):
            s = mpq(0)
            for i in range(k + 1):
                s += ac[i] * bc[k - i]
            out.append(s)
        return LaurentSeries(a.v + b.v, out, self.N)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentSeries":
        if self.is_zero():
            raise ZeroDivisionError("division by a series that vanishes to the working precision")
        c = self.c
        n = len(c)
        inv0 = 1 / c[0]
        out = [inv0]
        for k in range(1, n):
            s = mpq(0)
            for i in range(1, k + 1):
                s += c[i] * out[k - i]
            out.append(-s * inv0)
        return LaurentSeries(-self.v, out, self.N)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        n = int(n)
        if n < 0:
            return self.inverse() ** (-n)
        result = self._coerce(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        try:
            return (self - other).is_zero()
        except TypeError:
            return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    def at_zero(self):
        """The value at eps = 0; raises when it is a pole or not determined."""
        if self.is_zero():
            if self.v > 0:
                return mpq(0)
            raise PrecisionError(f"constant term lost (only known to O(eps^{self.v}))")
        if self.v > 0:
            return mpq(0)
        if self.v < 0:
            raise ZeroDivisionError(f"pole of order {-self.v} at eps = 0")
        return self.c[0]

    def __repr__(self):
        return f"LaurentSeries(v={self.v}, c={[str(x) for x in self.c[:4]]}..., aprec={self.aprec})"


def limit_at_zero(x):
    return x.at_zero() if isinstance(x, LaurentSeries) else x
