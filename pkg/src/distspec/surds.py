"""Exact real quadratic surds a + b*sqrt(s)."""
from __future__ import annotations

import math
from fractions import Fraction


def _squarefree(s: int) -> tuple[int, int]:
    """s = k^2 * r with r squarefree; returns (k, r)."""
    k, r, f = 1, s, 2
    while f * f <= r:
        while r % (f * f) == 0:
            r //= f * f
            k *= f
        f += 1
    return k, r


class Surd:
    """Exact a + b*sqrt(s) with rational a, b and squarefree integer s >= 1."""

    __slots__ = ("a", "b", "s")

    def __init__(self, a=0, b=0, s: int = 1):
        a, b = Fraction(a), Fraction(b)
        if s < 0:
            raise ValueError("negative radicand")
        k, r = _squarefree(s) if s > 0 else (0, 1)
        b *= k
        if r == 1 or b == 0:
            a, b, r = a + b, Fraction(0), 1
        self.a, self.b, self.s = a, b, r

    @classmethod
    def sqrt(cls, q) -> "Surd":
        """sqrt of a non-negative rational."""
        q = Fraction(q)
        return cls(0, Fraction(1, q.denominator), q.numerator * q.denominator)

    def _coerce(self, o) -> "Surd":
        if isinstance(o, Surd):
            if o.s != self.s and o.b and self.b:
                raise ValueError("surds with different radicands")
            return o
        return Surd(o)

    def __add__(self, o):
        o = self._coerce(o)
        return Surd(self.a + o.a, self.b + o.b, self.s if self.b else o.s)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.s)

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._coerce(o)
        s = self.s if self.b else o.s
        return Surd(self.a * o.a + self.b * o.b * s, self.a * o.b + self.b * o.a, s)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._coerce(o)
        if o.b:
            conj = Surd(o.a, -o.b, o.s)
            return (self * conj) / (o * conj).a
        return Surd(self.a / o.a, self.b / o.a, self.s)

    def __rtruediv__(self, o):
        return Surd(o) / self

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        diff = self.a * self.a - self.b * self.b * self.s
        return sa if diff > 0 else (sb if diff < 0 else 0)

    def __eq__(self, o):
        try:
            return (self - o).sign() == 0
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, o):
        return (self - o).sign() < 0

    def __hash__(self):
        return hash((self.a, self.b, self.s))

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.s)

    def __complex__(self):
        return complex(float(self))

    def is_rational(self) -> bool:
        return self.b == 0

    def __str__(self):
        """'p/q' when rational, else '(p+q√s)/r' with integers p, q, r."""
        if not self.b:
            return str(self.a)
        r = math.lcm(self.a.denominator, self.b.denominator)
        p, q = int(self.a * r), int(self.b * r)
        mag = abs(q)
        root = f"√{self.s}" if mag == 1 else f"{mag}√{self.s}"
        body = (f"{p}{'+' if q > 0 else '-'}{root}" if p else (root if q > 0 else f"-{root}"))
        return body if r == 1 else f"({body})/{r}"

    __repr__ = __str__
