"""Exact characteristic polynomials, inertia and coefficient-sequence analytics."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

from .matrices import MatrixVariant, RationalMatrix, _as_info, variant_matrix


class NotSupported(ValueError):
    pass


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class ExactPolynomial:
    """Polynomial with rational coefficients, constant term first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        c = [_frac(x) for x in coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c) if c else (Fraction(0),)

    # construction
    @classmethod
    def x(cls) -> "ExactPolynomial":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "ExactPolynomial":
        p = cls([1])
        for r in roots:
            p = p * cls([-_frac(r), 1])
        return p

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "ExactPolynomial":
        return cls(Fraction(s) for s in data)

    # basic queries
    @property
    def degree(self) -> int:
        return -1 if self.is_zero() else len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1]

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, ExactPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, x):
        exact = isinstance(x, (int, Fraction))
        acc = Fraction(0) if exact else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + (c if exact else float(c))
        return acc

    # arithmetic
    def __add__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return ExactPolynomial(self[i] + other[i] for i in range(n))

    def __neg__(self) -> "ExactPolynomial":
        return ExactPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "ExactPolynomial":
        if not isinstance(other, ExactPolynomial):
            f = _frac(other)
            return ExactPolynomial(c * f for c in self.coeffs)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return ExactPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ExactPolynomial":
        out = ExactPolynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: "ExactPolynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading
        if self.degree < dq:
            return ExactPolynomial([0]), self
        quo = [Fraction(0)] * (self.degree - dq + 1)
        for k in range(self.degree - dq, -1, -1):
            q = rem[k + dq] / lead
            quo[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return ExactPolynomial(quo), ExactPolynomial(rem[:dq] or [0])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "ExactPolynomial":
        return self * (1 / self.leading) if not self.is_zero() else self

    def derivative(self) -> "ExactPolynomial":
        return ExactPolynomial([k * c for k, c in enumerate(self.coeffs)][1:] or [0])

    def gcd(self, other: "ExactPolynomial") -> "ExactPolynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def substitute_neg(self) -> "ExactPolynomial":
        """p(-x)."""
        return ExactPolynomial(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs))

    def shift(self, c) -> "ExactPolynomial":
        """p(x + c), by Horner."""
        step = ExactPolynomial([c, 1])
        out = ExactPolynomial([0])
        for a in reversed(self.coeffs):
            out = out * step + ExactPolynomial([a])
        return out

    # output
    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __str__(self) -> str:
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = "" if (a == 1 and k > 0) else (str(a) if a.denominator == 1 else f"({a})")
            if k > 0:
                body += "x" if k == 1 else f"x^{k}"
            terms.append((sign, body))
        if not terms:
            return "0"
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return " ".join([head] + [f"{s} {b}" for s, b in terms[1:]])

    def __repr__(self) -> str:
        return f"ExactPolynomial({self})"


# --- characteristic polynomials ----------------------------------------------------

def berkowitz(a: Sequence[Sequence[int]]) -> list[int]:
    """Coefficients of det(xI - A), highest degree first, without division."""
    n = len(a)
    if n == 0:
        return [1]
    vect = [1, -a[0][0]]
    for r in range(1, n):
        row = a[r][:r]
        col = [a[i][r] for i in range(r)]
        sub = [a[i][:r] for i in range(r)]
        toeplitz = [1, -a[r][r]]
        for _ in range(r):
            toeplitz.append(-sum(x * y for x, y in zip(row, col)))
            col = [sum(x * y for x, y in zip(s, col)) for s in sub]
        new = []
        for i in range(r + 2):
            new.append(sum(toeplitz[i - j] * vect[j] for j in range(max(0, i - r - 1), min(i, r) + 1)))
        vect = new
    return vect


def char_poly_exact(m: RationalMatrix) -> ExactPolynomial:
    """det(xI - M) exactly; for a common denominator q, coefficient k is c_k / q^(n-k)."""
    n = m.n
    hi = berkowitz(m.num)
    coeffs = [Fraction(hi[n - k], m.den ** (n - k)) for k in range(n + 1)]
    return ExactPolynomial(coeffs)


def variant_char_poly(x, v: MatrixVariant) -> ExactPolynomial:
    return char_poly_exact(variant_matrix(x, v))


def generalized_char_poly(info, r) -> ExactPolynomial:
    """det(xI - D + rT)."""
    info = _as_info(info)
    r = _frac(r)
    t = info.transmissions
    rows = [[Fraction(x) - (r * t[i] if i == j else 0) for j, x in enumerate(row)]
            for i, row in enumerate(info.dist.tolist())]
    return char_poly_exact(RationalMatrix.from_fractions(rows))


def squarefree_decomposition(p: ExactPolynomial) -> list[tuple[ExactPolynomial, int]]:
    """Yun's algorithm: monic squarefree factors with their multiplicities."""
    p = p.monic()
    out = []
    if p.degree < 1:
        return out
    dp = p.derivative()
    a = p.gcd(dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    k = 1
    while b.degree > 0:
        a = b.gcd(d)
        if a.degree > 0:
            out.append((a, k))
        b = b // a
        c = d // a
        d = c - b.derivative()
        k += 1
    return out


# --- inertia ----------------------------------------------------------------------

@dataclass(frozen=True)
class Inertia:
    n_plus: int
    n_minus: int
    n_zero: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n_plus, self.n_minus, self.n_zero)

    @property
    def optimistic(self) -> bool:
        return self.n_plus > self.n_minus


def inertia_exact(p: ExactPolynomial, real_rooted: bool = True) -> Inertia:
    """Descartes' rule, exact for real-rooted polynomials."""
    if not real_rooted:
        raise NotSupported("inertia needs a real-rooted polynomial; use the numeric spectrum")
    c = p.coeffs
    zero = 0
    while zero < len(c) - 1 and c[zero] == 0:
        zero += 1
    signs = [x > 0 for x in c if x != 0]
    plus = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    return Inertia(plus, p.degree - zero - plus, zero)


# --- coefficient sequences --------------------------------------------------------

@dataclass(frozen=True)
class CoefficientReport:
    sequence: tuple[Fraction, ...]
    offset: int                     # index of sequence[0] among the coefficients
    is_log_concave: bool
    is_unimodal: bool
    peak_index: int                 # absolute coefficient index of the first maximum
    sign_pattern: str
    peak_bounds: tuple[int, int] | None = None
    peak_in_bounds: bool | None = None

    def to_dict(self) -> dict:
        return {
            "sequence": [str(x) for x in self.sequence],
            "offset": self.offset,
            "is_log_concave": self.is_log_concave,
            "is_unimodal": self.is_unimodal,
            "peak_index": self.peak_index,
            "sign_pattern": self.sign_pattern,
            "peak_bounds": list(self.peak_bounds) if self.peak_bounds else None,
            "peak_in_bounds": self.peak_in_bounds,
        }


def is_log_concave(a: Sequence) -> bool:
    return all(a[j] * a[j] >= a[j - 1] * a[j + 1] for j in range(1, len(a) - 1))


def is_unimodal(a: Sequence) -> bool:
    """Weakly rises then weakly falls."""
    j = 0
    while j + 1 < len(a) and a[j] <= a[j + 1]:
        j += 1
    while j + 1 < len(a) and a[j] >= a[j + 1]:
        j += 1
    return j >= len(a) - 1


def peak_index(a: Sequence) -> int:
    best = max(a)
    return next(i for i, x in enumerate(a) if x == best)


def tree_peak_bounds(n: int, diameter: int) -> tuple[int, int]:
    """Known bracket for the peak of the normalized tree sequence."""
    return (n - 2) // (1 + diameter), -(-2 * n // 3)


def shor_peak_range(n: int) -> tuple[int, int]:
    """[floor(n/2), ceil((1 - 1/sqrt 5) n)], computed exactly."""
    # n/sqrt(5) is irrational for n > 0, so the ceiling is n - floor(n/sqrt 5)
    return n // 2, n - isqrt(n * n // 5)


MODES = ("raw", "absolute", "tree_normalized")


def coefficient_analytics(p: ExactPolynomial, mode: str = "absolute",
                          span: tuple[int, int] | None = None,
                          diameter: int | None = None) -> CoefficientReport:
    """Analyse c_lo..c_hi of p (inclusive).

    ``tree_normalized`` uses d_k = |c_k| / 2^(n-k-2) for k = 0..n-2; pass the
    diameter to get the peak bracket for trees.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    n = p.degree
    if mode == "tree_normalized":
        if n < 3:
            raise ValueError("normalized coefficients need order at least 3")
        lo, hi = span if span is not None else (0, n - 2)
        if hi > n - 2:
            raise ValueError("normalized coefficients stop at index n-2")
    else:
        lo, hi = span if span is not None else (0, n)
    if not 0 <= lo <= hi <= n:
        raise ValueError("index span out of range")
    raw = [p[k] for k in range(lo, hi + 1)]
    if mode == "raw":
        seq = raw
    elif mode == "absolute":
        seq = [abs(x) for x in raw]
    else:
        seq = [abs(x) / 2 ** (n - k - 2) for k, x in zip(range(lo, hi + 1), raw)]
    pattern = "".join("+" if x > 0 else "-" if x < 0 else "0" for x in raw)
    peak = lo + peak_index(seq)
    bounds = inside = None
    if mode == "tree_normalized" and diameter is not None:
        bounds = tree_peak_bounds(n, diameter)
        inside = bounds[0] <= peak <= bounds[1]
    return CoefficientReport(tuple(seq), lo, is_log_concave(seq), is_unimodal(seq),
                             peak, pattern, bounds, inside)
