"""The four distance-matrix variants, determinant formulas and the
transmission-regular spectrum transform."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from .distances import DistanceInfo, all_pairs_distances
from .graphs import Digraph, Graph


class MatrixVariant(enum.Enum):
    D = "D"
    DQ = "DQ"
    DL = "DL"
    DNL = "DNL"

    @classmethod
    def parse(cls, name: str) -> "MatrixVariant":
        try:
            return cls[name.upper()]
        except KeyError:
            raise ValueError(f"unknown matrix variant {name!r}; choose from D, DQ, DL, DNL") from None


ALL_VARIANTS = tuple(MatrixVariant)


@dataclass(frozen=True)
class RationalMatrix:
    """Exact matrix stored as integer numerators over one positive common denominator."""
    num: tuple[tuple[int, ...], ...]
    den: int = 1

    def __post_init__(self) -> None:
        if self.den <= 0:
            raise ValueError("denominator must be positive")
        if any(len(r) != len(self.num) for r in self.num):
            raise ValueError("matrix must be square")

    @classmethod
    def from_fractions(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        fr = [[Fraction(x) for x in r] for r in rows]
        den = lcm(1, *(x.denominator for r in fr for x in r))
        return cls(tuple(tuple(int(x * den) for x in r) for r in fr), den)

    @classmethod
    def from_int_array(cls, a) -> "RationalMatrix":
        return cls(tuple(tuple(int(x) for x in r) for r in a), 1)

    @property
    def n(self) -> int:
        return len(self.num)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return Fraction(self.num[i][j], self.den)

    def rows(self) -> list[list[Fraction]]:
        return [[Fraction(x, self.den) for x in r] for r in self.num]

    def to_float(self) -> np.ndarray:
        return np.array(self.num, dtype=float) / self.den

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(tuple(zip(*self.num)), self.den)

    def is_symmetric(self) -> bool:
        return self.num == tuple(zip(*self.num))

    def row_sums(self) -> list[Fraction]:
        return [Fraction(sum(r), self.den) for r in self.num]

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix.from_fractions(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows(), other.rows())])

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix.from_fractions(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows(), other.rows())])

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        prod = [[sum(a * b for a, b in zip(r, c)) for c in zip(*other.num)] for r in self.num]
        return RationalMatrix.from_fractions(
            [[Fraction(x, self.den * other.den) for x in r] for r in prod])

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows()]

    def __repr__(self) -> str:
        return f"RationalMatrix(n={self.n}, den={self.den})"


def _as_info(x: DistanceInfo | Graph | Digraph) -> DistanceInfo:
    return x if isinstance(x, DistanceInfo) else all_pairs_distances(x)


def variant_matrix(info: DistanceInfo | Graph | Digraph, v: MatrixVariant) -> RationalMatrix:
    """D, T+D, T-D, or the exact DNL surrogate T^-1 (T-D)."""
    info = _as_info(info)
    dist = info.dist.tolist()
    t = info.transmissions
    n = info.n
    if v is MatrixVariant.D:
        return RationalMatrix(tuple(tuple(r) for r in dist))
    if v is MatrixVariant.DQ:
        return RationalMatrix(tuple(tuple(t[i] + x if i == j else x for j, x in enumerate(r))
                                    for i, r in enumerate(dist)))
    lap = [[t[i] if i == j else -x for j, x in enumerate(r)] for i, r in enumerate(dist)]
    if v is MatrixVariant.DL:
        return RationalMatrix(tuple(tuple(r) for r in lap))
    if any(x <= 0 for x in t):
        raise ValueError("normalized Laplacian needs positive transmissions (order >= 2)")
    den = lcm(*t)
    return RationalMatrix(tuple(tuple(x * (den // t[i]) for x in lap[i]) for i in range(n)), den)


def variant_float(info: DistanceInfo | Graph | Digraph, v: MatrixVariant) -> np.ndarray:
    """Floating matrix for numerics; DNL is the symmetric T^-1/2 (T-D) T^-1/2."""
    info = _as_info(info)
    if v is not MatrixVariant.DNL:
        return variant_matrix(info, v).to_float()
    t = np.asarray(info.transmissions, dtype=float)
    if np.any(t <= 0):
        raise ValueError("normalized Laplacian needs positive transmissions (order >= 2)")
    lap = np.diag(t) - info.dist
    s = 1.0 / np.sqrt(t)
    return lap * np.outer(s, s)


def diam2_distance_from_adjacency(g: Graph | Digraph) -> RationalMatrix:
    """2(J - I) - A, valid exactly when the diameter is at most 2."""
    a = g.adjacency_matrix().astype(np.int64)
    n = g.n
    d = 2 * (np.ones((n, n), dtype=np.int64) - np.eye(n, dtype=np.int64)) - a
    if n > 1:
        # diameter <= 2 iff every non-adjacent pair has a common (out->in) neighbour
        reach = a + a @ a
        off = ~np.eye(n, dtype=bool)
        if np.any(reach[off] == 0):
            raise ValueError("diameter exceeds 2")
    return RationalMatrix.from_int_array(d)


def transform_tr_spectrum(dist_spec: Iterable, t: int, target: MatrixVariant) -> list:
    """Map a distance spectrum of a t-transmission-regular graph to another variant.

    Works with any numeric type closed under the field operations (Fraction,
    float, complex, Surd).
    """
    if t <= 0:
        raise ValueError("transmission must be positive")
    vals = list(dist_spec)
    tt = Fraction(t)
    if target is MatrixVariant.D:
        out = vals
    elif target is MatrixVariant.DQ:
        out = [x + tt for x in vals]
    elif target is MatrixVariant.DL:
        out = [-x + tt for x in vals]
    else:
        out = [1 - x / tt for x in vals]
    return sorted(out, key=_sort_key)


def _sort_key(x):
    z = complex(x)
    return (round(z.real, 12), round(z.imag, 12))


# --- determinants ------------------------------------------------------------------

def det_bareiss(a: Sequence[Sequence[int]]) -> int:
    """Fraction-free Gaussian elimination on an integer matrix."""
    m = [list(r) for r in a]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            f = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pivot - f * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def determinant(m: RationalMatrix) -> Fraction:
    return Fraction(det_bareiss(m.num), m.den ** m.n)


def adjugate(m: RationalMatrix) -> list[list[Fraction]]:
    """Transpose of the cofactor matrix, from exact minors."""
    n = m.n
    if n == 1:
        return [[Fraction(1)]]
    scale = m.den ** (n - 1)
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [r[:j] + r[j + 1:] for k, r in enumerate(m.num) if k != i]
            out[j][i] = Fraction((-1) ** (i + j) * det_bareiss(minor), scale)
    return out


def cofactor_sum(m: RationalMatrix) -> Fraction:
    """cof(M): the sum of all cofactors of M."""
    return sum((x for r in adjugate(m) for x in r), Fraction(0))


def distance_determinant(g: Graph) -> int:
    return det_bareiss(variant_matrix(g, MatrixVariant.D).num)


def is_tree(g: Graph) -> bool:
    return g.num_edges == g.n - 1 and g.is_connected()


def det_distance_tree(tree: Graph) -> int:
    """Closed form for trees: depends only on the order."""
    if tree.n < 2 or not is_tree(tree):
        raise ValueError("expected a tree with at least two vertices")
    n = tree.n
    return (-1) ** (n - 1) * (n - 1) * 2 ** (n - 2)


def det_via_blocks(g: Graph) -> Fraction:
    """det D(G) from the blocks: sum_i det D(G_i) * prod_{j != i} cof D(G_j)."""
    from .structure import biconnected_blocks

    if not g.is_connected():
        raise ValueError("graph is not connected")
    blocks = [variant_matrix(b, MatrixVariant.D) for b, _ in biconnected_blocks(g)]
    dets = [determinant(b) for b in blocks]
    cofs = [cofactor_sum(b) for b in blocks]
    total = Fraction(0)
    for i, d in enumerate(dets):
        term = d
        for j, c in enumerate(cofs):
            if j != i:
                term *= c
        total += term
    return total
