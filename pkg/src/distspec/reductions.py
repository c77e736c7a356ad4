"""Twin classes, equitable partitions and quotient-based spectrum assembly."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Sequence

from .distances import all_pairs_distances
from .exact_poly import ExactPolynomial, char_poly_exact
from .graphs import Graph
from .matrices import MatrixVariant, RationalMatrix, variant_matrix
from .spectra import Spectrum, roots_with_multiplicity

SINGLETON = "singleton"
ADJACENT = "adjacent_twins"
INDEPENDENT = "independent_twins"


class NotEquitable(ValueError):
    pass


@dataclass(frozen=True)
class TwinPartition:
    classes: tuple[tuple[int, ...], ...]
    class_type: tuple[str, ...]
    class_transmission: tuple[int, ...]

    @property
    def nontrivial(self) -> list[int]:
        return [i for i, c in enumerate(self.classes) if len(c) > 1]

    def to_dict(self) -> dict:
        return {"classes": [list(c) for c in self.classes],
                "class_type": list(self.class_type),
                "class_transmission": list(self.class_transmission)}


def _ordered(classes) -> list[tuple[int, ...]]:
    return sorted((tuple(sorted(c)) for c in classes), key=lambda c: (len(c), c[0]))


def find_twins(g: Graph) -> TwinPartition:
    """Maximal classes of adjacent twins (equal closed neighbourhoods) and
    independent twins (equal open neighbourhoods); everything else is a singleton."""
    if g.n < 3:
        raise ValueError("twin analysis needs order at least 3")
    open_groups: dict[int, list[int]] = {}
    closed_groups: dict[int, list[int]] = {}
    for v in range(g.n):
        open_groups.setdefault(g.adj[v], []).append(v)
        closed_groups.setdefault(g.adj[v] | (1 << v), []).append(v)
    kind: dict[tuple[int, ...], str] = {}
    covered: set[int] = set()
    for groups, label in ((open_groups, INDEPENDENT), (closed_groups, ADJACENT)):
        for members in groups.values():
            if len(members) > 1:
                kind[tuple(members)] = label
                covered.update(members)
    for v in range(g.n):
        if v not in covered:
            kind[(v,)] = SINGLETON
    info = all_pairs_distances(g)
    classes = _ordered(kind)
    types = tuple(kind[c] for c in classes)
    trans = tuple(info.transmissions[c[0]] for c in classes)
    return TwinPartition(tuple(classes), types, trans)


def twin_eigenvalue(variant: MatrixVariant, kind: str, t: int) -> Fraction:
    """Eigenvalue carried by e_u - e_v for a twin pair with transmission t."""
    if t <= 0:
        raise ValueError("transmission must be positive")
    if kind not in (ADJACENT, INDEPENDENT):
        raise ValueError(f"unknown twin type {kind!r}")
    gap = 1 if kind == ADJACENT else 2
    if variant is MatrixVariant.D:
        return Fraction(-gap)
    if variant is MatrixVariant.DQ:
        return Fraction(t - gap)
    if variant is MatrixVariant.DL:
        return Fraction(t + gap)
    return Fraction(t + gap, t)


@dataclass(frozen=True)
class QuotientMatrix:
    B: RationalMatrix
    S: tuple[tuple[int, ...], ...]          # n x p characteristic matrix

    def check_commutes(self, m: RationalMatrix) -> bool:
        """MS = SB, exactly."""
        n, p = m.n, self.B.n
        ms = [[sum(m.num[i][k] for k in range(n) if self.S[k][j]) * self.B.den
               for j in range(p)] for i in range(n)]
        sb = [[sum(self.S[i][k] * self.B.num[k][j] for k in range(p)) * m.den
               for j in range(p)] for i in range(n)]
        return ms == sb


def quotient_matrix(m: RationalMatrix, classes: Sequence[Sequence[int]]) -> QuotientMatrix:
    """Quotient of an equitable partition; raises NotEquitable otherwise."""
    n = m.n
    owner = [-1] * n
    for j, c in enumerate(classes):
        for v in c:
            if owner[v] != -1:
                raise ValueError("classes overlap")
            owner[v] = j
    if -1 in owner:
        raise ValueError("classes do not cover the vertex set")
    p = len(classes)
    rows = []
    for i, c in enumerate(classes):
        sums = None
        for v in c:
            s = [0] * p
            for w in range(n):
                s[owner[w]] += m.num[v][w]
            if sums is None:
                sums = s
            elif s != sums:
                raise NotEquitable(f"block row sums differ inside class {i}")
        rows.append(sums)
    S = tuple(tuple(1 if owner[v] == j else 0 for j in range(p)) for v in range(n))
    return QuotientMatrix(RationalMatrix(tuple(tuple(r) for r in rows), m.den), S)


@dataclass(frozen=True)
class QuotientAssembly:
    quotient: QuotientMatrix
    twin_eigenvalues: tuple[tuple[Fraction, int], ...]   # (value, multiplicity)
    poly: ExactPolynomial

    @cached_property
    def spectrum(self) -> Spectrum:
        pairs = roots_with_multiplicity(self.poly)
        return Spectrum.from_values(z for z, k in pairs for _ in range(k))


def twin_vectors_ok(m: RationalMatrix, part: TwinPartition, variant: MatrixVariant) -> bool:
    """Every e_u - e_v inside a twin class is an exact eigenvector with the predicted value."""
    for c, kind, t in zip(part.classes, part.class_type, part.class_transmission):
        if len(c) < 2:
            continue
        lam = twin_eigenvalue(variant, kind, t)
        u = c[0]
        for v in c[1:]:
            for i in range(m.n):
                mw = Fraction(m.num[i][u] - m.num[i][v], m.den)
                expect = lam * ((i == u) - (i == v))
                if mw != expect:
                    return False
    return True


def quotient_spectrum(m: RationalMatrix, part: TwinPartition,
                      variant: MatrixVariant) -> QuotientAssembly:
    """p_M = p_B * prod (x - lambda_j)^(n_j - 1) over twin classes."""
    q = quotient_matrix(m, part.classes)
    if not q.check_commutes(m):
        raise NotEquitable("MS != SB")
    poly = char_poly_exact(q.B)
    twins = []
    for c, kind, t in zip(part.classes, part.class_type, part.class_transmission):
        if len(c) > 1:
            lam = twin_eigenvalue(variant, kind, t)
            twins.append((lam, len(c) - 1))
            poly = poly * ExactPolynomial([-lam, 1]) ** (len(c) - 1)
    return QuotientAssembly(q, tuple(twins), poly)


def twin_quotient_poly(g: Graph, variant: MatrixVariant) -> ExactPolynomial:
    m = variant_matrix(g, variant)
    return quotient_spectrum(m, find_twins(g), variant).poly
