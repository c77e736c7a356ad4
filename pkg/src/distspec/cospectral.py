"""Exact cospectrality, catalog census, parameter preservation and cousin constructions."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .canon import canonical_form, is_isomorphic
from .distances import all_pairs_distances
from .exact_poly import ExactPolynomial, variant_char_poly
from .graphs import Graph, parse_graph6, to_graph6
from .matrices import ALL_VARIANTS, MatrixVariant
from .structure import structural_report

V = MatrixVariant


class PropertyViolation(AssertionError):
    """A property that must hold for every input failed."""


class NotCospectral(ValueError):
    pass


def are_cospectral(g1: Graph, g2: Graph, variant: MatrixVariant) -> bool:
    """Exact equality of characteristic polynomials."""
    if g1.n != g2.n:
        return False
    return variant_char_poly(g1, variant) == variant_char_poly(g2, variant)


# --- census --------------------------------------------------------------------------

Key = tuple[Fraction, ...]


@dataclass
class CensusResult:
    order: int
    total: int
    variants: tuple[MatrixVariant, ...]
    classes: dict[MatrixVariant, list[tuple[ExactPolynomial, list[str]]]] = field(default_factory=dict)

    def count(self, v: MatrixVariant) -> int:
        return sum(len(members) for _, members in self.classes[v])

    @property
    def counts(self) -> dict[MatrixVariant, int]:
        return {v: self.count(v) for v in self.variants}

    def csv_row(self) -> str:
        return ",".join(str(x) for x in [self.order, self.total] + [self.count(v) for v in self.variants])

    def csv_header(self) -> str:
        return ",".join(["n", "connected_graphs"] + [v.name for v in self.variants])

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "total": self.total,
            "counts": {v.name: self.count(v) for v in self.variants},
            "classes": {v.name: [{"char_poly": p.to_json(), "graphs": members}
                                 for p, members in self.classes[v]] for v in self.variants},
        }


def _fingerprints(chunk: Sequence[str], variants: tuple[str, ...]) -> list[tuple[str, tuple[Key, ...]]]:
    out = []
    for s in chunk:
        g = parse_graph6(s)
        info = all_pairs_distances(g)
        out.append((s, tuple(variant_char_poly(info, V[name]).coeffs for name in variants)))
    return out


def census(catalog: Iterable[Graph], variants: Sequence[MatrixVariant] = ALL_VARIANTS,
           jobs: int = 1, chunk_size: int = 500) -> CensusResult:
    """Group an isomorph-free catalog by exact characteristic polynomial.

    Output is independent of ``jobs``: fingerprints are merged into tables
    and every class list is sorted before returning.
    """
    variants = tuple(variants)
    names = tuple(v.name for v in variants)
    codes = [to_graph6(g) for g in catalog]
    orders = {parse_graph6(s).n for s in codes[:1]}
    order = orders.pop() if orders else 0
    chunks = [codes[i:i + chunk_size] for i in range(0, len(codes), chunk_size)]
    if jobs > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_fingerprints, chunks, [names] * len(chunks)))
    else:
        parts = [_fingerprints(c, names) for c in chunks]
    tables: list[dict[Key, list[str]]] = [{} for _ in variants]
    for part in parts:
        for s, keys in part:
            for table, key in zip(tables, keys):
                table.setdefault(key, []).append(s)
    result = CensusResult(order, len(codes), variants)
    for v, table in zip(variants, tables):
        cls = [(ExactPolynomial(k), sorted(members)) for k, members in table.items() if len(members) > 1]
        cls.sort(key=lambda c: c[1][0])
        result.classes[v] = cls
    return result


# --- parameter preservation ----------------------------------------------------------

# Known status of each parameter under cospectrality: True preserved, False not, None open.
PRESERVATION_TABLE: dict[str, dict[MatrixVariant, bool | None]] = {
    "edges": {V.D: False, V.DQ: None, V.DL: False, V.DNL: False},
    "diameter": {V.D: False, V.DQ: None, V.DL: False, V.DNL: None},
    "girth": {V.D: False, V.DQ: None, V.DL: False, V.DNL: False},
    "planar": {V.D: False, V.DQ: False, V.DL: False, V.DNL: False},
    "wiener": {V.D: False, V.DQ: True, V.DL: True, V.DNL: False},
    "degree_sequence": {V.D: False, V.DQ: False, V.DL: False, V.DNL: False},
    "transmission_sequence": {V.D: False, V.DQ: False, V.DL: False, V.DNL: False},
    "transmission_regular": {V.D: None, V.DQ: True, V.DL: False, V.DNL: None},
    "complement_component_count": {V.D: False, V.DQ: False, V.DL: True, V.DNL: False},
}


@dataclass(frozen=True)
class PreservationReport:
    variant: MatrixVariant
    values: dict[str, tuple]                 # parameter -> (value for g1, value for g2)
    trace_equal: bool
    violations: tuple[str, ...]              # preserved parameters that differ

    @property
    def equal(self) -> dict[str, bool]:
        return {k: a == b for k, (a, b) in self.values.items()}

    def to_dict(self) -> dict:
        return {
            "variant": self.variant.name,
            "values": {k: [list(x) if isinstance(x, tuple) else x for x in pair]
                       for k, pair in self.values.items()},
            "equal": self.equal,
            "trace_equal": self.trace_equal,
            "violations": list(self.violations),
        }


def _trace(g: Graph, v: MatrixVariant) -> Fraction:
    info = all_pairs_distances(g)
    if v is V.D:
        return Fraction(0)
    if v in (V.DQ, V.DL):
        return Fraction(2 * info.wiener)
    return Fraction(g.n)


def preservation_report(g1: Graph, g2: Graph, variant: MatrixVariant) -> PreservationReport:
    if not are_cospectral(g1, g2, variant):
        raise NotCospectral("graphs are not cospectral for this variant")
    r1, r2 = structural_report(g1), structural_report(g2)
    values = {}
    for name in PRESERVATION_TABLE:
        if name == "wiener":
            values[name] = (all_pairs_distances(g1).wiener, all_pairs_distances(g2).wiener)
        else:
            values[name] = (getattr(r1, name), getattr(r2, name))
    trace_equal = _trace(g1, variant) == _trace(g2, variant)
    violations = tuple(k for k, (a, b) in values.items()
                       if PRESERVATION_TABLE[k][variant] is True and a != b)
    if not trace_equal:
        violations += ("trace",)
    return PreservationReport(variant, values, trace_equal, violations)


def determined_within_catalog(g: Graph, catalog: Iterable[Graph], variant: MatrixVariant) -> bool:
    """True iff no non-isomorphic catalog member shares the characteristic polynomial."""
    p = variant_char_poly(g, variant)
    own = canonical_form(g)
    for h in catalog:
        if h.n == g.n and variant_char_poly(h, variant) == p and canonical_form(h) != own:
            return False
    return True


# --- cousins -------------------------------------------------------------------------

WITHIN = "within"      # add v1v2 or v3v4
ACROSS = "across"      # add v1v3 or v2v4
FORMS = (WITHIN, ACROSS)


@dataclass(frozen=True)
class CousinSet:
    vertices: tuple[int, int, int, int]      # (v1, v2, v3, v4); pairs {v1,v2} and {v3,v4}

    @property
    def pairs(self) -> tuple[tuple[int, int], tuple[int, int]]:
        v1, v2, v3, v4 = self.vertices
        return (v1, v2), (v3, v4)


def is_cousin_set(g: Graph, vs: Sequence[int], dist=None) -> bool:
    if g.n < 5 or len(set(vs)) != 4:
        return False
    d = all_pairs_distances(g).dist if dist is None else dist
    v1, v2, v3, v4 = vs
    outside = [u for u in range(g.n) if u not in vs]
    if any(d[u][v1] != d[u][v2] or d[u][v3] != d[u][v4] for u in outside):
        return False
    return sum(int(d[u][v1]) for u in outside) == sum(int(d[u][v3]) for u in outside)


def find_cousins(g: Graph) -> list[CousinSet]:
    """All cousin sets, each listed once with v1 < v2, v3 < v4 and v1 < v3."""
    if g.n < 5:
        return []
    d = all_pairs_distances(g).dist
    out = []
    for quad in combinations(range(g.n), 4):
        a, b, c, e = quad
        for vs in ((a, b, c, e), (a, c, b, e), (a, e, b, c)):
            if is_cousin_set(g, vs, d):
                out.append(CousinSet(vs))
    return out


def _induced_edges(g: Graph, vs: Sequence[int]) -> frozenset:
    return frozenset(frozenset((x, y)) for x, y in combinations(vs, 2) if g.has_edge(x, y))


def _isomorphic_on(e1: frozenset, e2: frozenset, vs: Sequence[int]) -> bool:
    for perm in permutations(vs):
        m = dict(zip(vs, perm))
        if frozenset(frozenset(m[x] for x in e) for e in e1) == e2:
            return True
    return False


def cousin_construction(g: Graph, cs: CousinSet, form: str) -> tuple[Graph, Graph] | None:
    """The pair (G + e1, G + e2) when every hypothesis holds and the results differ.

    ``within`` adds an edge inside one pair; ``across`` adds v1v3 or v2v4,
    trying both orientations of the second pair.
    """
    vs = cs.vertices
    if not is_cousin_set(g, vs):
        return None
    if form == WITHIN:
        v1, v2, v3, v4 = vs
        if g.has_edge(v1, v2) or g.has_edge(v3, v4):
            return None
        g1, g2 = g.add_edge(v1, v2), g.add_edge(v3, v4)
        if not _isomorphic_on(_induced_edges(g1, vs), _induced_edges(g2, vs), vs):
            return None
        return None if is_isomorphic(g1, g2) else (g1, g2)
    if form == ACROSS:
        v1, v2, v3, v4 = vs
        for w3, w4 in ((v3, v4), (v4, v3)):
            pair = _across(g, (v1, v2, w3, w4))
            if pair is not None:
                return pair
        return None
    raise ValueError(f"unknown cousin form {form!r}")


def _across(g: Graph, vs: tuple[int, int, int, int]) -> tuple[Graph, Graph] | None:
    v1, v2, v3, v4 = vs
    if g.has_edge(v1, v3) or g.has_edge(v2, v4):
        return None
    g1, g2 = g.add_edge(v1, v3), g.add_edge(v2, v4)
    sigma = {v1: v4, v4: v1, v2: v3, v3: v2}
    mapped = frozenset(frozenset(sigma[x] for x in e) for e in _induced_edges(g1, vs))
    if mapped != _induced_edges(g2, vs):
        return None
    common12 = [x for x in range(g.n) if g.has_edge(x, v1) and g.has_edge(x, v2)]
    common34 = [y for y in range(g.n) if g.has_edge(y, v3) and g.has_edge(y, v4)]
    if not all(any(g.has_edge(x, y) for y in common34) for x in common12):
        return None
    if not all(any(g.has_edge(x, y) for x in common12) for y in common34):
        return None
    return None if is_isomorphic(g1, g2) else (g1, g2)


def cousin_pairs(g: Graph, forms: Sequence[str] = FORMS) -> list[tuple[str, CousinSet, Graph, Graph]]:
    out = []
    for cs in find_cousins(g):
        for form in forms:
            pair = cousin_construction(g, cs, form)
            if pair is not None:
                out.append((form, cs, *pair))
    return out
