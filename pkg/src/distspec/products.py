"""Cartesian and lexicographic products and their closed-form distance spectra.

Product vertex (u, u') gets index ``u * n' + u'`` (left operand major), so the
distance matrix of a Cartesian product is ``D (x) J + J (x) D'`` blockwise.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .distances import DisconnectedInput, all_pairs_distances
from .exact_poly import char_poly_exact
from .graphs import Digraph, Graph
from .matrices import MatrixVariant, RationalMatrix, transform_tr_spectrum
from .spectra import jacobi_eigh, rational_spectrum, roots_with_multiplicity

CARTESIAN = "cartesian"
LEXICOGRAPHIC = "lexicographic"


class HypothesisError(ValueError):
    """The operands do not satisfy the hypotheses of the closed form."""


def _pair_index(u: int, up: int, n2: int) -> int:
    return u * n2 + up


def product_graph(kind: str, left: Graph | Digraph, right: Graph | Digraph) -> Graph | Digraph:
    directed = isinstance(left, Digraph) or isinstance(right, Digraph)
    if directed:
        left = left.to_digraph() if isinstance(left, Graph) else left
        right = right.to_digraph() if isinstance(right, Graph) else right
    n, n2 = left.n, right.n
    adj = [0] * (n * n2)
    for u in range(n):
        for up in range(n2):
            i = _pair_index(u, up, n2)
            m = 0
            if kind == CARTESIAN:
                for w in range(n2):
                    if right.adj[up] >> w & 1:
                        m |= 1 << _pair_index(u, w, n2)
                for v in range(n):
                    if left.adj[u] >> v & 1:
                        m |= 1 << _pair_index(v, up, n2)
            elif kind == LEXICOGRAPHIC:
                for v in range(n):
                    if left.adj[u] >> v & 1:
                        m |= ((1 << n2) - 1) << (v * n2)
                for w in range(n2):
                    if right.adj[up] >> w & 1:
                        m |= 1 << _pair_index(u, w, n2)
            else:
                raise ValueError(f"unknown product kind {kind!r}")
            adj[i] = m
    return Digraph(n * n2, tuple(adj)) if directed else Graph(n * n2, tuple(adj))


def cartesian_power(g: Graph | Digraph, ell: int) -> Graph | Digraph:
    out = g
    for _ in range(ell - 1):
        out = product_graph(CARTESIAN, out, g)
    return out


# --- closed forms --------------------------------------------------------------------

def _drop_one(values: list, target) -> list:
    k = min(range(len(values)), key=lambda i: abs(complex(values[i]) - complex(target)))
    if abs(complex(values[k]) - complex(target)) > 1e-6 * max(1.0, abs(complex(target))):
        raise HypothesisError(f"{target} is not in the supplied spectrum")
    return values[:k] + values[k + 1:]


def cartesian_spectrum_tr(left_spec: Sequence, right_spec: Sequence, n: int, n2: int,
                          t, t2) -> list:
    """D-spectrum of a product of transmission-regular operands."""
    if len(left_spec) != n or len(right_spec) != n2:
        raise ValueError("spectrum sizes do not match the orders")
    rest = _drop_one(list(left_spec), t)
    rest2 = _drop_one(list(right_spec), t2)
    out = [n * t2 + n2 * t]
    out += [n2 * x for x in rest]
    out += [n * x for x in rest2]
    out += [0] * ((n - 1) * (n2 - 1))
    return out


def lexicographic_spectrum(left_dist_spec: Sequence, right_adj_spec: Sequence,
                           n: int, n2: int, k2: int) -> list:
    """D-spectrum when the right operand is k'-(out-)regular."""
    if len(left_dist_spec) != n or len(right_adj_spec) != n2:
        raise ValueError("spectrum sizes do not match the orders")
    rest = _drop_one(list(right_adj_spec), k2)
    out = [n2 * x + 2 * n2 - k2 - 2 for x in left_dist_spec]
    for a in rest:
        out += [-a - 2] * n
    return out


def lexicographic_spectrum_girth(left_dist_spec: Sequence, right_dist_spec: Sequence,
                                 n: int, n2: int, t2) -> list:
    """D-spectrum when diam of the right operand is at most the left girth."""
    rest = _drop_one(list(right_dist_spec), t2)
    out = [n2 * x + t2 for x in left_dist_spec]
    for d in rest:
        out += [d] * n
    return out


def iterated_cartesian_spectrum(n: int, t, d2, m: int, ell: int) -> list[tuple[object, int]]:
    """(value, multiplicity) for the ell-th Cartesian power of a transmission-regular
    digraph with D-spectrum {t, d2^(m), 0^(n-1-m)}."""
    scale = n ** (ell - 1)
    return [(ell * t * scale, 1), (d2 * scale, m * ell), (0, n ** ell - 1 - m * ell)]


# --- hypotheses ----------------------------------------------------------------------

def _out_regular_degree(g: Graph | Digraph) -> int | None:
    degs = set(g.degrees() if isinstance(g, Graph) else g.out_degrees())
    return degs.pop() if len(degs) == 1 else None


def _every_vertex_on_double_arc(d: Digraph) -> bool:
    return all(any(d.has_arc(u, w) and d.has_arc(w, u) for w in range(d.n))
               for u in range(d.n))


@dataclass(frozen=True)
class ProductSpec:
    kind: str
    left: Graph | Digraph
    right: Graph | Digraph
    hypotheses: dict = field(default_factory=dict, compare=False)

    @classmethod
    def build(cls, kind: str, left, right) -> "ProductSpec":
        if kind not in (CARTESIAN, LEXICOGRAPHIC):
            raise ValueError(f"unknown product kind {kind!r}")
        il = all_pairs_distances(left)
        directed = isinstance(left, Digraph) or isinstance(right, Digraph)
        connected = (right.is_strongly_connected() if isinstance(right, Digraph)
                     else right.is_connected())
        if kind == CARTESIAN and not connected:
            raise DisconnectedInput("right operand is not connected")
        ir = all_pairs_distances(right) if connected else None
        h = {
            "directed": directed,
            "left_transmission_regular": il.transmission_regular,
            "right_transmission_regular": ir is not None and ir.transmission_regular,
            "right_regular_degree": _out_regular_degree(right),
            "left_order": left.n,
            "right_diameter": ir.diameter if ir is not None else None,
        }
        if directed:
            ld = left.to_digraph() if isinstance(left, Graph) else left
            h["left_double_arcs"] = _every_vertex_on_double_arc(ld)
            h["left_girth"] = all_pairs_distances(ld).girth
        return cls(kind, left, right, h)

    @property
    def directed(self) -> bool:
        return self.hypotheses["directed"]

    def form(self) -> str:
        """Which closed form applies; raises HypothesisError if none does."""
        h = self.hypotheses
        if self.kind == CARTESIAN:
            if h["left_transmission_regular"] and h["right_transmission_regular"]:
                return "cartesian"
            raise HypothesisError("Cartesian closed form needs transmission-regular operands")
        regular = h["right_regular_degree"] is not None
        if not self.directed:
            if regular and h["left_order"] >= 2:
                return "lexicographic"
            raise HypothesisError("lexicographic closed form needs a regular right operand "
                                  "and a left operand of order at least 2")
        if regular and h["left_double_arcs"]:
            return "lexicographic"
        if h["right_transmission_regular"] and h["left_girth"] is not None \
                and h["right_diameter"] <= h["left_girth"]:
            return "lexicographic_girth"
        raise HypothesisError("no digraph lexicographic closed form applies")

    def graph(self) -> Graph | Digraph:
        return product_graph(self.kind, self.left, self.right)


def _spectrum_of(m: RationalMatrix, symmetric: bool) -> list:
    """Exact rationals when the char poly splits over Q, else floats (complex for digraphs)."""
    p = char_poly_exact(m)
    exact = rational_spectrum(p)
    if exact is not None:
        return exact
    if symmetric:
        return [float(x) for x in jacobi_eigh(m.to_float())]
    return [z for z, k in roots_with_multiplicity(p) for _ in range(k)]


def adjacency_spectrum(g: Graph | Digraph) -> list:
    return _spectrum_of(RationalMatrix.from_int_array(g.adjacency_matrix()), isinstance(g, Graph))


def distance_spectrum(g: Graph | Digraph) -> list:
    info = all_pairs_distances(g)
    return _spectrum_of(RationalMatrix.from_int_array(info.dist), not info.directed)


def product_spectrum(spec: ProductSpec, variant: MatrixVariant = MatrixVariant.D) -> list:
    """Closed-form spectrum of the product, after checking hypotheses.

    Variants other than D go through the transmission-regular transform, with
    the product's transmission computed from its own distances.
    """
    form = spec.form()
    left, right = spec.left, spec.right
    n, n2 = left.n, right.n
    ld = distance_spectrum(left)
    if form == "cartesian":
        il, ir = all_pairs_distances(left), all_pairs_distances(right)
        vals = cartesian_spectrum_tr(ld, distance_spectrum(right), n, n2, il.t_min, ir.t_min)
    elif form == "lexicographic":
        vals = lexicographic_spectrum(ld, adjacency_spectrum(right), n, n2,
                                      spec.hypotheses["right_regular_degree"])
    else:
        ir = all_pairs_distances(right)
        vals = lexicographic_spectrum_girth(ld, distance_spectrum(right), n, n2, ir.t_min)
    if all(isinstance(x, (int, Fraction)) for x in vals):
        vals = [Fraction(x) for x in vals]
    if variant is MatrixVariant.D:
        return vals
    info = all_pairs_distances(spec.graph())
    if not info.transmission_regular:
        raise HypothesisError("product is not transmission regular; only D has a closed form")
    return transform_tr_spectrum(vals, info.t_min, variant)
