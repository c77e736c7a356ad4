"""Canonical forms, isomorphism testing and isomorph-free enumeration.

The canonical form of a graph is the smallest graph6 string over the vertex
orders reachable by an individualisation/refinement search: colour refinement
keeps only orders compatible with an isomorphism-invariant ordered partition,
and automorphisms discovered at the leaves prune equivalent branches.  The
result is a complete invariant (equal iff isomorphic).
"""
from __future__ import annotations

from functools import lru_cache
from os import PathLike
from pathlib import Path
from typing import Iterable, Iterator

from .graphs import Graph, _bits, parse_graph6, to_graph6

MAX_CANON_ORDER = 10
MAX_ENUM_ORDER = 9


class OrderTooLarge(ValueError):
    pass


def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    """Colour refinement to the coarsest equitable ordered partition."""
    n = len(adj)
    while True:
        if len(cells) == n:
            return cells
        masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            masks.append(m)
        out = []
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in c:
                a = adj[v]
                groups.setdefault(tuple((a & m).bit_count() for m in masks), []).append(v)
            if len(groups) == 1:
                out.append(c)
            else:
                out.extend(groups[k] for k in sorted(groups))
        if len(out) == len(cells):
            return out
        cells = out


def _leaf_code(adj: tuple[int, ...], order: list[int]) -> int:
    code = 0
    for j in range(1, len(order)):
        bit = 1 << order[j]
        for i in range(j):
            code = (code << 1) | (1 if adj[order[i]] & bit else 0)
    return code


class _Search:
    __slots__ = ("adj", "n", "best_code", "best_order", "first_code", "first_order", "autos")

    def __init__(self, adj: tuple[int, ...]):
        self.adj = adj
        self.n = len(adj)
        self.best_code = None
        self.best_order = None
        self.first_code = None
        self.first_order = None
        self.autos: list[list[int]] = []

    def _record_auto(self, order_a: list[int], order_b: list[int]) -> None:
        perm = [0] * self.n
        for x, y in zip(order_a, order_b):
            perm[x] = y
        if any(perm[v] != v for v in range(self.n)):
            self.autos.append(perm)

    def leaf(self, order: list[int]) -> None:
        code = _leaf_code(self.adj, order)
        if self.first_code is None:
            self.first_code, self.first_order = code, order
            self.best_code, self.best_order = code, order
            return
        if code == self.first_code:
            self._record_auto(self.first_order, order)
        elif code == self.best_code:
            self._record_auto(self.best_order, order)
        elif code < self.best_code:
            self.best_code, self.best_order = code, order

    def run(self, cells: list[list[int]], prefix: tuple[int, ...]) -> None:
        cells = _refine(self.adj, cells)
        if len(cells) == self.n:
            self.leaf([c[0] for c in cells])
            return
        k = min(range(len(cells)), key=lambda i: (len(cells[i]) == 1, len(cells[i]), i))
        target = cells[k]
        adj = self.adj
        tried: list[int] = []
        for v in target:
            skip = False
            for u in tried:
                # twins: the transposition (u v) is an automorphism fixing the prefix
                if (adj[u] & ~(1 << v)) == (adj[v] & ~(1 << u)):
                    skip = True
                    break
            if not skip and tried and self._same_orbit(v, tried, prefix):
                skip = True
            if skip:
                continue
            tried.append(v)
            rest = [w for w in target if w != v]
            self.run(cells[:k] + [[v], rest] + cells[k + 1:], prefix + (v,))

    def _same_orbit(self, v: int, tried: list[int], prefix: tuple[int, ...]) -> bool:
        gens = [p for p in self.autos if all(p[x] == x for x in prefix)]
        if not gens:
            return False
        orbit = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for p in gens:
                y = p[x]
                if y not in orbit:
                    orbit.add(y)
                    stack.append(y)
        return any(u in orbit for u in tried)


def canonical_order(adj: tuple[int, ...]) -> tuple[int, list[int]]:
    """Return ``(code, order)``; ``order[i]`` is the vertex placed at position i."""
    n = len(adj)
    if n == 1:
        return 0, [0]
    search = _Search(adj)
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(adj[v].bit_count(), []).append(v)
    search.run([groups[d] for d in sorted(groups)], ())
    return search.best_code, search.best_order


def canonical_adj(adj: tuple[int, ...]) -> tuple[int, ...]:
    _, order = canonical_order(adj)
    pos = [0] * len(adj)
    for i, v in enumerate(order):
        pos[v] = i
    out = [0] * len(adj)
    for v in range(len(adj)):
        m = 0
        for w in _bits(adj[v]):
            m |= 1 << pos[w]
        out[pos[v]] = m
    return tuple(out)


def canonical_graph(g: Graph) -> Graph:
    return Graph(g.n, canonical_adj(g.adj))


def canonical_form(g: Graph) -> bytes:
    if g.n > MAX_CANON_ORDER:
        raise OrderTooLarge(f"canonical forms are defined for n <= {MAX_CANON_ORDER}")
    return to_graph6(canonical_graph(g)).encode("ascii")


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.n > MAX_CANON_ORDER or g2.n > MAX_CANON_ORDER:
        raise OrderTooLarge(f"exact isomorphism supported for n <= {MAX_CANON_ORDER}")
    if g1.n != g2.n or g1.num_edges != g2.num_edges:
        return False
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    return canonical_form(g1) == canonical_form(g2)


# --- enumeration -------------------------------------------------------------------

def _components(adj: tuple[int, ...]) -> list[int]:
    n = len(adj)
    left = (1 << n) - 1
    comps = []
    while left:
        seen = frontier = left & -left
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= adj[v]
            frontier = nxt & ~seen
            seen |= nxt
        comps.append(seen)
        left &= ~seen
    return comps


def _children(parents: Iterable[tuple[int, ...]], connected_only: bool) -> set[tuple[int, ...]]:
    """Canonical graphs obtained by adding one vertex of minimum degree."""
    out: set[tuple[int, ...]] = set()
    for p in parents:
        m = len(p)
        degs = [a.bit_count() for a in p]
        comps = _components(p) if connected_only else None
        newbit = 1 << m
        for s in range(1 << m):
            ds = s.bit_count()
            if ds > min(degs[v] + ((s >> v) & 1) for v in range(m)):
                continue
            if connected_only and any(not (c & s) for c in comps):
                continue
            child = tuple(a | newbit if (s >> v) & 1 else a for v, a in enumerate(p)) + (s,)
            out.add(canonical_adj(child))
    return out


@lru_cache(maxsize=None)
def _all_graphs(n: int) -> tuple[tuple[int, ...], ...]:
    if n == 1:
        return ((0,),)
    return tuple(sorted(_children(_all_graphs(n - 1), connected_only=False)))


def _sort_key(adj: tuple[int, ...]) -> tuple[int, str]:
    return sum(a.bit_count() for a in adj), to_graph6(Graph(len(adj), adj))


@lru_cache(maxsize=None)
def _connected(n: int) -> tuple[tuple[int, ...], ...]:
    if n == 1:
        return ((0,),)
    kids = _children(_all_graphs(n - 1), connected_only=True)
    return tuple(sorted(kids, key=_sort_key))


def enumerate_connected_graphs(n: int, catalog=None) -> Iterator[Graph]:
    """One representative per isomorphism class of connected graphs of order n.

    With ``catalog`` (a graph6 file path or iterable of graph6 lines) the
    graphs are read from it instead of being generated; they are relabelled
    canonically so both routes yield identical streams.
    """
    if catalog is not None:
        lines = Path(catalog).read_text().split() if isinstance(catalog, (str, PathLike)) else catalog
        adjs = {canonical_adj(parse_graph6(s).adj) for s in lines if s.strip()}
        if any(len(a) != n for a in adjs):
            raise ValueError(f"catalog contains graphs not of order {n}")
        for a in sorted(adjs, key=_sort_key):
            yield Graph(n, a)
        return
    if not 1 <= n <= MAX_ENUM_ORDER:
        raise OrderTooLarge(f"enumeration supported for 1 <= n <= {MAX_ENUM_ORDER}")
    for a in _connected(n):
        yield Graph(n, a)


@lru_cache(maxsize=None)
def _trees(n: int) -> tuple[tuple[int, ...], ...]:
    if n == 1:
        return ((0,),)
    out = set()
    for p in _trees(n - 1):
        for v in range(n - 1):
            child = tuple(a | (1 << (n - 1)) if u == v else a for u, a in enumerate(p)) + (1 << v,)
            out.add(canonical_adj(child))
    return tuple(sorted(out, key=_sort_key))


def enumerate_trees(n: int) -> Iterator[Graph]:
    """Non-isomorphic trees of order n by leaf addition."""
    if n < 1:
        raise ValueError("n must be positive")
    for a in _trees(n):
        yield Graph(n, a)
