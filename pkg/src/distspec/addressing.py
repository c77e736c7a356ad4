"""Squashed-cube addressing: validity, tree addresses and exact minimum length search."""
from __future__ import annotations

from collections import deque
from itertools import product
from typing import Sequence

from .distances import all_pairs_distances
from .exact_poly import inertia_exact, variant_char_poly
from .graphs import Graph
from .matrices import MatrixVariant, is_tree

MAX_SEARCH_ORDER = 6
SYMBOLS = "01*"

Addressing = tuple[str, ...]


class OrderTooLarge(ValueError):
    pass


def address_distance(a: str, b: str) -> int:
    """Number of coordinates where one address has 0 and the other 1."""
    return sum(1 for x, y in zip(a, b) if {x, y} == {"0", "1"})


def _check(addr: Sequence[str]) -> None:
    if not addr:
        raise ValueError("empty addressing")
    r = len(addr[0])
    if any(len(a) != r for a in addr):
        raise ValueError("addresses have different lengths")
    if any(c not in SYMBOLS for a in addr for c in a):
        raise ValueError("addresses use symbols outside {0, 1, *}")


def verify_addressing(g: Graph, addr: Sequence[str]) -> bool:
    _check(addr)
    if len(addr) != g.n:
        raise ValueError("need one address per vertex")
    d = all_pairs_distances(g).dist
    return all(address_distance(addr[u], addr[v]) == d[u][v]
               for u in range(g.n) for v in range(u + 1, g.n))


def tree_addressing(t: Graph, root: int = 0) -> Addressing:
    """One coordinate per edge: bit i is 1 iff edge i lies on the root-to-v path.

    Edges are numbered in breadth-first discovery order of their child endpoint.
    """
    if not is_tree(t):
        raise ValueError("tree addressing needs a tree")
    parent = {root: None}
    order = []
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in t.neighbors(u):
            if w not in parent:
                parent[w] = u
                order.append(w)
                queue.append(w)
    index = {child: i for i, child in enumerate(order)}
    bits = {root: [0] * (t.n - 1)}
    for child in order:
        row = bits[parent[child]][:]
        row[index[child]] = 1
        bits[child] = row
    return tuple("".join(map(str, bits[v])) for v in range(t.n))


def addressing_lower_bound(g: Graph) -> int:
    """max(n_+, n_-) of the distance matrix, from exact inertia."""
    inert = inertia_exact(variant_char_poly(g, MatrixVariant.D))
    return max(inert.n_plus, inert.n_minus)


def _encode(word: Sequence[str]) -> tuple[int, int]:
    zeros = sum(1 << i for i, c in enumerate(word) if c == "0")
    ones = sum(1 << i for i, c in enumerate(word) if c == "1")
    return zeros, ones


def _search(dist, n: int, r: int) -> list[tuple[int, int]] | None:
    """Backtracking over rows. Row 0 avoids '1' (coordinate flips) and columns
    stay lexicographically non-decreasing (coordinate permutations)."""
    words = list(product("01*", repeat=r))
    cands = [_encode(w) for w in words]
    first = [_encode(w) for w in words if "1" not in w]
    rank = {"0": 0, "1": 1, "*": 2}
    sym = [[rank[c] for c in w] for w in words]
    sym_first = [[rank[c] for c in w] for w in words if "1" not in w]
    chosen: list[tuple[int, int]] = []
    cols: list[list[int]] = []

    def columns_ok(rows: list[list[int]]) -> bool:
        # compare adjacent column prefixes
        for i in range(r - 1):
            for row in rows:
                if row[i] != row[i + 1]:
                    if row[i] > row[i + 1]:
                        return False
                    break
        return True

    def go(v: int) -> bool:
        if v == n:
            return True
        pool = (first, sym_first) if v == 0 else (cands, sym)
        for (z, o), s in zip(*pool):
            if all(bin((z & o2) | (o & z2)).count("1") == dist[v][u]
                   for u, (z2, o2) in enumerate(chosen)):
                cols.append(s)
                if columns_ok(cols):
                    chosen.append((z, o))
                    if go(v + 1):
                        return True
                    chosen.pop()
                cols.pop()
        return False

    return list(chosen) if go(0) else None


def _decode(code: tuple[int, int], r: int) -> str:
    z, o = code
    return "".join("0" if z >> i & 1 else "1" if o >> i & 1 else "*" for i in range(r))


def minimal_addressing_search(g: Graph, r_max: int | None = None) -> tuple[int, Addressing]:
    """Smallest r with a valid addressing, and a witness; starts at the inertia bound."""
    if g.n > MAX_SEARCH_ORDER:
        raise OrderTooLarge(f"exact search supports n <= {MAX_SEARCH_ORDER}")
    if g.n == 1:
        return 0, ("",)
    dist = all_pairs_distances(g).dist.tolist()
    hi = g.n - 1 if r_max is None else r_max
    for r in range(max(1, addressing_lower_bound(g)), hi + 1):
        found = _search(dist, g.n, r)
        if found is not None:
            return r, tuple(_decode(c, r) for c in found)
    raise ValueError(f"no addressing of length <= {hi}")
