"""All-pairs BFS distances and the scalars derived from them."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graphs import Digraph, Graph, _bits


class DisconnectedInput(ValueError):
    """Some distance is undefined (graph not connected / digraph not strong)."""


@dataclass(frozen=True)
class DistanceInfo:
    dist: np.ndarray                      # read-only int64 n x n
    transmissions: tuple[int, ...]
    diameter: int
    directed: bool = False
    in_transmissions: tuple[int, ...] | None = None
    girth: int | None = None              # digraphs only; see structure.girth for graphs
    wiener: int | None = None             # graphs only
    source: Graph | Digraph | None = field(default=None, compare=False, repr=False)

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    @property
    def transmission_regular(self) -> bool:
        return len(set(self.transmissions)) == 1

    @property
    def t_min(self) -> int:
        return min(self.transmissions)

    @property
    def t_max(self) -> int:
        return max(self.transmissions)

    @property
    def t_mean(self) -> float:
        return sum(self.transmissions) / self.n


def bfs_rows(adj: tuple[int, ...], n: int) -> list[list[int]]:
    """Distance rows from every vertex following out-masks ``adj``.

    Unreachable entries are -1.
    """
    full = (1 << n) - 1
    rows = []
    for s in range(n):
        row = [-1] * n
        row[s] = 0
        seen = frontier = 1 << s
        d = 0
        while frontier and seen != full:
            d += 1
            nxt = 0
            for v in _bits(frontier):
                nxt |= adj[v]
            frontier = nxt & ~seen
            seen |= frontier
            for v in _bits(frontier):
                row[v] = d
        rows.append(row)
    return rows


def all_pairs_distances(g: Graph | Digraph) -> DistanceInfo:
    rows = bfs_rows(g.adj, g.n)
    if any(x < 0 for row in rows for x in row):
        kind = "graph is not connected" if isinstance(g, Graph) else "digraph is not strongly connected"
        raise DisconnectedInput(kind)
    dist = np.array(rows, dtype=np.int64)
    dist.setflags(write=False)
    trans = tuple(int(x) for x in dist.sum(axis=1))
    diameter = int(dist.max())
    if isinstance(g, Graph):
        return DistanceInfo(dist, trans, diameter, directed=False,
                            wiener=sum(trans) // 2, source=g)
    in_trans = tuple(int(x) for x in dist.sum(axis=0))
    girth = min((1 + rows[v][u] for u, v in g.arcs), default=None)
    return DistanceInfo(dist, trans, diameter, directed=True,
                        in_transmissions=in_trans, girth=girth, source=g)
