"""Simple graphs and digraphs on vertices ``0..n-1``, plus the graph6,
digraph6 and edge-list interchange formats.

Adjacency is stored as a tuple of Python int bitmasks: bit ``j`` of
``adj[i]`` is set when ``i -> j`` (for graphs the relation is symmetric).
Both classes are immutable and hashable.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class FormatError(ValueError):
    """Malformed graph6 / digraph6 / edge-list input."""


def _check_masks(n: int, adj: Sequence[int]) -> tuple[int, ...]:
    if n < 1:
        raise ValueError("vertex count must be positive")
    if len(adj) != n:
        raise ValueError(f"expected {n} adjacency rows, got {len(adj)}")
    full = (1 << n) - 1
    adj = tuple(int(a) for a in adj)
    for i, a in enumerate(adj):
        if a & ~full:
            raise ValueError(f"row {i} refers to a vertex >= {n}")
        if (a >> i) & 1:
            raise ValueError(f"self-loop at vertex {i}")
    return adj


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        adj = _check_masks(self.n, self.adj)
        for i in range(self.n):
            for j in _bits(adj[i]):
                if not (adj[j] >> i) & 1:
                    raise ValueError(f"adjacency not symmetric at ({i}, {j})")
        object.__setattr__(self, "adj", adj)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in _bits(self.adj[i]) if i < j]

    @property
    def num_edges(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def is_connected(self) -> bool:
        seen = frontier = 1
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n) - 1

    def add_edge(self, u: int, v: int) -> "Graph":
        if u == v or self.has_edge(u, v):
            raise ValueError(f"({u}, {v}) is already an edge or a loop")
        adj = list(self.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph(self.n, tuple(adj))

    def remove_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            raise ValueError(f"({u}, {v}) is not an edge")
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph(self.n, tuple(adj))

    def non_edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n)
                if not (self.adj[i] >> j) & 1]

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, tuple(full & ~a & ~(1 << i) for i, a in enumerate(self.adj)))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph in which old vertex ``v`` becomes ``perm[v]``."""
        adj = [0] * self.n
        for v in range(self.n):
            m = 0
            for w in _bits(self.adj[v]):
                m |= 1 << perm[w]
            adj[perm[v]] = m
        return Graph(self.n, tuple(adj))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        index = {v: i for i, v in enumerate(vertices)}
        return Graph.from_edges(len(vertices), [
            (index[u], index[v]) for u in vertices for v in _bits(self.adj[u])
            if v in index and index[u] < index[v]])

    def adjacency_matrix(self):
        import numpy as np

        a = np.zeros((self.n, self.n), dtype=np.int64)
        for i, j in self.edges:
            a[i, j] = a[j, i] = 1
        return a

    def to_digraph(self) -> "Digraph":
        """Doubly directed digraph with the same distance matrices."""
        return Digraph(self.n, self.adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, graph6={to_graph6(self)!r})"


@dataclass(frozen=True)
class Digraph:
    n: int
    adj: tuple[int, ...]   # out-neighbourhood masks

    def __post_init__(self) -> None:
        object.__setattr__(self, "adj", _check_masks(self.n, self.adj))

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        adj = [0] * n
        for u, v in arcs:
            if u == v:
                raise ValueError(f"loop arc at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) out of range for n={n}")
            adj[u] |= 1 << v
        return cls(n, tuple(adj))

    @property
    def arcs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in _bits(self.adj[i])]

    @property
    def num_arcs(self) -> int:
        return sum(a.bit_count() for a in self.adj)

    def has_arc(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def out_degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    def in_degrees(self) -> list[int]:
        return [sum((a >> j) & 1 for a in self.adj) for j in range(self.n)]

    def reverse(self) -> "Digraph":
        return Digraph.from_arcs(self.n, [(v, u) for u, v in self.arcs])

    def _reach(self, adj: Sequence[int]) -> int:
        seen = frontier = 1
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= adj[v]
            frontier = nxt & ~seen
            seen |= nxt
        return seen

    def is_strongly_connected(self) -> bool:
        full = (1 << self.n) - 1
        return self._reach(self.adj) == full and self._reach(self.reverse().adj) == full

    def add_arc(self, u: int, v: int) -> "Digraph":
        if u == v or self.has_arc(u, v):
            raise ValueError(f"({u}, {v}) is already an arc or a loop")
        adj = list(self.adj)
        adj[u] |= 1 << v
        return Digraph(self.n, tuple(adj))

    def non_arcs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(self.n)
                if i != j and not (self.adj[i] >> j) & 1]

    def is_symmetric(self) -> bool:
        return all(self.has_arc(v, u) for u, v in self.arcs)

    def to_graph(self) -> Graph:
        if not self.is_symmetric():
            raise ValueError("digraph is not doubly directed")
        return Graph(self.n, self.adj)

    def adjacency_matrix(self):
        import numpy as np

        a = np.zeros((self.n, self.n), dtype=np.int64)
        for i, j in self.arcs:
            a[i, j] = 1
        return a

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, digraph6={to_digraph6(self)!r})"


# --- graph6 / digraph6 -------------------------------------------------------

def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise ValueError("order too large for graph6")


def _decode_n(data: str) -> tuple[int, str]:
    if not data:
        raise FormatError("empty input")
    for c in data:
        if not 63 <= ord(c) <= 126:
            raise FormatError(f"character {c!r} out of range 63..126")
    if data[0] != "~":
        return ord(data[0]) - 63, data[1:]
    if len(data) >= 2 and data[1] == "~":
        if len(data) < 8:
            raise FormatError("truncated 8-byte length header")
        n = 0
        for c in data[2:8]:
            n = (n << 6) | (ord(c) - 63)
        return n, data[8:]
    if len(data) < 4:
        raise FormatError("truncated 4-byte length header")
    n = 0
    for c in data[1:4]:
        n = (n << 6) | (ord(c) - 63)
    if n < 63:
        raise FormatError("long length header used for a small order")
    return n, data[4:]


def _unpack_bits(body: str, nbits: int) -> list[int]:
    need = (nbits + 5) // 6
    if len(body) != need:
        raise FormatError(f"expected {need} data characters, got {len(body)}")
    bits = []
    for c in body:
        v = ord(c) - 63
        bits.extend((v >> s) & 1 for s in range(5, -1, -1))
    if any(bits[nbits:]):
        raise FormatError("nonzero padding bits")
    return bits[:nbits]


def _pack_bits(bits: Sequence[int]) -> str:
    out = []
    for k in range(0, len(bits), 6):
        chunk = list(bits[k:k + 6]) + [0] * (6 - len(bits[k:k + 6]))
        v = 0
        for b in chunk:
            v = (v << 1) | b
        out.append(chr(v + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if s.startswith(":") or s.startswith("&"):
        raise FormatError("not a graph6 string (sparse6 or digraph6 prefix)")
    n, body = _decode_n(s)
    if n < 1:
        raise FormatError("graph6 order must be positive")
    bits = _unpack_bits(body, n * (n - 1) // 2)
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, tuple(adj))


def to_graph6(g: Graph) -> str:
    bits = [(g.adj[i] >> j) & 1 for j in range(1, g.n) for i in range(j)]
    return _encode_n(g.n) + _pack_bits(bits)


def parse_digraph6(text: str) -> Digraph:
    s = text.strip()
    if s.startswith(">>digraph6<<"):
        s = s[len(">>digraph6<<"):]
    if not s.startswith("&"):
        raise FormatError("digraph6 strings start with '&'")
    n, body = _decode_n(s[1:])
    if n < 1:
        raise FormatError("digraph6 order must be positive")
    bits = _unpack_bits(body, n * n)
    arcs = []
    for i in range(n):
        for j in range(n):
            if bits[i * n + j]:
                if i == j:
                    raise FormatError(f"loop at vertex {i}")
                arcs.append((i, j))
    return Digraph.from_arcs(n, arcs)


def to_digraph6(d: Digraph) -> str:
    bits = [(d.adj[i] >> j) & 1 for i in range(d.n) for j in range(d.n)]
    return "&" + _encode_n(d.n) + _pack_bits(bits)


# --- edge lists ----------------------------------------------------------------

def _parse_pairs(text: str) -> tuple[int | None, list[tuple[int, int]]]:
    pairs = []
    n = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 1 and n is None and not pairs:
            n = int(parts[0])
            continue
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
    return n, pairs


def parse_edge_list(text: str, n: int | None = None) -> Graph:
    """Parse ``u v`` lines (0-based).  An optional leading single-integer line,
    or the ``n`` argument, fixes the order; otherwise it is ``max id + 1``."""
    header, pairs = _parse_pairs(text)
    n = n or header or (max(max(p) for p in pairs) + 1 if pairs else 0)
    try:
        return Graph.from_edges(n, pairs)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def parse_arc_list(text: str, n: int | None = None) -> Digraph:
    header, pairs = _parse_pairs(text)
    n = n or header or (max(max(p) for p in pairs) + 1 if pairs else 0)
    try:
        return Digraph.from_arcs(n, pairs)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def to_edge_list(g: Graph | Digraph) -> str:
    pairs = g.edges if isinstance(g, Graph) else g.arcs
    return "".join(f"{u} {v}\n" for u, v in pairs)


def read_graph6_file(path) -> Iterator[Graph]:
    with open(path) as fh:
        for line in fh:
            if line.strip():
                yield parse_graph6(line)


def write_graph6_file(path, graphs: Iterable[Graph]) -> None:
    with open(path, "w") as fh:
        for g in graphs:
            fh.write(to_graph6(g) + "\n")
