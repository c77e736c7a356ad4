"""Structural invariants: girth, blocks, planarity and a summary record."""
from __future__ import annotations

from dataclasses import dataclass, asdict

from .canon import _components
from .distances import all_pairs_distances
from .graphs import Graph, _bits

PLANARITY_MAX_ORDER = 12


@dataclass(frozen=True)
class StructuralReport:
    edges: int
    diameter: int
    girth: int | None            # None for forests
    planar: bool | None          # None when n exceeds the search limit
    degree_sequence: tuple[int, ...]
    transmission_sequence: tuple[int, ...]
    transmission_regular: bool
    complement_component_count: int

    def to_dict(self) -> dict:
        d = asdict(self)
        d["degree_sequence"] = list(self.degree_sequence)
        d["transmission_sequence"] = list(self.transmission_sequence)
        return d


def graph_girth(g: Graph) -> int | None:
    """Shortest cycle length by BFS from every vertex."""
    best = None
    adj = g.adj
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = [s]
        for u in queue:
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for w in _bits(adj[u]):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    c = dist[u] + dist[w] + 1
                    if best is None or c < best:
                        best = c
    return best


def biconnected_blocks(g: Graph) -> list[tuple[Graph, tuple[int, ...]]]:
    """Blocks as ``(block, vertices)``; ``vertices[i]`` is the original id of block vertex i."""
    if not g.is_connected():
        raise ValueError("graph is not connected")
    n = g.n
    if n == 1:
        return [(Graph(1, (0,)), (0,))]
    disc = [-1] * n
    low = [0] * n
    timer = 0
    stack: list[tuple[int, int]] = []
    found: list[set[int]] = []
    # iterative Tarjan
    disc[0] = low[0] = timer
    timer += 1
    work = [(0, -1, iter(g.neighbors(0)))]
    while work:
        u, parent, it = work[-1]
        advanced = False
        for w in it:
            if disc[w] == -1:
                stack.append((u, w))
                disc[w] = low[w] = timer
                timer += 1
                work.append((w, u, iter(g.neighbors(w))))
                advanced = True
                break
            if w != parent and disc[w] < disc[u]:
                stack.append((u, w))
                low[u] = min(low[u], disc[w])
        if advanced:
            continue
        work.pop()
        if parent >= 0:
            low[parent] = min(low[parent], low[u])
            if low[u] >= disc[parent]:
                verts = set()
                while True:
                    e = stack.pop()
                    verts.update(e)
                    if e == (parent, u):
                        break
                found.append(verts)
    out = []
    for verts in found:
        vs = tuple(sorted(verts))
        out.append((g.induced(vs), vs))
    out.sort(key=lambda b: b[1])
    return out


# --- planarity -----------------------------------------------------

def _drop(adj: list[int], v: int) -> list[int]:
    """Delete vertex v and close the gap in the numbering."""
    low = (1 << v) - 1
    out = []
    for u, a in enumerate(adj):
        if u != v:
            out.append((a & low) | ((a >> (v + 1)) << v))
    return out


def _reduce(adj: list[int]) -> list[int]:
    """Strip vertices of degree <= 1 and suppress degree-2 vertices.

    Both moves preserve planarity; suppression may merge into an existing
    edge, which is harmless for planarity.
    """
    adj = list(adj)
    changed = True
    while changed:
        changed = False
        for v, a in enumerate(adj):
            d = a.bit_count()
            if d <= 1:
                if d == 1:
                    adj[a.bit_length() - 1] &= ~(1 << v)
                adj = _drop(adj, v)
                changed = True
                break
            if d == 2:
                x = a & -a
                y = a ^ x
                xi, yi = x.bit_length() - 1, y.bit_length() - 1
                adj[xi] = (adj[xi] & ~(1 << v)) | y
                adj[yi] = (adj[yi] & ~(1 << v)) | x
                adj[v] = 0
                adj = _drop(adj, v)
                changed = True
                break
    return adj


def _blocks_adj(adj: list[int]) -> list[list[int]]:
    n = len(adj)
    if n < 5:
        return []
    g = Graph(n, tuple(adj))
    out = []
    for comp in _components(tuple(adj)):
        vs = list(_bits(comp))
        if len(vs) < 5:
            continue
        sub = g.induced(vs)
        for b, _ in biconnected_blocks(sub):
            if b.n >= 5:
                out.append(list(b.adj))
    return out


def _find_cycle(adj: list[int]) -> list[int]:
    """Some cycle of a graph that has one, via the first DFS back edge."""
    parent = {0: -1}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in _bits(adj[u]):
            if w == parent[u]:
                continue
            if w in parent:
                anc = []
                x = u
                while x != -1:
                    anc.append(x)
                    x = parent[x]
                up = []
                x = w
                while x not in anc:
                    up.append(x)
                    x = parent[x]
                return anc[:anc.index(x) + 1] + up[::-1]
            parent[w] = u
            stack.append(w)
    raise ValueError("acyclic input")


def _block_embeds(adj: list[int]) -> bool:
    """Path-addition embedding of a biconnected graph; False once some bridge has no face."""
    n = len(adj)
    cycle = _find_cycle(adj)
    placed = set(cycle)
    used = {frozenset((cycle[i], cycle[i - 1])) for i in range(len(cycle))}
    faces = [list(cycle), list(cycle)]
    total = sum(a.bit_count() for a in adj) // 2
    while len(used) < total:
        bridges: list[tuple[set[int], object]] = []
        for u in sorted(placed):
            for w in _bits(adj[u]):
                if w in placed and w > u and frozenset((u, w)) not in used:
                    bridges.append(({u, w}, [u, w]))
        seen: set[int] = set()
        for s in range(n):
            if s in placed or s in seen:
                continue
            comp = {s}
            stack = [s]
            while stack:
                x = stack.pop()
                for y in _bits(adj[x]):
                    if y not in placed and y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            att = {y for x in comp for y in _bits(adj[x]) if y in placed}
            bridges.append((att, comp))
        choice = None
        for att, body in bridges:
            ok = [f for f in faces if att <= set(f)]
            if not ok:
                return False
            if len(ok) == 1 or choice is None:
                choice = (att, body, ok[0])
                if len(ok) == 1:
                    break
        att, body, face = choice
        if isinstance(body, list):
            path = body
        else:
            a = min(att)
            prev: dict[int, int | None] = {a: None}
            queue = [a]
            end = None
            for x in queue:
                for y in _bits(adj[x]):
                    if y in prev:
                        continue
                    if y in body:
                        prev[y] = x
                        queue.append(y)
                    elif y in att and x != a:
                        prev[y] = x
                        end = y
                        break
                if end is not None:
                    break
            path = [end]
            while path[-1] != a:
                path.append(prev[path[-1]])
            path.reverse()
        a, b = path[0], path[-1]
        i, j = face.index(a), face.index(b)
        k = len(face)
        ab = [face[(i + r) % k] for r in range((j - i) % k + 1)]
        ba = [face[(j + r) % k] for r in range((i - j) % k + 1)]
        inner = path[1:-1]
        faces.remove(face)
        faces.append(ab + inner[::-1])
        faces.append(ba + inner)
        placed.update(inner)
        used.update(frozenset(e) for e in zip(path, path[1:]))
    return True


def _nonplanar(adj: list[int]) -> bool:
    for b in _blocks_adj(_reduce(adj)):
        if sum(a.bit_count() for a in b) // 2 > 3 * len(b) - 6 or not _block_embeds(b):
            return True
    return False


def is_planar(g: Graph) -> bool | None:
    """Exact for n <= 12; None beyond that."""
    if g.n > PLANARITY_MAX_ORDER:
        return None
    if g.n >= 3 and g.num_edges > 3 * g.n - 6:
        return False
    return not _nonplanar(list(g.adj))


def structural_report(g: Graph) -> StructuralReport:
    info = all_pairs_distances(g)
    return StructuralReport(
        edges=g.num_edges,
        diameter=info.diameter,
        girth=graph_girth(g),
        planar=is_planar(g),
        degree_sequence=tuple(sorted(g.degrees())),
        transmission_sequence=tuple(sorted(info.transmissions)),
        transmission_regular=info.transmission_regular,
        complement_component_count=len(_components(g.complement().adj)),
    )
