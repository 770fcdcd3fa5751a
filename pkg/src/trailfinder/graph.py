"""Immutable simple undirected graphs with bitset adjacency.

Vertices are dense 0-based integers.  Each vertex carries both a sorted
neighbor list (for ordered traversal) and a bitrow (a Python int used as a
bitset of length n) for word-parallel neighborhood arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

Path = list[int]

INFINITY = math.inf


class GraphError(ValueError):
    """Raised on malformed graph input (loops, asymmetry, range errors)."""


@dataclass(frozen=True)
class Graph:
    """A validated simple undirected graph, immutable after construction."""

    n: int
    edges: frozenset[tuple[int, int]]
    adj_list: tuple[tuple[int, ...], ...]
    adj_bits: tuple[int, ...]

    @staticmethod
    def from_edges(n: int, edges) -> "Graph":
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        canon = set()
        for x, y in edges:
            if not (0 <= x < n and 0 <= y < n):
                raise GraphError(f"edge ({x},{y}) out of range for n={n}")
            if x == y:
                raise GraphError(f"self-loop at vertex {x}")
            canon.add((x, y) if x < y else (y, x))
        adj = [[] for _ in range(n)]
        bits = [0] * n
        for x, y in canon:
            adj[x].append(y)
            adj[y].append(x)
            bits[x] |= 1 << y
            bits[y] |= 1 << x
        return Graph(
            n=n,
            edges=frozenset(canon),
            adj_list=tuple(tuple(sorted(a)) for a in adj),
            adj_bits=tuple(bits),
        )

    def has_edge(self, x: int, y: int) -> bool:
        return bool(self.adj_bits[x] >> y & 1)

    def neighbors(self, x: int) -> tuple[int, ...]:
        return self.adj_list[x]

    def degree(self, x: int) -> int:
        return len(self.adj_list[x])

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def induced(self, allowed: int) -> "Graph":
        """Subgraph induced by the vertex bitmask `allowed`, on the same ids."""
        edges = [
            (x, y)
            for x, y in self.edges
            if (allowed >> x & 1) and (allowed >> y & 1)
        ]
        return Graph.from_edges(self.n, edges)


def iter_bits(mask: int):
    """Yield the indices of the set bits of `mask`, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bfs_heights(g: Graph, u: int) -> list:
    """Hop distance from u to every vertex; unreachable vertices get inf."""
    if not 0 <= u < g.n:
        raise GraphError(f"source {u} out of range for n={g.n}")
    h = [INFINITY] * g.n
    h[u] = 0
    frontier = [u]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for x in frontier:
            for y in g.adj_list[x]:
                if h[y] == INFINITY:
                    h[y] = d
                    nxt.append(y)
        frontier = nxt
    return h


def distance(g: Graph, x: int, y: int):
    return bfs_heights(g, x)[y]


def is_path(g: Graph, p: Path) -> bool:
    """True iff p is a simple path of g (distinct vertices, consecutive edges)."""
    if not p:
        return False
    if any(not 0 <= x < g.n for x in p):
        return False
    if len(set(p)) != len(p):
        return False
    return all(g.has_edge(p[i], p[i + 1]) for i in range(len(p) - 1))


def is_induced_path(g: Graph, p: Path, u: int, v: int) -> bool:
    """True iff p is a chordless uv-path of g.

    Malformed input (wrong endpoints, repeated vertices, missing edges)
    returns False rather than raising.
    """
    if not p or p[0] != u or p[-1] != v:
        return False
    if not is_path(g, p):
        return False
    for i, x in enumerate(p):
        for j in range(i + 2, len(p)):
            if g.has_edge(x, p[j]):
                return False
    return True


def verify_trail(g: Graph, p: Path, u: int, v: int) -> bool:
    """True iff p is an induced uv-path strictly longer than the uv-distance."""
    if not is_induced_path(g, p, u, v):
        return False
    return len(p) - 1 > bfs_heights(g, u)[v]


def path_length(p: Path) -> int:
    return len(p) - 1


def restricted_shortest_path(g: Graph, allowed: int, x: int, y: int) -> Path | None:
    """Shortest xy-path inside the induced subgraph on the bitmask `allowed`.

    Returns None when x and y are disconnected there.  Deterministic:
    BFS discovers neighbors in ascending order, so parents are the
    smallest-index choice at each hop.
    """
    if not (allowed >> x & 1) or not (allowed >> y & 1):
        return None
    if x == y:
        return [x]
    parent = {x: -1}
    frontier = [x]
    while frontier:
        nxt = []
        for a in frontier:
            reach = g.adj_bits[a] & allowed
            for b in iter_bits(reach):
                if b in parent:
                    continue
                parent[b] = a
                if b == y:
                    path = [y]
                    while path[-1] != x:
                        path.append(parent[path[-1]])
                    path.reverse()
                    return path
                nxt.append(b)
        frontier = nxt
    return None


def parse_edgelist(text: str) -> tuple[Graph, list[str]]:
    """Parse the canonical edge-list format.

    First non-comment line is "n m"; each of the next m non-comment lines
    is "x y" with 0 <= x < y < n.  Lines starting with '#' are comments.
    Returns the graph and the comment lines (without the leading '#').
    """
    comments = []
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append(line[1:].strip())
            continue
        rows.append((lineno, line))
    if not rows:
        raise GraphError("empty edge-list file")
    lineno, header = rows[0]
    try:
        n, m = map(int, header.split())
    except ValueError:
        raise GraphError(f"line {lineno}: expected header 'n m', got {header!r}")
    if len(rows) - 1 != m:
        raise GraphError(f"expected {m} edge lines, found {len(rows) - 1}")
    edges = []
    for lineno, line in rows[1:]:
        try:
            x, y = map(int, line.split())
        except ValueError:
            raise GraphError(f"line {lineno}: expected edge 'x y', got {line!r}")
        if not x < y:
            raise GraphError(f"line {lineno}: edge must satisfy x < y, got {x} {y}")
        edges.append((x, y))
    return Graph.from_edges(n, edges), comments


def format_edgelist(g: Graph, comments=()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"{g.n} {g.m}")
    lines.extend(f"{x} {y}" for x, y in sorted(g.edges))
    return "\n".join(lines) + "\n"


def load_graph(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        g, _ = parse_edgelist(fh.read())
    return g
