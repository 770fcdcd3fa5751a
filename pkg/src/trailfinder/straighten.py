"""Preprocessing: find a trail outright or condense to a uv-straight graph.

The straight core F is the set of vertices on shortest uv-paths.  If some
component of G-F attaches to two non-adjacent core vertices at different
heights, a detour through that component is already a trail (the escape
path).  Otherwise contracting each component into added core edges yields
a uv-straight graph H whose trails lift back to trails of G.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import (
    Graph,
    Path,
    bfs_heights,
    mask_of,
    restricted_shortest_path,
    verify_trail,
)
from .straight import StraightContext, build_straight_context


class InternalInvariantError(AssertionError):
    """A construction that the theory guarantees to verify failed to.

    Carries a reproduction payload: the offending graph and path.
    """

    def __init__(self, message: str, payload=None):
        super().__init__(message)
        self.payload = payload


@dataclass(frozen=True)
class LiftData:
    """What is needed to map trails of the condensed graph H back to G.

    H lives on compacted vertex ids (the core, sorted); `to_original` maps
    them back.  `added_edges` is keyed by original-id pairs (x, y), x < y,
    each with the witness component whose detour realizes the edge.
    """

    original: Graph
    u: int
    v: int
    core: frozenset[int]
    components: tuple[tuple[frozenset[int], frozenset[int]], ...]  # (K, N_G(K))
    added_edges: dict
    to_original: tuple[int, ...]

    def is_identity(self) -> bool:
        return not self.added_edges and len(self.core) == self.original.n

    def path_to_original(self, p: Path) -> Path:
        return [self.to_original[x] for x in p]


@dataclass(frozen=True)
class StraightenResult:
    trail: Path | None = None
    context: StraightContext | None = None
    lift: LiftData | None = None

    @property
    def found_trail(self) -> bool:
        return self.trail is not None


def straight_core(g: Graph, u: int, v: int) -> frozenset[int]:
    """Vertices x with d(u,x) + d(x,v) = d(u,v): the shortest-path core."""
    hu = bfs_heights(g, u)
    hv = bfs_heights(g, v)
    d = hu[v]
    if d == float("inf"):
        raise ValueError(f"{u} and {v} are disconnected")
    return frozenset(x for x in range(g.n) if hu[x] + hv[x] == d)


def components_off_core(g: Graph, core: frozenset[int]):
    """Connected components K of G-core with their attachment sets N_G(K),
    ordered by smallest member vertex."""
    seen = set()
    comps = []
    for start in range(g.n):
        if start in core or start in seen:
            continue
        stack = [start]
        seen.add(start)
        comp = []
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in g.adj_list[x]:
                if y not in core and y not in seen:
                    seen.add(y)
                    stack.append(y)
        attach = set()
        for x in comp:
            attach.update(y for y in g.adj_list[x] if y in core)
        comps.append((frozenset(comp), frozenset(attach)))
    return comps


def escape_check(g: Graph, u: int, core: frozenset[int]):
    """Direct scan for a component K of G-core with non-adjacent attachments
    at different heights.  Returns (K, x, y) with h(x) < h(y), or None."""
    h = bfs_heights(g, u)
    for comp, attach in components_off_core(g, core):
        att = sorted(attach)
        for i, x in enumerate(att):
            for y in att[i + 1 :]:
                if not g.has_edge(x, y) and h[x] != h[y]:
                    return (comp, x, y) if h[x] < h[y] else (comp, y, x)
    return None


def escape_check_triangle(g: Graph, u: int, core: frozenset[int]):
    """Cross-check route: look for a triangle of the auxiliary graph that
    contains exactly two core vertices.  The auxiliary graph joins a core
    vertex to each component it attaches to, and joins two core vertices
    when they are non-adjacent in G at distinct heights; components are
    pairwise non-adjacent, so every triangle has exactly two core vertices.
    Must agree with escape_check on existence."""
    h = bfs_heights(g, u)
    aux_pairs = set()
    core_list = sorted(core)
    for i, x in enumerate(core_list):
        for y in core_list[i + 1 :]:
            if not g.has_edge(x, y) and h[x] != h[y]:
                aux_pairs.add((x, y))
    for comp, attach in components_off_core(g, core):
        att = sorted(attach)
        for i, x in enumerate(att):
            for y in att[i + 1 :]:
                if (x, y) in aux_pairs:
                    return (comp, x, y) if h[x] < h[y] else (comp, y, x)
    return None


def _monotone_path_from_u(g: Graph, h, x: int) -> Path:
    """A monotone u->x path in g (smallest-index down chain)."""
    chain = [x]
    while h[chain[-1]] != 0:
        cur = chain[-1]
        nxt = next(y for y in g.adj_list[cur] if h[y] == h[cur] - 1)
        chain.append(nxt)
    chain.reverse()
    return chain


def _monotone_path_to_v(g: Graph, hu, hv, y: int) -> Path:
    """A monotone y->v path: heights from u strictly climb while distances
    to v strictly drop.  Exists whenever y lies on a shortest uv-path."""
    chain = [y]
    while hv[chain[-1]] != 0:
        cur = chain[-1]
        nxt = next(
            z
            for z in g.adj_list[cur]
            if hu[z] == hu[cur] + 1 and hv[z] == hv[cur] - 1
        )
        chain.append(nxt)
    return chain


def escape_trail(g: Graph, u: int, v: int, comp: frozenset[int], x: int, y: int) -> Path:
    """Trail through an escaping component: shortest uv-path of the subgraph
    induced by a monotone u->x path, K, and a monotone y->v path."""
    hu = bfs_heights(g, u)
    hv = bfs_heights(g, v)
    px = _monotone_path_from_u(g, hu, x)
    py = _monotone_path_to_v(g, hu, hv, y)
    allowed = mask_of(px) | mask_of(py) | mask_of(comp)
    p = restricted_shortest_path(g, allowed, u, v)
    if p is None or not verify_trail(g, p, u, v):
        raise InternalInvariantError(
            "escape path failed trail verification",
            payload={"graph": g, "u": u, "v": v, "component": comp, "xy": (x, y), "path": p},
        )
    return p


def condense(g: Graph, u: int, v: int, core: frozenset[int]):
    """Build the uv-straight graph H on the (compacted) core plus
    contracted-component edges, with witnesses for lifting.  Requires
    escape_check to be None."""
    comps = components_off_core(g, core)
    added: dict[tuple[int, int], frozenset[int]] = {}
    for comp, attach in comps:
        att = sorted(attach)
        for i, x in enumerate(att):
            for y in att[i + 1 :]:
                if not g.has_edge(x, y) and (x, y) not in added:
                    added[(x, y)] = comp
    core_sorted = sorted(core)
    to_new = {x: i for i, x in enumerate(core_sorted)}
    edges = [
        (to_new[x], to_new[y])
        for x, y in g.edges
        if x in core and y in core
    ]
    edges.extend((to_new[x], to_new[y]) for x, y in added)
    h_graph = Graph.from_edges(len(core_sorted), edges)
    lift = LiftData(
        original=g,
        u=u,
        v=v,
        core=core,
        components=tuple(comps),
        added_edges=added,
        to_original=tuple(core_sorted),
    )
    sc = build_straight_context(h_graph, to_new[u], to_new[v], lift=lift)
    return sc, lift


def lift_trail(lift: LiftData, q: Path) -> Path:
    """Replace each added H-edge of a trail of H (given in original ids) by
    a shortest detour through its witness component; verify against G."""
    g = lift.original
    out = [q[0]]
    for i in range(len(q) - 1):
        x, y = q[i], q[i + 1]
        key = (x, y) if x < y else (y, x)
        if g.has_edge(x, y):
            out.append(y)
            continue
        comp = lift.added_edges.get(key)
        if comp is None:
            raise InternalInvariantError(
                "trail of H uses an unknown edge", payload={"edge": key}
            )
        allowed = mask_of(comp) | (1 << x) | (1 << y)
        seg = restricted_shortest_path(g, allowed, x, y)
        if seg is None:
            raise InternalInvariantError(
                "witness component does not connect its attachment pair",
                payload={"edge": key, "component": comp},
            )
        out.extend(seg[1:])
    if not verify_trail(g, out, lift.u, lift.v):
        raise InternalInvariantError(
            "lifted path failed trail verification",
            payload={"graph": g, "q": q, "lifted": out},
        )
    return out


def straighten(g: Graph, u: int, v: int) -> StraightenResult:
    """Either a trail of g found during preprocessing, or a straight context
    (with lifting data) whose traillessness implies that of g."""
    core = straight_core(g, u, v)
    esc = escape_check(g, u, core)
    if esc is not None:
        comp, x, y = esc
        return StraightenResult(trail=escape_trail(g, u, v, comp, x, y))
    sc, lift = condense(g, u, v, core)
    return StraightenResult(context=sc, lift=lift)
