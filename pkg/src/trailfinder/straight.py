"""uv-straight contexts: heights, level structure, monotone-path machinery.

A graph is uv-straight when every vertex lies on at least one shortest
uv-path.  Equivalently (for a connected graph): every vertex other than u
has a neighbor one level below it and every vertex other than v has a
neighbor one level above it, where levels are BFS heights from u.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph, Path, bfs_heights, iter_bits


class StraightnessError(ValueError):
    """The graph violates the uv-straightness invariant."""


@dataclass(frozen=True)
class TwistPair:
    s: int
    t: int
    twist: int


@dataclass(frozen=True)
class StraightContext:
    """A uv-straight graph with its height/level tables and pointer chains.

    down[x] is one neighbor at height h(x)-1 (None only for u); up[x] is one
    neighbor at height h(x)+1 (None only for v).  Both store the smallest
    qualifying index so that monotone extensions are reproducible.  `lift`
    carries the straighten module's lifting data when the context was
    produced by condensation; it is None for graphs used as-is.
    """

    g: Graph
    u: int
    v: int
    h: tuple[int, ...]
    down: tuple
    up: tuple
    levels: tuple[tuple[int, ...], ...]
    level_masks: tuple[int, ...]
    lift: object = field(default=None, compare=False)

    @property
    def height_of_v(self) -> int:
        return self.h[self.v]


def build_straight_context(g: Graph, u: int, v: int, lift=None) -> StraightContext:
    """Validate uv-straightness of g and assemble the context tables."""
    h = bfs_heights(g, u)
    if h[v] == float("inf"):
        raise StraightnessError(f"{v} unreachable from {u}")
    hv = h[v]
    down = [None] * g.n
    up = [None] * g.n
    for x in range(g.n):
        hx = h[x]
        if hx == float("inf"):
            raise StraightnessError(f"vertex {x} unreachable from {u}")
        for y in g.adj_list[x]:  # ascending, so first hit is smallest index
            if down[x] is None and h[y] == hx - 1:
                down[x] = y
            if up[x] is None and h[y] == hx + 1:
                up[x] = y
        if x != u and down[x] is None:
            raise StraightnessError(f"vertex {x} has no neighbor at height {hx - 1}")
        if x != v and up[x] is None:
            raise StraightnessError(f"vertex {x} has no neighbor at height {hx + 1}")
    if h[v] != max(h):
        # a vertex above h(v) could never have an up chain ending at v
        raise StraightnessError("vertex higher than v survived the up-pointer check")
    levels = [[] for _ in range(hv + 1)]
    for x in range(g.n):
        levels[h[x]].append(x)
    masks = []
    for lv in levels:
        m = 0
        for x in lv:
            m |= 1 << x
        masks.append(m)
    return StraightContext(
        g=g,
        u=u,
        v=v,
        h=tuple(int(x) for x in h),
        down=tuple(down),
        up=tuple(up),
        levels=tuple(tuple(lv) for lv in levels),
        level_masks=tuple(masks),
        lift=lift,
    )


def is_uv_straight(g: Graph, u: int, v: int) -> bool:
    try:
        build_straight_context(g, u, v)
    except StraightnessError:
        return False
    return True


def monotone_down(sc: StraightContext, x: int) -> Path:
    """Monotone path from u to x following the down pointers (low height first)."""
    chain = [x]
    while chain[-1] != sc.u:
        nxt = sc.down[chain[-1]]
        if nxt is None:
            raise StraightnessError(f"broken down chain at {chain[-1]}")
        chain.append(nxt)
    chain.reverse()
    return chain


def monotone_up(sc: StraightContext, x: int) -> Path:
    """Monotone path from x to v following the up pointers (low height first)."""
    chain = [x]
    while chain[-1] != sc.v:
        nxt = sc.up[chain[-1]]
        if nxt is None:
            raise StraightnessError(f"broken up chain at {chain[-1]}")
        chain.append(nxt)
    return chain


def monotone_extension(sc: StraightContext, x: int, direction: str) -> Path:
    """Monotone chain from u to x ("down") or x to v ("up"), low height first."""
    if direction == "down":
        return monotone_down(sc, x)
    if direction == "up":
        return monotone_up(sc, x)
    raise ValueError(f"direction must be 'down' or 'up', got {direction!r}")


def twist_pair(sc: StraightContext, p: Path) -> TwistPair:
    """Endpoints of the maximal monotone prefix and suffix of the uv-path p.

    Along a path, consecutive heights differ by at most one, so a prefix
    from u has all-distinct heights exactly while each step climbs by one.
    """
    if not p or p[0] != sc.u or p[-1] != sc.v:
        raise ValueError("p must be a uv-path of the straight context")
    h = sc.h
    i = 0
    while i + 1 < len(p) and h[p[i + 1]] == h[p[i]] + 1:
        i += 1
    j = len(p) - 1
    while j - 1 >= 0 and h[p[j - 1]] == h[p[j]] - 1:
        j -= 1
    s, t = p[i], p[j]
    return TwistPair(s=s, t=t, twist=h[s] - h[t])


def is_monotone(sc: StraightContext, p: Path) -> bool:
    return len({sc.h[x] for x in p}) == len(p)
