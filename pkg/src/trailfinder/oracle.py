"""Exhaustive reference implementations used to certify the fast paths.

Everything here is deliberately naive: backtracking over induced paths,
level-by-level enumeration of monotone spines, and brute-force audits of
the structural facts the fast subroutines rely on.  Size guards refuse
instances large enough to make exhaustion unreasonable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graph import Graph, Path, bfs_heights, restricted_shortest_path, verify_trail
from .straight import StraightContext, twist_pair

TRAIL_ORACLE_MAX_N = 14
WING_ORACLE_MAX_N = 10


class OracleSizeError(ValueError):
    """Instance exceeds the configured exhaustive-search cap."""


def _check_cap(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise OracleSizeError(f"{what} oracle capped at n<={cap}, got n={n}")


def find_trail_brute(g: Graph, u: int, v: int, max_n: int = TRAIL_ORACLE_MAX_N) -> Path | None:
    """Minimum-length uv-trail by exhaustive backtracking, or None.

    Extends induced paths from u in ascending vertex order, pruning any
    extension adjacent to a non-predecessor already on the path, so only
    induced paths are enumerated.  Ties are broken by lexicographic vertex
    order: the returned trail is the lexicographically first among the
    shortest.
    """
    _check_cap(g.n, max_n, "trail")
    h = bfs_heights(g, u)
    if h[v] == float("inf"):
        return None
    dist = h[v]
    best: tuple[int, tuple[int, ...]] | None = None

    path = [u]
    # forbidden: vertices on the path or adjacent to an interior path vertex
    def extend(last: int, forbidden: int) -> None:
        nonlocal best
        for w in g.adj_list[last]:
            bit = 1 << w
            if forbidden & bit:
                continue
            path.append(w)
            if w == v:
                if len(path) - 1 > dist:
                    cand = (len(path) - 1, tuple(path))
                    if best is None or cand < best:
                        best = cand
            else:
                extend(w, forbidden | bit | (g.adj_bits[last] & ~bit))
            path.pop()

    extend(u, 1 << u)
    return list(best[1]) if best else None


def all_induced_paths(g: Graph, u: int, v: int, max_n: int = 9):
    """Every induced uv-path, found the dumb way: enumerate all simple
    paths, then filter by a full chord scan.  Cross-check for the pruned
    oracle; keep n tiny."""
    _check_cap(g.n, max_n, "induced-path enumeration")
    out = []

    def walk(path: list[int]) -> None:
        last = path[-1]
        if last == v:
            if _chordless(g, path):
                out.append(list(path))
            return
        for w in g.adj_list[last]:
            if w not in path:
                path.append(w)
                walk(path)
                path.pop()

    walk([u])
    return out


def _chordless(g: Graph, p: Path) -> bool:
    return all(
        not g.has_edge(p[i], p[j])
        for i in range(len(p))
        for j in range(i + 2, len(p))
    )


@dataclass(frozen=True)
class WingPair:
    """A certified pair of wings for the quadruple quad=(a,b,c,d).

    w1 runs from c down to a* (one vertex per height, descending) and
    contains a; w2 runs from b up to d* (ascending) and contains d.  The
    only adjacency permitted between the two is the pair (c,b).
    """

    w1: tuple[int, ...]
    w2: tuple[int, ...]
    quad: tuple[int, int, int, int]


def _monotone_chains(sc: StraightContext, start: int, length: int, ascending: bool):
    """All monotone chains of `length` vertices starting at `start`, moving
    one level per step (up when ascending, down otherwise)."""
    g = sc.g
    h = sc.h

    def walk(chain: list[int]) -> None:
        if len(chain) == length:
            yield_list.append(list(chain))
            return
        last = chain[-1]
        target = h[last] + 1 if ascending else h[last] - 1
        for w in g.adj_list[last]:
            if h[w] == target:
                chain.append(w)
                walk(chain)
                chain.pop()

    yield_list: list[list[int]] = []
    walk([start])
    return yield_list


def wing_search_brute(
    sc: StraightContext, quad: tuple[int, int, int, int], max_n: int = WING_ORACLE_MAX_N
) -> WingPair | None:
    """First valid wing pair for quad in lexicographic spine order, or None."""
    _check_cap(sc.g.n, max_n, "wing")
    a, b, c, d = quad
    h = sc.h
    if h[a] != h[b] or h[c] != h[d] or h[c] < h[a]:
        return None
    if h[a] == 0 or h[d] == sc.height_of_v:
        return None  # no room for a* below a or d* above d
    # w1: c down to height h(a)-1, passing through a
    span1 = h[c] - (h[a] - 1) + 1
    for w1 in _monotone_chains(sc, c, span1, ascending=False):
        if w1[h[c] - h[a]] != a:
            continue
        span2 = (h[d] + 1) - h[b] + 1
        for w2 in _monotone_chains(sc, b, span2, ascending=True):
            if w2[h[d] - h[b]] != d:
                continue
            wp = WingPair(w1=tuple(w1), w2=tuple(w2), quad=quad)
            if validate_wings(sc, wp):
                return wp
    return None


def validate_wings(sc: StraightContext, wp: WingPair) -> bool:
    """Check every WingPair invariant edge by edge."""
    g = sc.g
    h = sc.h
    a, b, c, d = wp.quad
    w1, w2 = wp.w1, wp.w2
    if not w1 or not w2:
        return False
    if h[a] != h[b] or h[c] != h[d] or h[c] < h[a]:
        return False
    # spine shapes: one vertex per height, correct ends, correct members
    if w1[0] != c or h[w1[-1]] != h[a] - 1:
        return False
    if w2[0] != b or h[w2[-1]] != h[d] + 1:
        return False
    for i in range(len(w1) - 1):
        if h[w1[i + 1]] != h[w1[i]] - 1 or not g.has_edge(w1[i], w1[i + 1]):
            return False
    for i in range(len(w2) - 1):
        if h[w2[i + 1]] != h[w2[i]] + 1 or not g.has_edge(w2[i], w2[i + 1]):
            return False
    if len(w1) != h[c] - h[a] + 2 or len(w2) != h[d] - h[b] + 2:
        return False
    if w1[h[c] - h[a]] != a or w2[h[d] - h[b]] != d:
        return False
    # disjoint, and anticomplete except possibly the pair (c, b)
    if set(w1) & set(w2):
        return False
    for x in w1:
        for y in w2:
            if (x, y) == (c, b):
                continue
            if g.has_edge(x, y):
                return False
    return True


@dataclass
class TwistAudit:
    passed: bool
    height_violation: tuple | None = None
    sidetrack_violation: tuple | None = None
    sidetracks_checked: int = 0


def audit_twist_lemmas(sc: StraightContext, p: Path, max_n: int = 14) -> TwistAudit:
    """Audit the height-sandwich and sidetrack-distance facts on a shortest
    uv-trail p of the straight context.

    The height fact: every vertex of P[s,t] has height between h(t) and
    h(s) for the twist pair (s,t).  The distance fact: for every sidetrack
    S (a monotone u->c chain with h(c)=h(s) that passes through the prefix
    vertex at height h(t) and admits a separated monotone t->v partner),
    the u-t distance inside the subgraph on S plus P[s,t] is at least the
    u-t distance along p itself.
    """
    _check_cap(sc.g.n, max_n, "twist audit")
    g = sc.g
    h = sc.h
    tp = twist_pair(sc, p)
    s, t = tp.s, tp.t
    if s == sc.v and t == sc.u:
        raise ValueError("p is monotone, hence not a trail")
    if not verify_trail(g, p, sc.u, sc.v):
        raise ValueError("p is not a uv-trail of the context graph")
    si, ti = p.index(s), p.index(t)
    seg = p[si : ti + 1]
    for x in seg:
        if not h[t] <= h[x] <= h[s]:
            return TwistAudit(passed=False, height_violation=(x, h[x], h[t], h[s]))

    # the prefix vertex a at height h(t); prefix p[:si+1] is monotone
    a = next(x for x in p[: si + 1] if h[x] == h[t])
    d_p_ut = ti  # distance along p from u to t
    seg_set = set(seg)
    checked = 0
    l4 = None
    for c in sc.levels[h[s]]:
        for chain in _monotone_chains(sc, c, h[s] + 1, ascending=False):
            S = list(reversed(chain))  # u .. c
            if S[h[t]] != a:
                continue
            if t in S:
                continue
            if not _has_separated_partner(sc, S, t):
                continue
            checked += 1
            allowed = 0
            for x in itertools.chain(S, seg):
                allowed |= 1 << x
            q = restricted_shortest_path(g, allowed, sc.u, t)
            if q is not None and len(q) - 1 < d_p_ut:
                l4 = (tuple(S), tuple(q), len(q) - 1, d_p_ut)
                return TwistAudit(
                    passed=False, sidetrack_violation=l4, sidetracks_checked=checked
                )
    return TwistAudit(passed=True, sidetracks_checked=checked)


def _has_separated_partner(sc: StraightContext, S: list[int], t: int) -> bool:
    """Is there a monotone t->v chain T with S-c anticomplete to T and S
    anticomplete to T-t (c being the top of S)?"""
    g = sc.g
    c = S[-1]
    span = sc.height_of_v - sc.h[t] + 1
    s_set = set(S)
    for T in _monotone_chains(sc, t, span, ascending=True):
        if s_set & set(T):
            continue
        ok = True
        for x in S:
            for y in T:
                if g.has_edge(x, y) and not (x == c and y == t):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False
