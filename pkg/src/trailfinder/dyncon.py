"""Fully dynamic connectivity with idempotent edge tracking.

The public wrapper keeps the present-edge set, so repeated inserts or
deletes of the same edge are no-ops: the sweep drivers request the same
deletion from overlapping neighborhoods and rely on that.  Two backends
answer the structural queries: a bitset-BFS naive backend (default below
a size threshold, where it is simpler and faster in practice) and the
Holm--de Lichtenberg--Thorup forest-of-levels structure with amortized
polylogarithmic updates.

HDT invariants maintained here: each edge carries a level, starting at 0
and only ever increasing; the forest at level l spans the components of
the subgraph of edges with level >= l, and the level-l forest refines the
level-(l-1) forest; a tree at level l never exceeds n / 2^l vertices,
which bounds levels by log2 n.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graph import iter_bits

NAIVE_THRESHOLD = 256

_prio = random.Random(0x7EA1).random


class _Node:
    """Treap node for one Euler-tour position: an arc (x,y) or a vertex
    loop (v,v).  Aggregates: subtree node count, loop count, and the two
    search flags (loop-has-nontree-edges, arc-is-level-tree-edge)."""

    __slots__ = (
        "prio", "left", "right", "parent",
        "size", "vcount", "edge", "is_loop",
        "f_nt", "f_arc", "s_nt", "s_arc",
    )

    def __init__(self, edge, is_loop):
        self.prio = _prio()
        self.left = self.right = self.parent = None
        self.edge = edge
        self.is_loop = is_loop
        self.size = 1
        self.vcount = 1 if is_loop else 0
        self.f_nt = False
        self.f_arc = False
        self.s_nt = False
        self.s_arc = False


def _pull(t: _Node) -> None:
    size = 1
    vcount = 1 if t.is_loop else 0
    s_nt = t.f_nt
    s_arc = t.f_arc
    if t.left is not None:
        size += t.left.size
        vcount += t.left.vcount
        s_nt |= t.left.s_nt
        s_arc |= t.left.s_arc
    if t.right is not None:
        size += t.right.size
        vcount += t.right.vcount
        s_nt |= t.right.s_nt
        s_arc |= t.right.s_arc
    t.size = size
    t.vcount = vcount
    t.s_nt = s_nt
    t.s_arc = s_arc


def _root(t: _Node) -> _Node:
    while t.parent is not None:
        t = t.parent
    return t


def _index(t: _Node) -> int:
    idx = t.left.size if t.left is not None else 0
    while t.parent is not None:
        if t is t.parent.right:
            idx += t.parent.size - t.size
        t = t.parent
    return idx


def _merge(a, b):
    if a is None:
        return b
    if b is None:
        return a
    if a.prio > b.prio:
        r = _merge(a.right, b)
        a.right = r
        r.parent = a
        _pull(a)
        a.parent = None
        return a
    l = _merge(a, b.left)
    b.left = l
    l.parent = b
    _pull(b)
    b.parent = None
    return b


def _split(t, k):
    """First k nodes / the rest; both returned roots have parent None."""
    if t is None:
        return None, None
    t.parent = None
    lsize = t.left.size if t.left is not None else 0
    if lsize >= k:
        l, r = _split(t.left, k)
        t.left = r
        if r is not None:
            r.parent = t
        _pull(t)
        return l, t
    l, r = _split(t.right, k - lsize - 1)
    t.right = l
    if l is not None:
        l.parent = t
    _pull(t)
    return t, r


def _bubble(t: _Node) -> None:
    """Recompute aggregates from t up to the root after a flag change."""
    while t is not None:
        _pull(t)
        t = t.parent


class _EttForest:
    """Euler-tour forest for one HDT level."""

    def __init__(self):
        self.loops = {}
        self.arcs = {}

    def loop(self, v: int) -> _Node:
        node = self.loops.get(v)
        if node is None:
            node = _Node((v, v), True)
            self.loops[v] = node
        return node

    def root_of(self, v: int) -> _Node:
        return _root(self.loop(v))

    def connected(self, x: int, y: int) -> bool:
        return x == y or self.root_of(x) is self.root_of(y)

    def _reroot(self, v: int) -> _Node:
        node = self.loop(v)
        t = _root(node)
        i = _index(node)
        if i == 0:
            return t
        a, b = _split(t, i)
        return _merge(b, a)

    def link(self, x: int, y: int) -> None:
        tx = self._reroot(x)
        ty = self._reroot(y)
        axy = _Node((x, y), False)
        ayx = _Node((y, x), False)
        self.arcs[(x, y)] = axy
        self.arcs[(y, x)] = ayx
        _merge(_merge(_merge(tx, axy), ty), ayx)

    def cut(self, x: int, y: int) -> None:
        n1 = self.arcs.pop((x, y))
        n2 = self.arcs.pop((y, x))
        i1, i2 = _index(n1), _index(n2)
        if i1 > i2:
            n1, n2 = n2, n1
            i1, i2 = i2, i1
        t = _root(n1)
        left, rest = _split(t, i1)
        arc1, rest = _split(rest, 1)
        mid, rest = _split(rest, i2 - i1 - 1)
        arc2, right = _split(rest, 1)
        del arc1, arc2
        _merge(left, right)
        # mid (possibly a lone loop) is the severed side's tour

    def set_loop_flag(self, v: int, on: bool) -> None:
        node = self.loop(v)
        if node.f_nt != on:
            node.f_nt = on
            _bubble(node)

    def set_arc_flag(self, x: int, y: int, on: bool) -> None:
        node = self.arcs[(x, y)]
        if node.f_arc != on:
            node.f_arc = on
            _bubble(node)

    @staticmethod
    def find_flag_vertex(root: _Node) -> int | None:
        t = root
        if not t.s_nt:
            return None
        while True:
            if t.left is not None and t.left.s_nt:
                t = t.left
            elif t.f_nt:
                return t.edge[0]
            else:
                t = t.right

    @staticmethod
    def find_flag_arc(root: _Node) -> tuple[int, int] | None:
        t = root
        if not t.s_arc:
            return None
        while True:
            if t.left is not None and t.left.s_arc:
                t = t.left
            elif t.f_arc:
                return t.edge
            else:
                t = t.right


@dataclass
class HdtStats:
    tree_promotions: int = 0
    nontree_promotions: int = 0
    replacement_scans: int = 0


class HdtConnectivity:
    """Holm--de Lichtenberg--Thorup connectivity over n vertices."""

    def __init__(self, n: int):
        self.n = n
        self.max_level = max(1, n.bit_length())  # levels 0..max_level
        self.forests = [_EttForest() for _ in range(self.max_level + 1)]
        self.edge_level: dict[tuple[int, int], int] = {}
        self.edge_is_tree: dict[tuple[int, int], bool] = {}
        self.nt: list[dict[int, set[int]]] = [dict() for _ in range(self.max_level + 1)]
        self.stats = HdtStats()

    def connected(self, x: int, y: int) -> bool:
        return self.forests[0].connected(x, y)

    def insert(self, x: int, y: int) -> None:
        key = (x, y) if x < y else (y, x)
        self.edge_level[key] = 0
        if self.forests[0].connected(x, y):
            self.edge_is_tree[key] = False
            self._nt_add(0, key)
        else:
            self.edge_is_tree[key] = True
            self.forests[0].link(x, y)
            self.forests[0].set_arc_flag(x, y, True)

    def delete(self, x: int, y: int) -> None:
        key = (x, y) if x < y else (y, x)
        lev = self.edge_level.pop(key)
        if not self.edge_is_tree.pop(key):
            self._nt_remove(lev, key)
            return
        # canonical arc carries the level flag in forest lev
        self.forests[lev].set_arc_flag(key[0], key[1], False)
        for i in range(lev + 1):
            self.forests[i].cut(key[0], key[1])
        for i in range(lev, -1, -1):
            if self._replace(i, key[0], key[1]):
                return

    def _replace(self, i: int, x: int, y: int) -> bool:
        forest = self.forests[i]
        rx = forest.root_of(x)
        ry = forest.root_of(y)
        if rx.vcount > ry.vcount:
            x, y = y, x
            rx, ry = ry, rx
        self.stats.replacement_scans += 1
        # push the small tree's level-i tree edges one level down the hierarchy
        if i + 1 <= self.max_level:
            while True:
                arc = forest.find_flag_arc(_root(forest.loop(x)))
                if arc is None:
                    break
                p, q = arc
                self.stats.tree_promotions += 1
                self.edge_level[(p, q)] = i + 1
                forest.set_arc_flag(p, q, False)
                nxt = self.forests[i + 1]
                nxt.link(p, q)
                nxt.set_arc_flag(p, q, True)
        # scan the small tree's level-i nontree edges for one crossing to
        # the other side; promote the rest
        while True:
            root_small = _root(forest.loop(x))
            p = forest.find_flag_vertex(root_small)
            if p is None:
                return False
            for q in list(self.nt[i].get(p, ())):
                key = (p, q) if p < q else (q, p)
                self._nt_remove(i, key)
                if forest.connected(q, y):
                    self.edge_is_tree[key] = True
                    for j in range(i + 1):
                        self.forests[j].link(key[0], key[1])
                    forest.set_arc_flag(key[0], key[1], True)
                    return True
                self.stats.nontree_promotions += 1
                self.edge_level[key] = i + 1
                self._nt_add(i + 1, key)

    def _nt_add(self, lev: int, key: tuple[int, int]) -> None:
        for v, w in (key, key[::-1]):
            bucket = self.nt[lev].setdefault(v, set())
            if not bucket:
                self.forests[lev].set_loop_flag(v, True)
            bucket.add(w)

    def _nt_remove(self, lev: int, key: tuple[int, int]) -> None:
        for v, w in (key, key[::-1]):
            bucket = self.nt[lev][v]
            bucket.discard(w)
            if not bucket:
                del self.nt[lev][v]
                self.forests[lev].set_loop_flag(v, False)

    def audit(self) -> None:
        """Structural sanity: nontree endpoints connected at their level;
        level-l trees refine level-(l-1) trees.  Raises on violation."""
        for key, lev in self.edge_level.items():
            x, y = key
            if self.edge_is_tree[key]:
                for j in range(lev + 1):
                    if (x, y) not in self.forests[j].arcs:
                        raise AssertionError(f"tree edge {key} missing at level {j}")
            else:
                if not self.forests[lev].connected(x, y):
                    raise AssertionError(f"nontree edge {key} disconnected at level {lev}")
        for lev in range(1, self.max_level + 1):
            for (x, y) in self.forests[lev].arcs:
                if x < y and not self.forests[lev - 1].connected(x, y):
                    raise AssertionError(
                        f"level-{lev} tree edge ({x},{y}) not spanned at level {lev - 1}"
                    )


class DynConn:
    """Idempotent present-set wrapper over a connectivity backend."""

    def __init__(self, n: int, backend: str = "auto", naive_threshold: int = NAIVE_THRESHOLD):
        if backend == "auto":
            backend = "naive" if n <= naive_threshold else "hdt"
        if backend not in ("naive", "hdt"):
            raise ValueError(f"unknown backend {backend!r}")
        self.n = n
        self.backend = backend
        self.present: set[tuple[int, int]] = set()
        self.adj = [0] * n
        self.hdt = HdtConnectivity(n) if backend == "hdt" else None

    def insert(self, x: int, y: int) -> bool:
        if x == y:
            raise ValueError("self-loops not supported")
        key = (x, y) if x < y else (y, x)
        if key in self.present:
            return False
        self.present.add(key)
        self.adj[x] |= 1 << y
        self.adj[y] |= 1 << x
        if self.hdt is not None:
            self.hdt.insert(*key)
        return True

    def delete(self, x: int, y: int) -> bool:
        key = (x, y) if x < y else (y, x)
        if key not in self.present:
            return False
        self.present.remove(key)
        self.adj[x] &= ~(1 << y)
        self.adj[y] &= ~(1 << x)
        if self.hdt is not None:
            self.hdt.delete(*key)
        return True

    def connected(self, x: int, y: int) -> bool:
        if x == y:
            return True
        if self.hdt is not None:
            return self.hdt.connected(x, y)
        return self._bfs_connected(x, y)

    def _bfs_connected(self, x: int, y: int) -> bool:
        adj = self.adj
        ybit = 1 << y
        visited = frontier = 1 << x
        while frontier:
            nxt = 0
            for a in iter_bits(frontier):
                nxt |= adj[a]
            nxt &= ~visited
            if nxt & ybit:
                return True
            visited |= nxt
            frontier = nxt
        return False

    def neighbors_mask(self, v: int) -> int:
        return self.adj[v]

    def incident(self, v: int):
        """Present edges at v, as (v, w) pairs."""
        return [(v, w) for w in iter_bits(self.adj[v])]


def replay_script(dc: DynConn, ops):
    """Run parsed (kind, x, y, expected) ops; returns list of mismatches
    (op index, got) for queries whose recorded expectation disagrees."""
    mismatches = []
    for idx, (kind, x, y, expected) in enumerate(ops):
        if kind == "I":
            dc.insert(x, y)
        elif kind == "D":
            dc.delete(x, y)
        elif kind == "Q":
            got = dc.connected(x, y)
            if expected is not None and got != expected:
                mismatches.append((idx, got))
        else:
            raise ValueError(f"unknown op kind {kind!r}")
    return mismatches


def parse_script(text: str):
    """Fuzz-script line format: 'I x y' | 'D x y' | 'Q x y expected'."""
    ops = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        if kind in ("I", "D") and len(parts) == 3:
            ops.append((kind, int(parts[1]), int(parts[2]), None))
        elif kind == "Q" and len(parts) == 4:
            expected = parts[3] in ("1", "true", "True")
            ops.append((kind, int(parts[1]), int(parts[2]), expected))
        else:
            raise ValueError(f"line {lineno}: malformed op {line!r}")
    return ops


def format_script(ops) -> str:
    lines = []
    for kind, x, y, expected in ops:
        if kind == "Q":
            lines.append(f"Q {x} {y} {1 if expected else 0}")
        else:
            lines.append(f"{kind} {x} {y}")
    return "\n".join(lines) + "\n"
