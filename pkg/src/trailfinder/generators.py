"""Seeded instance generators: random graphs, layered straight graphs,
planted-trail graphs, and dynamic-connectivity fuzz scripts.

Everything is deterministic under its seed.  The layered generator is
straight by construction; the planted generator certifies its embedded
detour before returning.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import Graph, bfs_heights, verify_trail
from .oracle import TRAIL_ORACLE_MAX_N, find_trail_brute
from .straight import is_uv_straight


@dataclass(frozen=True)
class Instance:
    g: Graph
    u: int
    v: int
    kind: str
    seed: int
    planted: tuple[int, ...] | None = None  # certified trail, if any


def gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi graph with edge probability p."""
    if n < 0 or not 0.0 <= p <= 1.0:
        raise ValueError(f"bad gnp parameters n={n}, p={p}")
    rng = random.Random(seed)
    edges = [
        (x, y) for x in range(n) for y in range(x + 1, n) if rng.random() < p
    ]
    return Graph.from_edges(n, edges)


def gnp_instance(n: int, p: float, seed: int) -> Instance:
    g = gnp(n, p, seed)
    rng = random.Random(seed ^ 0x5EED)
    u = rng.randrange(n)
    v = rng.randrange(n)
    return Instance(g=g, u=u, v=v, kind="gnp", seed=seed)


def layered(n: int, seed: int, extra_edge_prob: float = 0.25) -> Instance:
    """uv-straight graph: u alone on layer 0, v alone on the top layer,
    random layer sizes between them, every mid-layer vertex wired to at
    least one neighbor below and one above, plus optional extra edges that
    never span more than one layer.

    Heights equal layers: down chains give h(x) <= layer(x), and since no
    edge skips a layer no path can do better.
    """
    if n < 2:
        raise ValueError(f"layered graphs need n >= 2, got {n}")
    rng = random.Random(seed)
    if n == 2:
        return Instance(Graph.from_edges(2, [(0, 1)]), 0, 1, "layered", seed)
    depth = rng.randint(2, n - 1)  # number of layers minus one
    mid = list(range(1, n - 1))
    # cut the mid vertices into depth-1 nonempty consecutive runs
    cuts = [0] + sorted(rng.sample(range(1, n - 2), depth - 2)) + [n - 2]
    runs = [mid[cuts[i] : cuts[i + 1]] for i in range(depth - 1)]
    layers: list[list[int]] = [[0], *runs, [n - 1]]

    edges = set()
    for lvl in range(1, len(layers)):
        below = layers[lvl - 1]
        for x in layers[lvl]:
            edges.add(tuple(sorted((x, rng.choice(below)))))
    for lvl in range(len(layers) - 1):
        above = layers[lvl + 1]
        for x in layers[lvl]:
            if not any((min(x, y), max(x, y)) in edges for y in above):
                edges.add(tuple(sorted((x, rng.choice(above)))))
    if extra_edge_prob > 0:
        for lvl in range(len(layers)):
            group = layers[lvl]
            for i, x in enumerate(group):
                for y in group[i + 1 :]:
                    if rng.random() < extra_edge_prob:
                        edges.add((x, y))
                if lvl + 1 < len(layers):
                    for y in layers[lvl + 1]:
                        if rng.random() < extra_edge_prob:
                            edges.add(tuple(sorted((x, y))))
    g = Graph.from_edges(n, sorted(edges))
    inst = Instance(g=g, u=0, v=n - 1, kind="layered", seed=seed)
    if not is_uv_straight(g, 0, n - 1):
        raise AssertionError(f"layered generator produced a non-straight graph (seed {seed})")
    return inst


def planted(n: int, seed: int) -> Instance:
    """Layered graph plus a vertex-disjoint detour chain from u to v that is
    one step longer than the uv-distance, certified as a trail.

    The chain interior touches nothing but the chain, so it stays chordless
    no matter what the layered part looks like, and since added edges never
    shorten the layered distances the detour stays strictly longer.
    """
    if n < 6:
        raise ValueError(f"planted graphs need n >= 6, got {n}")
    base = layered(n, seed)
    dist = bfs_heights(base.g, 0)[n - 1]
    chain_len = int(dist) + 1  # edges in the detour, one more than the distance
    total = n + chain_len - 1
    chain = [0] + [n + i for i in range(chain_len - 1)] + [n - 1]
    edges = set(base.g.edges)
    for i in range(len(chain) - 1):
        edges.add(tuple(sorted((chain[i], chain[i + 1]))))
    g = Graph.from_edges(total, sorted(edges))
    if not verify_trail(g, chain, 0, n - 1):
        raise AssertionError(f"planted generator failed to certify its detour (seed {seed})")
    if g.n <= TRAIL_ORACLE_MAX_N:
        assert find_trail_brute(g, 0, n - 1) is not None
    return Instance(
        g=g, u=0, v=n - 1, kind="planted", seed=seed, planted=tuple(chain)
    )


def straight_with_trail(n: int, seed: int) -> Instance:
    """A uv-straight instance guaranteed to have a trail.

    Trail-bearing straight graphs are far too rare (well under a percent of
    layered draws at small n) for rejection sampling, so this plants an
    eight-vertex gadget instead: the path u-1-3-4-5-7 folds back one level
    at the 3-4 step, and the parallel chains u-2-4 and 3-6-7 restore
    straightness without chording it.  Extra vertices are padded in at the
    middle levels with random neighbors; since every padding edge touches a
    non-trail vertex, the planted trail stays chordless, heights stay
    intact, and so does straightness.
    """
    if n < 8:
        raise ValueError(f"straight trail gadget needs n >= 8, got {n}")
    rng = random.Random(seed)
    # vertices 0..7 at heights 0,1,1,2,2,3,3,4; planted trail 0-1-3-4-5-7
    height = {0: 0, 1: 1, 2: 1, 3: 2, 4: 2, 5: 3, 6: 3, 7: 4}
    edges = {(0, 1), (0, 2), (1, 3), (2, 4), (3, 4), (3, 6), (4, 5), (5, 7), (6, 7)}
    trail = [0, 1, 3, 4, 5, 7]
    trail_set = set(trail)
    levels = {0: [0], 1: [1, 2], 2: [3, 4], 3: [5, 6], 4: [7]}
    for z in range(8, n):
        lvl = rng.randint(1, 3)
        height[z] = lvl
        edges.add(tuple(sorted((z, rng.choice(levels[lvl - 1])))))
        edges.add(tuple(sorted((z, rng.choice(levels[lvl + 1])))))
        levels[lvl].append(z)
    # optional extra edges; every one touches a padding vertex, so the
    # planted trail cannot gain a chord
    for z in range(8, n):
        for w in range(n):
            if w == z or abs(height[w] - height[z]) > 1:
                continue
            if rng.random() < 0.15:
                edges.add(tuple(sorted((z, w))))
    g = Graph.from_edges(n, sorted(edges))
    if not is_uv_straight(g, 0, 7) or not verify_trail(g, trail, 0, 7):
        raise AssertionError(f"straight trail gadget construction broke (seed {seed})")
    return Instance(
        g=g, u=0, v=7, kind="straight-trail", seed=seed, planted=tuple(trail)
    )


def generate(kind: str, n: int, seed: int, p: float = 0.3) -> Instance:
    if kind == "gnp":
        return gnp_instance(n, p, seed)
    if kind == "layered":
        return layered(n, seed)
    if kind == "planted":
        return planted(n, seed)
    raise ValueError(f"unknown generator kind {kind!r}")


def gen_dc_script(n: int, op_count: int, seed: int):
    """Mixed insert/delete/query script with recorded answers.

    Two edge pools keep the replay oracle honest and fast: dense pairs
    inside two small clusters (lots of alternative paths, so deletions
    rarely disconnect) and sparse global pairs (long thin bridges, so
    deletions often disconnect).  Operations come in phases that lean
    insert-heavy, delete-heavy, or balanced.  Expected query answers are
    recorded at generation time from an incrementally maintained adjacency
    via BFS.
    """
    rng = random.Random(seed)
    cluster = min(64, max(2, n // 4))
    pool_dense = [
        (x, y)
        for base in (0, n - cluster)
        for x in range(base, base + cluster)
        for y in range(x + 1, base + cluster)
    ]
    pool_sparse = [
        (x, y)
        for x, y in ((rng.randrange(n), rng.randrange(n)) for _ in range(4 * n))
        if x != y
    ]
    pool_sparse = [tuple(sorted(e)) for e in pool_sparse]
    adj = [0] * n
    present: set[tuple[int, int]] = set()

    def bfs(x: int, y: int) -> bool:
        if x == y:
            return True
        visited = frontier = 1 << x
        target = 1 << y
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= adj[low.bit_length() - 1]
                f ^= low
            nxt &= ~visited
            if nxt & target:
                return True
            visited |= nxt
            frontier = nxt
        return False

    ops = []
    phase_kinds = ("grow", "shrink", "mixed")
    while len(ops) < op_count:
        phase = rng.choice(phase_kinds)
        block = min(rng.randint(50, 400), op_count - len(ops))
        if phase == "grow":
            weights = (0.7, 0.1, 0.2)
        elif phase == "shrink":
            weights = (0.1, 0.7, 0.2)
        else:
            weights = (0.4, 0.4, 0.2)
        for _ in range(block):
            kind = rng.choices(("I", "D", "Q"), weights=weights)[0]
            pool = pool_dense if rng.random() < 0.5 else pool_sparse
            if kind == "I":
                x, y = rng.choice(pool)
                key = (x, y)
                if key not in present:
                    present.add(key)
                    adj[x] |= 1 << y
                    adj[y] |= 1 << x
                ops.append(("I", x, y, None))
            elif kind == "D":
                if present and rng.random() < 0.8:
                    key = rng.choice(sorted(present)) if len(present) < 32 else next(iter(present))
                    x, y = key
                else:
                    x, y = rng.choice(pool)
                    key = (x, y)
                if key in present:
                    present.remove(key)
                    adj[x] &= ~(1 << y)
                    adj[y] &= ~(1 << x)
                ops.append(("D", x, y, None))
            else:
                x = rng.randrange(n)
                y = rng.randrange(n)
                ops.append(("Q", x, y, bfs(x, y)))
    return ops
