"""Guess-and-verify sweep drivers and the end-to-end pipeline.

Each subroutine takes a small tuple of vertices and either reports a
verified trail of the straight graph or proves the tuple is not a marker.
Sweeping all tuples decides existence.  The quadruple subroutine B plus
its full sweep give the simple driver; the pair subroutines B1 (repeated
per-vertex connectivity via static BFS) and B2 (one dynamic-connectivity
pass per pair, processing candidate tops from high to low) give the fast
drivers.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field

from .dyncon import DynConn
from .graph import Graph, Path, iter_bits, mask_of, restricted_shortest_path, verify_trail
from .straight import StraightContext, monotone_down, monotone_up
from .straighten import InternalInvariantError, straighten
from .wings import WingIndex, build_base, build_closure, extract_wings, is_winged, winged_partners

ALGORITHMS = ("n6", "b1", "b2")
MODES = ("first", "shortest")


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("TRAILFINDER_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class SweepConfig:
    algorithm: str = "b2"
    mode: str = "first"
    workers: int = 1
    dc_backend: str = "auto"

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS + ("brute",):
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass
class TrailReport:
    outcome: str  # "trail" | "trailless"
    path: Path | None
    algorithm: str
    marker: tuple | None = None
    stats: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.outcome == "trail"


def _closed_neighborhood(g: Graph, vertices) -> int:
    acc = 0
    for x in vertices:
        acc |= g.adj_bits[x] | (1 << x)
    return acc


def _band_mask(sc: StraightContext, lo: int, hi: int) -> int:
    acc = 0
    for lvl in range(lo, hi + 1):
        acc |= sc.level_masks[lvl]
    return acc


def _spine_paths(sc: StraightContext, wp) -> tuple[Path, Path]:
    """Monotone u->c path containing W1 and b->v path containing W2."""
    a_star = wp.w1[-1]
    d_star = wp.w2[-1]
    s_path = monotone_down(sc, a_star) + list(reversed(wp.w1[:-1]))
    t_path = list(wp.w2[:-1]) + monotone_up(sc, d_star)
    return s_path, t_path


def _checked_trail(sc: StraightContext, path: Path, where: str, marker) -> Path:
    if not verify_trail(sc.g, path, sc.u, sc.v):
        raise InternalInvariantError(
            f"{where} reported a path that fails trail verification",
            payload={"graph": sc.g, "u": sc.u, "v": sc.v, "path": path, "marker": marker},
        )
    return path


def subroutine_B(sc: StraightContext, wi: WingIndex, quad) -> Path | None:
    """Quadruple subroutine: wings, spines, then a shortest connection from
    c to b inside the band stripped of both spines' neighborhoods."""
    if not is_winged(wi, quad):
        return None
    a, b, c, d = quad
    wp = extract_wings(wi, quad)
    s_path, t_path = _spine_paths(sc, wp)
    g = sc.g
    h = sc.h
    band = _band_mask(sc, h[b], h[c])
    shield = _closed_neighborhood(g, s_path[:-1]) | _closed_neighborhood(g, t_path[1:])
    allowed = band & ~(shield & ~((1 << c) | (1 << b)))
    mid = restricted_shortest_path(g, allowed, c, b)
    if mid is None:
        return None
    path = s_path + mid[1:-1] + t_path
    return _checked_trail(sc, path, "subroutine B", quad)


def subroutine_B1(sc: StraightContext, wi: WingIndex, pair, mode: str = "first") -> Path | None:
    """Pair subroutine, phase-1 style: try every top vertex c with a static
    connectivity check per c.  In shortest mode all tops are tried and the
    best trail is returned."""
    a, b = pair
    g = sc.g
    h = sc.h
    best: Path | None = None
    for lvl in range(h[a], sc.height_of_v + 1):
        for c in sc.levels[lvl]:
            partners = winged_partners(wi, a, b, c)
            if not partners:
                continue
            wp = extract_wings(wi, (a, b, c, partners[0]))
            s_path, t_path = _spine_paths(sc, wp)
            band = _band_mask(sc, h[b], h[c])
            shield = _closed_neighborhood(g, s_path[:-1])
            allowed = (band & ~(shield & ~(1 << c))) | mask_of(t_path)
            if restricted_shortest_path(g, allowed, c, b) is None:
                continue
            tail = restricted_shortest_path(g, allowed, c, sc.v)
            path = _checked_trail(sc, s_path + tail[1:], "subroutine B1", (a, b, c))
            if mode == "first":
                return path
            if best is None or (len(path), path) < (len(best), best):
                best = path
    return best


def subroutine_B2(
    sc: StraightContext, wi: WingIndex, pair, dc_backend: str = "auto"
) -> Path | None:
    """Pair subroutine, phase-2 style: one dynamic-connectivity structure,
    candidate tops processed from high to low so every edge is updated a
    bounded number of times."""
    a, b = pair
    g = sc.g
    h = sc.h
    hv = sc.height_of_v
    ha = h[a]

    tops: dict[int, list[int]] = {}
    spines: dict[int, tuple[Path, Path]] = {}
    for lvl in range(ha, hv + 1):
        for c in sc.levels[lvl]:
            partners = winged_partners(wi, a, b, c)
            if partners:
                tops.setdefault(lvl, []).append(c)
                wp = extract_wings(wi, (a, b, c, partners[0]))
                spines[c] = _spine_paths(sc, wp)
    if not tops:
        return None

    universe = _band_mask(sc, ha, hv)
    dc = DynConn(g.n, backend=dc_backend)
    for x, y in g.edges:
        if (universe >> x & 1) and (universe >> y & 1):
            dc.insert(x, y)

    for i in range(hv - 1, ha - 1, -1):
        level_tops = tops.get(i, [])
        for c in level_tops:
            s_path, _ = spines[c]
            shield = (_closed_neighborhood(g, s_path[:-1]) & ~(1 << c)) & universe
            for w in iter_bits(shield):
                for z in iter_bits(g.adj_bits[w] & universe):
                    dc.delete(w, z)
        for c in level_tops:
            for z in iter_bits(g.adj_bits[c] & universe):
                dc.insert(c, z)
        for x in sc.levels[i]:
            for z in iter_bits(g.adj_bits[x] & sc.level_masks[i + 1]):
                dc.delete(x, z)
        for c in level_tops:
            if dc.connected(b, c):
                s_path, t_path = spines[c]
                # tail lives in the induced subgraph of G on c's component
                # of H plus the partner path: a shortest path there is
                # chordless by construction
                allowed = _component_mask(dc, c) | mask_of(t_path)
                tail = restricted_shortest_path(g, allowed, c, sc.v)
                if tail is None:
                    raise InternalInvariantError(
                        "connected top has no tail path in H plus its partner",
                        payload={"pair": pair, "c": c},
                    )
                return _checked_trail(sc, s_path + tail[1:], "subroutine B2", (a, b, c))
    return None


def _component_mask(dc: DynConn, x: int) -> int:
    """Vertex bitmask of x's component under the present edges."""
    visited = frontier = 1 << x
    while frontier:
        nxt = 0
        for a in iter_bits(frontier):
            nxt |= dc.adj[a]
        frontier = nxt & ~visited
        visited |= frontier
    return visited


def _iter_pairs(sc: StraightContext):
    for lvl in range(sc.height_of_v + 1):
        members = sc.levels[lvl]
        for a in members:
            for b in members:
                if a != b:
                    yield (a, b)


def _iter_quads(sc: StraightContext):
    """Quadruples in increasing (height gap, levels, lexicographic) order."""
    hv = sc.height_of_v
    for gap in range(hv + 1):
        for lvl in range(hv - gap + 1):
            low = sc.levels[lvl]
            high = sc.levels[lvl + gap]
            for a in low:
                for b in low:
                    if a == b:
                        continue
                    for c in high:
                        for d in high:
                            if c != d or gap == 0:
                                yield (a, b, c, d)


def driver_n6(sc: StraightContext, wi: WingIndex, cfg: SweepConfig) -> TrailReport:
    """Full quadruple sweep of subroutine B."""
    best: tuple[Path, tuple] | None = None
    checked = 0
    for quad in _iter_quads(sc):
        checked += 1
        path = subroutine_B(sc, wi, quad)
        if path is None:
            continue
        if cfg.mode == "first":
            return TrailReport(
                "trail", path, "n6", marker=quad, stats={"tuples_checked": checked}
            )
        if best is None or (len(path), path) < (len(best[0]), best[0]):
            best = (path, quad)
    if best is not None:
        return TrailReport(
            "trail", best[0], "n6", marker=best[1], stats={"tuples_checked": checked}
        )
    return TrailReport("trailless", None, "n6", stats={"tuples_checked": checked})


def driver_pairs(sc: StraightContext, wi: WingIndex, cfg: SweepConfig) -> TrailReport:
    """Pair sweep of B1 or B2, optionally fanned out over worker threads
    with a first-success latch."""
    algorithm = cfg.algorithm
    pairs = list(_iter_pairs(sc))
    if cfg.workers > 1:
        return _parallel_pair_sweep(sc, wi, cfg, pairs)
    best: tuple[Path, tuple] | None = None
    checked = 0
    for pair in pairs:
        checked += 1
        path = _call_pair_subroutine(sc, wi, cfg, pair)
        if path is None:
            continue
        if cfg.mode == "first":
            return TrailReport(
                "trail", path, algorithm, marker=pair, stats={"tuples_checked": checked}
            )
        if best is None or (len(path), path) < (len(best[0]), best[0]):
            best = (path, pair)
    if best is not None:
        return TrailReport(
            "trail", best[0], algorithm, marker=best[1], stats={"tuples_checked": checked}
        )
    return TrailReport("trailless", None, algorithm, stats={"tuples_checked": checked})


def _call_pair_subroutine(sc, wi, cfg: SweepConfig, pair) -> Path | None:
    if cfg.algorithm == "b1":
        return subroutine_B1(sc, wi, pair, mode=cfg.mode)
    return subroutine_B2(sc, wi, pair, dc_backend=cfg.dc_backend)


def _parallel_pair_sweep(sc, wi, cfg: SweepConfig, pairs) -> TrailReport:
    import threading
    from concurrent.futures import ThreadPoolExecutor

    found = threading.Event()
    results: list[tuple[int, Path, tuple]] = []
    lock = threading.Lock()

    def work(item):
        rank, pair = item
        if cfg.mode == "first" and found.is_set():
            return
        path = _call_pair_subroutine(sc, wi, cfg, pair)
        if path is not None:
            with lock:
                results.append((rank, path, pair))
            found.set()

    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        list(pool.map(work, enumerate(pairs)))
    if not results:
        return TrailReport(
            "trailless", None, cfg.algorithm, stats={"tuples_checked": len(pairs)}
        )
    if cfg.mode == "first":
        rank, path, pair = min(results)
    else:
        rank, path, pair = min(results, key=lambda r: (len(r[1]), r[1], r[0]))
    return TrailReport(
        "trail", path, cfg.algorithm, marker=pair, stats={"tuples_checked": len(pairs)}
    )


def run_sweep(sc: StraightContext, wi: WingIndex, cfg: SweepConfig) -> TrailReport:
    if cfg.algorithm == "n6":
        return driver_n6(sc, wi, cfg)
    return driver_pairs(sc, wi, cfg)


def run_pipeline(g: Graph, u: int, v: int, cfg: SweepConfig | None = None) -> TrailReport:
    """straighten -> wing index -> sweep -> lift, with phase timings."""
    cfg = cfg or SweepConfig()
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise ValueError(f"endpoints ({u},{v}) out of range for n={g.n}")
    timings: dict[str, float] = {}
    report_stats: dict = {"timings_ms": timings}

    from .graph import bfs_heights

    if u == v or bfs_heights(g, u)[v] == float("inf"):
        return TrailReport("trailless", None, cfg.algorithm, stats=report_stats)

    t0 = time.perf_counter()
    pre = straighten(g, u, v)
    timings["straighten"] = (time.perf_counter() - t0) * 1e3
    if pre.found_trail:
        report_stats["early"] = True
        return TrailReport("trail", pre.trail, cfg.algorithm, stats=report_stats)

    sc, lift = pre.context, pre.lift
    t0 = time.perf_counter()
    wi = build_base(sc)
    timings["wing_base"] = (time.perf_counter() - t0) * 1e3
    t0 = time.perf_counter()
    build_closure(wi)
    timings["wing_closure"] = (time.perf_counter() - t0) * 1e3

    t0 = time.perf_counter()
    found = run_sweep(sc, wi, cfg)
    timings["sweep"] = (time.perf_counter() - t0) * 1e3
    found.stats.update(report_stats)

    if not found.found:
        return found

    t0 = time.perf_counter()
    in_original = lift.path_to_original(found.path)
    from .straighten import lift_trail

    lifted = lift_trail(lift, in_original)
    timings["lift"] = (time.perf_counter() - t0) * 1e3
    found.path = lifted
    if found.marker is not None:
        found.marker = tuple(lift.to_original[x] for x in found.marker)
    return found
