"""Command-line front end: find-trail, gen, verify, bench, wings-dump,
dc-replay.

Exit codes encode run validity, not the trail decision: 0 means the
command produced a valid decision or report, 2 means bad input (parse or
range errors), and dc-replay uses 1 for a replay mismatch.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import statistics
import sys
import time
from dataclasses import asdict, dataclass, field

from .dyncon import DynConn, parse_script, replay_script
from .generators import gen_dc_script, generate
from .graph import (
    Graph,
    GraphError,
    Path,
    bfs_heights,
    format_edgelist,
    is_path,
    load_graph,
)
from .oracle import find_trail_brute
from .straighten import straighten
from .trailblazer import SweepConfig, default_workers, run_pipeline
from .wings import base_level_counts, build_base, build_closure


@dataclass
class RunReport:
    status: str  # "trail" | "trailless" | "error"
    path: list | None
    length: int | None
    distance: int | None
    algorithm: str
    marker: tuple | None
    timings: dict = field(default_factory=dict)
    digest: str = ""

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "RunReport":
        raw = json.loads(text)
        raw["marker"] = tuple(raw["marker"]) if raw["marker"] is not None else None
        return RunReport(**raw)


def instance_digest(g: Graph, u: int, v: int) -> str:
    payload = format_edgelist(g) + f"{u} {v}\n"
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def parse_path_arg(text: str) -> Path:
    sep = "-" if "-" in text else ","
    try:
        return [int(tok) for tok in text.split(sep) if tok != ""]
    except ValueError:
        raise GraphError(f"malformed path argument {text!r}")


def explain_trail_failure(g: Graph, p: Path, u: int, v: int) -> str | None:
    """Why p fails to be a uv-trail, or None when it is one."""
    if not p or p[0] != u or p[-1] != v or not is_path(g, p):
        return "not-path"
    for i, x in enumerate(p):
        for j in range(i + 2, len(p)):
            if g.has_edge(x, p[j]):
                return f"chord at ({x},{p[j]})"
    if len(p) - 1 <= bfs_heights(g, u)[v]:
        return "not-longer-than-distance"
    return None


def _find_trail_report(g: Graph, u: int, v: int, algo: str, mode: str, workers: int) -> RunReport:
    dist = bfs_heights(g, u)[v]
    distance = int(dist) if dist != float("inf") else None
    timings: dict = {}
    if algo == "brute":
        t0 = time.perf_counter()
        path = None
        if u != v and distance is not None:
            path = find_trail_brute(g, u, v)
        timings["oracle"] = (time.perf_counter() - t0) * 1e3
        marker = None
    else:
        cfg = SweepConfig(algorithm=algo, mode=mode, workers=workers)
        report = run_pipeline(g, u, v, cfg)
        path = report.path
        marker = report.marker
        timings = report.stats.get("timings_ms", {})
    return RunReport(
        status="trail" if path is not None else "trailless",
        path=path,
        length=len(path) - 1 if path is not None else None,
        distance=distance,
        algorithm=algo,
        marker=marker,
        timings=timings,
        digest=instance_digest(g, u, v),
    )


def cmd_find_trail(args) -> int:
    try:
        g = load_graph(args.graph)
        u, v = args.u, args.v
        if not (0 <= u < g.n and 0 <= v < g.n):
            raise GraphError(f"endpoints ({u},{v}) out of range for n={g.n}")
    except (OSError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = _find_trail_report(g, u, v, args.algo, args.mode, args.workers)
    if args.json:
        print(report.to_json())
    elif report.status == "trail":
        print(f"trail {'-'.join(map(str, report.path))}")
        print(f"length {report.length} distance {report.distance}")
    else:
        print("trailless")
    return 0


def cmd_gen(args) -> int:
    try:
        inst = generate(args.kind, args.n, args.seed, p=args.p)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    comments = [
        f"kind={inst.kind} n={inst.g.n} seed={inst.seed} u={inst.u} v={inst.v}"
    ]
    if inst.planted is not None:
        comments.append("planted-trail=" + "-".join(map(str, inst.planted)))
    text = format_edgelist(inst.g, comments)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    try:
        g = load_graph(args.graph)
        p = parse_path_arg(args.path)
    except (OSError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    reason = explain_trail_failure(g, p, args.u, args.v)
    if reason is None:
        print("true")
    else:
        print(f"false {reason}")
    return 0


def _bench_instance(n: int, seed: int, algo: str) -> dict:
    inst = generate("layered", n, seed)
    g, u, v = inst.g, inst.u, inst.v
    times: dict[str, float] = {}
    t0 = time.perf_counter()
    pre = straighten(g, u, v)
    times["straighten"] = time.perf_counter() - t0
    if pre.found_trail:
        return times
    t0 = time.perf_counter()
    wi = build_base(pre.context)
    times["base"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    build_closure(wi)
    times["closure"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    from .trailblazer import run_sweep

    run_sweep(pre.context, wi, SweepConfig(algorithm=algo))
    times["sweep"] = time.perf_counter() - t0
    return times


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")] if args.sizes else []
    rows = []
    phases = ("straighten", "base", "closure", "sweep")
    for n in sizes:
        samples: dict[str, list[float]] = {ph: [] for ph in phases}
        for r in range(args.repeats):
            times = _bench_instance(n, args.seed + r, args.algo)
            for ph in phases:
                if ph in times:
                    samples[ph].append(times[ph])
        row = {"n": n}
        for ph in phases:
            row[ph] = statistics.median(samples[ph]) if samples[ph] else 0.0
        rows.append(row)
    if args.dc_row:
        n = 1024
        ops = gen_dc_script(n, args.dc_ops, args.seed)
        t0 = time.perf_counter()
        mism = replay_script(DynConn(n, backend="hdt"), ops)
        elapsed = time.perf_counter() - t0
        rows.append(
            {
                "n": n,
                "dc_ops": len(ops),
                "dc_seconds": elapsed,
                "dc_ops_per_s": len(ops) / elapsed if elapsed else 0.0,
                "dc_mismatches": len(mism),
            }
        )
    if args.csv:
        keys: list[str] = []
        for row in rows:
            keys.extend(k for k in row if k not in keys)
        print(",".join(keys))
        for row in rows:
            print(",".join(_fmt_cell(row.get(k, "")) for k in keys))
    else:
        for row in rows:
            print("  ".join(f"{k}={_fmt_cell(val)}" for k, val in row.items()))
    return 0


def _fmt_cell(val) -> str:
    if isinstance(val, float):
        return f"{val:.6f}"
    return str(val)


def cmd_wings_dump(args) -> int:
    try:
        g = load_graph(args.graph)
        pre = straighten(g, args.u, args.v)
    except (OSError, GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if pre.found_trail:
        print("preprocessing found a trail; no wing index to dump")
        return 0
    wi = build_base(pre.context)
    build_closure(wi)
    counts = base_level_counts(wi)
    print(f"pairs {wi.idx.count}")
    for lvl in sorted(counts):
        print(f"base level {lvl}->{lvl + 1}: {counts[lvl]} entries")
    hv = pre.context.height_of_v
    for gap in range(2, max(2, hv) + 1):
        if gap > hv:
            break
        print(f"gap {gap}: {wi.gap_matrix(gap).count()} winged pair-pairs")
    return 0


def cmd_dc_replay(args) -> int:
    try:
        with open(args.script, "r", encoding="utf-8") as fh:
            ops = parse_script(fh.read())
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    dc = DynConn(args.n, backend=args.backend)
    t0 = time.perf_counter()
    mismatches = replay_script(dc, ops)
    elapsed = time.perf_counter() - t0
    rate = len(ops) / elapsed if elapsed else 0.0
    print(f"{len(ops)} ops in {elapsed:.3f}s ({rate:.0f} ops/s), "
          f"{len(mismatches)} mismatches")
    for idx, got in mismatches[:20]:
        print(f"  op {idx}: got {got}")
    return 0 if not mismatches else 1


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="trailfinder")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("find-trail", help="find a trail or certify none exists")
    p.add_argument("graph")
    p.add_argument("u", type=int)
    p.add_argument("v", type=int)
    p.add_argument("--algo", choices=("brute", "n6", "b1", "b2"), default="b2")
    p.add_argument("--mode", choices=("first", "shortest"), default="first")
    p.add_argument("--workers", type=int, default=default_workers())
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_find_trail)

    p = sub.add_parser("gen", help="generate a seeded instance")
    p.add_argument("kind", choices=("gnp", "layered", "planted"))
    p.add_argument("n", type=int)
    p.add_argument("seed", type=int)
    p.add_argument("--p", type=float, default=0.3)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check a claimed trail")
    p.add_argument("graph")
    p.add_argument("u", type=int)
    p.add_argument("v", type=int)
    p.add_argument("path", help="dash- or comma-separated vertex list")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="per-phase timing table")
    p.add_argument("--sizes", default="")
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--algo", choices=("n6", "b1", "b2"), default="b2")
    p.add_argument("--csv", action="store_true")
    p.add_argument("--dc-row", action="store_true")
    p.add_argument("--dc-ops", type=int, default=20000)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("wings-dump", help="wing index diagnostics")
    p.add_argument("graph")
    p.add_argument("u", type=int)
    p.add_argument("v", type=int)
    p.set_defaults(func=cmd_wings_dump)

    p = sub.add_parser("dc-replay", help="replay a connectivity fuzz script")
    p.add_argument("script")
    p.add_argument("--n", type=int, default=1024)
    p.add_argument("--backend", choices=("auto", "naive", "hdt"), default="auto")
    p.set_defaults(func=cmd_dc_replay)
    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
