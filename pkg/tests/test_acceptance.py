"""Acceptance suite: nine go/no-go checks with one printed verdict each.

Run with `pytest tests/test_acceptance.py -s` to see the verdict lines as
they complete; without -s they appear in pytest's captured output.
"""

import math
import time

import pytest

from trailfinder.dyncon import DynConn, replay_script
from trailfinder.fixtures import cycle5, cycle6, twist10
from trailfinder.generators import (
    gen_dc_script,
    gnp_instance,
    layered,
    planted,
    straight_with_trail,
)
from trailfinder.graph import bfs_heights, verify_trail
from trailfinder.oracle import (
    TRAIL_ORACLE_MAX_N,
    all_induced_paths,
    audit_twist_lemmas,
    find_trail_brute,
    validate_wings,
    wing_search_brute,
)
from trailfinder.straight import build_straight_context, is_uv_straight, twist_pair
from trailfinder.straighten import lift_trail, straighten
from trailfinder.trailblazer import SweepConfig, run_pipeline
from trailfinder.wings import build_base, build_closure, extract_wings, is_winged

ALGOS = ("n6", "b1", "b2")


def verdict(num: int, name: str, ok: bool, detail: str) -> None:
    print(f"\nACCEPTANCE {num} {'PASS' if ok else 'FAIL'} {name}: {detail}")


def build_corpus():
    """The shared decision-equivalence corpus: >= 2000 seeded instances."""
    corpus = []
    for n in range(4, 11):
        for p in (0.2, 0.35, 0.5):
            for seed in range(50):
                corpus.append(gnp_instance(n, p, seed * 1000 + n))
    for n in range(5, 13):
        for seed in range(64):
            corpus.append(layered(n, seed * 77 + n))
    for n in range(6, 13):
        for seed in range(64):
            corpus.append(planted(n, seed * 91 + n))
    return corpus


@pytest.fixture(scope="module")
def corpus_results():
    """Run every pipeline on every corpus instance once; criteria 1 and 2
    read different aspects of the same sweep."""
    t0 = time.time()
    corpus = build_corpus()
    mismatches = []
    invalid_paths = []
    runs = 0
    for inst in corpus:
        g, u, v = inst.g, inst.u, inst.v
        if u == v or bfs_heights(g, u)[v] == math.inf:
            continue
        if g.n <= TRAIL_ORACLE_MAX_N:
            expect = find_trail_brute(g, u, v) is not None
        elif inst.planted is not None:
            expect = True  # certified at generation time
        else:
            continue
        for algo in ALGOS:
            runs += 1
            r = run_pipeline(g, u, v, SweepConfig(algorithm=algo))
            if r.found != expect:
                mismatches.append((inst.kind, inst.seed, algo))
            if r.path is not None and not verify_trail(g, r.path, u, v):
                invalid_paths.append((inst.kind, inst.seed, algo, r.path))
    return {
        "instances": len(corpus),
        "runs": runs,
        "mismatches": mismatches,
        "invalid_paths": invalid_paths,
        "elapsed": time.time() - t0,
    }


def test_criterion_1_oracle_decision_equivalence(corpus_results):
    res = corpus_results
    ok = not res["mismatches"] and res["instances"] >= 2000 and res["elapsed"] < 300
    verdict(
        1, "oracle decision equivalence", ok,
        f"{res['instances']} instances, {res['runs']} pipeline runs, "
        f"{len(res['mismatches'])} mismatches, {res['elapsed']:.1f}s",
    )
    assert res["instances"] >= 2000
    assert res["mismatches"] == []
    assert res["elapsed"] < 300


def test_criterion_2_every_emitted_path_verifies(corpus_results):
    bad = corpus_results["invalid_paths"]
    verdict(
        2, "trail validity", not bad,
        f"{corpus_results['runs']} runs, {len(bad)} invalid paths",
    )
    assert bad == []


def test_criterion_3_shortest_sweep_matches_oracle():
    checked = 0
    bad = []
    for n in (8, 9, 10, 11, 12):
        for seed in range(6):
            inst = straight_with_trail(n, seed)
            oracle = find_trail_brute(inst.g, inst.u, inst.v)
            for algo in ("n6", "b1"):
                checked += 1
                r = run_pipeline(
                    inst.g, inst.u, inst.v, SweepConfig(algorithm=algo, mode="shortest")
                )
                if r.path is None or len(r.path) != len(oracle):
                    bad.append((n, seed, algo))
    verdict(
        3, "shortest-sweep exactness", not bad,
        f"{checked} shortest sweeps, {len(bad)} length mismatches",
    )
    assert bad == []


def test_criterion_4_wing_structure_equivalence():
    instances = 0
    quads = 0
    bad = []
    for seed in range(200):
        inst = layered(7 + seed % 3, seed)
        instances += 1
        sc = build_straight_context(inst.g, inst.u, inst.v)
        wi = build_base(sc)
        build_closure(wi)
        for low in sc.levels:
            for high in sc.levels:
                for a in low:
                    for b in low:
                        for c in high:
                            for d in high:
                                quad = (a, b, c, d)
                                quads += 1
                                fast = is_winged(wi, quad)
                                brute = wing_search_brute(sc, quad)
                                if fast != (brute is not None):
                                    bad.append((seed, quad))
                                elif fast and not validate_wings(
                                    sc, extract_wings(wi, quad)
                                ):
                                    bad.append((seed, quad, "extract"))
    verdict(
        4, "wing-structure equivalence", not bad,
        f"{instances} instances, {quads} quadruples, {len(bad)} mismatches",
    )
    assert instances >= 200
    assert bad == []


def test_criterion_5_fixture_ground_truth():
    failures = []

    g, u, v = cycle5()
    if find_trail_brute(g, u, v) != [0, 4, 3, 2]:
        failures.append("cycle5")

    g, u, v = cycle6(2)
    if find_trail_brute(g, u, v) != [0, 5, 4, 3, 2]:
        failures.append("cycle6 far")

    g, u, v = cycle6(1)
    if find_trail_brute(g, u, v) is not None:
        failures.append("cycle6 adjacent")

    g, u, v = twist10()
    trail = [0, 1, 2, 3, 4, 5, 6, 7]
    if find_trail_brute(g, u, v) != trail:
        failures.append("twist10 trail")
    d = bfs_heights(g, u)[v]
    all_trails = [p for p in all_induced_paths(g, u, v, max_n=10) if len(p) - 1 > d]
    if all_trails != [trail]:
        failures.append("twist10 uniqueness")
    sc = build_straight_context(g, u, v)
    tp = twist_pair(sc, trail)
    if (tp.s, tp.t, tp.twist) != (3, 4, 1):
        failures.append("twist10 twist pair")

    verdict(5, "fixture ground truth", not failures, f"failures: {failures or 'none'}")
    assert not failures


def test_criterion_6_twist_lemma_audits():
    audited = 0
    violations = []
    for seed in range(250):
        inst = layered(5 + seed % 8, seed)
        g, u, v = inst.g, inst.u, inst.v
        trail = find_trail_brute(g, u, v)
        if trail is None:
            continue
        sc = build_straight_context(g, u, v)
        audit = audit_twist_lemmas(sc, trail)
        audited += 1
        if not audit.passed:
            violations.append((seed, audit))
    for n in (8, 9, 10, 11, 12):
        for seed in range(15):
            inst = straight_with_trail(n, seed + 500)
            sc = build_straight_context(inst.g, inst.u, inst.v)
            trail = find_trail_brute(inst.g, inst.u, inst.v)
            audit = audit_twist_lemmas(sc, trail)
            audited += 1
            if not audit.passed:
                violations.append((n, seed, audit))
    verdict(
        6, "twist lemma audits", not violations,
        f"{audited} shortest trails audited, {len(violations)} violations",
    )
    assert audited > 0
    assert not violations


def test_criterion_7_dynamic_connectivity_at_scale():
    n = 1024
    ops = gen_dc_script(n, 100_000, 2026)
    results = {}
    for backend in ("naive", "hdt"):
        t0 = time.time()
        mism = replay_script(DynConn(n, backend=backend), ops)
        results[backend] = (len(mism), time.time() - t0)
    ok = results["naive"][0] == 0 and results["hdt"][0] == 0
    hdt_time = results["hdt"][1]
    soft = "within" if hdt_time < 10 else "OVER (soft bound, report only)"
    verdict(
        7, "dynamic connectivity", ok,
        f"{len(ops)} ops, mismatches naive={results['naive'][0]} "
        f"hdt={results['hdt'][0]}, hdt {hdt_time:.1f}s ({soft} 10s soft bound)",
    )
    assert ok


def test_criterion_8_straighten_contracts():
    checked = 0
    violations = []
    for seed in range(400):
        inst = gnp_instance(4 + seed % 7, (0.25, 0.4, 0.55)[seed % 3], seed + 31)
        g, u, v = inst.g, inst.u, inst.v
        if u == v or bfs_heights(g, u)[v] == math.inf:
            continue
        result = straighten(g, u, v)
        checked += 1
        if result.found_trail:
            if not verify_trail(g, result.trail, u, v):
                violations.append((seed, "early trail invalid"))
            continue
        sc, lift = result.context, result.lift
        h_trail = find_trail_brute(sc.g, sc.u, sc.v)
        g_trail = find_trail_brute(g, u, v)
        if h_trail is None:
            if g_trail is not None:
                violations.append((seed, "condensed trailless but input has a trail"))
        else:
            lifted = lift_trail(lift, lift.path_to_original(h_trail))
            if not verify_trail(g, lifted, u, v):
                violations.append((seed, "lifted trail invalid"))
    verdict(
        8, "straighten contracts", not violations,
        f"{checked} instances, {len(violations)} violations",
    )
    assert not violations


def test_criterion_9_scaling_smoke():
    timings = {}
    for n in (100, 150, 200):
        inst = layered(n, 2101)
        t0 = time.time()
        r = run_pipeline(inst.g, inst.u, inst.v, SweepConfig(algorithm="b2"))
        elapsed = time.time() - t0
        timings[n] = (elapsed, dict(r.stats.get("timings_ms", {})))
        if r.path is not None:
            assert verify_trail(inst.g, r.path, inst.u, inst.v)
    sweep100 = timings[100][1].get("sweep", 0.0)
    sweep200 = timings[200][1].get("sweep", 0.0)
    ratio = sweep200 / sweep100 if sweep100 else float("nan")
    detail = "; ".join(
        f"n={n}: {t:.2f}s total, phases(ms) "
        + " ".join(f"{k}={ms:.1f}" for k, ms in phases.items())
        for n, (t, phases) in timings.items()
    )
    verdict(
        9, "scaling smoke", True,
        f"{detail}; sweep ratio n=200/n=100 = {ratio:.1f} (report only)",
    )
    assert 150 in timings  # the n=150 run completed end to end
