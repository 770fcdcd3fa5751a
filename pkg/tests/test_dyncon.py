import random
import time

from trailfinder.dyncon import (
    DynConn,
    format_script,
    parse_script,
    replay_script,
)
from trailfinder.generators import gen_dc_script


def bfs_oracle(adj, x, y):
    if x == y:
        return True
    visited = frontier = 1 << x
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        nxt &= ~visited
        if nxt >> y & 1:
            return True
        visited |= nxt
        frontier = nxt
    return False


class TestWrapperSemantics:
    def test_insert_delete_idempotent(self):
        dc = DynConn(4, backend="hdt")
        assert dc.insert(0, 1)
        assert not dc.insert(1, 0)
        assert dc.delete(0, 1)
        assert not dc.delete(0, 1)

    def test_self_query(self):
        dc = DynConn(3, backend="naive")
        assert dc.connected(2, 2)

    def test_incident_and_mask(self):
        dc = DynConn(5, backend="naive")
        dc.insert(0, 3)
        dc.insert(0, 1)
        assert dc.incident(0) == [(0, 1), (0, 3)]
        assert dc.neighbors_mask(0) == 0b1010


class TestBackendAgreement:
    def test_random_ops_match_oracle(self):
        for seed in range(8):
            rng = random.Random(seed)
            n = 40
            naive = DynConn(n, backend="naive")
            hdt = DynConn(n, backend="hdt")
            adj = [0] * n
            present = set()
            for _ in range(1500):
                op = rng.random()
                x, y = rng.randrange(n), rng.randrange(n)
                if x == y:
                    continue
                key = (min(x, y), max(x, y))
                if op < 0.45:
                    naive.insert(x, y)
                    hdt.insert(x, y)
                    if key not in present:
                        present.add(key)
                        adj[x] |= 1 << y
                        adj[y] |= 1 << x
                elif op < 0.75 and present:
                    key = rng.choice(sorted(present))
                    naive.delete(*key)
                    hdt.delete(*key)
                    present.remove(key)
                    adj[key[0]] &= ~(1 << key[1])
                    adj[key[1]] &= ~(1 << key[0])
                else:
                    expect = bfs_oracle(adj, x, y)
                    assert naive.connected(x, y) == expect
                    assert hdt.connected(x, y) == expect
            hdt.hdt.audit()

    def test_generated_scripts_replay_clean(self):
        ops = gen_dc_script(100, 4000, 3)
        for backend in ("naive", "hdt"):
            assert replay_script(DynConn(100, backend=backend), ops) == []

    def test_amortized_cost_trend(self):
        # scaled-down smoke for the amortized bound: cost per op should not
        # blow up as the op count quadruples on the same vertex set
        n = 128
        times = []
        for ops_count in (4000, 16000):
            ops = gen_dc_script(n, ops_count, 9)
            dc = DynConn(n, backend="hdt")
            t0 = time.perf_counter()
            replay_script(dc, ops)
            times.append((time.perf_counter() - t0) / ops_count)
        # generous factor: per-op cost may grow polylogarithmically, not linearly
        assert times[1] < times[0] * 8 + 1e-4


class TestScripts:
    def test_round_trip(self):
        ops = gen_dc_script(30, 500, 4)
        assert parse_script(format_script(ops)) == ops

    def test_parse_rejects_malformed(self):
        import pytest

        with pytest.raises(ValueError):
            parse_script("I 1\n")
