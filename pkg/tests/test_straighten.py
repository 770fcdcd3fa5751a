import math

import pytest

from trailfinder.fixtures import cycle5, cycle6, twist10
from trailfinder.generators import gnp
from trailfinder.graph import bfs_heights, verify_trail
from trailfinder.oracle import OracleSizeError, find_trail_brute
from trailfinder.straighten import (
    components_off_core,
    condense,
    escape_check,
    escape_check_triangle,
    escape_trail,
    lift_trail,
    straight_core,
    straighten,
)


class TestStraightCore:
    def test_cycle6_core(self):
        g, u, v = cycle6(2)
        assert straight_core(g, u, v) == {0, 1, 2}

    def test_cycle5_core(self):
        g, u, v = cycle5()
        assert straight_core(g, u, v) == {0, 1, 2}

    def test_straight_graph_core_is_everything(self):
        g, u, v = twist10()
        assert straight_core(g, u, v) == set(range(10))

    def test_disconnected_raises(self):
        g = gnp(4, 0.0, 0)
        with pytest.raises(ValueError):
            straight_core(g, 0, 3)


class TestEscape:
    def test_cycle6_escaping_component(self):
        g, u, v = cycle6(2)
        core = straight_core(g, u, v)
        assert escape_check(g, u, core) == (frozenset({3, 4, 5}), 0, 2)

    def test_cycle6_adjacent_endpoints_do_not_escape(self):
        g, u, v = cycle6(1)
        core = straight_core(g, u, v)
        assert escape_check(g, u, core) is None

    def test_cycle6_escape_trail(self):
        g, u, v = cycle6(2)
        assert escape_trail(g, u, v, frozenset({3, 4, 5}), 0, 2) == [0, 5, 4, 3, 2]

    def test_cycle5_escape_trail(self):
        g, u, v = cycle5()
        core = straight_core(g, u, v)
        comp, x, y = escape_check(g, u, core)
        assert escape_trail(g, u, v, comp, x, y) == [0, 4, 3, 2]

    def test_triangle_route_agrees_on_existence(self):
        for seed in range(120):
            g = gnp(4 + seed % 6, 0.4, seed)
            u, v = 0, g.n - 1
            if bfs_heights(g, u)[v] == math.inf:
                continue
            core = straight_core(g, u, v)
            direct = escape_check(g, u, core)
            via_triangle = escape_check_triangle(g, u, core)
            assert (direct is None) == (via_triangle is None)


class TestCondense:
    def test_cycle6_adjacent_endpoints_condense_to_an_edge(self):
        g, u, v = cycle6(1)
        core = straight_core(g, u, v)
        sc, lift = condense(g, u, v, core)
        assert sc.g.n == 2
        assert sc.g.edges == {(0, 1)}
        assert not lift.added_edges

    def test_components_ordering(self):
        g, u, v = cycle6(2)
        comps = components_off_core(g, straight_core(g, u, v))
        assert [min(c) for c, _ in comps] == sorted(min(c) for c, _ in comps)

    def test_lift_replaces_added_edges(self):
        # two parallel monotone chains 0-1-3-5-7 and 0-2-4-6-7, bridged at
        # height 2 by the component {8} (edges 3-8, 4-8): no escape (equal
        # heights), so condensing adds the edge 3-4 witnessed by {8}
        from trailfinder.graph import Graph

        g = Graph.from_edges(
            9,
            [(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 6), (5, 7), (6, 7),
             (3, 8), (4, 8)],
        )
        u, v = 0, 7
        core = straight_core(g, u, v)
        assert core == set(range(8))
        assert escape_check(g, u, core) is None
        sc, lift = condense(g, u, v, core)
        assert (3, 4) in lift.added_edges
        q = [0, 1, 3, 4, 6, 7]  # trail of H through the added edge 3-4
        assert verify_trail(sc.g, q, 0, 7)
        lifted = lift_trail(lift, q)
        assert lifted == [0, 1, 3, 8, 4, 6, 7]
        assert verify_trail(g, lifted, u, v)


class TestStraightenTopLevel:
    def test_twist10_is_already_straight(self):
        g, u, v = twist10()
        result = straighten(g, u, v)
        assert not result.found_trail
        assert result.context.g == g
        assert result.lift.is_identity()

    def test_cycle6_far_finds_trail_in_preprocessing(self):
        g, u, v = cycle6(2)
        result = straighten(g, u, v)
        assert result.trail == [0, 5, 4, 3, 2]

    def test_preprocessing_decision_is_sound(self):
        # whenever straighten yields a straight graph H, H trailless must
        # imply the input trailless, and every early trail must verify
        for seed in range(120):
            g = gnp(4 + seed % 6, 0.4, seed)
            u, v = 0, g.n - 1
            if bfs_heights(g, u)[v] == math.inf:
                continue
            result = straighten(g, u, v)
            if result.found_trail:
                assert verify_trail(g, result.trail, u, v)
                continue
            sc = result.context
            try:
                h_trail = find_trail_brute(sc.g, sc.u, sc.v)
                g_trail = find_trail_brute(g, u, v)
            except OracleSizeError:
                continue
            if h_trail is None:
                assert g_trail is None
            else:
                lifted = lift_trail(result.lift, result.lift.path_to_original(h_trail))
                assert verify_trail(g, lifted, u, v)
