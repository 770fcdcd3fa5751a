"""Small named instances with hand-checkable structure, used as regression
anchors.  The same graphs exist as edge-list files under fixtures/ at the
repository root; a test keeps the two representations in agreement.
"""

from __future__ import annotations

from .graph import Graph


def cycle5() -> tuple[Graph, int, int]:
    """The 5-cycle with endpoints two apart: the long arc 0-4-3-2 is
    chordless and longer than the distance 2."""
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    return g, 0, 2


def cycle6(v: int = 2) -> tuple[Graph, int, int]:
    """The 6-cycle from vertex 0, with a selectable far endpoint.  With
    v=2 the long arc 0-5-4-3-2 is a trail; with v=1 the long arc has the
    chord 0-1, so the graph is trailless."""
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)])
    return g, 0, v


def twist10() -> tuple[Graph, int, int]:
    """A 10-vertex straight graph whose unique trail 0-1-2-3-4-5-6-7 has a
    single unit of twist at the pair (3,4)."""
    g = Graph.from_edges(
        10,
        [
            (0, 1), (0, 8), (1, 2), (8, 4), (2, 3), (4, 5),
            (3, 9), (3, 4), (5, 6), (9, 7), (6, 7),
        ],
    )
    return g, 0, 7


BUILDERS = {
    "cycle5": cycle5,
    "cycle6": cycle6,
    "twist10": twist10,
}
