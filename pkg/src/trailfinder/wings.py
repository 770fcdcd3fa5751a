"""Winged-quadruple index: base matrix, closure ladder, queries, extraction.

The index answers "does (a,b,c,d) admit a pair of wings" in O(1) after
preprocessing, and reconstructs an actual wing pair on demand.  Entries
live on ordered same-height vertex pairs.  The base matrix holds the
height-gap-1 relation between pairs; gap-g wings for g >= 2 are forced to
be anticomplete, which makes them exactly chains of g base entries, hence
bits of the g-th power of the base matrix.  Gap 0 and 1 permit the single
adjacency (c,b) and are answered by a direct constant-size check instead.

Why chained base entries stitch into anticomplete wings: an edge of the
graph never spans more than one level, so the only candidate edges
between the two spines are between pairs at most one level apart, and
each of those is excluded by some base entry of the chain (same level by
the ab/cd exclusions, adjacent levels by the ad/cb exclusions).  The
end fragments a* and d* sit two or more levels away from everything on
the opposite spine except its end vertex, which the recorded
avoiding-neighbor certificate excludes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .boolmat import (
    DEFAULT_MEMORY_CAP_BITS,
    BitMatrix,
    PowerLadder,
    bm_witness,
    build_ladder,
)
from .graph import iter_bits
from .oracle import WingPair, validate_wings
from .straight import StraightContext


class WingReconstructionError(AssertionError):
    """Extracted wings failed validation; reconstruction is unsound."""


@dataclass(frozen=True)
class PairIndexing:
    """Dense indices for ordered same-height vertex pairs, grouped by height
    and, within a height, lexicographic.  (a,b) and (b,a) are distinct."""

    pair_of: tuple[tuple[int, int], ...]
    index_of: dict
    height_of_pair: tuple[int, ...]
    first_index: dict  # (height, first vertex) -> start of its (a, *) run

    @property
    def count(self) -> int:
        return len(self.pair_of)

    @staticmethod
    def build(sc: StraightContext) -> "PairIndexing":
        pairs = []
        heights = []
        first_index = {}
        for lvl, members in enumerate(sc.levels):
            for a in members:
                first_index[(lvl, a)] = len(pairs)
                for b in members:
                    if a != b:
                        pairs.append((a, b))
                        heights.append(lvl)
        index_of = {p: i for i, p in enumerate(pairs)}
        return PairIndexing(
            pair_of=tuple(pairs),
            index_of=index_of,
            height_of_pair=tuple(heights),
            first_index=first_index,
        )


@dataclass
class WingIndex:
    sc: StraightContext
    idx: PairIndexing
    down_avoiding: dict  # ordered (a,b) -> bitmask of a* below a avoiding N[b]
    up_avoiding: dict  # ordered (d,c) -> bitmask of d* above d avoiding N[c]
    base: BitMatrix
    ladder: PowerLadder | None = None
    validate_extractions: bool = True

    def gap_matrix(self, gap: int) -> BitMatrix:
        if self.ladder is None:
            raise RuntimeError("closure not built; call build_closure first")
        return self.ladder.power(gap)


def build_base(sc: StraightContext) -> WingIndex:
    """Fill the gap-1 base matrix.

    A((a,b),(c,d)) is set when c,d sit one level above a,b with spine edges
    ac and bd present, the four cross pairs ab, ad, cb, cd absent, and both
    end certificates exist: a neighbor of a one level down outside N[b],
    and a neighbor of d one level up outside N[c].  The two certificates
    are independent because their levels differ by at least two from the
    opposite spine, so the entry check is constant time after the avoiding
    tables are in place.
    """
    g = sc.g
    h = sc.h
    idx = PairIndexing.build(sc)
    down_avoiding = {}
    up_avoiding = {}
    for a, b in idx.pair_of:
        lvl = h[a]
        if lvl > 0:
            down_avoiding[(a, b)] = (
                g.adj_bits[a] & sc.level_masks[lvl - 1] & ~(g.adj_bits[b] | (1 << b))
            )
        else:
            down_avoiding[(a, b)] = 0
        if lvl < sc.height_of_v:
            up_avoiding[(a, b)] = (
                g.adj_bits[a] & sc.level_masks[lvl + 1] & ~(g.adj_bits[b] | (1 << b))
            )
        else:
            up_avoiding[(a, b)] = 0

    base = BitMatrix.zero(idx.count)
    for i, (a, b) in enumerate(idx.pair_of):
        lvl = h[a]
        if lvl + 1 > sc.height_of_v or not down_avoiding[(a, b)]:
            continue
        if g.has_edge(a, b):
            continue
        ups_a = g.adj_bits[a] & sc.level_masks[lvl + 1] & ~g.adj_bits[b]
        ups_b = g.adj_bits[b] & sc.level_masks[lvl + 1] & ~g.adj_bits[a]
        if not ups_a or not ups_b:
            continue
        row = 0
        for c in iter_bits(ups_a):  # ac present, cb absent
            for d in iter_bits(ups_b):  # bd present, ad absent
                if d == c or g.has_edge(c, d):
                    continue
                if not up_avoiding[(d, c)]:
                    continue
                row |= 1 << idx.index_of[(c, d)]
        base.rows[i] = row
    return WingIndex(
        sc=sc,
        idx=idx,
        down_avoiding=down_avoiding,
        up_avoiding=up_avoiding,
        base=base,
    )


def build_closure(wi: WingIndex, memory_cap_bits=None) -> WingIndex:
    """Attach the squaring ladder, sized to the longest possible chain."""
    cap = DEFAULT_MEMORY_CAP_BITS if memory_cap_bits is None else memory_cap_bits
    bound = max(1, wi.sc.height_of_v)
    wi.ladder = build_ladder(wi.base, bound, memory_cap_bits=cap)
    return wi


def _gap0_winged(wi: WingIndex, a: int, b: int, c: int, d: int) -> bool:
    # wings at gap 0 collapse to c == a and d == b; the pair (c,b) = (a,b)
    # may be adjacent, so the ab edge is not constrained
    if c != a or d != b or a == b:
        return False
    return bool(wi.down_avoiding.get((a, b), 0)) and bool(wi.up_avoiding.get((b, a), 0))


def _gap1_winged(wi: WingIndex, a: int, b: int, c: int, d: int) -> bool:
    g = wi.sc.g
    if a == b or c == d:
        return False
    if not (g.has_edge(a, c) and g.has_edge(b, d)):
        return False
    if g.has_edge(a, b) or g.has_edge(a, d) or g.has_edge(c, d):
        return False
    # the (c,b) adjacency is tolerated here, unlike in the base matrix
    return bool(wi.down_avoiding.get((a, b), 0)) and bool(wi.up_avoiding.get((d, c), 0))


def is_winged(wi: WingIndex, quad: tuple[int, int, int, int]) -> bool:
    a, b, c, d = quad
    h = wi.sc.h
    if h[a] != h[b] or h[c] != h[d] or h[c] < h[a]:
        return False
    gap = h[c] - h[a]
    if gap == 0:
        return _gap0_winged(wi, a, b, c, d)
    if gap == 1:
        return _gap1_winged(wi, a, b, c, d)
    i = wi.idx.index_of.get((a, b))
    k = wi.idx.index_of.get((c, d))
    if i is None or k is None:
        return False
    return wi.gap_matrix(gap).get(i, k)


def winged_partners(wi: WingIndex, a: int, b: int, c: int) -> list[int]:
    """All d with (a,b,c,d) winged, ascending."""
    h = wi.sc.h
    if a == b or h[a] != h[b] or h[c] < h[a]:
        return []
    gap = h[c] - h[a]
    if gap == 0:
        return [b] if _gap0_winged(wi, a, b, c, b) else []
    if gap == 1:
        return [d for d in wi.sc.levels[h[c]] if _gap1_winged(wi, a, b, c, d)]
    i = wi.idx.index_of.get((a, b))
    if i is None:
        return []
    row = wi.gap_matrix(gap).rows[i]
    start = wi.idx.first_index.get((h[c], c))
    if start is None:
        return []
    width = len(wi.sc.levels[h[c]]) - 1  # pairs (c, *) are contiguous
    block = (row >> start) & ((1 << width) - 1)
    return [wi.idx.pair_of[start + off][1] for off in iter_bits(block)]


def _chain(wi: WingIndex, i: int, k: int, gap: int) -> list[int]:
    """Pair-index chain from i to k across `gap` base steps, by recursive
    witness splitting on the ladder."""
    if gap == 1:
        return [i, k]
    low = gap // 2
    high = gap - low
    a_mat = wi.ladder.power(low)
    b_mat = wi.ladder.power(high)
    j = bm_witness(a_mat, b_mat, i, k)
    if j is None:
        raise WingReconstructionError(
            f"no witness splitting gap {gap} between pair indices {i} and {k}"
        )
    return _chain(wi, i, j, low)[:-1] + _chain(wi, j, k, high)


def extract_wings(wi: WingIndex, quad: tuple[int, int, int, int]) -> WingPair:
    """A concrete wing pair for a winged quadruple.

    Gap 0 and 1 read their certificates directly; larger gaps rebuild the
    spine chain by witness splitting and cap it with the end certificates.
    The result is validated unless validate_extractions is off.
    """
    a, b, c, d = quad
    if not is_winged(wi, quad):
        raise ValueError(f"quadruple {quad} is not winged")
    h = wi.sc.h
    gap = h[c] - h[a]
    if gap == 0:
        a_star = _lowest(wi.down_avoiding[(a, b)])
        d_star = _lowest(wi.up_avoiding[(b, a)])
        wp = WingPair(w1=(a, a_star), w2=(b, d_star), quad=quad)
    elif gap == 1:
        a_star = _lowest(wi.down_avoiding[(a, b)])
        d_star = _lowest(wi.up_avoiding[(d, c)])
        wp = WingPair(w1=(c, a, a_star), w2=(b, d, d_star), quad=quad)
    else:
        i = wi.idx.index_of[(a, b)]
        k = wi.idx.index_of[(c, d)]
        chain = [wi.idx.pair_of[j] for j in _chain(wi, i, k, gap)]
        xs = [p[0] for p in chain]  # a .. c ascending by level
        ys = [p[1] for p in chain]  # b .. d
        a_star = _lowest(wi.down_avoiding[chain[0]])
        d_star = _lowest(wi.up_avoiding[(ys[-1], xs[-1])])
        wp = WingPair(
            w1=tuple(reversed(xs)) + (a_star,),
            w2=tuple(ys) + (d_star,),
            quad=quad,
        )
    if wi.validate_extractions and not validate_wings(wi.sc, wp):
        raise WingReconstructionError(
            f"wing reconstruction unsound for quadruple {quad}: {wp}"
        )
    return wp


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def base_level_counts(wi: WingIndex) -> dict:
    """Diagnostic: number of true base entries per (level, level+1) pair."""
    counts: dict[int, int] = {}
    for i, row in enumerate(wi.base.rows):
        if row:
            lvl = wi.idx.height_of_pair[i]
            counts[lvl] = counts.get(lvl, 0) + row.bit_count()
    return counts
