"""Word-parallel Boolean matrices: product, repeated squaring, lazy witnesses.

Rows are Python ints used as bitsets, so multiplication is an OR of the
rows of the right factor selected by the set bits of each left row.  The
word size is whatever the int implementation uses; semantics do not depend
on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import iter_bits

DEFAULT_MEMORY_CAP_BITS = 1 << 33  # 1 GiB of matrix payload


class MatrixShapeError(ValueError):
    pass


class MatrixMemoryError(MemoryError):
    pass


@dataclass
class BitMatrix:
    dim: int
    rows: list[int]
    _cols: list[int] | None = field(default=None, repr=False, compare=False)

    @staticmethod
    def zero(dim: int) -> "BitMatrix":
        return BitMatrix(dim, [0] * dim)

    @staticmethod
    def identity(dim: int) -> "BitMatrix":
        return BitMatrix(dim, [1 << i for i in range(dim)])

    @staticmethod
    def from_entries(dim: int, entries) -> "BitMatrix":
        rows = [0] * dim
        for i, j in entries:
            rows[i] |= 1 << j
        return BitMatrix(dim, rows)

    def get(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def set(self, i: int, j: int) -> None:
        self.rows[i] |= 1 << j
        self._cols = None

    def count(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def is_zero(self) -> bool:
        return all(r == 0 for r in self.rows)

    def column(self, k: int) -> int:
        """Column k as a bitrow; the column-major mirror is built once on
        first use and cached."""
        if self._cols is None:
            cols = [0] * self.dim
            for i, row in enumerate(self.rows):
                for j in iter_bits(row):
                    cols[j] |= 1 << i
            self._cols = cols
        return self._cols[k]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.dim == other.dim
            and self.rows == other.rows
        )


def bm_multiply(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Exact Boolean product: out row i = OR of b's rows picked by a's row i."""
    if a.dim != b.dim:
        raise MatrixShapeError(f"dim mismatch: {a.dim} vs {b.dim}")
    brows = b.rows
    out = []
    for row in a.rows:
        acc = 0
        for j in iter_bits(row):
            acc |= brows[j]
        out.append(acc)
    return BitMatrix(a.dim, out)


def bm_multiply_naive(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Triple-loop reference product, for tests only."""
    if a.dim != b.dim:
        raise MatrixShapeError(f"dim mismatch: {a.dim} vs {b.dim}")
    c = BitMatrix.zero(a.dim)
    for i in range(a.dim):
        for j in range(a.dim):
            if not a.get(i, j):
                continue
            for k in range(a.dim):
                if b.get(j, k):
                    c.set(i, k)
    return c


def bm_witness(a: BitMatrix, b: BitMatrix, i: int, k: int) -> int | None:
    """Smallest j with a(i,j) and b(j,k), or None.

    Computed lazily from a's row and b's cached column instead of a stored
    witness matrix; at this scale the on-demand intersection is cheaper in
    memory and fast enough.
    """
    meet = a.rows[i] & b.column(k)
    if not meet:
        return None
    return (meet & -meet).bit_length() - 1


@dataclass
class PowerLadder:
    """Powers A^(2^0) .. A^(2^L) by repeated squaring, with exact-power
    products composed on demand from the binary decomposition of the
    exponent (and memoized: heights make chain lengths exact, so queries
    ask for specific powers rather than an OR over all of them)."""

    base: BitMatrix
    levels: list[BitMatrix]
    _exact: dict[int, BitMatrix] = field(default_factory=dict)

    def level(self, i: int) -> BitMatrix:
        return self.levels[i]

    def power(self, e: int) -> BitMatrix:
        """A^e for e >= 1 via binary decomposition, memoized."""
        if e < 1:
            raise ValueError(f"exponent must be >= 1, got {e}")
        got = self._exact.get(e)
        if got is not None:
            return got
        if e.bit_count() == 1:
            i = e.bit_length() - 1
            if i >= len(self.levels):
                raise ValueError(f"ladder too short for exponent {e}")
            result = self.levels[i]
        else:
            high = 1 << (e.bit_length() - 1)
            result = bm_multiply(self.power(e - high), self.power(high))
        self._exact[e] = result
        return result


def build_ladder(
    a: BitMatrix, chain_bound: int, memory_cap_bits: int = DEFAULT_MEMORY_CAP_BITS
) -> PowerLadder:
    """Squaring ladder covering every power up to chain_bound (at least one
    level).  The guard caps dim^2 * levels, the worst-case payload."""
    levels_needed = max(1, max(0, chain_bound - 1).bit_length() + 1)
    if a.dim * a.dim * levels_needed > memory_cap_bits:
        raise MatrixMemoryError(
            f"ladder of {levels_needed} levels at dim {a.dim} exceeds the "
            f"{memory_cap_bits}-bit cap"
        )
    levels = [a]
    for _ in range(levels_needed - 1):
        levels.append(bm_multiply(levels[-1], levels[-1]))
    return PowerLadder(base=a, levels=levels)
