"""Exact GF(2) linear algebra on sparse binary matrices.

Matrices are stored row-sparse (sorted column indices per row). Elimination
routines pack rows into Python integers internally, one bit per column, so
rank and generator extraction stay exact and reasonably fast for the code
sizes handled here (n up to a few thousand).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class RankDeficiencyError(ValueError):
    """Raised when an operation needs a full-rank matrix but got less."""

    def __init__(self, needed: int, achieved: int):
        super().__init__(f"matrix rank {achieved} below required {needed}")
        self.needed = needed
        self.achieved = achieved


@dataclass(frozen=True)
class SparseBinaryMatrix:
    """Binary matrix in sparse row form.

    rows[i] is the strictly increasing tuple of column indices where row i
    is 1; the row weight is its length.
    """

    n_rows: int
    n_cols: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.rows) != self.n_rows:
            raise ValueError("row count mismatch")
        for support in self.rows:
            if any(c1 >= c2 for c1, c2 in zip(support, support[1:])):
                raise ValueError("row support must be strictly increasing")
            if support and (support[0] < 0 or support[-1] >= self.n_cols):
                raise ValueError("column index out of range")

    @classmethod
    def from_rows(cls, n_cols: int, rows) -> "SparseBinaryMatrix":
        canon = tuple(tuple(sorted(set(int(c) for c in r))) for r in rows)
        return cls(len(canon), n_cols, canon)

    @classmethod
    def from_dense(cls, array) -> "SparseBinaryMatrix":
        a = np.asarray(array)
        rows = tuple(tuple(int(c) for c in np.flatnonzero(r)) for r in a)
        return cls(a.shape[0], a.shape[1], rows)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.n_rows, self.n_cols), dtype=np.uint8)
        for i, support in enumerate(self.rows):
            out[i, list(support)] = 1
        return out

    def row_weights(self) -> list[int]:
        return [len(r) for r in self.rows]

    def col_degrees(self) -> list[int]:
        deg = [0] * self.n_cols
        for support in self.rows:
            for c in support:
                deg[c] += 1
        return deg

    def col_supports(self) -> list[list[int]]:
        """Per-column sorted row indices (transpose view)."""
        cols: list[list[int]] = [[] for _ in range(self.n_cols)]
        for i, support in enumerate(self.rows):
            for c in support:
                cols[c].append(i)
        return cols

    def transpose(self) -> "SparseBinaryMatrix":
        return SparseBinaryMatrix(
            self.n_cols, self.n_rows, tuple(tuple(s) for s in self.col_supports())
        )

    def num_edges(self) -> int:
        return sum(len(r) for r in self.rows)

    def syndrome(self, word) -> np.ndarray:
        """H * word over GF(2) for a length-n_cols 0/1 vector."""
        w = np.asarray(word, dtype=np.uint8)
        if w.shape[-1] != self.n_cols:
            raise ValueError("word length mismatch")
        return np.array(
            [int(w[list(s)].sum() if s else 0) & 1 for s in self.rows], dtype=np.uint8
        )


@dataclass(frozen=True)
class GeneratorForm:
    """Systematic generator for a full-rank parity-check matrix.

    The generator is stored in the original column order, so
    generator * H^T = 0 holds directly, and the restriction of the
    generator to systematic_positions is the k x k identity.
    column_permutation lists pivot columns first, then the systematic
    (information) columns.
    """

    generator: SparseBinaryMatrix
    column_permutation: tuple[int, ...]
    systematic_positions: tuple[int, ...]

    @property
    def k(self) -> int:
        return self.generator.n_rows

    @property
    def n(self) -> int:
        return self.generator.n_cols


def _to_bitsets(m: SparseBinaryMatrix) -> list[int]:
    out = []
    for support in m.rows:
        bits = 0
        for c in support:
            bits |= 1 << c
        out.append(bits)
    return out


def _vector_to_bitset(v) -> int:
    bits = 0
    for j, x in enumerate(v):
        if int(x) & 1:
            bits |= 1 << j
    return bits


def _echelon(bitrows: list[int]) -> list[tuple[int, int]]:
    """Reduce to row echelon form; returns (pivot_bit, row) pairs."""
    pivots: list[tuple[int, int]] = []
    for row in bitrows:
        for pbit, prow in pivots:
            if row & pbit:
                row ^= prow
        if row:
            pivots.append((row & -row, row))
    return pivots


def rank(m: SparseBinaryMatrix) -> int:
    """GF(2) rank."""
    return len(_echelon(_to_bitsets(m)))


def row_space_contains(m: SparseBinaryMatrix, v) -> bool:
    """True iff v is a GF(2) linear combination of the rows of m."""
    v = np.asarray(v)
    if v.shape[0] != m.n_cols:
        raise ValueError(
            f"vector length {v.shape[0]} does not match {m.n_cols} columns"
        )
    word = _vector_to_bitset(v)
    for pbit, prow in _echelon(_to_bitsets(m)):
        if word & pbit:
            word ^= prow
    return word == 0


def systematic_generator(h: SparseBinaryMatrix) -> GeneratorForm:
    """Extract a systematic generator from a full-rank parity-check matrix.

    Gauss-Jordan elimination with pivoting over the natural column order;
    the non-pivot (free) columns carry the information bits and the
    generator rows are the corresponding null-space basis vectors.

    Raises RankDeficiencyError when rank(h) < n_rows.
    """
    m, n = h.n_rows, h.n_cols
    work = _to_bitsets(h)
    pivot_cols: list[int] = []
    pivot_rows: list[int] = []
    used = [False] * m
    for col in range(n):
        colbit = 1 << col
        pivot = next(
            (i for i in range(m) if not used[i] and work[i] & colbit), None
        )
        if pivot is None:
            continue
        used[pivot] = True
        prow = work[pivot]
        for i in range(m):
            if i != pivot and work[i] & colbit:
                work[i] ^= prow
        pivot_cols.append(col)
        pivot_rows.append(pivot)
        if len(pivot_cols) == m:
            break
    if len(pivot_cols) < m:
        raise RankDeficiencyError(m, len(pivot_cols))

    free_cols = sorted(set(range(n)) - set(pivot_cols))
    k = n - m
    gen_rows = []
    for f in free_cols:
        fbit = 1 << f
        support = [f]
        for p, r in zip(pivot_cols, pivot_rows):
            if work[r] & fbit:
                support.append(p)
        gen_rows.append(tuple(sorted(support)))
    generator = SparseBinaryMatrix(k, n, tuple(gen_rows))
    return GeneratorForm(
        generator=generator,
        column_permutation=tuple(pivot_cols + free_cols),
        systematic_positions=tuple(free_cols),
    )
