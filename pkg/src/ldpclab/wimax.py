"""Rate-1/2 IEEE 802.16e QC-LDPC construction.

The whole family comes from one 12x24 integer prototype: entry -1 expands
to a z x z zero block, entry e >= 0 to the z x z identity cyclically
shifted right by e. Shift values are renormalized from the z=96 master
prototype before lifting, giving code lengths n = 24*z.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2 import SparseBinaryMatrix

STANDARD_LENGTHS = (576, 672, 768, 864, 960)
BASE_COLS = 24
BASE_ROWS = 12
MASTER_EXPANSION = 96

# Rate-1/2 prototype, shifts given for the z=96 realization.
_WIMAX_RATE12_BASE = (
    (-1, 94, 73, -1, -1, -1, -1, -1, 55, 83, -1, -1, 7, 0, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1),
    (-1, 27, -1, -1, -1, 22, 79, 9, -1, -1, -1, 12, -1, 0, 0, -1, -1, -1, -1, -1, -1, -1, -1, -1),
    (-1, -1, -1, 24, 22, 81, -1, 33, -1, -1, -1, 0, -1, -1, 0, 0, -1, -1, -1, -1, -1, -1, -1, -1),
    (61, -1, 47, -1, -1, -1, -1, -1, 65, 25, -1, -1, -1, -1, -1, 0, 0, -1, -1, -1, -1, -1, -1, -1),
    (-1, -1, 39, -1, -1, -1, 84, -1, -1, 41, 72, -1, -1, -1, -1, -1, 0, 0, -1, -1, -1, -1, -1, -1),
    (-1, -1, -1, -1, 46, 40, -1, 82, -1, -1, -1, 79, 0, -1, -1, -1, -1, 0, 0, -1, -1, -1, -1, -1),
    (-1, -1, 95, 53, -1, -1, -1, -1, -1, 14, 18, -1, -1, -1, -1, -1, -1, -1, 0, 0, -1, -1, -1, -1),
    (-1, 11, 73, -1, -1, -1, 2, -1, -1, 47, -1, -1, -1, -1, -1, -1, -1, -1, -1, 0, 0, -1, -1, -1),
    (12, -1, -1, -1, 83, 24, -1, 43, -1, -1, -1, 51, -1, -1, -1, -1, -1, -1, -1, -1, 0, 0, -1, -1),
    (-1, -1, -1, -1, -1, 94, -1, 59, -1, -1, 70, 72, -1, -1, -1, -1, -1, -1, -1, -1, -1, 0, 0, -1),
    (-1, -1, 7, 65, -1, -1, -1, -1, 39, 49, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, 0, 0),
    (43, -1, -1, -1, -1, 66, -1, 41, -1, -1, -1, 26, 7, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, 0),
)


@dataclass(frozen=True)
class BaseMatrix:
    """Integer prototype: -1 marks a zero block, e >= 0 a right shift by e."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if any(e < -1 for row in self.entries for e in row):
            raise ValueError("base matrix entries must be >= -1")
        widths = {len(row) for row in self.entries}
        if len(widths) > 1:
            raise ValueError("ragged base matrix")

    @property
    def n_rows(self) -> int:
        return len(self.entries)

    @property
    def n_cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def row_weight(self, i: int) -> int:
        """Count of non-negative entries; equals the lifted binary row weight."""
        return sum(1 for e in self.entries[i] if e >= 0)

    def max_shift(self) -> int:
        return max((e for row in self.entries for e in row), default=-1)


@dataclass(frozen=True)
class LiftParams:
    """Expansion factor and resulting dimensions for a standard length."""

    z: int

    def __post_init__(self):
        if self.z < 1:
            raise ValueError("expansion factor must be positive")

    @property
    def n(self) -> int:
        return BASE_COLS * self.z

    @property
    def m(self) -> int:
        return BASE_ROWS * self.z

    @classmethod
    def for_length(cls, n: int) -> "LiftParams":
        if n not in STANDARD_LENGTHS:
            raise ValueError(
                f"unsupported length {n}; choose one of {STANDARD_LENGTHS}"
            )
        return cls(n // BASE_COLS)


def wimax_base_matrix() -> BaseMatrix:
    """The rate-1/2 prototype with z=96 shift values."""
    return BaseMatrix(_WIMAX_RATE12_BASE)


def renormalize(hb_prime: BaseMatrix, z: int) -> BaseMatrix:
    """Scale shift values from the z=96 master prototype to expansion z.

    Positive entries map to floor(e * z / 96); zero and -1 stay put.
    """
    if z < 1:
        raise ValueError("expansion factor must be positive")
    entries = tuple(
        tuple((e * z) // MASTER_EXPANSION if e > 0 else e for e in row)
        for row in hb_prime.entries
    )
    return BaseMatrix(entries)


def lift(hb: BaseMatrix, z: int) -> SparseBinaryMatrix:
    """Expand a prototype into its binary parity-check matrix.

    Block (i, j) becomes the identity right-shifted by hb(i, j), so lifted
    row i*z+r has a 1 at column j*z + ((r + shift) mod z) for every
    non-negative entry.
    """
    if hb.max_shift() >= z:
        raise ValueError(f"shift {hb.max_shift()} not representable with z={z}")
    rows = []
    for base_row in hb.entries:
        for r in range(z):
            support = [
                j * z + (r + e) % z for j, e in enumerate(base_row) if e >= 0
            ]
            rows.append(tuple(sorted(support)))
    return SparseBinaryMatrix(hb.n_rows * z, hb.n_cols * z, tuple(rows))


def wimax_parity_check(n: int) -> SparseBinaryMatrix:
    """Binary parity-check matrix of the standard rate-1/2 code of length n."""
    params = LiftParams.for_length(n)
    return lift(renormalize(wimax_base_matrix(), params.z), params.z)


def write_base_matrix(hb: BaseMatrix, path) -> None:
    """Whitespace-separated integer text, one prototype row per line."""
    with open(path, "w") as fh:
        for row in hb.entries:
            fh.write(" ".join(f"{e}" for e in row) + "\n")


def read_base_matrix(path) -> BaseMatrix:
    with open(path) as fh:
        entries = tuple(
            tuple(int(t) for t in line.split()) for line in fh if line.strip()
        )
    return BaseMatrix(entries)
