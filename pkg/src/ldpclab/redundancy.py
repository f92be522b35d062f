"""Redundant parity checks and sets of alternative parity-check matrices.

Two sources of redundant rows: combining a pair of prototype rows at the
base-matrix level (quasi-cyclic codes), and XOR-ing the checks that close
a short Tanner-graph cycle (any code). Either way the new rows live in the
row space of the original matrix, so swapping them in changes the decoding
graph without changing the code.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import yaml

from . import seeding
from .alist import read_alist, write_alist
from .gf2 import SparseBinaryMatrix, rank
from .tanner import check_cycle_sets
from .wimax import BaseMatrix, lift


class AssemblyError(RuntimeError):
    """Representation assembly could not reach a full-rank matrix."""


@dataclass(frozen=True)
class RedundantBaseRow:
    """Prototype-level combination of two base rows.

    Lifting it yields z binary rows, all of weight predicted_binary_weight
    and all inside the row space of the lifted original matrix.
    """

    source_rows: frozenset[int]
    entries: tuple[int, ...]
    predicted_binary_weight: int


@dataclass(frozen=True)
class CycleCheckSet:
    """Check nodes closing one Tanner-graph cycle, with the weight bound
    sum(w_i) - c on the XOR of their rows."""

    check_indices: frozenset[int]
    cycle_length: int
    weight_bound: int


@dataclass(frozen=True)
class RedundantRow:
    """One binary redundant check plus the original rows it combines."""

    support: tuple[int, ...]
    source_rows: frozenset[int]

    @property
    def weight(self) -> int:
        return len(self.support)


@dataclass(frozen=True)
class RepresentationSet:
    """Ordered full-rank parity-check matrices of one code; the original
    matrix always sits first."""

    matrices: tuple[SparseBinaryMatrix, ...]
    origin: str
    seeds: tuple[int, ...] = ()
    replaced: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def l(self) -> int:
        return len(self.matrices)


def combine_base_rows(hb: BaseMatrix, i: int, j: int) -> RedundantBaseRow | None:
    """Combine prototype rows i and j, or None when they are incompatible.

    Per column: a shift paired with -1 survives, two equal shifts cancel
    to -1 (the circulants are identical, so they XOR to zero), and two
    unequal shifts make the pair incompatible (the XOR is a weight-2
    circulant with no prototype representation).
    """
    n = hb.n_rows
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"row index out of range for {n}-row base matrix")
    if i == j:
        raise IndexError("cannot combine a base row with itself")
    combined = []
    cancelled = 0
    for a, b in zip(hb.entries[i], hb.entries[j]):
        if a < 0:
            combined.append(b)
        elif b < 0:
            combined.append(a)
        elif a == b:
            combined.append(-1)
            cancelled += 1
        else:
            return None
    weight = hb.row_weight(i) + hb.row_weight(j) - 2 * cancelled
    return RedundantBaseRow(
        source_rows=frozenset((i, j)),
        entries=tuple(combined),
        predicted_binary_weight=weight,
    )


def enumerate_combinable_pairs(hb: BaseMatrix):
    """All compatible unordered row pairs, lightest combination first."""
    found = []
    for i in range(hb.n_rows):
        for j in range(i + 1, hb.n_rows):
            row = combine_base_rows(hb, i, j)
            if row is not None:
                found.append((i, j, row))
    found.sort(key=lambda t: (t[2].predicted_binary_weight, t[0], t[1]))
    return found


def lift_redundant_base_row(row: RedundantBaseRow, z: int) -> list[RedundantRow]:
    """Expand a combined prototype row into its z binary rows.

    The binary row at block offset r equals the XOR of the lifted source
    rows at the same offset, which is recorded in source_rows.
    """
    lifted = lift(BaseMatrix((row.entries,)), z)
    out = []
    for r in range(z):
        sources = frozenset(b * z + r for b in row.source_rows)
        out.append(RedundantRow(support=lifted.rows[r], source_rows=sources))
    return out


def cycle_redundant_rows(h: SparseBinaryMatrix, c: int, max_rows: int):
    """Redundant rows from length-c cycles, as (CycleCheckSet, RedundantRow).

    Each row is the XOR of the checks closing one cycle; its weight never
    exceeds sum of the check weights minus c because every cycle variable
    appears in exactly two of the checks. Empty when no length-c cycle
    exists.
    """
    out = []
    for check_set in check_cycle_sets(h, c, max_rows):
        support: set[int] = set()
        for idx in check_set:
            support.symmetric_difference_update(h.rows[idx])
        bound = sum(len(h.rows[idx]) for idx in check_set) - c
        meta = CycleCheckSet(
            check_indices=check_set, cycle_length=c, weight_bound=bound
        )
        out.append(
            (meta, RedundantRow(support=tuple(sorted(support)),
                                source_rows=check_set))
        )
    return out


def wimax_redundant_pool(hb: BaseMatrix, z: int) -> list[RedundantRow]:
    """All lifted base-level combinations, lightest pairs first."""
    pool = []
    for _, _, row in enumerate_combinable_pairs(hb):
        pool.extend(lift_redundant_base_row(row, z))
    return pool


def cycle_redundant_pool(h: SparseBinaryMatrix, cycle_lengths=(4, 6),
                         max_rows_per_length: int = 2000) -> list[RedundantRow]:
    """Deduplicated cycle-combination rows over the given cycle lengths."""
    pool = []
    seen = set()
    existing = set(h.rows)
    for c in cycle_lengths:
        for _, row in cycle_redundant_rows(h, c, max_rows_per_length):
            if row.support and row.support not in seen \
                    and row.support not in existing:
                seen.add(row.support)
                pool.append(row)
    pool.sort(key=lambda r: (r.weight, r.support))
    return pool


def default_replace_count(n: int) -> int:
    """Rows to swap per representation: 10 at n=576 rising to 16 at n=960."""
    return max(10, min(16, round(10 + 6 * (n - 576) / 384)))


def assemble_representation(
    h: SparseBinaryMatrix,
    pool: list[RedundantRow],
    replace_count: int,
    seed: int,
    *,
    min_replace: int = 10,
    max_replace: int = 16,
    max_retries: int = 100,
) -> SparseBinaryMatrix:
    """Swap replace_count rows of h for redundant rows, keeping full rank.

    Candidate rows are sampled with a bias towards low weight
    (probability halves per extra unit of weight); each inserted row
    replaces one of its own source rows so the removed row stays
    recoverable from the new row set. Rank is still verified explicitly
    and the draw is retried on the rare cancellation patterns that lose
    rank. Deterministic for a given seed.
    """
    if not min_replace <= replace_count <= max_replace:
        raise ValueError(
            f"replace_count {replace_count} outside [{min_replace}, {max_replace}]"
        )
    if replace_count > len(pool):
        raise ValueError(
            f"pool holds {len(pool)} rows, cannot replace {replace_count}"
        )
    weights = np.array([r.weight for r in pool], dtype=float)
    probs = np.exp2(-(weights - weights.min()))
    probs /= probs.sum()
    rng = np.random.default_rng(seed)

    last_rank = -1
    for _ in range(max_retries):
        chosen_idx = rng.choice(len(pool), size=replace_count, replace=False,
                                p=probs)
        chosen = [pool[int(i)] for i in chosen_idx]
        if len({r.support for r in chosen}) != replace_count:
            continue
        taken: set[int] = set()
        targets = []
        ok = True
        for row in chosen:
            free = sorted(set(row.source_rows) - taken)
            if not free:
                ok = False
                break
            pick = int(rng.choice(len(free)))
            targets.append(free[pick])
            taken.add(free[pick])
        if not ok:
            continue
        new_rows = list(h.rows)
        for row, target in zip(chosen, targets):
            if h.rows[target] == row.support:
                ok = False
                break
            new_rows[target] = row.support
        if not ok:
            continue
        candidate = SparseBinaryMatrix(h.n_rows, h.n_cols, tuple(new_rows))
        last_rank = rank(candidate)
        if last_rank == h.n_rows:
            return candidate
    raise AssemblyError(
        f"no full-rank representation in {max_retries} attempts "
        f"(last rank {last_rank}, need {h.n_rows})"
    )


def build_representation_set(
    h: SparseBinaryMatrix,
    l: int,
    seed: int,
    pool: list[RedundantRow] | None = None,
    *,
    replace_count: int | None = None,
    origin: str = "",
) -> RepresentationSet:
    """Original matrix plus l-1 redundant-row representations.

    With no explicit pool, cycle combinations of h are used. Every
    produced matrix is checked to define the same code as h (its rows lie
    in the row space of h) and to differ from all earlier ones.
    """
    if l < 1:
        raise ValueError("need at least one representation")
    if rank(h) != h.n_rows:
        raise ValueError("base parity-check matrix must have full rank")
    if l > 1 and pool is None:
        pool = cycle_redundant_pool(h)
    if replace_count is None:
        replace_count = default_replace_count(h.n_cols)

    matrices = [h]
    seeds = [seed]
    replaced: list[tuple[int, ...]] = [()]
    base_rank = h.n_rows
    for t in range(1, l):
        for bump in range(20):
            sub_seed = seeding.derive_seed(seed, "rep", t, bump)
            try:
                cand = assemble_representation(h, pool, replace_count, sub_seed)
            except AssemblyError as exc:
                raise AssemblyError(
                    f"representation {t + 1} of {l}: {exc}") from exc
            if all(cand.rows != m.rows for m in matrices):
                break
        else:
            raise AssemblyError(
                f"representation {t + 1} of {l}: could not find a distinct matrix")
        stacked = SparseBinaryMatrix(
            h.n_rows + cand.n_rows, h.n_cols, h.rows + cand.rows
        )
        if rank(stacked) != base_rank:
            raise AssemblyError(
                f"representation {t + 1} of {l}: rows left the code's row space")
        matrices.append(cand)
        seeds.append(sub_seed)
        replaced.append(tuple(
            i for i in range(h.n_rows) if cand.rows[i] != h.rows[i]
        ))
    return RepresentationSet(
        matrices=tuple(matrices), origin=origin,
        seeds=tuple(seeds), replaced=tuple(replaced),
    )


def save_representation_set(reps: RepresentationSet, directory) -> None:
    """One alist per matrix plus a plain-text manifest."""
    from pathlib import Path

    path = Path(directory)
    path.mkdir(parents=True, exist_ok=True)
    names = []
    for idx, m in enumerate(reps.matrices):
        name = f"rep_{idx:02d}.alist"
        write_alist(m, path / name)
        names.append(name)
    manifest = {
        "origin": reps.origin,
        "l": reps.l,
        "seeds": list(reps.seeds),
        "matrices": names,
        "replaced_rows": [list(r) for r in reps.replaced],
    }
    with open(path / "manifest.yaml", "w") as fh:
        yaml.safe_dump(manifest, fh, sort_keys=False)


def load_representation_set(directory) -> RepresentationSet:
    from pathlib import Path

    path = Path(directory)
    with open(path / "manifest.yaml") as fh:
        manifest = yaml.safe_load(fh)
    matrices = tuple(read_alist(path / name) for name in manifest["matrices"])
    return RepresentationSet(
        matrices=matrices,
        origin=manifest.get("origin", ""),
        seeds=tuple(manifest.get("seeds", ())),
        replaced=tuple(tuple(r) for r in manifest.get("replaced_rows", ())),
    )
