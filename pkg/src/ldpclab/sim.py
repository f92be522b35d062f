"""Monte-Carlo link simulation over the AWGN channel.

Frames are independent work items: frame f of SNR point s draws its
information bits and noise from a Philox stream keyed by
(master seed, s, f), so any frame can be replayed in isolation and the
campaign counters come out identical for any worker count or chunk size.
A point stops at the frame where the min_frame_errors-th frame error
occurs (scanned in frame order), or at the max_frames cap.
"""

from __future__ import annotations

import hashlib
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import yaml

from . import seeding
from .alist import read_alist
from .decoder import DecoderConfig, DecoderGraph, decode_batch
from .gf2 import GeneratorForm, SparseBinaryMatrix, systematic_generator
from .mbbp import MbbpConfig, leaking_bank, plain_bank
from .peg import construct_peg_code
from .redundancy import (RepresentationSet, build_representation_set,
                         load_representation_set, wimax_redundant_pool)
from .wimax import renormalize, wimax_base_matrix, wimax_parity_check

RESULT_COLUMNS = ("ebn0_db", "sigma2", "frames", "frame_errors",
                  "bit_errors", "undetected", "fer", "ber")


def sigma_from_ebn0(ebn0_db: float, rate: float) -> float:
    """Noise variance for unit-energy antipodal symbols at a given Eb/N0."""
    if not 0.0 < rate <= 1.0:
        raise ValueError("rate must be in (0, 1]")
    return 1.0 / (2.0 * rate * 10.0 ** (ebn0_db / 10.0))


def modulate(bits) -> np.ndarray:
    """Antipodal mapping bit 0 -> +1.0, bit 1 -> -1.0."""
    return 1.0 - 2.0 * np.asarray(bits, dtype=np.float64)


def awgn(x, sigma2: float, stream: np.random.Generator) -> np.ndarray:
    """Add zero-mean Gaussian noise of the given variance."""
    if sigma2 < 0:
        raise ValueError("noise variance must be nonnegative")
    x = np.asarray(x, dtype=np.float64)
    return x + math.sqrt(sigma2) * stream.standard_normal(x.shape)


def encode(g: GeneratorForm, u) -> np.ndarray:
    """Systematic encoding: u lands on g.systematic_positions."""
    u = np.asarray(u, dtype=np.uint8)
    if u.shape[-1] != g.k:
        raise ValueError(f"information word length {u.shape[-1]}, expected {g.k}")
    dense = g.generator.to_dense().astype(np.float64)
    word = u.astype(np.float64) @ dense
    return (word.astype(np.int64) & 1).astype(np.uint8)


@dataclass(frozen=True)
class SnrPoint:
    ebn0_db: float
    sigma2: float
    frames_run: int
    frame_errors: int
    bit_errors: int
    undetected_frame_errors: int

    @property
    def fer(self) -> float:
        return self.frame_errors / self.frames_run if self.frames_run else 0.0

    def ber(self, k: int) -> float:
        return self.bit_errors / (self.frames_run * k) if self.frames_run else 0.0


@dataclass(frozen=True)
class CampaignConfig:
    """Everything a campaign needs, resolved to concrete objects."""

    code_id: str
    decoder_label: str
    reps: RepresentationSet
    bank: MbbpConfig
    generator: GeneratorForm
    snr_grid_db: tuple[float, ...]
    min_frame_errors: int = 100
    max_frames: int = 1_000_000
    seed: int = 0
    info_source: str = "random"

    def __post_init__(self):
        if any(a >= b for a, b in zip(self.snr_grid_db, self.snr_grid_db[1:])):
            raise ValueError("snr grid must be strictly increasing")
        if not self.snr_grid_db:
            raise ValueError("snr grid must not be empty")
        if self.min_frame_errors < 1 or self.max_frames < 1:
            raise ValueError("stop-rule caps must be positive")
        if self.info_source not in ("random", "zero"):
            raise ValueError("info_source must be 'random' or 'zero'")

    @property
    def n(self) -> int:
        return self.generator.n

    @property
    def k(self) -> int:
        return self.generator.k

    @property
    def rate(self) -> float:
        return self.k / self.n

    def fingerprint(self) -> str:
        text = "|".join([
            self.code_id, self.decoder_label,
            ",".join(repr(v) for v in self.snr_grid_db),
            str(self.min_frame_errors), str(self.max_frames),
            str(self.seed), self.info_source,
            str(self.reps.l), ",".join(str(s) for s in self.reps.seeds),
            str(len(self.bank.decoder_specs)),
            str(self.bank.decoder.max_iterations),
            repr(self.bank.decoder.llr_clip),
        ])
        return hashlib.sha256(text.encode()).hexdigest()


@dataclass(frozen=True)
class CampaignResult:
    config: CampaignConfig
    points: tuple[SnrPoint, ...]
    provenance: dict


class _Bank:
    """Decoder bank with pre-built graphs and per-frame candidate selection."""

    def __init__(self, reps: RepresentationSet, cfg: MbbpConfig):
        needed = sorted({s.rep_index for s in cfg.decoder_specs})
        for idx in needed:
            if not 0 <= idx < reps.l:
                raise ValueError(f"representation index {idx} out of range")
        self.graphs = {i: DecoderGraph(reps.matrices[i]) for i in needed}
        self.cfg = cfg
        self.n = reps.matrices[0].n_cols
        imax = cfg.decoder.max_iterations
        self._leak_p = {}
        for spec in cfg.decoder_specs:
            if spec.leak is not None and spec.leak not in self._leak_p:
                from .decoder import leak_schedule
                self._leak_p[spec.leak] = np.array(
                    [leak_schedule(spec.leak, i) for i in range(1, imax + 1)]
                )

    def decode_chunk(self, y: np.ndarray, sigma2: float, frame_labels):
        """Returns (selected bits, selected validity, any_valid) per frame."""
        batch = y.shape[0]
        llr = np.clip(2.0 * y / sigma2, -self.cfg.decoder.llr_clip,
                      self.cfg.decoder.llr_clip)
        best_bits = np.zeros((batch, self.n), dtype=np.uint8)
        best_corr = np.full(batch, -np.inf)
        have_valid = np.zeros(batch, dtype=bool)
        best_valid = np.zeros(batch, dtype=bool)
        for spec in self.cfg.decoder_specs:
            reveal = None
            if spec.leak is not None:
                p = self._leak_p[spec.leak]
                reveal = np.empty((batch, self.n), dtype=np.int32)
                for t, label in enumerate(frame_labels):
                    rng = seeding.stream("leak-mask", spec.leak.mask_seed, *label)
                    reveal[t] = np.searchsorted(p, rng.random(self.n),
                                                side="left").astype(np.int32) + 1
            bits, valid, _ = decode_batch(self.graphs[spec.rep_index], llr,
                                          self.cfg.decoder, reveal=reveal)
            corr = ((1.0 - 2.0 * bits) * y).sum(axis=1)
            better = (valid & ~have_valid) \
                | ((valid == have_valid) & (corr > best_corr))
            best_bits[better] = bits[better]
            best_corr[better] = corr[better]
            best_valid[better] = valid[better]
            have_valid |= valid
        return best_bits, best_valid, have_valid


def _frame_outcomes(cfg: CampaignConfig, bank: _Bank, dense_gen: np.ndarray,
                    snr_idx: int, lo: int, hi: int):
    """Simulate frames [lo, hi) of one SNR point; per-frame error arrays."""
    n, k = cfg.n, cfg.k
    sigma2 = sigma_from_ebn0(cfg.snr_grid_db[snr_idx], cfg.rate)
    count = hi - lo
    info = np.zeros((count, k), dtype=np.uint8)
    streams = []
    for t, f in enumerate(range(lo, hi)):
        rng = seeding.stream("frame", cfg.seed, snr_idx, f)
        if cfg.info_source == "random":
            info[t] = rng.integers(0, 2, size=k, dtype=np.uint8)
        streams.append(rng)
    if cfg.info_source == "random":
        words = (info.astype(np.float64) @ dense_gen).astype(np.int64) & 1
        x = modulate(words)
    else:
        x = np.ones((count, n))
    y = np.empty((count, n))
    for t, rng in enumerate(streams):
        y[t] = awgn(x[t], sigma2, rng)

    labels = [(cfg.seed, snr_idx, f) for f in range(lo, hi)]
    bits, sel_valid, _ = bank.decode_chunk(y, sigma2, labels)
    positions = list(cfg.generator.systematic_positions)
    bit_errors = (bits[:, positions] != info).sum(axis=1).astype(np.int64)
    frame_err = bit_errors > 0
    undetected = frame_err & sel_valid
    return bit_errors, frame_err, undetected


_WORKER_STATE: dict = {}


def _worker_init(cfg: CampaignConfig):
    _WORKER_STATE["cfg"] = cfg
    _WORKER_STATE["bank"] = _Bank(cfg.reps, cfg.bank)
    _WORKER_STATE["gen"] = cfg.generator.generator.to_dense().astype(np.float64)


def _worker_run(task):
    snr_idx, lo, hi = task
    out = _frame_outcomes(_WORKER_STATE["cfg"], _WORKER_STATE["bank"],
                          _WORKER_STATE["gen"], snr_idx, lo, hi)
    return snr_idx, lo, out


def run_campaign(cfg: CampaignConfig, workers: int = 1,
                 chunk_frames: int = 256) -> CampaignResult:
    """Simulate every SNR point under the campaign's stop rule."""
    t0 = time.monotonic()
    if workers < 1:
        raise ValueError("workers must be at least 1")
    points = []
    if workers == 1:
        bank = _Bank(cfg.reps, cfg.bank)
        dense = cfg.generator.generator.to_dense().astype(np.float64)
        for snr_idx in range(len(cfg.snr_grid_db)):
            points.append(_run_point_serial(cfg, bank, dense, snr_idx,
                                            chunk_frames))
    else:
        with ProcessPoolExecutor(max_workers=workers, initializer=_worker_init,
                                 initargs=(cfg,)) as pool:
            for snr_idx in range(len(cfg.snr_grid_db)):
                points.append(_run_point_pool(cfg, pool, snr_idx, chunk_frames,
                                              workers))
    provenance = {
        "config_hash": cfg.fingerprint(),
        "code_id": cfg.code_id,
        "decoder": cfg.decoder_label,
        "n": cfg.n,
        "k": cfg.k,
        "representations": cfg.reps.l,
        "decoders": len(cfg.bank.decoder_specs),
        "max_iterations": cfg.bank.decoder.max_iterations,
        "seed": cfg.seed,
        "info_source": cfg.info_source,
        "min_frame_errors": cfg.min_frame_errors,
        "max_frames": cfg.max_frames,
        "wall_time_s": time.monotonic() - t0,
    }
    return CampaignResult(config=cfg, points=tuple(points),
                          provenance=provenance)


class _PointCounters:
    def __init__(self, cfg, snr_idx):
        self.cfg = cfg
        self.snr_idx = snr_idx
        self.frames = 0
        self.frame_errors = 0
        self.bit_errors = 0
        self.undetected = 0

    def consume(self, outcomes) -> bool:
        """Scan a chunk frame by frame; True once the point may stop."""
        bit_errors, frame_err, undetected = outcomes
        limit = min(len(frame_err), self.cfg.max_frames - self.frames)
        need = self.cfg.min_frame_errors - self.frame_errors
        cum = np.cumsum(frame_err[:limit])
        hit = np.flatnonzero(cum >= need)
        take = int(hit[0]) + 1 if hit.size else limit
        self.frames += take
        self.frame_errors += int(frame_err[:take].sum())
        self.bit_errors += int(bit_errors[:take].sum())
        self.undetected += int(undetected[:take].sum())
        return hit.size > 0 or self.frames >= self.cfg.max_frames

    def snapshot(self) -> SnrPoint:
        db = self.cfg.snr_grid_db[self.snr_idx]
        return SnrPoint(
            ebn0_db=db,
            sigma2=sigma_from_ebn0(db, self.cfg.rate),
            frames_run=self.frames,
            frame_errors=self.frame_errors,
            bit_errors=self.bit_errors,
            undetected_frame_errors=self.undetected,
        )


def _run_point_serial(cfg, bank, dense, snr_idx, chunk_frames):
    counters = _PointCounters(cfg, snr_idx)
    lo = 0
    while True:
        hi = min(lo + chunk_frames, cfg.max_frames)
        outcomes = _frame_outcomes(cfg, bank, dense, snr_idx, lo, hi)
        if counters.consume(outcomes):
            break
        lo = hi
    return counters.snapshot()


def _run_point_pool(cfg, pool, snr_idx, chunk_frames, workers):
    counters = _PointCounters(cfg, snr_idx)
    pending = {}
    next_submit = 0
    next_consume = 0

    def submit_more():
        nonlocal next_submit
        while len(pending) < 2 * workers and next_submit < cfg.max_frames:
            hi = min(next_submit + chunk_frames, cfg.max_frames)
            pending[next_submit] = pool.submit(_worker_run,
                                               (snr_idx, next_submit, hi))
            next_submit = hi

    submit_more()
    while pending:
        future = pending.pop(next_consume)
        _, lo, outcomes = future.result()
        next_consume = lo + len(outcomes[1])
        if counters.consume(outcomes):
            for f in pending.values():
                f.cancel()
            break
        submit_more()
    return counters.snapshot()


def replay_frame(cfg: CampaignConfig, snr_idx: int, frame_idx: int) -> dict:
    """Re-run a single frame from its derived stream; exact reproduction."""
    bank = _Bank(cfg.reps, cfg.bank)
    dense = cfg.generator.generator.to_dense().astype(np.float64)
    bit_errors, frame_err, undetected = _frame_outcomes(
        cfg, bank, dense, snr_idx, frame_idx, frame_idx + 1
    )
    return {
        "bit_errors": int(bit_errors[0]),
        "frame_error": bool(frame_err[0]),
        "undetected": bool(undetected[0]),
    }


def write_results_csv(result: CampaignResult, path) -> None:
    """One row per SNR point; byte-stable for identical campaigns."""
    k = result.config.k
    lines = [",".join(RESULT_COLUMNS)]
    for p in result.points:
        lines.append(",".join([
            repr(float(p.ebn0_db)),
            repr(float(p.sigma2)),
            str(p.frames_run),
            str(p.frame_errors),
            str(p.bit_errors),
            str(p.undetected_frame_errors),
            repr(float(p.fer)),
            repr(float(p.ber(k))),
        ]))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_results_csv(path) -> dict[str, list[float]]:
    """Columns of a results CSV as lists keyed by header name."""
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        if header != list(RESULT_COLUMNS):
            raise ValueError(f"unexpected results header {header}")
        rows = [line.strip().split(",") for line in fh if line.strip()]
    out: dict[str, list[float]] = {name: [] for name in header}
    for row in rows:
        for name, cell in zip(header, row):
            out[name].append(float(cell))
    return out


def write_provenance(result: CampaignResult, path) -> None:
    with open(path, "w") as fh:
        json.dump(result.provenance, fh, indent=2, sort_keys=True)
        fh.write("\n")


def provenance_path(csv_path) -> Path:
    p = Path(csv_path)
    return p.with_name(p.stem + ".provenance.json")


def _build_code(section: dict, base_dir: Path):
    kind = section.get("kind", "alist")
    if kind == "wimax":
        n = int(section["n"])
        return section.get("id", f"wimax-n{n}"), wimax_parity_check(n), "wimax"
    if kind == "peg":
        n = int(section["n"])
        seed = int(section.get("seed", 1))
        return (section.get("id", f"peg-n{n}-s{seed}"),
                construct_peg_code(n, seed), "peg")
    if kind == "alist":
        path = base_dir / section["path"]
        h = read_alist(path)
        return section.get("id", Path(section["path"]).stem), h, "alist"
    raise ValueError(f"unknown code kind {kind!r}")


def make_redundant_pool(h: SparseBinaryMatrix, mode: str = "auto"):
    """Redundant-row pool for representation building.

    'base' needs a quasi-cyclic standard code (prototype combinations);
    'cycle' works for any matrix; 'auto' picks 'base' when h matches a
    standard lifted matrix of its size, else 'cycle'.
    """
    from .redundancy import cycle_redundant_pool
    from .wimax import BASE_COLS, STANDARD_LENGTHS

    if mode == "auto":
        mode = "cycle"
        if h.n_cols in STANDARD_LENGTHS and 2 * h.n_rows == h.n_cols:
            if h.rows == wimax_parity_check(h.n_cols).rows:
                mode = "base"
    if mode == "base":
        z = h.n_cols // BASE_COLS
        return wimax_redundant_pool(renormalize(wimax_base_matrix(), z), z)
    if mode == "cycle":
        return cycle_redundant_pool(h)
    raise ValueError(f"unknown pool mode {mode!r}")


def load_campaign(path) -> CampaignConfig:
    """Build a campaign from its YAML description.

    Relative file references are resolved against the config's directory.
    """
    path = Path(path)
    with open(path) as fh:
        raw = yaml.safe_load(fh)
    base_dir = path.parent

    code_id, h, _ = _build_code(raw.get("code", {}), base_dir)
    generator = systematic_generator(h)

    decoder_kind = raw.get("decoder", "bp")
    dec_cfg = DecoderConfig(
        max_iterations=int(raw.get("max_iterations", 200)),
        llr_clip=float(raw.get("llr_clip", 25.0)),
    )

    l = int(raw.get("l", 1)) if decoder_kind != "bp" else 1
    reps_section = raw.get("reps", {}) or {}
    if l == 1:
        reps = RepresentationSet(matrices=(h,), origin=code_id,
                                 seeds=(int(reps_section.get("seed", 0)),),
                                 replaced=((),))
    elif "path" in reps_section:
        reps = load_representation_set(base_dir / reps_section["path"])
        if reps.l < l:
            raise ValueError(f"representation set holds {reps.l} < l={l}")
    else:
        pool_mode = reps_section.get("pool", "auto")
        pool = make_redundant_pool(h, pool_mode)
        replace_count = reps_section.get("replace_count")
        reps = build_representation_set(
            h, l, int(reps_section.get("seed", 0)), pool,
            replace_count=None if replace_count is None else int(replace_count),
            origin=code_id,
        )

    if decoder_kind == "bp":
        bank = plain_bank(1, dec_cfg)
        label = "bp"
    elif decoder_kind == "mbbp":
        bank = plain_bank(l, dec_cfg)
        label = f"mbbp-l{l}"
    elif decoder_kind == "lmbbp":
        leak = raw.get("leak", {}) or {}
        bank = leaking_bank(
            l, dec_cfg,
            p_leak=float(leak.get("p_leak", 0.9)),
            i_max_prime=int(leak.get("i_max_prime", 300)),
            mask_seed=int(leak.get("mask_seed", 0)),
        )
        label = f"lmbbp-l{2 * l}"
    else:
        raise ValueError(f"unknown decoder kind {decoder_kind!r}")

    return CampaignConfig(
        code_id=code_id,
        decoder_label=label,
        reps=reps,
        bank=bank,
        generator=generator,
        snr_grid_db=tuple(float(v) for v in raw["snr_db"]),
        min_frame_errors=int(raw.get("min_frame_errors", 100)),
        max_frames=int(raw.get("max_frames", 1_000_000)),
        seed=int(raw.get("seed", 0)),
        info_source=raw.get("info_source", "random"),
    )
