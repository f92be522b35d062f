"""Log-domain sum-product decoding with optional channel-info leaking.

The engine is written batch-first: a whole block of frames is decoded
against one parity-check matrix with flooding updates, and frames drop out
of the batch as soon as their hard decision satisfies every check. All
arithmetic is elementwise or reduces along per-node axes of fixed layout,
so a frame decodes to bitwise-identical output no matter which batch (or
batch size) it rides in.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import seeding
from .gf2 import SparseBinaryMatrix

# tanh products stay strictly inside (-1, 1); guard atanh anyway
_PRODUCT_LIMIT = 1.0 - 1e-15


@dataclass(frozen=True)
class DecoderConfig:
    max_iterations: int = 200
    llr_clip: float = 25.0

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("need at least one iteration")
        if self.llr_clip <= 0:
            raise ValueError("llr_clip must be positive")


@dataclass(frozen=True)
class LeakConfig:
    """Leaking decoder parameters: fraction p_leak of variable nodes sees
    its channel LLR in iteration 1, the rest fades in linearly so that all
    nodes are informed by iteration i_max_prime."""

    p_leak: float = 0.9
    i_max_prime: int = 300
    mask_seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.p_leak <= 1.0:
            raise ValueError("p_leak must be in (0, 1]")
        if self.i_max_prime < 1:
            raise ValueError("i_max_prime must be at least 1")


@dataclass(frozen=True)
class DecoderOutput:
    hard_decision: np.ndarray
    syndrome_valid: bool
    iterations_used: int
    correlation: float


def channel_llr(y, sigma2: float, llr_clip: float = 25.0) -> np.ndarray:
    """LLRs 2*y/sigma2 for antipodal signaling (bit 0 -> +1), saturated."""
    if sigma2 <= 0:
        raise ValueError("noise variance must be positive")
    llr = 2.0 * np.asarray(y, dtype=np.float64) / sigma2
    return np.clip(llr, -llr_clip, llr_clip)


def leak_schedule(lk: LeakConfig, iteration: int) -> float:
    """Informed node fraction p(i): p_leak at i=1, ramping to 1 at i_max_prime."""
    if iteration < 1:
        raise ValueError("iterations are counted from 1")
    if lk.i_max_prime == 1:
        return 1.0
    ramp = (1.0 - lk.p_leak) * (iteration - 1) / (lk.i_max_prime - 1)
    return min(1.0, lk.p_leak + ramp)


def reveal_iterations(lk: LeakConfig, n: int, max_iterations: int,
                      extra_key=()) -> np.ndarray:
    """First iteration at which each variable node sees its channel LLR.

    One uniform deviate per node, drawn from mask_seed (plus any extra
    stream labels); node j is revealed at the first i with p(i) >= u_j.
    Nodes beyond the schedule within max_iterations get max_iterations+1.
    """
    rng = seeding.stream("leak-mask", lk.mask_seed, *extra_key)
    u = rng.random(n)
    p = np.array([leak_schedule(lk, i) for i in range(1, max_iterations + 1)])
    return np.searchsorted(p, u, side="left").astype(np.int32) + 1


class DecoderGraph:
    """Edge-indexed view of a parity-check matrix for message passing.

    Edges are numbered row-major; slot tables gather them per check and
    per variable node, padded with a sentinel edge whose value is pinned
    to the operation's neutral element.
    """

    def __init__(self, h: SparseBinaryMatrix):
        self.h = h
        self.m, self.n = h.n_rows, h.n_cols
        row_weights = h.row_weights()
        self.n_edges = sum(row_weights)
        self.edge_var = np.fromiter(
            (c for row in h.rows for c in row), dtype=np.int64,
            count=self.n_edges,
        )

        dc = max(row_weights, default=0)
        self.chk_slot_edges = np.full((self.m, dc), self.n_edges, dtype=np.int64)
        self.chk_slot_vars = np.full((self.m, dc), self.n, dtype=np.int64)
        at = 0
        for i, w in enumerate(row_weights):
            self.chk_slot_edges[i, :w] = np.arange(at, at + w)
            self.chk_slot_vars[i, :w] = h.rows[i]
            at += w

        cols = h.col_supports()
        dv = max((len(c) for c in cols), default=0)
        self.var_slot_edges = np.full((self.n, dv), self.n_edges, dtype=np.int64)
        edge_of = {}
        at = 0
        for i, row in enumerate(h.rows):
            for c in row:
                edge_of[(i, c)] = at
                at += 1
        for j, checks in enumerate(cols):
            for s, i in enumerate(checks):
                self.var_slot_edges[j, s] = edge_of[(i, j)]


def decode_batch(graph: DecoderGraph, llrs: np.ndarray, cfg: DecoderConfig,
                 reveal: np.ndarray | None = None):
    """Decode a block of frames; returns (bits, valid, iterations) arrays.

    llrs is (batch, n). reveal, when given, is (batch, n) with the first
    iteration each node's channel LLR participates; None means all nodes
    are informed from the start.
    """
    llrs = np.atleast_2d(np.asarray(llrs, dtype=np.float64))
    batch, n = llrs.shape
    if n != graph.n:
        raise ValueError(f"llr length {n} does not match {graph.n} columns")
    if reveal is not None:
        reveal = np.atleast_2d(np.asarray(reveal, dtype=np.int32))
        if reveal.shape != llrs.shape:
            raise ValueError("reveal schedule shape mismatch")

    bits_out = np.zeros((batch, n), dtype=np.uint8)
    valid_out = np.zeros(batch, dtype=bool)
    iters_out = np.full(batch, cfg.max_iterations, dtype=np.int32)

    # channel hard decision may already satisfy every check
    bits = (llrs < 0).astype(np.uint8)
    ok = _syndrome_ok(graph, bits)
    bits_out[ok] = bits[ok]
    valid_out[ok] = True
    iters_out[ok] = 0

    alive = np.flatnonzero(~ok)
    if alive.size == 0:
        return bits_out, valid_out, iters_out

    llr_a = llrs[alive]
    reveal_a = reveal[alive] if reveal is not None else None
    ne = graph.n_edges
    r_msgs = np.zeros((alive.size, ne + 1))
    varsum = np.zeros((alive.size, n))

    for it in range(1, cfg.max_iterations + 1):
        if reveal_a is None:
            chan = llr_a
        else:
            chan = llr_a * (reveal_a <= it)

        # variable -> check: channel plus extrinsic check messages
        q_msgs = (chan + varsum)[:, graph.edge_var] - r_msgs[:, :ne]
        np.clip(q_msgs, -cfg.llr_clip, cfg.llr_clip, out=q_msgs)

        # check -> variable: tanh product over the other edges of the check
        t = np.empty((q_msgs.shape[0], ne + 1))
        np.tanh(0.5 * q_msgs, out=t[:, :ne])
        t[:, ne] = 1.0
        tm = t[:, graph.chk_slot_edges]
        left = np.ones_like(tm)
        np.cumprod(tm[:, :, :-1], axis=2, out=left[:, :, 1:])
        right = np.ones_like(tm)
        right[:, :, :-1] = np.cumprod(tm[:, :, :0:-1], axis=2)[:, :, ::-1]
        prod = left * right
        np.clip(prod, -_PRODUCT_LIMIT, _PRODUCT_LIMIT, out=prod)
        r_msgs[:, graph.chk_slot_edges.ravel()] = \
            (2.0 * np.arctanh(prod)).reshape(prod.shape[0], -1)
        r_msgs[:, ne] = 0.0

        varsum = r_msgs[:, graph.var_slot_edges].sum(axis=2)
        total = chan + varsum
        bits = (total < 0).astype(np.uint8)
        ok = _syndrome_ok(graph, bits)
        if ok.any():
            done = alive[ok]
            bits_out[done] = bits[ok]
            valid_out[done] = True
            iters_out[done] = it
            keep = ~ok
            alive = alive[keep]
            if alive.size == 0:
                return bits_out, valid_out, iters_out
            llr_a = llr_a[keep]
            if reveal_a is not None:
                reveal_a = reveal_a[keep]
            r_msgs = r_msgs[keep]
            varsum = varsum[keep]
            bits = bits[keep]

    bits_out[alive] = bits
    return bits_out, valid_out, iters_out


def _syndrome_ok(graph: DecoderGraph, bits: np.ndarray) -> np.ndarray:
    padded = np.concatenate(
        [bits, np.zeros((bits.shape[0], 1), dtype=bits.dtype)], axis=1
    )
    parity = padded[:, graph.chk_slot_vars].sum(axis=2, dtype=np.int64) & 1
    return ~parity.any(axis=1)


def _correlation(bits: np.ndarray, llr: np.ndarray) -> float:
    return float(((1.0 - 2.0 * bits) * llr).sum())


def bp_decode(h: SparseBinaryMatrix | DecoderGraph, llr,
              cfg: DecoderConfig = DecoderConfig()) -> DecoderOutput:
    """Flooding sum-product decode of one frame."""
    graph = h if isinstance(h, DecoderGraph) else DecoderGraph(h)
    llr = np.asarray(llr, dtype=np.float64)
    bits, valid, iters = decode_batch(graph, llr[None, :], cfg)
    return DecoderOutput(
        hard_decision=bits[0],
        syndrome_valid=bool(valid[0]),
        iterations_used=int(iters[0]),
        correlation=_correlation(bits[0], llr),
    )


def leaking_decode(h: SparseBinaryMatrix | DecoderGraph, llr,
                   cfg: DecoderConfig, lk: LeakConfig) -> DecoderOutput:
    """Sum-product decode with the channel LLRs fading in per node.

    The activation mask is drawn once from lk.mask_seed; with p_leak = 1
    the output is bitwise identical to bp_decode.
    """
    graph = h if isinstance(h, DecoderGraph) else DecoderGraph(h)
    llr = np.asarray(llr, dtype=np.float64)
    reveal = reveal_iterations(lk, graph.n, cfg.max_iterations)
    bits, valid, iters = decode_batch(graph, llr[None, :], cfg,
                                      reveal=reveal[None, :])
    return DecoderOutput(
        hard_decision=bits[0],
        syndrome_valid=bool(valid[0]),
        iterations_used=int(iters[0]),
        correlation=_correlation(bits[0], llr),
    )
