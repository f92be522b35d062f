"""Parallel multi-representation decoding with closest-candidate selection.

A bank of independent sum-product decoders runs over the matrices of a
RepresentationSet (no message exchange); the post-processing picks, among
the syndrome-valid outputs, the codeword closest to the received vector.
Under unit-energy antipodal mapping that minimum-distance rule equals
maximizing the correlation sum((1-2*bit) * y), which is what is computed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import seeding
from .decoder import (DecoderConfig, DecoderGraph, DecoderOutput, LeakConfig,
                      channel_llr, decode_batch, reveal_iterations)
from .redundancy import RepresentationSet


@dataclass(frozen=True)
class DecoderSpec:
    """One decoder instance: which representation, and plain or leaking."""

    rep_index: int
    leak: LeakConfig | None = None


@dataclass(frozen=True)
class MbbpConfig:
    decoder_specs: tuple[DecoderSpec, ...]
    decoder: DecoderConfig = field(default_factory=DecoderConfig)

    def __post_init__(self):
        if not self.decoder_specs:
            raise ValueError("decoder bank must not be empty")


@dataclass(frozen=True)
class MbbpResult:
    selected: DecoderOutput
    selected_index: int
    any_valid: bool
    per_decoder: tuple[tuple[bool, float, int], ...]


def plain_bank(l: int, cfg: DecoderConfig = DecoderConfig()) -> MbbpConfig:
    """One plain BP decoder per representation."""
    if l < 1:
        raise ValueError("need at least one decoder")
    return MbbpConfig(tuple(DecoderSpec(i) for i in range(l)), cfg)


def leaking_bank(l: int, cfg: DecoderConfig = DecoderConfig(),
                 p_leak: float = 0.9, i_max_prime: int = 300,
                 mask_seed: int = 0) -> MbbpConfig:
    """Plain and leaking decoder per representation (2l decoders total).

    Each leaking instance gets its own activation-mask seed derived from
    mask_seed and the representation index.
    """
    if l < 1:
        raise ValueError("need at least one representation")
    plain = tuple(DecoderSpec(i) for i in range(l))
    leaking = tuple(
        DecoderSpec(i, LeakConfig(p_leak, i_max_prime,
                                  seeding.derive_seed("mask", mask_seed, i)))
        for i in range(l)
    )
    return MbbpConfig(plain + leaking, cfg)


def select_candidate(y, outputs: list[DecoderOutput]):
    """Pick the candidate closest to y; returns (index, output, any_valid).

    Valid candidates win over invalid ones; within the pool the highest
    correlation with y wins, ties going to the lowest decoder index. With
    no valid candidate the best-correlation output is returned flagged.
    """
    if not outputs:
        raise ValueError("no decoder outputs to select from")
    y = np.asarray(y, dtype=np.float64)
    for out in outputs:
        if out.hard_decision.shape[0] != y.shape[0]:
            raise ValueError("candidate length does not match received vector")
    corr = [float(np.dot(1.0 - 2.0 * o.hard_decision.astype(np.float64), y))
            for o in outputs]
    valid = [i for i, o in enumerate(outputs) if o.syndrome_valid]
    pool = valid if valid else list(range(len(outputs)))
    best = max(pool, key=lambda i: corr[i])
    return best, outputs[best], bool(valid)


def mbbp_decode(reps: RepresentationSet, y, sigma2: float,
                cfg: MbbpConfig) -> MbbpResult:
    """Run the decoder bank on one received frame and select the output.

    Channel LLRs are computed once and shared; every decoder works on its
    own representation with private message memory, so the result does not
    depend on evaluation order.
    """
    y = np.asarray(y, dtype=np.float64)
    n = reps.matrices[0].n_cols
    if y.shape[0] != n:
        raise ValueError(f"received vector length {y.shape[0]}, expected {n}")
    for spec in cfg.decoder_specs:
        if not 0 <= spec.rep_index < reps.l:
            raise ValueError(f"representation index {spec.rep_index} out of range")

    llr = channel_llr(y, sigma2, cfg.decoder.llr_clip)
    graphs: dict[int, DecoderGraph] = {}
    outputs: list[DecoderOutput] = []
    for spec in cfg.decoder_specs:
        if spec.rep_index not in graphs:
            graphs[spec.rep_index] = DecoderGraph(reps.matrices[spec.rep_index])
        graph = graphs[spec.rep_index]
        reveal = None
        if spec.leak is not None:
            reveal = reveal_iterations(spec.leak, n,
                                       cfg.decoder.max_iterations)[None, :]
        bits, valid, iters = decode_batch(graph, llr[None, :], cfg.decoder,
                                          reveal=reveal)
        outputs.append(DecoderOutput(
            hard_decision=bits[0],
            syndrome_valid=bool(valid[0]),
            iterations_used=int(iters[0]),
            correlation=float(np.dot(1.0 - 2.0 * bits[0].astype(np.float64),
                                     llr)),
        ))

    index, selected, any_valid = select_candidate(y, outputs)
    return MbbpResult(
        selected=selected,
        selected_index=index,
        any_valid=any_valid,
        per_decoder=tuple(
            (o.syndrome_valid, o.correlation, o.iterations_used) for o in outputs
        ),
    )
