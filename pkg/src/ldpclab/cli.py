"""Command-line front end.

Subcommands: construct-wimax, construct-peg, gen-reps, decode-one,
simulate, bounds, summarize. Report-style commands write a rendered PNG
next to their CSV output unless --no-plot is given. Commands never modify
their input files; all randomness hangs off explicit seeds.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np
import yaml

from . import bounds as bounds_mod
from . import seeding, sim
from .alist import read_alist, write_alist
from .decoder import DecoderConfig
from .gf2 import rank, systematic_generator
from .mbbp import leaking_bank, mbbp_decode, plain_bank
from .peg import construct_peg_code, optimized_distribution, quantize_degrees
from .redundancy import (RepresentationSet, build_representation_set,
                         load_representation_set, save_representation_set)
from .tanner import local_girth
from .wimax import (STANDARD_LENGTHS, renormalize, wimax_base_matrix,
                    wimax_parity_check, write_base_matrix)

USAGE_ERROR = 2


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    try:
        return args.handler(args)
    except (ValueError, FileNotFoundError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ldpclab",
        description="LDPC construction, multi-representation decoding, "
                    "and AWGN link simulation",
    )
    sub = parser.add_subparsers(required=True)

    p = sub.add_parser("construct-wimax",
                       help="build a standard rate-1/2 parity-check matrix")
    p.add_argument("--n", type=int, required=True, choices=STANDARD_LENGTHS)
    p.add_argument("--out", required=True)
    p.add_argument("--base-out", help="also write the renormalized prototype")
    p.set_defaults(handler=_cmd_construct_wimax)

    p = sub.add_parser("construct-peg",
                       help="grow a rate-1/2 code with progressive edge growth")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", required=True)
    p.add_argument("--manifest", help="write construction details as YAML")
    p.set_defaults(handler=_cmd_construct_peg)

    p = sub.add_parser("gen-reps",
                       help="derive full-rank redundant representations")
    p.add_argument("--code", required=True, help="alist of the base matrix")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--pool", choices=("auto", "base", "cycle"), default="auto")
    p.add_argument("--replace-count", type=int)
    p.set_defaults(handler=_cmd_gen_reps)

    p = sub.add_parser("decode-one", help="decode a single random noisy frame")
    p.add_argument("--code", required=True)
    p.add_argument("--reps", help="representation directory (for mbbp/lmbbp)")
    p.add_argument("--decoder", choices=("bp", "mbbp", "lmbbp"), default="bp")
    p.add_argument("--ebn0", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=200)
    p.set_defaults(handler=_cmd_decode_one)

    p = sub.add_parser("simulate", help="run a Monte-Carlo campaign")
    p.add_argument("--config", required=True, help="campaign YAML")
    p.add_argument("--out", required=True, help="results CSV")
    p.add_argument("--workers", type=int,
                   default=int(os.environ.get("LDPCLAB_WORKERS", "1")))
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("bounds", help="random-coding bound curve")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ebn0-start", type=float, default=0.0)
    p.add_argument("--ebn0-stop", type=float, default=3.0)
    p.add_argument("--ebn0-step", type=float, default=0.25)
    p.add_argument("--out", required=True)
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(handler=_cmd_bounds)

    p = sub.add_parser("summarize",
                       help="required-SNR table from result CSVs")
    p.add_argument("--results", nargs="+", required=True)
    p.add_argument("--fer-target", type=float, default=1e-3)
    p.add_argument("--ber-target", type=float, default=1e-5)
    p.add_argument("--out", required=True)
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(handler=_cmd_summarize)

    return parser


def _cmd_construct_wimax(args) -> int:
    h = wimax_parity_check(args.n)
    write_alist(h, args.out)
    if args.base_out:
        z = args.n // 24
        write_base_matrix(renormalize(wimax_base_matrix(), z), args.base_out)
    report = local_girth(h)
    print(f"wrote {args.out}: {h.n_rows}x{h.n_cols}, "
          f"row weights {sorted(set(h.row_weights()))}, girth {report.girth}")
    return 0


def _cmd_construct_peg(args) -> int:
    h = construct_peg_code(args.n, args.seed)
    write_alist(h, args.out)
    achieved_rank = rank(h)
    report = local_girth(h)
    print(f"wrote {args.out}: {h.n_rows}x{h.n_cols}, girth {report.girth}, "
          f"rank {achieved_rank} (effective rate "
          f"{(h.n_cols - achieved_rank) / h.n_cols:.4f})")
    if args.manifest:
        dist = optimized_distribution()
        manifest = {
            "n": args.n,
            "seed": args.seed,
            "distribution": {d: f for d, f in dist.node_fractions.items()},
            "degree_histogram": quantize_degrees(dist, args.n).histogram(),
            "girth": None if math.isinf(report.girth) else int(report.girth),
            "rank": achieved_rank,
        }
        with open(args.manifest, "w") as fh:
            yaml.safe_dump(manifest, fh, sort_keys=False)
    return 0


def _cmd_gen_reps(args) -> int:
    h = read_alist(args.code)
    pool = sim.make_redundant_pool(h, args.pool)
    reps = build_representation_set(
        h, args.l, args.seed, pool,
        replace_count=args.replace_count,
        origin=Path(args.code).stem,
    )
    save_representation_set(reps, args.out)
    print(f"wrote {reps.l} representations to {args.out} "
          f"(pool {args.pool}, {len(pool)} candidate rows)")
    return 0


def _cmd_decode_one(args) -> int:
    h = read_alist(args.code)
    gform = systematic_generator(h)
    dec_cfg = DecoderConfig(max_iterations=args.iters)

    if args.decoder == "bp":
        reps = RepresentationSet(matrices=(h,), origin=Path(args.code).stem)
        bank = plain_bank(1, dec_cfg)
    else:
        if not args.reps:
            raise ValueError(f"--reps is required for decoder {args.decoder}")
        reps = load_representation_set(args.reps)
        if args.decoder == "mbbp":
            bank = plain_bank(reps.l, dec_cfg)
        else:
            bank = leaking_bank(reps.l, dec_cfg, mask_seed=args.seed)

    rng = seeding.stream("decode-one", args.seed)
    info = rng.integers(0, 2, size=gform.k, dtype=np.uint8)
    word = sim.encode(gform, info)
    sigma2 = sim.sigma_from_ebn0(args.ebn0, gform.k / gform.n)
    received = sim.awgn(sim.modulate(word), sigma2, rng)

    result = mbbp_decode(reps, received, sigma2, bank)
    decoded_info = result.selected.hard_decision[list(gform.systematic_positions)]
    errors = int((decoded_info != info).sum())
    print(f"code {h.n_rows}x{h.n_cols}, decoder {args.decoder}, "
          f"Eb/N0 {args.ebn0} dB")
    for i, (valid, corr, iters) in enumerate(result.per_decoder):
        print(f"  decoder {i}: valid={valid} iterations={iters} "
              f"correlation={corr:.2f}")
    print(f"selected decoder {result.selected_index} "
          f"(any_valid={result.any_valid}): "
          f"{'exact' if errors == 0 else f'{errors} info bit errors'}")
    return 0


def _cmd_simulate(args) -> int:
    cfg = sim.load_campaign(args.config)
    result = sim.run_campaign(cfg, workers=args.workers)
    sim.write_results_csv(result, args.out)
    sim.write_provenance(result, sim.provenance_path(args.out))
    for point in result.points:
        print(f"{point.ebn0_db:6.2f} dB: frames {point.frames_run}, "
              f"FER {point.fer:.3e}, BER {point.ber(cfg.k):.3e}")
    if not args.no_plot:
        from .plotting import plot_error_rates
        fig_path = Path(args.out).with_suffix(".png")
        plot_error_rates([{
            "label": f"{cfg.code_id} {cfg.decoder_label}",
            "ebn0_db": [p.ebn0_db for p in result.points],
            "fer": [p.fer for p in result.points],
            "ber": [p.ber(cfg.k) for p in result.points],
        }], fig_path)
        print(f"figure: {fig_path}")
    return 0


def _cmd_bounds(args) -> int:
    grid = []
    db = args.ebn0_start
    while db <= args.ebn0_stop + 1e-9:
        grid.append(round(db, 10))
        db += args.ebn0_step
    curve = bounds_mod.gallager_curve(args.n, args.k, grid)
    bounds_mod.write_bound_csv(curve, args.out)
    print(f"wrote {args.out}: n={curve.n} rate={curve.rate} d_gv={curve.d_gv}")
    if not args.no_plot:
        from .plotting import plot_error_rates
        fig_path = Path(args.out).with_suffix(".png")
        plot_error_rates([{
            "label": f"random-coding bound n={args.n}",
            "ebn0_db": [p[0] for p in curve.points],
            "fer": [p[1] for p in curve.points],
            "ber": [p[2] for p in curve.points],
        }], fig_path)
        print(f"figure: {fig_path}")
    return 0


def _cmd_summarize(args) -> int:
    rows = []
    entries_fer = []
    entries_ber = []
    for res_path in args.results:
        data = sim.read_results_csv(res_path)
        label = Path(res_path).stem
        decoder, n, k = label, None, None
        prov_path = sim.provenance_path(res_path)
        if prov_path.exists():
            with open(prov_path) as fh:
                prov = json.load(fh)
            label = prov.get("code_id", label)
            decoder = prov.get("decoder", decoder)
            n = prov.get("n")
            k = prov.get("k")
        fer_curve = [(db, v) for db, v in zip(data["ebn0_db"], data["fer"])
                     if v > 0]
        ber_curve = [(db, v) for db, v in zip(data["ebn0_db"], data["ber"])
                     if v > 0]
        for kind, curve, target, entries in (
            ("fer", fer_curve, args.fer_target, entries_fer),
            ("ber", ber_curve, args.ber_target, entries_ber),
        ):
            try:
                req = bounds_mod.required_snr(curve, target)
                rows.append((label, decoder, n, k, kind, target, req))
                entries.append({"label": label, "decoder": decoder,
                                "n": n, "required_db": req})
            except (bounds_mod.TargetOutOfRangeError, ValueError) as exc:
                rows.append((label, decoder, n, k, kind, target, None))
                print(f"note: {res_path} {kind}: {exc}", file=sys.stderr)

    lines = ["label,decoder,n,k,target_kind,target,required_ebn0_db"]
    for label, decoder, n, k, kind, target, req in rows:
        lines.append(",".join([
            label, decoder, "" if n is None else str(n),
            "" if k is None else str(k), kind, repr(float(target)),
            "" if req is None else repr(float(req)),
        ]))
    with open(args.out, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    for line in lines:
        print(line)

    if not args.no_plot:
        from .plotting import plot_required_snr
        base = Path(args.out)
        for kind, entries, target in (("fer", entries_fer, args.fer_target),
                                      ("ber", entries_ber, args.ber_target)):
            if entries:
                fig_path = base.with_name(f"{base.stem}_{kind}.png")
                plot_required_snr(entries, fig_path,
                                  f"{kind.upper()} = {target:g}")
                print(f"figure: {fig_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
