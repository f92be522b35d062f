import filecmp
import json

import numpy as np
import pytest

from ldpclab import seeding
from ldpclab.decoder import DecoderConfig
from ldpclab.gf2 import systematic_generator
from ldpclab.mbbp import plain_bank
from ldpclab.redundancy import RepresentationSet
from ldpclab.sim import (CampaignConfig, awgn, encode, load_campaign,
                         make_redundant_pool, modulate, provenance_path,
                         read_results_csv, replay_frame, run_campaign,
                         sigma_from_ebn0, write_provenance, write_results_csv)

from conftest import enumerate_codewords


def _bp_campaign(h, generator, code_id="code", **kwargs):
    reps = RepresentationSet(matrices=(h,), origin=code_id, seeds=(0,),
                             replaced=((),))
    defaults = dict(
        code_id=code_id, decoder_label="bp", reps=reps,
        bank=plain_bank(1, DecoderConfig(max_iterations=60)),
        generator=generator,
        snr_grid_db=(2.0,), min_frame_errors=15, max_frames=600, seed=3,
    )
    defaults.update(kwargs)
    return CampaignConfig(**defaults)


def test_sigma_from_ebn0():
    assert sigma_from_ebn0(0.0, 0.5) == 1.0
    assert abs(sigma_from_ebn0(10 * np.log10(2.0), 0.5) - 0.5) < 1e-12
    assert sigma_from_ebn0(0.0, 1.0) == 0.5
    with pytest.raises(ValueError):
        sigma_from_ebn0(1.0, 0.0)


def test_modulate():
    assert (modulate([0, 1, 0]) == np.array([1.0, -1.0, 1.0])).all()
    assert (modulate(np.zeros(4, dtype=np.uint8)) == 1.0).all()
    assert (np.abs(modulate([0, 1, 1, 0])) == 1.0).all()


def test_awgn_zero_variance_and_determinism():
    x = np.array([1.0, -1.0, 1.0])
    assert (awgn(x, 0.0, seeding.stream("t")) == x).all()
    a = awgn(x, 0.5, seeding.stream("s", 1))
    b = awgn(x, 0.5, seeding.stream("s", 1))
    assert (a == b).all()
    with pytest.raises(ValueError):
        awgn(x, -0.1, seeding.stream("t"))


def test_awgn_empirical_variance():
    stream = seeding.stream("variance-check")
    noise = awgn(np.zeros(1_000_000), 0.37, stream)
    assert abs(noise.var() - 0.37) / 0.37 < 0.01
    assert abs(noise.mean()) < 0.002


def test_encode_zero_and_lengths(hamming74):
    g = systematic_generator(hamming74)
    assert not encode(g, np.zeros(4, dtype=np.uint8)).any()
    with pytest.raises(ValueError):
        encode(g, np.zeros(5, dtype=np.uint8))


def test_encode_hamming_minimum_weight(hamming74):
    g = systematic_generator(hamming74)
    for u in range(1, 16):
        info = np.array([(u >> i) & 1 for i in range(4)], dtype=np.uint8)
        word = encode(g, info)
        assert word.sum() >= 3
        assert (word[list(g.systematic_positions)] == info).all()


def test_encode_wimax_against_all_representations(wimax576_reps,
                                                  wimax576_generator):
    rng = np.random.default_rng(8)
    u = rng.integers(0, 2, 288, dtype=np.uint8)
    word = encode(wimax576_generator, u)
    for m in wimax576_reps.matrices:
        assert not m.syndrome(word).any()


def test_campaign_deterministic_bytes(tmp_path, wimax576, wimax576_generator):
    cfg = _bp_campaign(wimax576, wimax576_generator, code_id="wimax-n576")
    res1 = run_campaign(cfg, workers=1)
    res2 = run_campaign(cfg, workers=1)
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    write_results_csv(res1, p1)
    write_results_csv(res2, p2)
    assert filecmp.cmp(p1, p2, shallow=False)
    assert res1.provenance["config_hash"] == res2.provenance["config_hash"]


def test_campaign_worker_invariance(tmp_path, wimax576, wimax576_generator):
    cfg = _bp_campaign(wimax576, wimax576_generator, code_id="wimax-n576")
    paths = []
    for workers, chunk in ((1, 256), (2, 64), (3, 100)):
        res = run_campaign(cfg, workers=workers, chunk_frames=chunk)
        path = tmp_path / f"w{workers}.csv"
        write_results_csv(res, path)
        paths.append(path)
    assert filecmp.cmp(paths[0], paths[1], shallow=False)
    assert filecmp.cmp(paths[0], paths[2], shallow=False)


def test_campaign_fer_decreases_with_snr(wimax576, wimax576_generator):
    cfg = _bp_campaign(wimax576, wimax576_generator,
                       snr_grid_db=(0.5, 3.0), min_frame_errors=40,
                       max_frames=3000, seed=9)
    res = run_campaign(cfg)
    low, high = res.points
    assert low.fer > high.fer
    assert low.frames_run < high.frames_run


def test_campaign_stop_rule_and_counters(wimax576, wimax576_generator):
    cfg = _bp_campaign(wimax576, wimax576_generator, min_frame_errors=10,
                       max_frames=5000, snr_grid_db=(1.0,), seed=4)
    res = run_campaign(cfg)
    point = res.points[0]
    assert point.frame_errors == 10  # stops exactly at the 10th error
    assert point.undetected_frame_errors <= point.frame_errors
    assert point.bit_errors <= point.frames_run * cfg.n
    assert point.sigma2 == sigma_from_ebn0(1.0, 0.5)


def test_campaign_max_frames_cap(wimax576, wimax576_generator):
    cfg = _bp_campaign(wimax576, wimax576_generator, snr_grid_db=(4.0,),
                       min_frame_errors=100, max_frames=150, seed=5)
    res = run_campaign(cfg)
    assert res.points[0].frames_run == 150


def test_zero_info_source_statistically_equivalent(wimax576,
                                                   wimax576_generator):
    # linear code + symmetric channel: all-zero transmission and random
    # codewords give compatible FER estimates
    common = dict(snr_grid_db=(1.5,), min_frame_errors=60, max_frames=4000)
    res_rand = run_campaign(_bp_campaign(wimax576, wimax576_generator,
                                         seed=21, **common))
    res_zero = run_campaign(_bp_campaign(wimax576, wimax576_generator,
                                         seed=22, info_source="zero",
                                         **common))
    f_rand, f_zero = res_rand.points[0], res_zero.points[0]
    # two-sigma comparison on the error counts
    p = (f_rand.frame_errors + f_zero.frame_errors) / \
        (f_rand.frames_run + f_zero.frames_run)
    sd = np.sqrt(p * (1 - p) * (1 / f_rand.frames_run + 1 / f_zero.frames_run))
    assert abs(f_rand.fer - f_zero.fer) < 4 * sd + 1e-9


def test_replay_single_frame(wimax576, wimax576_generator):
    cfg = _bp_campaign(wimax576, wimax576_generator, snr_grid_db=(1.2,),
                       min_frame_errors=8, max_frames=400, seed=13)
    res = run_campaign(cfg)
    point = res.points[0]
    # re-simulate every frame individually; totals must match exactly
    total_bits = 0
    total_frames = 0
    total_undetected = 0
    for f in range(point.frames_run):
        outcome = replay_frame(cfg, 0, f)
        total_bits += outcome["bit_errors"]
        total_frames += int(outcome["frame_error"])
        total_undetected += int(outcome["undetected"])
    assert total_frames == point.frame_errors
    assert total_bits == point.bit_errors
    assert total_undetected == point.undetected_frame_errors


def test_results_csv_roundtrip(tmp_path, wimax576, wimax576_generator):
    cfg = _bp_campaign(wimax576, wimax576_generator)
    res = run_campaign(cfg)
    path = tmp_path / "out.csv"
    write_results_csv(res, path)
    write_provenance(res, provenance_path(path))
    data = read_results_csv(path)
    assert data["frames"][0] == res.points[0].frames_run
    assert data["fer"][0] == res.points[0].fer
    with open(provenance_path(path)) as fh:
        prov = json.load(fh)
    assert prov["n"] == 576 and prov["k"] == 288
    assert prov["config_hash"] == cfg.fingerprint()


def test_campaign_config_validation(wimax576, wimax576_generator):
    with pytest.raises(ValueError):
        _bp_campaign(wimax576, wimax576_generator, snr_grid_db=(2.0, 1.0))
    with pytest.raises(ValueError):
        _bp_campaign(wimax576, wimax576_generator, min_frame_errors=0)
    with pytest.raises(ValueError):
        _bp_campaign(wimax576, wimax576_generator, info_source="other")


def test_load_campaign_yaml(tmp_path):
    cfg_text = """
code:
  kind: wimax
  n: 576
decoder: mbbp
l: 3
reps:
  seed: 11
  pool: auto
snr_db: [1.0, 2.0]
min_frame_errors: 12
max_frames: 800
seed: 99
info_source: random
max_iterations: 50
"""
    path = tmp_path / "camp.yaml"
    path.write_text(cfg_text)
    cfg = load_campaign(path)
    assert cfg.code_id == "wimax-n576"
    assert cfg.decoder_label == "mbbp-l3"
    assert cfg.reps.l == 3
    assert len(cfg.bank.decoder_specs) == 3
    assert cfg.bank.decoder.max_iterations == 50
    assert cfg.snr_grid_db == (1.0, 2.0)
    assert cfg.k == 288


def test_load_campaign_lmbbp_and_alist(tmp_path, wimax576):
    from ldpclab.alist import write_alist
    from ldpclab.redundancy import (build_representation_set,
                                    save_representation_set)

    write_alist(wimax576, tmp_path / "h.alist")
    pool = make_redundant_pool(wimax576, "base")
    reps = build_representation_set(wimax576, 2, seed=1, pool=pool)
    save_representation_set(reps, tmp_path / "reps")
    cfg_text = """
code:
  kind: alist
  path: h.alist
decoder: lmbbp
l: 2
reps:
  path: reps
leak:
  p_leak: 0.9
  i_max_prime: 300
  mask_seed: 5
snr_db: [2.0]
min_frame_errors: 5
max_frames: 100
seed: 1
"""
    path = tmp_path / "camp.yaml"
    path.write_text(cfg_text)
    cfg = load_campaign(path)
    assert cfg.decoder_label == "lmbbp-l4"
    assert len(cfg.bank.decoder_specs) == 4
    res = run_campaign(cfg)
    assert res.points[0].frames_run >= 1
