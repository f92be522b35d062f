"""Information-theoretic comparison curves.

The block-error reference is the random-coding exponent for the
binary-input AWGN channel: FER <= 2^(-n * Er(R)) with
Er(R) = max over rho in [0,1] of E0(rho) - rho*R (all in bits). E0 is
evaluated by Gauss-Hermite integration over the channel output and the
maximization by golden-section search. A frame-error bound converts to a
bit-error bound by assuming d errors per bad frame, with d from the
Gilbert-Varshamov estimate for the blocklength and rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .sim import sigma_from_ebn0

_GH_NODES = 128
_gh_t, _gh_w = np.polynomial.hermite.hermgauss(_GH_NODES)
_log_gh_w = np.log(_gh_w)
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class TargetOutOfRangeError(ValueError):
    """Requested level lies outside the values a curve covers."""


def gv_distance(n: int, k: int) -> int:
    """Largest d with sum_{i<=d-2} C(n-1, i) <= 2^(n-k), exactly.

    Capped at n, the largest meaningful distance of a length-n code.
    """
    if not 0 < k < n:
        raise ValueError("need 0 < k < n")
    budget = 1 << (n - k)
    total = 0
    d = 1
    while d < n:
        total += math.comb(n - 1, d - 1)  # adds the i = d-1 term
        if total > budget:
            return d
        d += 1
    return n


def _log_cosh(x: np.ndarray) -> np.ndarray:
    ax = np.abs(x)
    return ax + np.log1p(np.exp(-2.0 * ax)) - math.log(2.0)


def gallager_e0(rho: float, sigma2: float) -> float:
    """E0(rho) in bits for antipodal signaling over AWGN noise sigma2."""
    s = 1.0 / (1.0 + rho)
    sigma = math.sqrt(sigma2)
    arg = math.sqrt(2.0) * s / sigma * _gh_t
    log_terms = _log_gh_w + (1.0 + rho) * _log_cosh(arg)
    peak = log_terms.max()
    log_integral = peak + math.log(np.exp(log_terms - peak).sum()) \
        - 0.5 * math.log(math.pi) - 1.0 / (2.0 * sigma2)
    return -log_integral / math.log(2.0)


def random_coding_exponent(rate: float, sigma2: float,
                           tol: float = 1e-6) -> float:
    """Er(R) = max_rho [E0(rho) - rho R], golden-section to tol in rho."""
    if not 0.0 < rate < 1.0:
        raise ValueError("rate must be inside (0, 1)")

    def objective(rho):
        return gallager_e0(rho, sigma2) - rho * rate

    lo, hi = 0.0, 1.0
    a = hi - _GOLDEN * (hi - lo)
    b = lo + _GOLDEN * (hi - lo)
    fa, fb = objective(a), objective(b)
    while hi - lo > tol:
        if fa < fb:
            lo, a, fa = a, b, fb
            b = lo + _GOLDEN * (hi - lo)
            fb = objective(b)
        else:
            hi, b, fb = b, a, fa
            a = hi - _GOLDEN * (hi - lo)
            fa = objective(a)
    best = max(objective(0.0), objective(1.0), fa, fb, objective((lo + hi) / 2))
    return max(best, 0.0)


def gallager_fer_bound(n: int, rate: float, ebn0_db: float) -> float:
    """Random-coding frame-error bound 2^(-n Er(R)), clamped to <= 1."""
    sigma2 = sigma_from_ebn0(ebn0_db, rate)
    er = random_coding_exponent(rate, sigma2)
    return min(1.0, 2.0 ** (-n * er))


def fer_to_ber(fer: float, d: int, n: int) -> float:
    """Bit-error view of a frame-error level: d errors per bad frame."""
    if not 0.0 <= fer <= 1.0:
        raise ValueError("frame error rate must be in [0, 1]")
    return fer * d / n


def biawgn_capacity(sigma2: float) -> float:
    """Capacity in bits of binary antipodal signaling over AWGN."""
    sigma = math.sqrt(sigma2)
    y = 1.0 + math.sqrt(2.0) * sigma * _gh_t
    llr = 2.0 * y / sigma2
    loss = np.logaddexp(0.0, -llr) / math.log(2.0)
    return 1.0 - float((_gh_w * loss).sum() / math.sqrt(math.pi))


def capacity_threshold_db(rate: float, lo_db: float = -3.0,
                          hi_db: float = 10.0, tol: float = 1e-9) -> float:
    """Eb/N0 in dB where the channel capacity equals the code rate."""
    def gap(db):
        return biawgn_capacity(sigma_from_ebn0(db, rate)) - rate

    if gap(lo_db) > 0 or gap(hi_db) < 0:
        raise ValueError("bracket does not straddle the capacity threshold")
    while hi_db - lo_db > tol:
        mid = 0.5 * (lo_db + hi_db)
        if gap(mid) >= 0:
            hi_db = mid
        else:
            lo_db = mid
    return 0.5 * (lo_db + hi_db)


@dataclass(frozen=True)
class BoundCurve:
    """Random-coding FER/BER bound samples over an Eb/N0 grid."""

    points: tuple[tuple[float, float, float], ...]  # (ebn0_db, fer, ber)
    n: int
    rate: float
    d_gv: int


def gallager_curve(n: int, k: int, grid_db) -> BoundCurve:
    rate = k / n
    d = gv_distance(n, k)
    points = []
    for db in grid_db:
        fer = gallager_fer_bound(n, rate, db)
        points.append((float(db), fer, fer_to_ber(fer, d, n)))
    return BoundCurve(points=tuple(points), n=n, rate=rate, d_gv=d)


def write_bound_csv(curve: BoundCurve, path) -> None:
    lines = ["ebn0_db,fer_bound,ber_bound"]
    for db, fer, ber in curve.points:
        lines.append(f"{db!r},{fer!r},{ber!r}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def required_snr(curve, target: float) -> float:
    """Eb/N0 where a decreasing (dB, value) curve crosses the target.

    Interpolates linearly in dB against log10(value). Raises
    TargetOutOfRangeError when the target is not bracketed.
    """
    pts = sorted(((float(db), float(v)) for db, v in curve))
    if len(pts) < 2:
        raise ValueError("need at least two curve points")
    values = [v for _, v in pts]
    if any(v <= 0 for v in values):
        raise ValueError("curve values must be positive for log interpolation")
    if any(v1 <= v2 for v1, v2 in zip(values, values[1:])):
        raise ValueError("curve must be strictly decreasing in value")
    if target <= 0:
        raise ValueError("target must be positive")
    for (db1, v1), (db2, v2) in zip(pts, pts[1:]):
        if v1 >= target >= v2:
            if v1 == target:
                return db1
            if v2 == target:
                return db2
            frac = (math.log10(target) - math.log10(v1)) \
                / (math.log10(v2) - math.log10(v1))
            return db1 + frac * (db2 - db1)
    raise TargetOutOfRangeError(
        f"target {target} outside curve range [{values[-1]}, {values[0]}]"
    )
