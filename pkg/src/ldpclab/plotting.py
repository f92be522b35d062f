"""Matplotlib rendering for campaign results, bound curves, and summaries.

Figures are written straight to files (Agg backend); every report-style
CLI command drops a PNG next to its CSV unless asked not to.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

_MARKERS = ("o", "s", "^", "v", "D", "x", "+", "*")


def plot_error_rates(series, out_path, title=None):
    """Two-panel FER/BER waterfall plot.

    series: iterable of dicts with keys label, ebn0_db, fer, ber; zero
    rates are dropped per panel (log axis).
    """
    fig, (ax_fer, ax_ber) = plt.subplots(1, 2, figsize=(9.5, 4.0), sharex=True)
    for idx, s in enumerate(series):
        marker = _MARKERS[idx % len(_MARKERS)]
        for ax, key in ((ax_fer, "fer"), (ax_ber, "ber")):
            xs = [db for db, v in zip(s["ebn0_db"], s[key]) if v > 0]
            ys = [v for v in s[key] if v > 0]
            if xs:
                ax.semilogy(xs, ys, marker=marker, markersize=4,
                            linewidth=1.0, label=s["label"])
    for ax, name in ((ax_fer, "FER"), (ax_ber, "BER")):
        ax.set_xlabel(r"$10\log_{10}(E_b/N_0)$ [dB]")
        ax.set_ylabel(name)
        ax.grid(True, which="both", linestyle=":", linewidth=0.5)
        ax.legend(fontsize=8)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)


def plot_required_snr(entries, out_path, target_label):
    """Required Eb/N0 per code, one line per decoder kind.

    entries: iterable of dicts with keys label, decoder, n, required_db.
    Codes with known length are plotted against n; anything else falls
    back to a labeled marker row.
    """
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    by_decoder: dict[str, list] = {}
    for e in entries:
        by_decoder.setdefault(e["decoder"], []).append(e)
    for idx, (decoder, group) in enumerate(sorted(by_decoder.items())):
        group = sorted(group, key=lambda e: (e["n"] or 0, e["label"]))
        xs = [e["n"] for e in group]
        ys = [e["required_db"] for e in group]
        marker = _MARKERS[idx % len(_MARKERS)]
        if all(x is not None for x in xs):
            ax.plot(xs, ys, marker=marker, linewidth=1.0, label=decoder)
            ax.set_xlabel(r"code length $n$")
        else:
            ax.plot(range(len(group)), ys, marker=marker, linestyle="none",
                    label=decoder)
            ax.set_xticks(range(len(group)))
            ax.set_xticklabels([e["label"] for e in group], rotation=30,
                               fontsize=7)
    ax.set_ylabel(r"required $10\log_{10}(E_b/N_0)$ [dB]")
    ax.set_title(f"target {target_label}")
    ax.grid(True, linestyle=":", linewidth=0.5)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
