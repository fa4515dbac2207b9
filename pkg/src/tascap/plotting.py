"""Figure rendering: one PNG alongside each experiment CSV."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def render_cdf(curves, path) -> None:
    """Overlay of empirical (dashed) and Gaussian (solid) capacity CDFs."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for curve in curves:
        (line,) = ax.plot(curve["x"], curve["gaussian"], label=f"$n_t={curve['n_t']}$")
        ax.plot(curve["x"], curve["empirical"], "--", color=line.get_color())
    ax.set_xlabel("capacity [bits]")
    ax.set_ylabel("P(capacity $\\leq$ x)")
    ax.set_title("Capacity CDF: Gaussian approximation (solid) vs Monte Carlo (dashed)")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def render_ergodic(rows, path) -> None:
    """Mean capacity vs SNR, one curve per selection size, MC as markers."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for l_t in sorted({r[0] for r in rows}):
        pts = [r for r in rows if r[0] == l_t]
        pts.sort(key=lambda r: r[1])
        snr = [r[1] for r in pts]
        (line,) = ax.plot(snr, [r[2] for r in pts], label=f"$l_t={l_t}$")
        ax.errorbar(
            snr,
            [r[3] for r in pts],
            yerr=[1.96 * r[4] for r in pts],
            fmt="o",
            ms=3,
            color=line.get_color(),
        )
    ax.set_xlabel("SNR [dB]")
    ax.set_ylabel("mean capacity [bits]")
    ax.set_title("Ergodic capacity: approximation (lines) vs Monte Carlo (markers)")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def render_outage(rows, matched, path) -> None:
    """Outage capacity vs selection size, one curve per receive-array size."""
    col = {"paper": (2, 4), "standard": (3, 5)}[matched]
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for n_r in sorted({r[0] for r in rows}):
        pts = [r for r in rows if r[0] == n_r]
        pts.sort(key=lambda r: r[1])
        l_t = [r[1] for r in pts]
        (line,) = ax.plot(l_t, [r[col[0]] for r in pts], label=f"$n_r={n_r}$")
        ax.plot(l_t, [r[col[1]] for r in pts], "o", ms=3, color=line.get_color())
    ax.set_xlabel("selected antennas $l_t$")
    ax.set_ylabel("outage capacity [bits]")
    ax.set_title(f"Outage capacity ({matched} convention): approximation vs Monte Carlo")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
