"""Figure rendering for the CLI's report and export paths.

Every function writes a PNG next to the delimited artifact it
illustrates.  The Agg backend is forced so the CLI never needs a
display.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["save_verify_figure", "save_bench_figure",
           "save_toda_figure", "save_family_figure"]

_FLOOR = 1e-17


def save_verify_figure(report: dict, path) -> None:
    """Horizontal bars of per-check residuals against their tolerances."""
    checks = report["checks"]
    ids = [c["id"] for c in checks]
    res = np.array([max(c["max_residual"], _FLOOR) for c in checks])
    tol = np.array([c["tolerance"] for c in checks])
    colors = ["tab:green" if c["pass"] else "tab:red" for c in checks]

    fig, ax = plt.subplots(figsize=(9, max(3.0, 0.22 * len(ids))))
    y = np.arange(len(ids))
    ax.barh(y, np.log10(res) - np.log10(_FLOOR), left=np.log10(_FLOOR),
            color=colors, height=0.6)
    ax.scatter(np.log10(tol), y, marker="|", s=90, color="black",
               label="tolerance", zorder=3)
    ax.set_yticks(y, labels=ids, fontsize=6)
    ax.invert_yaxis()
    ax.set_xlabel("log10 residual")
    ax.set_title(f"suite {report['suite']}: "
                 f"{report['n_checks'] - len(report['failed'])}"
                 f"/{report['n_checks']} passed")
    ax.legend(loc="lower right", fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_bench_figure(rows: list[dict], path) -> None:
    """Grouped bars of oracle vs recursion wall time."""
    labels = [f"{r['family']} N={r['N']} n={r['n_max']}" for r in rows]
    oracle = [r["oracle_ms"] for r in rows]
    fast = [r["fast_ms"] for r in rows]
    x = np.arange(len(rows))
    width = 0.38

    fig, ax = plt.subplots(figsize=(1.6 * len(rows) + 3.5, 4))
    ax.bar(x - width / 2, oracle, width, label="quadrature oracle")
    ax.bar(x + width / 2, fast, width, label="recursion pipeline")
    ax.set_xticks(x, labels=labels, fontsize=8)
    ax.set_ylabel("wall time [ms]")
    ax.set_title("family construction time")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_toda_figure(times, b_series, c_series, path) -> None:
    """Trajectories of the leading entry of each B(n) and C(n) block."""
    times = np.asarray(times)
    fig, (ax_b, ax_c) = plt.subplots(1, 2, figsize=(10, 4), sharex=True)
    n_b = len(b_series[0])
    n_c = len(c_series[0])
    for n in range(n_b):
        ax_b.plot(times, [step[n][0, 0].real for step in b_series],
                  label=f"n={n}")
    for n in range(1, n_c):
        ax_c.plot(times, [step[n][0, 0].real for step in c_series],
                  label=f"n={n}")
    ax_b.set_title("B(n) leading entry")
    ax_c.set_title("C(n) leading entry")
    for ax in (ax_b, ax_c):
        ax.set_xlabel("t")
        if n_b <= 8:
            ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_family_figure(h_list, b_list, c_list, path, title="family") -> None:
    """Norm growth and recurrence entries against the degree."""
    ns_h = np.arange(len(h_list))
    norms = [np.linalg.norm(np.asarray(h), 2) for h in h_list]

    fig, (ax_h, ax_r) = plt.subplots(1, 2, figsize=(10, 4))
    ax_h.semilogy(ns_h, norms, "o-")
    ax_h.set_xlabel("n")
    ax_h.set_ylabel("||H(n)||_2")
    ax_h.set_title("squared norms")
    ax_r.plot(np.arange(len(b_list)),
              [np.asarray(b)[0, 0].real for b in b_list], "o-", label="B(n)[0,0]")
    ax_r.plot(np.arange(len(c_list)),
              [np.asarray(c)[0, 0].real for c in c_list], "s-", label="C(n)[0,0]")
    ax_r.set_xlabel("n")
    ax_r.set_title("recurrence entries")
    ax_r.legend()
    fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
