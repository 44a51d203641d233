"""Desk-scale computation report: delimited summaries plus rendered figures.

Everything here re-runs the library at window sizes a laptop handles in
seconds (k = 2..5) and writes the results side by side: CSV files with the
numbers, PNG figures with the shapes.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

from .bsets import bset_stats, check_conjectures, extract_bset, reduce_bset, stabilize
from .core import iroot
from .heur import HeuristicModel
from .sieve import sieve_exact

# (k, window, jmax) triples that stabilize comfortably at desk scale
DESK_WINDOWS = ((2, 10**4, 12), (3, 10**5, 20), (4, 10**5, 25), (5, 2 * 10**4, 60))

CUBE_TAIL_RANGE = range(9, 15)


def _fig_path(out_dir: Path, name: str) -> Path:
    return out_dir / f"{name}.png"


def generate_report(
    out_dir: Path, ram_cap: int | None = None, quad_tol: float = 1e-7
) -> list[Path]:
    """Run the desk-scale pipeline and write CSVs and figures into out_dir."""
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    results = {k: stabilize(k, limit, jmax, ram_cap=ram_cap) for k, limit, jmax in DESK_WINDOWS}

    # ---- stabilized-set summary ------------------------------------------
    path = out_dir / "bsets.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["k", "window", "stabilized_j", "m", "a_k", "b_k",
                    "sizemax", "reverse", "odd_parity"])
        for (k, limit, _), res in zip(DESK_WINDOWS, results.values()):
            stats = bset_stats(res.bset)
            flags = check_conjectures(res.bset)
            w.writerow([k, limit, res.stabilized_at, res.verdict.m,
                        stats.max_element, stats.size,
                        flags["sizemax"], flags["reverse"], flags["odd_parity"]])
    written.append(path)

    # ---- cube tails -------------------------------------------------------
    base3 = results[3].bset
    tails = {}
    for j in CUBE_TAIL_RANGE:
        tails[j] = reduce_bset(extract_bset(sieve_exact(3, j, 10**4, ram_cap=ram_cap)), base3)
    path = out_dir / "cube_tails.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["j", "beta"])
        for j, tail in tails.items():
            for beta in tail.elements:
                w.writerow([j, beta])
    written.append(path)

    # ---- orthant volumes --------------------------------------------------
    models = {k: HeuristicModel.build(k, 8, tol=quad_tol) for k in (2, 3, 5)}
    path = out_dir / "volumes.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["k", "j", "volume", "density_constant"])
        for k, model in models.items():
            for j in range(1, 9):
                w.writerow([k, j, f"{model.volume(j).value:.10f}",
                            f"{model.density_constant(j):.10g}"])
    written.append(path)

    written.extend(_render_figures(out_dir, results, tails, models))
    return written


def _render_figures(out_dir, results, tails, models) -> list[Path]:
    written = []

    fig, ax = plt.subplots(figsize=(6, 4))
    ks = sorted(results)
    a_vals = [bset_stats(results[k].bset).max_element for k in ks]
    b_vals = [bset_stats(results[k].bset).size for k in ks]
    x = range(len(ks))
    ax.bar([i - 0.2 for i in x], a_vals, width=0.4, label="max element $a_k$")
    ax.bar([i + 0.2 for i in x], b_vals, width=0.4, label="cardinality $b_k$")
    ax.set_yscale("log")
    ax.set_xticks(list(x), [str(k) for k in ks])
    ax.set_xlabel("exponent k")
    ax.set_title("Stabilized exception sets")
    ax.legend()
    path = _fig_path(out_dir, "bset_extremes")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(6, 4))
    js = sorted(tails)
    ax.plot(js, [tails[j].size for j in js], marker="o")
    ax.set_xlabel("part count j")
    ax.set_ylabel("tail size")
    ax.set_title("Transient cube tails shrink to empty")
    path = _fig_path(out_dir, "cube_tail_sizes")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(6, 4))
    for k, model in models.items():
        js = range(1, 9)
        ax.plot(js, [model.volume(j).value for j in js], marker="o", label=f"k={k}")
    ax.set_xlabel("dimension j")
    ax.set_ylabel("V(j,k)")
    ax.set_title("Orthant volumes under $x_1^k + \\cdots + x_j^k = 1$")
    ax.legend()
    path = _fig_path(out_dir, "volume_decay")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    written.append(path)

    # empirical pair/triple counts for fifth powers against the model curves
    fig, ax = plt.subplots(figsize=(6, 4))
    grid = [10**e for e in range(4, 10)]
    for j, style in ((2, "o-"), (3, "s-")):
        empirical = [_count_multisets(n, j, 5) for n in grid]
        model5 = models[5]
        predicted = [model5.volume(j).value * n ** (j / 5) / _fact(j) for n in grid]
        ax.loglog(grid, empirical, style, label=f"observed j={j}")
        ax.loglog(grid, predicted, "--", label=f"model j={j}")
    ax.set_xlabel("N")
    ax.set_ylabel("representations below N")
    ax.set_title("Sums of j fifth powers: counts vs. density model")
    ax.legend()
    path = _fig_path(out_dir, "fifth_power_counts")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    written.append(path)

    return written


def _fact(j: int) -> int:
    out = 1
    for i in range(2, j + 1):
        out *= i
    return out


def _count_multisets(limit: int, j: int, k: int) -> int:
    """Number of multisets of j positive bases whose k-th powers sum below limit."""

    def rec(bound: int, parts: int, cap: int) -> int:
        if bound <= parts:  # minimum achievable sum is `parts` ones
            return 0
        if parts == 1:
            return min(cap, iroot(bound - 1, k))
        total = 0
        for b in range(1, cap + 1):
            rem = bound - b**k
            if rem <= parts - 1:
                break
            total += rec(rem, parts - 1, b)
        return total

    return rec(limit, j, iroot(max(limit - 1, 0), k))
