"""Figure construction from experiment CSV rows.

`build_figure` returns both the matplotlib figure and a flat "data layer",
the list of every numeric array placed on the axes. Tests locate injected
sentinel values there, guaranteeing the renderer plots the file contents
verbatim instead of recomputing anything.

Rendering is deterministic: fixed style, fixed SVG hash salt, no embedded
timestamps.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .loading import FIGURE_KINDS, SchemaError, load_rows

FAMILY_COLORS = {"spherical": "#1b6ca8", "linear": "#2e8b57", "tanh": "#c0392b"}
_FALLBACK_COLORS = ["#7f8c8d", "#8e44ad", "#d35400", "#16a085"]

plt.rcParams.update({
    "figure.dpi": 110,
    "font.size": 9,
    "svg.hashsalt": "esn-figures",
    "axes.grid": True,
    "grid.alpha": 0.3,
})


@dataclass
class FigureJob:
    input_csvs: list
    figure_kind: str
    output_path: Path

    def __post_init__(self):
        if self.figure_kind not in FIGURE_KINDS:
            raise SchemaError(f"unknown figure kind {self.figure_kind!r}; "
                              f"expected one of {FIGURE_KINDS}")
        self.input_csvs = [Path(p) for p in self.input_csvs]
        self.output_path = Path(self.output_path)


def _color(family, index=0):
    return FAMILY_COLORS.get(family, _FALLBACK_COLORS[index % len(_FALLBACK_COLORS)])


def _families(rows):
    seen = []
    for row in rows:
        if row["family"] not in seen:
            seen.append(row["family"])
    return seen


def build_figure(kind: str, input_csvs) -> tuple[plt.Figure, list[np.ndarray]]:
    """Assemble one figure; returns (figure, plotted data arrays)."""
    rows = load_rows(input_csvs, kind)
    builder = {
        "lyapunov_vs_sr": _build_lyapunov_vs_sr,
        "lyapunov_spectrum": _build_lyapunov_spectrum,
        "memory_decay": _build_memory_decay,
        "memory_curves": _build_memory_curves,
        "tradeoff_heatmaps": _build_tradeoff_heatmaps,
        "prediction_comparison": _build_prediction_comparison,
    }[kind]
    return builder(rows)


def render(job: FigureJob) -> Path:
    """Build and write one figure; the suffix picks SVG or PNG."""
    fig, _ = build_figure(job.figure_kind, job.input_csvs)
    job.output_path.parent.mkdir(parents=True, exist_ok=True)
    metadata = {"Date": None} if job.output_path.suffix == ".svg" else {}
    fig.savefig(job.output_path, format=job.output_path.suffix.lstrip("."),
                metadata=metadata)
    plt.close(fig)
    return job.output_path


def _build_lyapunov_vs_sr(rows):
    fig, ax = plt.subplots(figsize=(5.4, 3.6))
    data = []
    for i, family in enumerate(_families(rows)):
        for method, marker in (("radius_product", "o"), ("qr", "s")):
            pts = sorted((r["sr"], r["mean_lle"], r["std_lle"]) for r in rows
                         if r["family"] == family and r["method"] == method)
            if not pts:
                continue
            sr, mean, std = (np.array(v) for v in zip(*pts))
            ax.errorbar(sr, mean, yerr=std, marker=marker, capsize=3,
                        color=_color(family, i),
                        linestyle="-" if method == "radius_product" else "--",
                        label=f"{family} ({method})")
            data.extend([sr, mean, std])
    ax.axhline(0.0, color="black", linewidth=0.8)
    ax.set_xscale("log")
    ax.set_xlabel("spectral radius")
    ax.set_ylabel("max Lyapunov exponent (nats/step)")
    ax.legend(fontsize=7)
    fig.tight_layout()
    return fig, data


def _build_lyapunov_spectrum(rows):
    fig, ax = plt.subplots(figsize=(5.4, 3.6))
    data = []
    keys = sorted({(r["family"], r["sr"], r["seed"]) for r in rows})
    for i, (family, sr, seed) in enumerate(keys):
        pts = sorted((r["lag_or_rank"], r["value"]) for r in rows
                     if (r["family"], r["sr"], r["seed"]) == (family, sr, seed))
        rank, value = (np.array(v) for v in zip(*pts))
        ax.plot(rank, value, color=_color(family, i), alpha=0.9,
                label=f"sr={sr:g} seed={int(seed)}")
        data.extend([rank, value])
    ax.set_xlabel("exponent rank (descending)")
    ax.set_ylabel("Lyapunov exponent (nats/step)")
    if len(keys) <= 10:
        ax.legend(fontsize=7)
    fig.tight_layout()
    return fig, data


def _build_memory_decay(rows):
    fig, ax = plt.subplots(figsize=(5.4, 3.6))
    data = []
    for i, family in enumerate(_families(rows)):
        pts = sorted((r["lag_or_rank"], r["value"]) for r in rows if r["family"] == family)
        lag, value = (np.array(v) for v in zip(*pts))
        ax.plot(lag, value, color=_color(family, i), label=family)
        data.extend([lag, value])
    ax.set_xlabel("lag")
    ax.set_ylabel("input influence on the state")
    ax.set_ylim(-0.05, 1.05)
    ax.legend()
    fig.tight_layout()
    return fig, data


def _build_memory_curves(rows):
    fig, ax = plt.subplots(figsize=(6.0, 3.8))
    data = []
    benchmark = rows[0]["benchmark"]
    for i, family in enumerate(_families(rows)):
        for split, style in (("train", "--"), ("test", "-")):
            pts = sorted((r["tau"], r["acc_mean"], r["acc_std"]) for r in rows
                         if r["family"] == family and r["split"] == split)
            if not pts:
                continue
            tau, mean, std = (np.array(v) for v in zip(*pts))
            color = _color(family, i)
            ax.plot(tau, mean, style, color=color, label=f"{family} ({split})")
            ax.fill_between(tau, mean - std, mean + std, color=color, alpha=0.18,
                            linewidth=0)
            data.extend([tau, mean, std])
    ax.set_xlabel("delay tau")
    ax.set_ylabel("accuracy")
    ax.set_ylim(-0.05, 1.05)
    ax.set_title(benchmark)
    ax.legend(fontsize=7, ncol=2)
    fig.tight_layout()
    return fig, data


def _build_tradeoff_heatmaps(rows):
    families = _families(rows)
    fig, axes = plt.subplots(len(families), 3,
                             figsize=(9.6, 2.9 * len(families)), squeeze=False)
    data = []
    for fi, family in enumerate(families):
        sub = [r for r in rows if r["family"] == family]
        nus = sorted({r["nu"] for r in sub})
        taus = sorted({r["tau"] for r in sub})
        grids = {name: np.full((len(nus), len(taus)), np.nan)
                 for name in ("test_nrmse", "best_sr", "best_scaling")}
        for r in sub:
            i, j = nus.index(r["nu"]), taus.index(r["tau"])
            for name in grids:
                grids[name][i, j] = r[name]
        titles = {"test_nrmse": "test NRMSE", "best_sr": "best spectral radius",
                  "best_scaling": "best input scaling"}
        for ax, name in zip(axes[fi], grids):
            im = ax.imshow(grids[name], origin="lower", aspect="auto",
                           cmap="viridis",
                           extent=(min(taus) - 0.5, max(taus) + 0.5,
                                   min(nus) - 0.5, max(nus) + 0.5))
            fig.colorbar(im, ax=ax, shrink=0.85)
            ax.set_title(f"{family}: {titles[name]}", fontsize=8)
            ax.set_xlabel("tau")
            ax.set_ylabel("nu")
            ax.grid(False)
            data.append(grids[name])
    fig.tight_layout()
    return fig, data


def _build_prediction_comparison(rows):
    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    data = []
    families = _families(rows)
    first = families[0]
    pts = sorted((r["k"], r["target"]) for r in rows if r["family"] == first)
    k, target = (np.array(v) for v in zip(*pts))
    ax.plot(k, target, color="black", linewidth=1.6, label="target")
    data.extend([k, target])
    for i, family in enumerate(families):
        pts = sorted((r["k"], r["predicted"]) for r in rows if r["family"] == family)
        kk, pred = (np.array(v) for v in zip(*pts))
        ax.plot(kk, pred, color=_color(family, i), alpha=0.85, label=family)
        data.extend([kk, pred])
    ax.set_xlabel("time step")
    ax.set_ylabel("output")
    ax.legend(fontsize=7)
    fig.tight_layout()
    return fig, data


__all__ = ["FigureJob", "build_figure", "render", "FIGURE_KINDS", "SchemaError"]
