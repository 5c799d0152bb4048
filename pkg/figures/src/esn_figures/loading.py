"""CSV loading with per-figure schema validation.

The renderer consumes only the experiment CSV files; it never recomputes
statistics. Each figure kind declares the columns it needs and loading fails
with the missing column named.
"""

from __future__ import annotations

from pathlib import Path


class SchemaError(ValueError):
    """A required column is absent or a file is empty."""


REQUIRED_COLUMNS = {
    "lyapunov_vs_sr": ["family", "sr", "method", "mean_lle", "std_lle"],
    "lyapunov_spectrum": ["family", "sr", "seed", "lag_or_rank", "value"],
    "memory_decay": ["family", "sr", "lag_or_rank", "value"],
    "memory_curves": ["benchmark", "family", "tau", "split", "acc_mean", "acc_std"],
    "tradeoff_heatmaps": ["family", "nu", "tau", "test_nrmse", "best_sr", "best_scaling"],
    "prediction_comparison": ["family", "k", "target", "predicted"],
}

FIGURE_KINDS = tuple(REQUIRED_COLUMNS)

_NUMERIC = {"sr", "seed", "n", "steps", "lag_or_rank", "value", "mean_lle",
            "std_lle", "n_seeds", "tau", "acc_mean", "acc_std", "n_runs",
            "nu", "test_nrmse", "best_sr", "best_scaling", "k", "target",
            "predicted", "max_lle", "gamma_mean", "gamma_std"}


def load_rows(paths, kind: str) -> list[dict]:
    """Read one or more CSV files into dicts, enforcing the kind's schema."""
    if kind not in REQUIRED_COLUMNS:
        raise SchemaError(f"unknown figure kind {kind!r}; expected one of {FIGURE_KINDS}")
    rows: list[dict] = []
    for path in paths:
        path = Path(path)
        lines = [line for line in path.read_text(encoding="utf-8").split("\n") if line]
        if len(lines) < 2:
            raise SchemaError(f"{path}: no data rows")
        header = lines[0].split(",")
        for column in REQUIRED_COLUMNS[kind]:
            if column not in header:
                raise SchemaError(f"{path}: missing column {column}")
        for line in lines[1:]:
            parts = line.split(",")
            row = {}
            for name, part in zip(header, parts):
                row[name] = float(part) if name in _NUMERIC else part
            rows.append(row)
    if not rows:
        raise SchemaError("no data rows in any input file")
    return rows


__all__ = ["SchemaError", "REQUIRED_COLUMNS", "FIGURE_KINDS", "load_rows"]
