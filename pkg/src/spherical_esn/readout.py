"""Linear readout training and the error/accuracy metrics.

Ridge weights solve the regularized normal equations by Cholesky. With a
zero ridge coefficient the fit switches to an SVD least-squares solve on the
raw state matrix: forming the Gram matrix squares the conditioning and would
silently destroy the long-lag memory content of the states that these
experiments exist to measure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg


@dataclass(eq=False)
class ReadoutWeights:
    """Trained linear map (n_outputs x n_neurons) and its ridge coefficient."""

    w_out: np.ndarray
    ridge_lambda: float


@dataclass(frozen=True)
class Metrics:
    """Normalized error and the derived accuracy score."""

    nrmse: float
    accuracy: float

    @classmethod
    def from_nrmse(cls, value: float) -> "Metrics":
        return cls(nrmse=float(value), accuracy=accuracy_gamma(value))


def _as_targets(targets: np.ndarray) -> np.ndarray:
    targets = np.asarray(targets, dtype=float)
    if targets.ndim == 1:
        targets = targets[:, None]
    return targets


def fit_ridge(states: np.ndarray, targets: np.ndarray,
              ridge_lambda: float) -> ReadoutWeights:
    """Fit ``W_out`` minimizing ``||X W_out^T - Y||^2 + lambda ||W_out||^2``.

    ``states`` is (T, N), ``targets`` (T, n_outputs) or (T,). With
    ``ridge_lambda == 0`` the fit is the minimum-norm least-squares solution
    (SVD, machine-precision truncation). Reservoir state matrices on memory
    tasks are numerically rank deficient by nature, long-lag directions decay
    geometrically, and the truncated solution is the meaningful readout
    there; a degenerate all-zero design still raises and suggests ridge.
    """
    x = np.asarray(states, dtype=float)
    y = _as_targets(targets)
    if x.ndim != 2:
        raise ValueError("states must be a (T, N) matrix")
    if x.shape[0] != y.shape[0]:
        raise ValueError(f"states have {x.shape[0]} rows but targets {y.shape[0]}")
    if x.shape[0] < 1:
        raise ValueError("need at least one training row")
    if ridge_lambda < 0:
        raise ValueError("ridge_lambda must be >= 0")
    n = x.shape[1]
    if ridge_lambda == 0.0:
        solution, _, rank, _ = np.linalg.lstsq(x, y, rcond=None)
        if rank == 0:
            raise np.linalg.LinAlgError(
                "state matrix is identically zero and ridge_lambda is 0; "
                "use ridge_lambda > 0")
        return ReadoutWeights(w_out=solution.T, ridge_lambda=0.0)
    gram = x.T @ x + ridge_lambda * np.eye(n)
    try:
        cho = scipy.linalg.cho_factor(gram)
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover - pathological
        raise np.linalg.LinAlgError(f"normal equations not positive definite: {exc}")
    solution = scipy.linalg.cho_solve(cho, x.T @ y)
    return ReadoutWeights(w_out=solution.T, ridge_lambda=float(ridge_lambda))


def predict(weights: ReadoutWeights, states: np.ndarray) -> np.ndarray:
    """Row-wise readout ``y_k = W_out x_k``; returns (T, n_outputs)."""
    x = np.asarray(states, dtype=float)
    if x.ndim != 2 or x.shape[1] != weights.w_out.shape[1]:
        raise ValueError(
            f"states shape {x.shape} incompatible with readout "
            f"({weights.w_out.shape[0]} x {weights.w_out.shape[1]})")
    return x @ weights.w_out.T


def nrmse(predicted: np.ndarray, actual: np.ndarray) -> float:
    """Root mean squared error normalized by the variance of the target.

    Both arguments are (T, n_outputs) or (T,); time averages run over rows.
    A constant target has no scale to normalize by and raises.
    """
    p = _as_targets(predicted)
    y = _as_targets(actual)
    if p.shape != y.shape:
        raise ValueError(f"shape mismatch: predicted {p.shape}, actual {y.shape}")
    if y.shape[0] < 2:
        raise ValueError("need at least two time steps")
    num = np.mean(np.sum((y - p) ** 2, axis=1))
    den = np.mean(np.sum((y - y.mean(axis=0)) ** 2, axis=1))
    if den <= 0.0:
        raise ValueError("target series is constant; NRMSE is undefined")
    return float(np.sqrt(num / den))


def accuracy_gamma(nrmse_value: float) -> float:
    """Accuracy score ``max(1 - NRMSE, 0)``."""
    if nrmse_value < 0:
        raise ValueError("NRMSE cannot be negative")
    return max(1.0 - float(nrmse_value), 0.0)


__all__ = ["ReadoutWeights", "Metrics", "fit_ridge", "predict", "nrmse",
           "accuracy_gamma"]
