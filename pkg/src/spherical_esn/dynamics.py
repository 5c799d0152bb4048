"""Stability and memory analysis of the three activation families.

Two maximum-Lyapunov estimators are implemented side by side:

* `max_lle_radius_product` averages the log spectral radius of the per-step
  local expansion matrix along the autonomous trajectory,
* `lyapunov_spectrum_qr` is the standard QR re-orthonormalization method
  run on the same per-step matrices and returns the full spectrum.

For the spherical family the local expansion matrix is the entrywise-damped
form ``E_ij = W_ij (1 - x_i x_j) / ||a||`` (states on the unit sphere). Note
this entrywise form is *not* the exact derivative of the normalized map; the
exact Jacobian ``(I - x x^T) W / ||a||`` is available as `jacobian_spherical`
and is the one validated against finite differences. The entrywise form is
the large-network object whose radius pins the estimators at zero; the exact
Jacobian instead acquires a genuinely negative top exponent whenever the
dominant eigenvalue of W is real and the autonomous flow locks onto a fixed
point, so the two are deliberately kept distinct.

The closed-form memory curves of the three families live here as well
(`theoretical_memory`, `memory_loss`, `input_ordering_gap`), together with
the per-step normalization surplus estimator `estimate_delta` that calibrates
the spherical curve parameter ``alpha = rho / delta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .reservoir import (
    Reservoir,
    Trajectory,
    DegenerateActivationError,
    spectral_radius_of,
)

FAMILIES = ("spherical", "tanh", "linear")

# Consecutive unit states closer than this (up to sign) indicate the
# autonomous flow reached a fixed point or a period-two flip; the local
# expansion matrix is then constant to the same precision and its radius is
# reused instead of recomputed.
_STATIONARY_TOL = 1e-12

_EIG_CHUNK = 128


class QrBreakdownError(RuntimeError):
    """Tangent basis lost rank during QR re-orthonormalization."""


# ---------------------------------------------------------------------------
# Jacobians and local expansion matrices
# ---------------------------------------------------------------------------

def jacobian_spherical(w: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Exact Jacobian of ``x -> W x / ||W x||`` at pre-activation ``a = W x``.

    Returns ``(I - u u^T) W / ||a||`` with ``u = a / ||a||``, laid out as
    J[i, j] = d(output_i) / d(input_j). Matches central finite differences of
    the map to the quadrature error of the scheme.
    """
    a = np.asarray(a, dtype=float)
    norm = float(np.linalg.norm(a))
    if norm <= 0.0:
        raise ValueError("pre-activation must be nonzero")
    u = a / norm
    return (w - np.outer(u, u @ w)) / norm


def local_expansion_matrix(family: str, w: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Per-step matrix whose spectral radius drives the stability estimates.

    spherical: entrywise-damped ``W_ij (1 - u_i u_j) / ||a||``;
    tanh: exact Jacobian ``diag(1 - tanh(a)^2) W``;
    linear: ``W`` itself.
    """
    if family == "spherical":
        a = np.asarray(a, dtype=float)
        norm = float(np.linalg.norm(a))
        if norm <= 0.0:
            raise ValueError("pre-activation must be nonzero")
        u = a / norm
        return w * (1.0 - np.outer(u, u)) / norm
    if family == "tanh":
        return (1.0 - np.tanh(np.asarray(a, dtype=float)) ** 2)[:, None] * w
    if family == "linear":
        return np.asarray(w, dtype=float)
    raise ValueError(f"unknown activation family {family!r}")


def _spectral_radii_batch(w: np.ndarray, unit_states: np.ndarray) -> np.ndarray:
    """Spectral radii of ``w * (1 - x x^T)`` for a batch of unit states.

    Uses torch's batched eigensolver when available (markedly faster than
    per-matrix numpy calls); falls back to a plain loop.
    """
    if unit_states.shape[0] == 0:
        return np.empty(0)
    try:
        import torch
    except ImportError:
        torch = None
    out = np.empty(unit_states.shape[0])
    for lo in range(0, unit_states.shape[0], _EIG_CHUNK):
        xs = unit_states[lo:lo + _EIG_CHUNK]
        mats = w[None, :, :] * (1.0 - xs[:, :, None] * xs[:, None, :])
        if torch is not None:
            ev = torch.linalg.eigvals(torch.from_numpy(mats))
            out[lo:lo + xs.shape[0]] = torch.amax(torch.abs(ev), dim=1).numpy()
        else:
            for i, m in enumerate(mats):
                out[lo + i] = np.max(np.abs(np.linalg.eigvals(m)))
    return out


# ---------------------------------------------------------------------------
# Maximum Lyapunov exponent, radius-product estimator
# ---------------------------------------------------------------------------

def max_lle_radius_product(reservoir: Reservoir, n_steps: int = 5000,
                           x0: np.ndarray | None = None,
                           transient: int = 500) -> float:
    """Average log spectral radius of the local expansion matrices along the
    autonomous (zero-input) trajectory, in nats per step.

    The first ``transient`` steps are evolved but excluded from the average.
    For the linear family the matrix is constant and the estimate is exact.
    """
    if n_steps <= transient:
        raise ValueError(f"need n_steps > transient, got {n_steps} <= {transient}")
    family = reservoir.config.activation
    w = reservoir.w
    if family == "linear":
        # constant expansion matrix: every accumulated term equals log rho(W)
        return float(np.log(spectral_radius_of(w)))
    if family == "tanh":
        return _tanh_radius_product(reservoir, n_steps, x0, transient)

    # spherical: evolve on the unit sphere (the radius cancels from the
    # per-step ratio rho(E_k) = rho(w * (1 - x x^T)) / ||w x_{k-1}||)
    n = reservoir.n_neurons
    if x0 is None:
        x = np.zeros(n)
        x[0] = 1.0
    else:
        x = np.asarray(x0, dtype=float)
        norm = np.linalg.norm(x)
        if norm <= 0:
            raise DegenerateActivationError("x0 must be nonzero")
        x = x / norm
    n_acc = n_steps - transient
    states = np.empty((n_acc, n))
    log_norms = np.empty(n_acc)
    stationary_at = None
    x_prev = x
    for k in range(n_steps):
        a = w @ x_prev
        na = float(np.linalg.norm(a))
        if na <= 0.0:
            raise DegenerateActivationError(f"pre-activation collapsed at step {k + 1}")
        x = a / na
        if k >= transient:
            i = k - transient
            states[i] = x
            log_norms[i] = np.log(na)
            if stationary_at is None and min(np.linalg.norm(x - x_prev),
                                             np.linalg.norm(x + x_prev)) <= _STATIONARY_TOL:
                stationary_at = i
                break
        x_prev = x
    if stationary_at is None:
        radii = _spectral_radii_batch(w, states)
        return float(np.mean(np.log(radii) - log_norms))
    # fixed point or flip cycle: matrices (and norms) are constant from here on
    head = stationary_at + 1
    radii = _spectral_radii_batch(w, states[:head])
    logs = np.log(radii) - log_norms[:head]
    total = logs.sum() + logs[-1] * (n_acc - head)
    return float(total / n_acc)


def _tanh_radius_product(reservoir, n_steps, x0, transient):
    w = reservoir.w
    x = np.zeros(reservoir.n_neurons) if x0 is None else np.asarray(x0, dtype=float)
    acc = 0.0
    for k in range(n_steps):
        a = w @ x
        if k >= transient:
            mat = local_expansion_matrix("tanh", w, a)
            acc += np.log(np.max(np.abs(np.linalg.eigvals(mat))))
        x = np.tanh(a)
    return float(acc / (n_steps - transient))


# ---------------------------------------------------------------------------
# Lyapunov spectrum, QR re-orthonormalization
# ---------------------------------------------------------------------------

def lyapunov_spectrum_qr(reservoir: Reservoir, n_steps: int = 5000,
                         n_exponents: int | None = None,
                         transient: int = 500, reorth_every: int = 5,
                         x0: np.ndarray | None = None) -> np.ndarray:
    """Lyapunov exponents from QR re-orthonormalized tangent propagation.

    Propagates ``n_exponents`` tangent vectors (all N by default) under the
    per-step local expansion matrices, re-orthonormalizing every
    ``reorth_every`` steps, and averages the log diagonal of the R factors
    over the post-transient window. Returns exponents sorted descending.
    """
    if n_steps <= transient:
        raise ValueError(f"need n_steps > transient, got {n_steps} <= {transient}")
    if reorth_every < 1:
        raise ValueError("reorth_every must be >= 1")
    family = reservoir.config.activation
    w = reservoir.w
    n = reservoir.n_neurons
    m = n if n_exponents is None else int(n_exponents)
    if not 1 <= m <= n:
        raise ValueError(f"n_exponents must be in [1, {n}]")

    if family == "spherical":
        if x0 is None:
            x = np.zeros(n)
            x[0] = 1.0
        else:
            x = np.asarray(x0, dtype=float)
            x = x / np.linalg.norm(x)
    else:
        x = np.zeros(n) if x0 is None else np.asarray(x0, dtype=float)

    q = np.eye(n, m)
    sums = np.zeros(m)
    n_acc = n_steps - transient
    block = 0
    for k in range(n_steps):
        a = w @ x
        if family == "spherical":
            na = float(np.linalg.norm(a))
            if na <= 0.0:
                raise DegenerateActivationError(f"pre-activation collapsed at step {k + 1}")
            x = a / na
            mat = w * (1.0 - np.outer(x, x)) / na
        elif family == "tanh":
            mat = local_expansion_matrix("tanh", w, a)
            x = np.tanh(a)
        else:
            mat = w
            x = a
        q = mat @ q
        block += 1
        # re-orthonormalize on the block boundary, at the end of the
        # transient (so accumulation starts from a clean basis) and at the end
        if block == reorth_every or k == transient - 1 or k == n_steps - 1:
            q, r = np.linalg.qr(q)
            diag = np.abs(np.diag(r))
            if np.any(diag == 0.0):
                raise QrBreakdownError(f"tangent basis rank collapse at step {k + 1}")
            if k >= transient:
                sums += np.log(diag)
            block = 0
    return np.sort(sums / n_acc)[::-1]


@dataclass(eq=False)
class LyapunovReport:
    """Both stability estimates for one reservoir realization.

    ``max_lle`` is the radius-product estimate; ``spectrum`` holds the QR
    exponents sorted descending, so ``spectrum[0]`` is the QR estimate of the
    same quantity.
    """

    spectral_radius: float
    max_lle: float
    spectrum: np.ndarray
    n_steps: int
    n_neurons: int
    seed: int

    def __post_init__(self):
        self.spectrum = np.asarray(self.spectrum, dtype=float)
        if np.any(np.diff(self.spectrum) > 1e-12):
            raise ValueError("spectrum must be sorted descending")

    @property
    def qr_max_lle(self) -> float:
        return float(self.spectrum[0])


# ---------------------------------------------------------------------------
# Closed-form memory curves
# ---------------------------------------------------------------------------

def tanh_memory_chain(rho: float, n: int, xi0: float) -> float:
    """n-fold nested saturation ``tanh(rho * tanh(rho * ... tanh(rho * xi0)))``.

    The zero-fold chain is ``xi0`` itself.
    """
    xi = float(xi0)
    for _ in range(n):
        xi = math.tanh(rho * xi)
    return xi


def theoretical_memory(family: str, lag: int, *, alpha: float | None = None,
                       rho: float | None = None, magnitude: float = 1.0) -> float:
    """Closed-form influence of an input ``lag`` steps in the past.

    spherical: ``(alpha / (alpha + 1)) ** lag`` with ``alpha = rho / delta``;
    linear: ``rho ** lag``;
    tanh: the nested chain seeded with ``tanh(magnitude)``, normalized by its
    lag-0 value so all families return 1 at lag 0. A zero magnitude is taken
    in the small-signal limit, which reduces to the linear curve.
    """
    if lag < 0:
        raise ValueError("lag must be >= 0")
    if family == "spherical":
        if alpha is None or alpha <= 0:
            raise ValueError("spherical memory needs alpha > 0")
        return (alpha / (alpha + 1.0)) ** lag
    if family == "linear":
        if rho is None or rho <= 0:
            raise ValueError("linear memory needs rho > 0")
        return rho ** lag
    if family == "tanh":
        if rho is None or rho <= 0:
            raise ValueError("tanh memory needs rho > 0")
        if magnitude < 0:
            raise ValueError("magnitude must be >= 0")
        if magnitude == 0.0:
            return rho ** lag
        xi0 = math.tanh(magnitude)
        return tanh_memory_chain(rho, lag, xi0) / xi0
    raise ValueError(f"unknown activation family {family!r}")


def memory_loss(family: str, k: int, m: int, n: int, *, alpha: float | None = None,
                rho: float | None = None, magnitude: float = 1.0) -> float:
    """Drop in the influence of the input at time k between states n and m.

    Requires ``m > n > k``; the result is non-positive for valid parameters
    (spherical alpha > 0, linear/tanh rho in (0, 1]).
    """
    if not m > n > k:
        raise ValueError(f"need m > n > k, got m={m}, n={n}, k={k}")
    tau = m - n
    if family == "spherical":
        if alpha is None or alpha <= 0:
            raise ValueError("spherical memory needs alpha > 0")
        q = alpha / (alpha + 1.0)
        return q ** (n - k) * (q ** tau - 1.0)
    if family == "linear":
        if rho is None or rho <= 0:
            raise ValueError("linear memory needs rho > 0")
        return rho ** (n - k) * (rho ** tau - 1.0)
    if family == "tanh":
        return (theoretical_memory("tanh", m - k, rho=rho, magnitude=magnitude)
                - theoretical_memory("tanh", n - k, rho=rho, magnitude=magnitude))
    raise ValueError(f"unknown activation family {family!r}")


def input_ordering_gap(family: str, a: int, delta: int, *, alpha: float | None = None,
                       rho: float | None = None, magnitude: float = 1.0) -> float:
    """How much more a recent input (lag ``a``) weighs than an older one
    (lag ``a + delta``) in the same state; non-negative for valid parameters.

    For the spherical family the large-delta limit is ``(alpha/(alpha+1))**a``:
    even infinitely old inputs trail a recent one by a bounded, nonzero gap.
    """
    if a < 1 or delta < 1:
        raise ValueError("a and delta must be >= 1")
    if family == "spherical":
        if alpha is None or alpha <= 0:
            raise ValueError("spherical memory needs alpha > 0")
        q = alpha / (alpha + 1.0)
        return q ** a * (1.0 - q ** delta)
    if family == "linear":
        if rho is None or rho <= 0:
            raise ValueError("linear memory needs rho > 0")
        return rho ** a * (1.0 - rho ** delta)
    if family == "tanh":
        return (theoretical_memory("tanh", a, rho=rho, magnitude=magnitude)
                - theoretical_memory("tanh", a + delta, rho=rho, magnitude=magnitude))
    raise ValueError(f"unknown activation family {family!r}")


@dataclass(eq=False)
class MemoryCurve:
    """Evaluated memory decay curve for one family and parameter set."""

    family: str
    params: dict
    lags: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.lags = np.asarray(self.lags, dtype=int)
        self.values = np.asarray(self.values, dtype=float)
        if self.lags.shape != self.values.shape:
            raise ValueError("lags and values must have matching shapes")
        if self.values.size and self.values[0] > 1.0 + 1e-12:
            raise ValueError("memory at lag 0 cannot exceed 1")
        if np.any(np.diff(self.values) > 1e-12):
            raise ValueError("memory values must be non-increasing in lag")


def theoretical_memory_curve(family: str, lags, **params) -> MemoryCurve:
    values = [theoretical_memory(family, int(lag), **params) for lag in lags]
    return MemoryCurve(family=family, params=dict(params),
                       lags=np.asarray(list(lags)), values=np.asarray(values))


# ---------------------------------------------------------------------------
# Normalization surplus
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DeltaEstimate:
    """Mean and spread of the per-step normalization surplus ``N_l - rho``.

    The spread is reported so the constant-surplus assumption behind the
    spherical memory curve can be audited, not just assumed.
    """

    mean: float
    std: float
    n_samples: int


def estimate_delta(trajectory: Trajectory, spectral_radius: float) -> DeltaEstimate:
    """Average surplus of the recorded norm factors over the spectral radius."""
    norms = trajectory.post_washout_norm_factors
    if norms.size == 0:
        raise ValueError("trajectory has no post-washout steps")
    deltas = norms - spectral_radius
    return DeltaEstimate(mean=float(np.mean(deltas)), std=float(np.std(deltas)),
                         n_samples=int(deltas.size))


def spherical_alpha(reservoir: Reservoir, trajectory: Trajectory,
                    inputs: np.ndarray | None = None) -> float:
    """Memory curve parameter ``alpha = rho / delta`` calibrated from a drive.

    The measured surplus is used when it stands out of its own sampling
    noise. At small input scalings it does not: the intrinsic fluctuation of
    ``||W x||`` along the orbit swamps the input-induced part (and can push
    the raw mean negative). In that regime, when the driving inputs are
    given, the surplus is taken from its small-input expansion
    ``mean ||u||^2 / (2 rho)`` instead.
    """
    rho = reservoir.config.spectral_radius
    est = estimate_delta(trajectory, rho)
    if est.mean > 2.0 * est.std / np.sqrt(est.n_samples):
        return rho / est.mean
    if inputs is not None:
        inputs = np.atleast_2d(np.asarray(inputs, dtype=float))
        effective = inputs[trajectory.washout:] @ reservoir.w_in.T
        delta_q = float(np.mean(np.sum(effective ** 2, axis=1))) / (2.0 * rho)
        if delta_q > 0:
            return rho / delta_q
    raise ValueError(
        f"delta estimate {est.mean:.3e} (std {est.std:.3e}) is not resolvable "
        "from this drive; provide the inputs for the small-input fallback")


__all__ = [
    "FAMILIES",
    "QrBreakdownError",
    "jacobian_spherical",
    "local_expansion_matrix",
    "max_lle_radius_product",
    "lyapunov_spectrum_qr",
    "LyapunovReport",
    "tanh_memory_chain",
    "theoretical_memory",
    "memory_loss",
    "input_ordering_gap",
    "MemoryCurve",
    "theoretical_memory_curve",
    "DeltaEstimate",
    "estimate_delta",
    "spherical_alpha",
]
