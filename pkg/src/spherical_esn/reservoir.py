"""Reservoir construction and state evolution.

The recurrent core is a fixed random matrix ``w`` plus an input map ``w_in``.
Three activation families are supported:

* ``spherical`` -- the state is renormalized onto the radius-``r`` sphere
  after every linear update, so ``||x_k|| == r`` for all k >= 1,
* ``tanh`` -- the usual element-wise saturating update,
* ``linear`` -- the identity activation.

Besides plain simulation (`step`/`drive`), the module exposes two closed-form
re-expressions of the spherical dynamics used for cross-validation: the
autonomous power form (n matrix products, normalized once) and the
input-driven decomposition of the final state into per-input contributions
weighted by the recorded normalization factors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, asdict, replace
from pathlib import Path

import numpy as np

ACTIVATIONS = ("spherical", "tanh", "linear")

# Pre-activation norms below this are treated as a degenerate configuration
# rather than silently renormalized.
_DEGENERATE_NORM = 1e-300

_REBUILD_ATTEMPTS = 10

_FORMAT_NAME = "spherical-esn-reservoir"
_FORMAT_VERSION = 1


class DegenerateActivationError(ValueError):
    """Spherical pre-activation collapsed to (numerically) zero norm."""


class ReservoirBuildError(RuntimeError):
    """The random draw could not be rescaled to the target spectral radius."""


@dataclass(frozen=True)
class ReservoirConfig:
    """Generative hyper-parameters of a reservoir.

    ``spectral_radius`` is the exact target for the recurrent matrix after
    rescaling; ``input_scaling`` multiplies the uniform [-1, 1] input weights;
    ``density`` is the fraction of nonzero recurrent entries.
    """

    n_neurons: int
    n_inputs: int
    spectral_radius: float
    input_scaling: float
    activation: str
    sphere_radius: float = 1.0
    density: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.n_neurons < 2:
            raise ValueError(f"n_neurons must be >= 2, got {self.n_neurons}")
        if self.n_inputs < 1:
            raise ValueError(f"n_inputs must be >= 1, got {self.n_inputs}")
        if not self.spectral_radius > 0:
            raise ValueError("spectral_radius must be > 0")
        if self.input_scaling < 0:
            raise ValueError("input_scaling must be >= 0")
        if self.activation not in ACTIVATIONS:
            raise ValueError(f"activation must be one of {ACTIVATIONS}, got {self.activation!r}")
        if not self.sphere_radius > 0:
            raise ValueError("sphere_radius must be > 0")
        if not 0.0 < self.density <= 1.0:
            raise ValueError("density must lie in (0, 1]")


@dataclass(eq=False)
class Reservoir:
    """Fixed recurrent matrix, input map and the config that generated them."""

    w: np.ndarray
    w_in: np.ndarray
    config: ReservoirConfig

    @property
    def n_neurons(self) -> int:
        return self.w.shape[0]


@dataclass(eq=False)
class NetworkState:
    """State vector together with its time index."""

    x: np.ndarray
    step_index: int = 0


@dataclass(eq=False)
class Trajectory:
    """Recorded states (T x N) and per-step normalization factors (T,).

    The first ``washout`` rows are kept but flagged as transient: readout
    training must only consume `post_washout_states`. Norm factors are the
    pre-activation norms ``||W x_{k-1} + u_k||`` for every family; only the
    spherical analysis consumes them.
    """

    states: np.ndarray
    norm_factors: np.ndarray
    washout: int = 0

    @property
    def post_washout_states(self) -> np.ndarray:
        return self.states[self.washout:]

    @property
    def post_washout_norm_factors(self) -> np.ndarray:
        return self.norm_factors[self.washout:]


def spectral_radius_of(m: np.ndarray, method: str = "auto") -> float:
    """Largest eigenvalue modulus of a square matrix, relative accuracy 1e-6.

    ``auto`` uses a dense eigensolver for small matrices and a residual
    verified subspace iteration for large ones, falling back to the dense
    solver whenever the iteration cannot certify convergence (clustered
    moduli, rotations, complex dominant pairs).
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains non-finite entries")
    if method not in ("auto", "dense", "iterative"):
        raise ValueError(f"unknown method {method!r}")
    n = m.shape[0]
    if method == "dense" or (method == "auto" and n <= 256):
        return _dense_radius(m)
    rho = _iterative_radius(m)
    if rho is not None:
        return rho
    return _dense_radius(m)


def _dense_radius(m: np.ndarray) -> float:
    return float(np.max(np.abs(np.linalg.eigvals(m))))


def _iterative_radius(m: np.ndarray, block: int = 6, tol: float = 1e-8,
                      max_sweeps: int = 500) -> float | None:
    """Subspace iteration; returns None unless a dominant Ritz pair is
    certified by its residual."""
    n = m.shape[0]
    rng = np.random.default_rng(0xE59)
    q, _ = np.linalg.qr(rng.standard_normal((n, block)))
    theta = 0.0
    for _ in range(max_sweeps):
        b = m @ q
        q, _ = np.linalg.qr(b)
        b = m @ q
        h = q.T @ b
        vals, vecs = np.linalg.eig(h)
        i = int(np.argmax(np.abs(vals)))
        theta, s = vals[i], vecs[:, i]
        resid = np.linalg.norm(b @ s - theta * (q @ s))
        if abs(theta) > 0 and resid <= tol * abs(theta):
            return float(abs(theta))
    return None


def min_singular_value(m: np.ndarray) -> float:
    """Smallest singular value of a (possibly rectangular) matrix."""
    m = np.asarray(m, dtype=float)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains non-finite entries")
    return float(np.linalg.svd(m, compute_uv=False)[-1])


def build_reservoir(config: ReservoirConfig) -> Reservoir:
    """Draw and rescale a reservoir, deterministically under ``config.seed``.

    The recurrent matrix is i.i.d. standard normal masked to ``density`` and
    rescaled so its spectral radius equals ``config.spectral_radius`` exactly
    (up to rounding). The input matrix is i.i.d. uniform on [-1, 1] times
    ``input_scaling``. A draw whose radius estimate is numerically zero
    (e.g. a nilpotent sparse pattern) is rejected and redrawn from the same
    stream, up to a fixed number of attempts.
    """
    rng = np.random.default_rng(config.seed)
    n = config.n_neurons
    w = None
    for _ in range(_REBUILD_ATTEMPTS):
        cand = rng.standard_normal((n, n))
        if config.density < 1.0:
            cand = cand * (rng.random((n, n)) < config.density)
        rho = spectral_radius_of(cand)
        if rho > 1e-12:
            w = cand * (config.spectral_radius / rho)
            break
    if w is None:
        raise ReservoirBuildError(
            f"could not draw a matrix with nonzero spectral radius in "
            f"{_REBUILD_ATTEMPTS} attempts (n={n}, density={config.density})")
    w_in = rng.uniform(-1.0, 1.0, (n, config.n_inputs)) * config.input_scaling
    return Reservoir(w=w, w_in=w_in, config=config)


def contractivity_margin(reservoir: Reservoir, max_input_norm: float) -> float:
    """Signed slack of the sufficient stability inequality.

    Returns ``sigma_min(W) - 1 - ||W_in|| * max_input_norm / r`` using
    operator 2-norms. A non-negative value certifies that the linear update
    never maps the state inside the sphere, which guarantees the echo state
    property; negative values are merely inconclusive.
    """
    if max_input_norm < 0:
        raise ValueError("max_input_norm must be >= 0")
    smin = min_singular_value(reservoir.w)
    w_in_norm = float(np.linalg.norm(reservoir.w_in, 2))
    return smin - 1.0 - w_in_norm * max_input_norm / reservoir.config.sphere_radius


def activate(family: str, a: np.ndarray, r: float = 1.0) -> np.ndarray:
    """Apply one activation: sphere projection, tanh, or identity."""
    if family == "spherical":
        norm = float(np.linalg.norm(a))
        if norm < _DEGENERATE_NORM:
            raise DegenerateActivationError(
                "spherical pre-activation has (near-)zero norm; the run is "
                "misconfigured (input cancels the recurrent drive)")
        return (r / norm) * a
    if family == "tanh":
        return np.tanh(a)
    if family == "linear":
        return np.asarray(a, dtype=float)
    raise ValueError(f"unknown activation family {family!r}")


def default_initial_state(config: ReservoirConfig) -> np.ndarray:
    """Reproducible x0: first basis vector scaled to r (spherical), else zero."""
    x0 = np.zeros(config.n_neurons)
    if config.activation == "spherical":
        x0[0] = config.sphere_radius
    return x0


def step(reservoir: Reservoir, state: NetworkState,
         input_vector: np.ndarray) -> tuple[NetworkState, float]:
    """One update ``x' = phi(W x + W_in s)``; also returns ``||W x + W_in s||``."""
    cfg = reservoir.config
    x = np.asarray(state.x, dtype=float)
    s = np.atleast_1d(np.asarray(input_vector, dtype=float))
    if x.shape != (cfg.n_neurons,):
        raise ValueError(f"state has shape {x.shape}, expected ({cfg.n_neurons},)")
    if s.shape != (cfg.n_inputs,):
        raise ValueError(f"input has shape {s.shape}, expected ({cfg.n_inputs},)")
    a = reservoir.w @ x + reservoir.w_in @ s
    norm_factor = float(np.linalg.norm(a))
    x_new = activate(cfg.activation, a, cfg.sphere_radius)
    return NetworkState(x=x_new, step_index=state.step_index + 1), norm_factor


def drive(reservoir: Reservoir, inputs: np.ndarray, x0: np.ndarray | None = None,
          washout: int = 0) -> Trajectory:
    """Iterate `step` over an input sequence and record every state.

    ``inputs`` is (T, n_inputs); T must exceed ``washout``. The recorded
    trajectory contains all T states; the washout prefix is only flagged.
    """
    cfg = reservoir.config
    inputs = np.atleast_2d(np.asarray(inputs, dtype=float))
    if inputs.shape[1] != cfg.n_inputs:
        raise ValueError(f"inputs have {inputs.shape[1]} channels, expected {cfg.n_inputs}")
    T = inputs.shape[0]
    if washout < 0 or T <= washout:
        raise ValueError(f"need T > washout >= 0, got T={T}, washout={washout}")
    if x0 is None:
        x0 = default_initial_state(cfg)
    state = NetworkState(x=np.asarray(x0, dtype=float), step_index=0)
    states = np.empty((T, cfg.n_neurons))
    norms = np.empty(T)
    for k in range(T):
        try:
            state, norms[k] = step(reservoir, state, inputs[k])
        except DegenerateActivationError as exc:
            raise DegenerateActivationError(f"{exc} (at step {k + 1})") from exc
        states[k] = state.x
    return Trajectory(states=states, norm_factors=norms, washout=washout)


def autonomous_power_form(w: np.ndarray, x0: np.ndarray, n: int) -> np.ndarray:
    """Closed-form autonomous spherical state: ``W^n x0 / ||W^n x0||``.

    Evaluated with a renormalization after every product, which leaves the
    result unchanged (the map is scale invariant) but keeps magnitudes
    bounded for any spectral radius.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    w = np.asarray(w, dtype=float)
    v = np.asarray(x0, dtype=float).copy()
    if np.linalg.norm(v) < _DEGENERATE_NORM:
        raise DegenerateActivationError("x0 must be nonzero")
    for _ in range(n):
        v = w @ v
        norm = np.linalg.norm(v)
        if norm < _DEGENERATE_NORM:
            raise DegenerateActivationError("W^k x0 collapsed to zero norm")
        v = v / norm
    return v


def state_decomposition(reservoir: Reservoir, inputs: np.ndarray,
                        x0: np.ndarray | None = None) -> np.ndarray:
    """Reconstruct the final spherical state as a sum over past inputs.

    Uses the identity ``x_n = M(n,0) x0 + sum_k M(n,k) u_k`` with
    ``M(n,k) = W^(n-k) / prod_{l=k..n} N_l`` (``N_0 = 1``), where the norm
    factors ``N_l`` come from a reference simulation of the same inputs and
    ``u_k = W_in s_k``. Each term is evaluated with interleaved divisions so
    no intermediate overflows.
    """
    cfg = reservoir.config
    if cfg.activation != "spherical":
        raise ValueError("state decomposition is defined for the spherical family")
    inputs = np.atleast_2d(np.asarray(inputs, dtype=float))
    if x0 is None:
        x0 = default_initial_state(cfg)
    x0 = np.asarray(x0, dtype=float)
    ref = drive(reservoir, inputs, x0=x0, washout=0)
    norms = ref.norm_factors
    if np.any(norms <= 0):
        raise DegenerateActivationError("reference drive produced a non-positive norm factor")
    T = inputs.shape[0]
    w = reservoir.w
    effective = inputs @ reservoir.w_in.T  # u_k rows
    # initial-state term: W^T x0 / (N_1 ... N_T)
    total = x0.copy()
    for l in range(T):
        total = (w @ total) / norms[l]
    # input terms: W^(T-k) u_k / (N_k ... N_T), k = 1..T
    for k in range(1, T + 1):
        term = effective[k - 1] / norms[k - 1]
        for l in range(k, T):
            term = (w @ term) / norms[l]
        total = total + term
    return total


def save_reservoir(reservoir: Reservoir, path: str | Path) -> None:
    """Write a reservoir to a versioned JSON file (matrices row-major)."""
    payload = {
        "format": _FORMAT_NAME,
        "version": _FORMAT_VERSION,
        "config": asdict(reservoir.config),
        "w": reservoir.w.tolist(),
        "w_in": reservoir.w_in.tolist(),
    }
    Path(path).write_text(json.dumps(payload), encoding="utf-8")


def load_reservoir(path: str | Path) -> Reservoir:
    """Read a reservoir written by `save_reservoir`; round-trips exactly."""
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    if payload.get("format") != _FORMAT_NAME:
        raise ValueError(f"{path}: not a reservoir file")
    if payload.get("version") != _FORMAT_VERSION:
        raise ValueError(f"{path}: unsupported version {payload.get('version')}")
    config = ReservoirConfig(**payload["config"])
    w = np.asarray(payload["w"], dtype=float)
    w_in = np.asarray(payload["w_in"], dtype=float)
    if w.shape != (config.n_neurons, config.n_neurons):
        raise ValueError(f"{path}: recurrent matrix shape {w.shape} does not match config")
    if w_in.shape != (config.n_neurons, config.n_inputs):
        raise ValueError(f"{path}: input matrix shape {w_in.shape} does not match config")
    return Reservoir(w=w, w_in=w_in, config=config)


__all__ = [
    "ACTIVATIONS",
    "DegenerateActivationError",
    "ReservoirBuildError",
    "ReservoirConfig",
    "Reservoir",
    "NetworkState",
    "Trajectory",
    "spectral_radius_of",
    "min_singular_value",
    "build_reservoir",
    "contractivity_margin",
    "activate",
    "default_initial_state",
    "step",
    "drive",
    "autonomous_power_form",
    "state_decomposition",
    "save_reservoir",
    "load_reservoir",
    "replace",
]
