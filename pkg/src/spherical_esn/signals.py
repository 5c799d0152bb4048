"""Benchmark input series: generators, file loading, normalization.

All generators are deterministic under their parameters (plus seed where one
applies). ODE-derived series use a fixed-step fourth-order Runge-Kutta
scheme; the delayed equation interpolates its history buffer with cubic
Hermite polynomials, which preserves the fourth-order convergence that plain
linear interpolation would degrade.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np


class SignalDivergenceError(RuntimeError):
    """Integration blew past the divergence guard."""


_DIVERGENCE_LIMIT = 1e6


@dataclass(eq=False)
class TimeSeries:
    """(T, d) series with its sampling step (None for maps/files) and origin."""

    values: np.ndarray
    dt: float | None
    source: str

    def __post_init__(self):
        self.values = np.atleast_2d(np.asarray(self.values, dtype=float))
        if self.values.ndim != 2:
            raise ValueError("values must be a (T, d) matrix")
        if self.values.shape[0] == 1 and self.values.shape[1] > 1:
            # a single flat vector: interpret as one channel over time
            self.values = self.values.T
        if not np.all(np.isfinite(self.values)):
            raise ValueError("series contains non-finite values")

    def __len__(self) -> int:
        return self.values.shape[0]

    @property
    def channel(self) -> np.ndarray:
        """First (usually only) channel as a flat vector."""
        return self.values[:, 0]


def white_noise(length: int, seed: int) -> TimeSeries:
    """I.i.d. noise uniform on [-1, 1]."""
    if length < 1:
        raise ValueError("length must be >= 1")
    values = np.random.default_rng(seed).uniform(-1.0, 1.0, length)
    return TimeSeries(values=values[:, None], dt=None,
                      source=f"white_noise(length={length}, seed={seed})")


def mso(length: int) -> TimeSeries:
    """Three superimposed incommensurable sinusoids,
    ``sin(0.2 k) + sin(0.311 k) + sin(0.42 k)``."""
    if length < 1:
        raise ValueError("length must be >= 1")
    k = np.arange(length)
    values = np.sin(0.2 * k) + np.sin(0.311 * k) + np.sin(0.42 * k)
    return TimeSeries(values=values[:, None], dt=None, source=f"mso(length={length})")


def _lorenz_rhs(state: np.ndarray, sigma: float, rho: float, beta: float) -> np.ndarray:
    x, y, z = state
    return np.array([sigma * (y - x), x * (rho - z) - y, x * y - beta * z])


def lorenz_x(length: int, dt: float = 0.01, subsample: int = 5,
             initial: tuple[float, float, float] = (1.0, 1.0, 1.0),
             seed_perturbation: int | None = None,
             transient_steps: int = 1000, sigma: float = 10.0,
             rho: float = 28.0, beta: float = 8.0 / 3.0) -> TimeSeries:
    """x-coordinate of the chaotic convection system, RK4 fixed step.

    A transient of ``transient_steps`` integrator steps is discarded, then
    one sample is kept every ``subsample`` steps. ``seed_perturbation`` adds
    a small random offset to the initial condition so replicate runs explore
    different stretches of the attractor.
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    if dt > 0.02:
        raise ValueError("dt must be <= 0.02 for a trustworthy trajectory")
    if subsample < 1:
        raise ValueError("subsample must be >= 1")
    if transient_steps < 1000:
        raise ValueError("discard at least 1000 transient steps")
    state = np.asarray(initial, dtype=float)
    if seed_perturbation is not None:
        state = state + np.random.default_rng(seed_perturbation).uniform(-1e-3, 1e-3, 3)

    def rk4(s):
        k1 = _lorenz_rhs(s, sigma, rho, beta)
        k2 = _lorenz_rhs(s + 0.5 * dt * k1, sigma, rho, beta)
        k3 = _lorenz_rhs(s + 0.5 * dt * k2, sigma, rho, beta)
        k4 = _lorenz_rhs(s + dt * k3, sigma, rho, beta)
        return s + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)

    for _ in range(transient_steps):
        state = rk4(state)
    out = np.empty(length)
    for i in range(length):
        out[i] = state[0]
        for _ in range(subsample):
            state = rk4(state)
        if np.max(np.abs(state)) > _DIVERGENCE_LIMIT:
            raise SignalDivergenceError(f"trajectory diverged at sample {i}")
    return TimeSeries(values=out[:, None], dt=dt * subsample,
                      source=(f"lorenz_x(length={length}, dt={dt}, subsample={subsample}, "
                              f"initial={tuple(initial)}, seed_perturbation={seed_perturbation})"))


def mackey_glass(length: int, dt: float = 0.1, lambda_delay: float = 17.0,
                 alpha: float = 0.2, beta: float = 0.1, exponent: float = 1.0,
                 initial_history: float = 1.2, sample_every: int = 10,
                 transient_samples: int = 100) -> TimeSeries:
    """Delayed feedback series ``dx/dt = -beta x + alpha x_d / (1 + x_d^p)``.

    ``x_d`` is the state one delay in the past, held in a buffer that is
    interpolated with cubic Hermite polynomials for the half-step stage
    evaluations. The exponent defaults to 1 (see the package README for why);
    pass ``exponent=10`` for the classic chaotic benchmark.
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    if dt <= 0 or lambda_delay < dt:
        raise ValueError("need 0 < dt <= lambda_delay")
    if sample_every < 1:
        raise ValueError("sample_every must be >= 1")
    n_steps = transient_samples * sample_every + (length - 1) * sample_every + 1
    xs = np.empty(n_steps + 1)
    ds = np.empty(n_steps + 1)

    def f(x, xd):
        return -beta * x + alpha * xd / (1.0 + xd ** exponent)

    def delayed(t):
        if t <= 0.0:
            return initial_history
        j = int(np.floor(t / dt + 1e-12))
        s = t / dt - j
        if s < 1e-12:
            return xs[j]
        h00 = (1 + 2 * s) * (1 - s) ** 2
        h10 = s * (1 - s) ** 2
        h01 = s * s * (3 - 2 * s)
        h11 = s * s * (s - 1)
        return (h00 * xs[j] + h10 * dt * ds[j]
                + h01 * xs[j + 1] + h11 * dt * ds[j + 1])

    xs[0] = initial_history
    ds[0] = f(initial_history, initial_history)
    for k in range(n_steps):
        t = k * dt
        x = xs[k]
        xd1 = delayed(t - lambda_delay)
        k1 = f(x, xd1)
        xd2 = delayed(t + 0.5 * dt - lambda_delay)
        k2 = f(x + 0.5 * dt * k1, xd2)
        k3 = f(x + 0.5 * dt * k2, xd2)
        xd4 = delayed(t + dt - lambda_delay)
        k4 = f(x + dt * k3, xd4)
        xs[k + 1] = x + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.isfinite(xs[k + 1]) or abs(xs[k + 1]) > _DIVERGENCE_LIMIT:
            raise SignalDivergenceError(f"delayed integration diverged at step {k + 1}")
        ds[k + 1] = f(xs[k + 1], xd4)
    start = transient_samples * sample_every
    out = xs[start:start + length * sample_every:sample_every]
    return TimeSeries(values=out[:, None], dt=dt * sample_every,
                      source=(f"mackey_glass(length={length}, dt={dt}, "
                              f"lambda_delay={lambda_delay}, alpha={alpha}, beta={beta}, "
                              f"exponent={exponent}, initial_history={initial_history})"))


def load_santa_fe(path: str | Path) -> TimeSeries:
    """Load the laser intensity series: one numeric sample per line."""
    path = Path(path)
    values = []
    with path.open("r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                values.append(float(text))
            except ValueError:
                raise ValueError(f"{path}:{lineno}: unparseable sample {text!r}") from None
    if not values:
        raise ValueError(f"{path}: no samples found")
    return TimeSeries(values=np.asarray(values)[:, None], dt=None, source=str(path))


def normalize_unit_variance(series: TimeSeries, center: bool = False) -> TimeSeries:
    """Scale each channel to unit sample variance; the mean is left alone
    unless ``center`` is set."""
    values = series.values
    if center:
        values = values - values.mean(axis=0)
    std = values.std(axis=0)
    if np.any(std <= 0):
        raise ValueError("cannot normalize a zero-variance channel")
    return replace(series, values=values / std,
                   source=f"normalize_unit_variance({series.source}, center={center})")


__all__ = [
    "SignalDivergenceError",
    "TimeSeries",
    "white_noise",
    "mso",
    "lorenz_x",
    "mackey_glass",
    "load_santa_fe",
    "normalize_unit_variance",
]
