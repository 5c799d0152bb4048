"""Experiment protocols with seed-replicated statistics.

Three protocols are provided:

* `delay_memory_experiment` -- reconstruct the input ``tau`` steps back for
  tau = 0..tau_max, one readout per lag, states driven once per run and
  shared across all lags,
* `tradeoff_grid_experiment` -- grid-search spectral radius and input scaling
  per (nu, tau) cell of the task ``y_k = sin(nu * u_{k - tau})``,
* `lle_sweep_experiment` -- both Lyapunov estimators per (spectral radius,
  seed) cell,

plus `spot_prediction_experiment`, a single (nu, tau) comparison of the three
families at the fixed delay-memory hyper-parameters.

Seeding: one master seed fans out to per-purpose child seeds through a fixed
counter scheme, so results are reproducible bit for bit regardless of worker
count or completion order.
"""

from __future__ import annotations

import logging
import os
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
import multiprocessing

import numpy as np

from .reservoir import (
    Reservoir,
    ReservoirConfig,
    build_reservoir,
    contractivity_margin,
    drive,
    DegenerateActivationError,
)
from .dynamics import (
    LyapunovReport,
    MemoryCurve,
    lyapunov_spectrum_qr,
    max_lle_radius_product,
    spherical_alpha,
    theoretical_memory_curve,
)
from .readout import accuracy_gamma, fit_ridge, nrmse, predict
from . import signals

logger = logging.getLogger(__name__)

BENCHMARKS = ("white_noise", "mso", "lorenz", "mackey_glass", "santa_fe")

# Fixed per-family hyper-parameters of the delay-memory protocol.
FAMILY_PRESETS = {
    "spherical": {"spectral_radius": 15.0, "input_scaling": 0.01},
    "linear": {"spectral_radius": 0.95, "input_scaling": 1.0},
    "tanh": {"spectral_radius": 0.95, "input_scaling": 1.0},
}

# Spectral radius search ranges of the trade-off grid, per family.
TRADEOFF_SR_RANGES = {
    "tanh": (0.2, 3.0),
    "linear": (0.2, 1.5),
    "spherical": (0.2, 10.0),
}
TRADEOFF_SCALING_RANGE = (0.01, 2.0)

DESK_SCALE = {"n_neurons": 200, "train_len": 2000, "test_len": 800, "n_runs": 5}
PAPER_SCALE = {"n_neurons": 1000, "train_len": 5000, "test_len": 2000, "n_runs": 20}

_BLAS_ENV_VARS = ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS")


def child_seed(master_seed: int, *key) -> int:
    """Deterministic child seed from a master seed and a mixed tag/index key."""
    words = [master_seed & 0xFFFFFFFF]
    for part in key:
        if isinstance(part, str):
            words.append(zlib.crc32(part.encode("utf-8")))
        else:
            words.append(int(part) & 0xFFFFFFFF)
    return int(np.random.SeedSequence(words).generate_state(1)[0])


def _run_parallel(func, items, max_workers):
    """Map preserving order; spawn-based workers pinned to one BLAS thread."""
    items = list(items)
    if max_workers is None or max_workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    saved = {k: os.environ.get(k) for k in _BLAS_ENV_VARS}
    os.environ.update({k: "1" for k in _BLAS_ENV_VARS})
    try:
        ctx = multiprocessing.get_context("spawn")
        with ProcessPoolExecutor(max_workers=max_workers, mp_context=ctx) as pool:
            return list(pool.map(func, items))
    finally:
        for k, v in saved.items():
            if v is None:
                os.environ.pop(k, None)
            else:
                os.environ[k] = v


# ---------------------------------------------------------------------------
# Benchmark signals
# ---------------------------------------------------------------------------

def make_benchmark_series(benchmark: str, length: int, seed: int, *,
                          santa_fe_path=None, center: bool = False,
                          mackey_glass_exponent: float = 10.0) -> signals.TimeSeries:
    """Generate (or load) a benchmark series of the given length, normalized
    to unit variance.

    The delayed-feedback benchmark defaults to the chaotic exponent-10
    variant: the plain printed form settles onto a fixed point, which leaves
    nothing to remember (and no variance to normalize).
    """
    if benchmark == "white_noise":
        series = signals.white_noise(length, seed)
    elif benchmark == "mso":
        series = signals.mso(length)
    elif benchmark == "lorenz":
        series = signals.lorenz_x(length, seed_perturbation=seed)
    elif benchmark == "mackey_glass":
        series = signals.mackey_glass(length, exponent=mackey_glass_exponent)
    elif benchmark == "santa_fe":
        if santa_fe_path is None:
            raise ValueError("santa_fe benchmark needs santa_fe_path")
        series = signals.load_santa_fe(santa_fe_path)
        if len(series) < length:
            raise ValueError(f"santa_fe series has {len(series)} samples, "
                             f"need {length}")
        series = signals.TimeSeries(values=series.values[:length], dt=series.dt,
                                    source=series.source)
    else:
        raise ValueError(f"unknown benchmark {benchmark!r}; expected one of {BENCHMARKS}")
    return signals.normalize_unit_variance(series, center=center)


def family_config(family: str, n_neurons: int, seed: int = 0,
                  n_inputs: int = 1) -> ReservoirConfig:
    """Delay-memory protocol config for one family."""
    preset = FAMILY_PRESETS[family]
    return ReservoirConfig(n_neurons=n_neurons, n_inputs=n_inputs,
                           spectral_radius=preset["spectral_radius"],
                           input_scaling=preset["input_scaling"],
                           activation=family, seed=seed)


# ---------------------------------------------------------------------------
# Delay-memory protocol
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class DelayMemoryResult:
    benchmark: str
    family: str
    taus: np.ndarray
    train_acc_mean: np.ndarray
    train_acc_std: np.ndarray
    test_acc_mean: np.ndarray
    test_acc_std: np.ndarray
    n_runs: int
    config: ReservoirConfig
    alpha_estimate: float | None = None


def delay_memory_experiment(benchmark: str, family: str,
                            config: ReservoirConfig | None = None,
                            tau_max: int = 100, n_runs: int = 5, *,
                            n_neurons: int = 200, train_len: int = 2000,
                            test_len: int = 800, washout: int = 100,
                            ridge_lambda: float = 0.0, master_seed: int = 1234,
                            santa_fe_path=None, center: bool = False) -> DelayMemoryResult:
    """Accuracy of reconstructing the input tau steps back, tau = 0..tau_max.

    One reservoir per run (fresh seed), driven once; every lag trains its own
    readout on the shared states. The washout must cover tau_max so that all
    targets index into recorded signal history.
    """
    if washout < tau_max:
        raise ValueError(f"washout ({washout}) must cover tau_max ({tau_max}) "
                         "so lagged targets stay inside the recorded signal")
    length = washout + train_len + test_len
    series = make_benchmark_series(benchmark, length, child_seed(master_seed, "signal"),
                                   santa_fe_path=santa_fe_path, center=center)
    if len(series) < length:
        raise ValueError(f"series too short: {len(series)} < washout + train + test = {length}")
    u = series.channel
    if config is None:
        config = family_config(family, n_neurons)
    taus = np.arange(tau_max + 1)
    ks_train = np.arange(washout, washout + train_len)
    ks_test = np.arange(washout + train_len, length)
    y_train = u[ks_train[:, None] - taus[None, :]]
    y_test = u[ks_test[:, None] - taus[None, :]]
    train_acc = np.empty((n_runs, taus.size))
    test_acc = np.empty((n_runs, taus.size))
    alpha = None
    for run in range(n_runs):
        cfg = replace(config, seed=child_seed(master_seed, "reservoir", run))
        reservoir = build_reservoir(cfg)
        traj = drive(reservoir, u[:, None], washout=washout)
        if run == 0 and family == "spherical":
            alpha = spherical_alpha(reservoir, traj, inputs=u[:, None])
        weights = fit_ridge(traj.states[ks_train], y_train, ridge_lambda)
        p_train = predict(weights, traj.states[ks_train])
        p_test = predict(weights, traj.states[ks_test])
        for i in range(taus.size):
            train_acc[run, i] = accuracy_gamma(nrmse(p_train[:, [i]], y_train[:, [i]]))
            test_acc[run, i] = accuracy_gamma(nrmse(p_test[:, [i]], y_test[:, [i]]))
    return DelayMemoryResult(
        benchmark=benchmark, family=family, taus=taus,
        train_acc_mean=train_acc.mean(axis=0), train_acc_std=train_acc.std(axis=0),
        test_acc_mean=test_acc.mean(axis=0), test_acc_std=test_acc.std(axis=0),
        n_runs=n_runs, config=config, alpha_estimate=alpha)


def theoretical_curves_for(result: DelayMemoryResult,
                           magnitude: float = 1.0) -> list[MemoryCurve]:
    """Closed-form curves matching a delay-memory run, for plotting alongside.

    The spherical curve uses ``alpha`` calibrated from the run's own recorded
    norm factors; linear and tanh use their protocol spectral radius.
    """
    lags = result.taus
    curves = []
    if result.alpha_estimate is not None:
        curves.append(theoretical_memory_curve("spherical", lags,
                                               alpha=result.alpha_estimate))
    rho = FAMILY_PRESETS["linear"]["spectral_radius"]
    curves.append(theoretical_memory_curve("linear", lags, rho=rho))
    curves.append(theoretical_memory_curve("tanh", lags, rho=rho, magnitude=magnitude))
    return curves


# ---------------------------------------------------------------------------
# Memory/non-linearity trade-off
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepPlan:
    """Hyper-parameter grid and run lengths of one trade-off sweep."""

    sr_values: tuple
    scaling_values: tuple
    n_seeds: int = 1
    train_len: int = 500
    test_len: int = 200
    washout: int = 100

    def __post_init__(self):
        if not self.sr_values or not self.scaling_values:
            raise ValueError("grids must be non-empty")
        if self.n_seeds < 1:
            raise ValueError("n_seeds must be >= 1")


def default_sweep_plan(family: str, grid_points: int = 20, **overrides) -> SweepPlan:
    sr_lo, sr_hi = TRADEOFF_SR_RANGES[family]
    sc_lo, sc_hi = TRADEOFF_SCALING_RANGE
    plan = SweepPlan(sr_values=tuple(np.linspace(sr_lo, sr_hi, grid_points)),
                     scaling_values=tuple(np.linspace(sc_lo, sc_hi, grid_points)))
    return replace(plan, **overrides) if overrides else plan


@dataclass(eq=False)
class TradeoffResult:
    family: str
    nu_grid: np.ndarray
    tau_grid: np.ndarray
    test_nrmse: np.ndarray       # (n_nu, n_tau)
    train_nrmse: np.ndarray      # (n_nu, n_tau), at the selected cell
    best_sr: np.ndarray
    best_scaling: np.ndarray
    flagged: list = field(default_factory=list)  # (nu, tau) cells with no finite fit


def select_best_hyperparams(rows) -> tuple[float, float]:
    """Pick (sr, scaling) minimizing train NRMSE; ties prefer smaller sr,
    then smaller scaling. Rows are (sr, scaling, train_nrmse) triples."""
    best = None
    for sr, scaling, err in rows:
        if err is None or not np.isfinite(err):
            continue
        key = (float(err), float(sr), float(scaling))
        if best is None or key < best:
            best = key
    if best is None:
        raise ValueError("no finite grid entries to select from")
    return best[1], best[2]


def _tradeoff_cell(args):
    """Drive one (sr, scaling, seed) grid cell and fit all (nu, tau) targets.

    Returns (train_nrmse, test_nrmse) arrays of shape (n_nu * n_tau,), NaN on
    degenerate runs.
    """
    (family, n_neurons, sr, scaling, seed, master_seed, nu_grid, tau_grid,
     train_len, test_len, washout, ridge_scale) = args
    length = washout + train_len + test_len
    rng = np.random.default_rng(child_seed(master_seed, "signal", seed))
    u_raw = rng.uniform(-1.0, 1.0, length)
    s_in = u_raw / u_raw.std()
    cfg = ReservoirConfig(n_neurons=n_neurons, n_inputs=1, spectral_radius=float(sr),
                          input_scaling=float(scaling), activation=family,
                          seed=child_seed(master_seed, "reservoir", seed))
    n_cols = len(nu_grid) * len(tau_grid)
    try:
        reservoir = build_reservoir(cfg)
        if logger.isEnabledFor(logging.DEBUG):
            margin = contractivity_margin(reservoir, float(np.max(np.abs(s_in))))
            logger.debug("cell family=%s sr=%.4g scaling=%.4g seed=%d margin=%.4g",
                         family, sr, scaling, seed, margin)
        traj = drive(reservoir, s_in[:, None], washout=washout)
    except (DegenerateActivationError, np.linalg.LinAlgError):
        return np.full(n_cols, np.nan), np.full(n_cols, np.nan)
    ks_train = np.arange(washout, washout + train_len)
    ks_test = np.arange(washout + train_len, length)
    cols_train = np.empty((train_len, n_cols))
    cols_test = np.empty((test_len, n_cols))
    for i, nu in enumerate(nu_grid):
        for j, tau in enumerate(tau_grid):
            c = i * len(tau_grid) + j
            cols_train[:, c] = np.sin(nu * u_raw[ks_train - tau])
            cols_test[:, c] = np.sin(nu * u_raw[ks_test - tau])
    try:
        weights = fit_ridge(traj.states[ks_train], cols_train, ridge_scale * train_len)
    except np.linalg.LinAlgError:
        return np.full(n_cols, np.nan), np.full(n_cols, np.nan)
    p_train = predict(weights, traj.states[ks_train])
    p_test = predict(weights, traj.states[ks_test])
    out_train = np.empty(n_cols)
    out_test = np.empty(n_cols)
    for c in range(n_cols):
        out_train[c] = nrmse(p_train[:, [c]], cols_train[:, [c]])
        out_test[c] = nrmse(p_test[:, [c]], cols_test[:, [c]])
    return out_train, out_test


def tradeoff_grid_experiment(family: str, nu_grid, tau_grid,
                             plan: SweepPlan | None = None, *,
                             n_neurons: int = 200, ridge_scale: float = 1e-8,
                             master_seed: int = 1234,
                             max_workers: int | None = None) -> TradeoffResult:
    """Grid-search (sr, scaling) per (nu, tau), selecting on training error.

    The washout must cover the largest tau. Cells where every hyper-parameter
    combination failed are flagged and reported as NaN rather than dropped.
    """
    plan = plan or default_sweep_plan(family)
    nu_grid = [float(v) for v in nu_grid]
    tau_grid = [int(t) for t in tau_grid]
    if max(tau_grid) > plan.washout:
        raise ValueError(f"washout ({plan.washout}) must cover max tau ({max(tau_grid)})")
    cells = [(family, n_neurons, sr, sc, seed, master_seed, tuple(nu_grid),
              tuple(tau_grid), plan.train_len, plan.test_len, plan.washout, ridge_scale)
             for sr in plan.sr_values
             for sc in plan.scaling_values
             for seed in range(plan.n_seeds)]
    results = _run_parallel(_tradeoff_cell, cells, max_workers)

    n_nu, n_tau = len(nu_grid), len(tau_grid)
    n_sr, n_sc = len(plan.sr_values), len(plan.scaling_values)
    train = np.full((n_sr, n_sc, plan.n_seeds, n_nu * n_tau), np.nan)
    test = np.full_like(train, np.nan)
    for cell, (tr, te) in zip(cells, results):
        i_sr = plan.sr_values.index(cell[2])
        i_sc = plan.scaling_values.index(cell[3])
        train[i_sr, i_sc, cell[4]] = tr
        test[i_sr, i_sc, cell[4]] = te
    # mean over seeds (NaN if any seed failed: a flaky cell is not trustworthy)
    train_m = train.mean(axis=2)
    test_m = test.mean(axis=2)

    best_sr = np.full((n_nu, n_tau), np.nan)
    best_sc = np.full((n_nu, n_tau), np.nan)
    out_test = np.full((n_nu, n_tau), np.nan)
    out_train = np.full((n_nu, n_tau), np.nan)
    flagged = []
    for i in range(n_nu):
        for j in range(n_tau):
            c = i * n_tau + j
            rows = [(plan.sr_values[a], plan.scaling_values[b], train_m[a, b, c])
                    for a in range(n_sr) for b in range(n_sc)]
            try:
                sr, sc = select_best_hyperparams(rows)
            except ValueError:
                flagged.append((nu_grid[i], tau_grid[j]))
                logger.warning("trade-off cell nu=%.3g tau=%d: all grid entries failed",
                               nu_grid[i], tau_grid[j])
                continue
            a = plan.sr_values.index(sr)
            b = plan.scaling_values.index(sc)
            best_sr[i, j] = sr
            best_sc[i, j] = sc
            out_train[i, j] = train_m[a, b, c]
            out_test[i, j] = test_m[a, b, c]
    return TradeoffResult(family=family, nu_grid=np.asarray(nu_grid),
                          tau_grid=np.asarray(tau_grid), test_nrmse=out_test,
                          train_nrmse=out_train, best_sr=best_sr,
                          best_scaling=best_sc, flagged=flagged)


# ---------------------------------------------------------------------------
# Spot comparison at fixed hyper-parameters
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class SpotComparison:
    nu: float
    tau: int
    families: tuple
    gamma_mean: dict
    gamma_std: dict
    target: np.ndarray           # test-segment target, run 0
    predictions: dict            # family -> test-segment prediction, run 0
    test_indices: np.ndarray


def spot_prediction_experiment(nu: float, tau: int,
                               families=("spherical", "linear", "tanh"), *,
                               n_neurons: int = 200, train_len: int = 500,
                               test_len: int = 200, washout: int = 100,
                               n_runs: int = 5, ridge_scale: float = 1e-8,
                               master_seed: int = 1234) -> SpotComparison:
    """Compare the families on ``y = sin(nu * u_{k-tau})`` at the fixed
    delay-memory hyper-parameters (no grid search)."""
    if tau > washout:
        raise ValueError(f"washout ({washout}) must cover tau ({tau})")
    length = washout + train_len + test_len
    rng = np.random.default_rng(child_seed(master_seed, "signal"))
    u_raw = rng.uniform(-1.0, 1.0, length)
    s_in = u_raw / u_raw.std()
    ks_train = np.arange(washout, washout + train_len)
    ks_test = np.arange(washout + train_len, length)
    y_train = np.sin(nu * u_raw[ks_train - tau])[:, None]
    y_test = np.sin(nu * u_raw[ks_test - tau])[:, None]
    gamma_mean, gamma_std, predictions = {}, {}, {}
    for family in families:
        gs = []
        for run in range(n_runs):
            cfg = replace(family_config(family, n_neurons),
                          seed=child_seed(master_seed, "reservoir", run))
            reservoir = build_reservoir(cfg)
            traj = drive(reservoir, s_in[:, None], washout=washout)
            weights = fit_ridge(traj.states[ks_train], y_train, ridge_scale * train_len)
            p = predict(weights, traj.states[ks_test])
            gs.append(accuracy_gamma(nrmse(p, y_test)))
            if run == 0:
                predictions[family] = p[:, 0].copy()
        gamma_mean[family] = float(np.mean(gs))
        gamma_std[family] = float(np.std(gs))
    return SpotComparison(nu=float(nu), tau=int(tau), families=tuple(families),
                          gamma_mean=gamma_mean, gamma_std=gamma_std,
                          target=y_test[:, 0], predictions=predictions,
                          test_indices=ks_test)


# ---------------------------------------------------------------------------
# Lyapunov sweep
# ---------------------------------------------------------------------------

def _lle_cell(args):
    (family, n_neurons, sr, seed, n_steps, transient, n_exponents) = args
    cfg = ReservoirConfig(n_neurons=n_neurons, n_inputs=1, spectral_radius=float(sr),
                          input_scaling=0.0, activation=family, seed=seed)
    reservoir = build_reservoir(cfg)
    max_lle = max_lle_radius_product(reservoir, n_steps, transient=transient)
    spectrum = lyapunov_spectrum_qr(reservoir, n_steps, n_exponents=n_exponents,
                                    transient=transient)
    return LyapunovReport(spectral_radius=float(sr), max_lle=max_lle,
                          spectrum=spectrum, n_steps=n_steps,
                          n_neurons=n_neurons, seed=seed)


def lle_sweep_experiment(sr_values, n_neurons: int, n_seeds: int, n_steps: int, *,
                         family: str = "spherical", n_exponents: int | None = None,
                         transient: int = 500, master_seed: int = 0,
                         max_workers: int | None = None) -> list[LyapunovReport]:
    """Both Lyapunov estimators for every (spectral radius, seed) cell."""
    if n_seeds < 1:
        raise ValueError("n_seeds must be >= 1")
    cells = [(family, n_neurons, float(sr),
              child_seed(master_seed, "reservoir", i_sr, s), n_steps, transient,
              n_exponents)
             for i_sr, sr in enumerate(sr_values)
             for s in range(n_seeds)]
    return _run_parallel(_lle_cell, cells, max_workers)


def lle_summary(reports: list[LyapunovReport]):
    """Per (spectral radius, method) mean/std of the max exponent."""
    by_sr: dict[float, list[LyapunovReport]] = {}
    for rep in reports:
        by_sr.setdefault(rep.spectral_radius, []).append(rep)
    rows = []
    for sr in sorted(by_sr):
        group = by_sr[sr]
        rp = np.array([r.max_lle for r in group])
        qr = np.array([r.qr_max_lle for r in group])
        rows.append((sr, "radius_product", float(rp.mean()), float(rp.std()), len(group)))
        rows.append((sr, "qr", float(qr.mean()), float(qr.std()), len(group)))
    return rows


# ---------------------------------------------------------------------------
# CSV row builders (schemas shared with the figure renderer)
# ---------------------------------------------------------------------------

DELAY_MEMORY_HEADER = ["benchmark", "family", "tau", "split", "acc_mean", "acc_std", "n_runs"]
TRADEOFF_HEADER = ["family", "nu", "tau", "test_nrmse", "best_sr", "best_scaling"]
LYAPUNOV_HEADER = ["family", "sr", "seed", "max_lle", "method"]
LYAPUNOV_SUMMARY_HEADER = ["family", "sr", "method", "mean_lle", "std_lle", "n_seeds"]
CURVE_HEADER = ["family", "sr", "seed", "n", "steps", "lag_or_rank", "value"]
PREDICTIONS_HEADER = ["family", "k", "target", "predicted"]


def delay_memory_rows(result: DelayMemoryResult):
    rows = []
    for split, mean, std in (("train", result.train_acc_mean, result.train_acc_std),
                             ("test", result.test_acc_mean, result.test_acc_std)):
        for i, tau in enumerate(result.taus):
            rows.append((result.benchmark, result.family, int(tau), split,
                         float(mean[i]), float(std[i]), result.n_runs))
    return rows


def tradeoff_rows(result: TradeoffResult):
    rows = []
    for i, nu in enumerate(result.nu_grid):
        for j, tau in enumerate(result.tau_grid):
            rows.append((result.family, float(nu), int(tau),
                         float(result.test_nrmse[i, j]), float(result.best_sr[i, j]),
                         float(result.best_scaling[i, j])))
    return rows


def lyapunov_rows(reports: list[LyapunovReport], family: str):
    rows = []
    for rep in reports:
        rows.append((family, rep.spectral_radius, rep.seed, rep.max_lle, "radius_product"))
        rows.append((family, rep.spectral_radius, rep.seed, rep.qr_max_lle, "qr"))
    return rows


def lyapunov_summary_rows(reports: list[LyapunovReport], family: str):
    return [(family, sr, method, mean, std, n)
            for sr, method, mean, std, n in lle_summary(reports)]


def spectrum_rows(reports: list[LyapunovReport], family: str):
    rows = []
    for rep in reports:
        for rank, value in enumerate(rep.spectrum):
            rows.append((family, rep.spectral_radius, rep.seed, rep.n_neurons,
                         rep.n_steps, rank, float(value)))
    return rows


def memory_curve_rows(curve: MemoryCurve, sr: float, seed: int, n: int, steps: int):
    return [(curve.family, float(sr), int(seed), int(n), int(steps), int(lag), float(val))
            for lag, val in zip(curve.lags, curve.values)]


def prediction_rows(spot: SpotComparison):
    rows = []
    for family in spot.families:
        pred = spot.predictions[family]
        for k, target, value in zip(spot.test_indices, spot.target, pred):
            rows.append((family, int(k), float(target), float(value)))
    return rows


__all__ = [
    "BENCHMARKS",
    "FAMILY_PRESETS",
    "TRADEOFF_SR_RANGES",
    "TRADEOFF_SCALING_RANGE",
    "DESK_SCALE",
    "PAPER_SCALE",
    "child_seed",
    "make_benchmark_series",
    "family_config",
    "DelayMemoryResult",
    "delay_memory_experiment",
    "theoretical_curves_for",
    "SweepPlan",
    "default_sweep_plan",
    "TradeoffResult",
    "select_best_hyperparams",
    "tradeoff_grid_experiment",
    "SpotComparison",
    "spot_prediction_experiment",
    "lle_sweep_experiment",
    "lle_summary",
    "LyapunovReport",
    "delay_memory_rows",
    "tradeoff_rows",
    "lyapunov_rows",
    "lyapunov_summary_rows",
    "spectrum_rows",
    "memory_curve_rows",
    "prediction_rows",
    "DELAY_MEMORY_HEADER",
    "TRADEOFF_HEADER",
    "LYAPUNOV_HEADER",
    "LYAPUNOV_SUMMARY_HEADER",
    "CURVE_HEADER",
    "PREDICTIONS_HEADER",
]
