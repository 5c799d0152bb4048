"""Echo state networks with hyper-sphere state normalization.

The spherical activation projects every pre-activation onto a fixed-radius
sphere, which pins the maximum Lyapunov exponent of the autonomous dynamics
at zero for any spectral radius and gives the network a memory of past
inputs comparable to a linear reservoir while keeping nonlinear computation
available. This package provides the reservoir core, the stability and
memory analyses, benchmark signals, and the experiment protocols that
measure those claims.
"""

__version__ = "0.1.0"

from .reservoir import (
    ACTIVATIONS,
    DegenerateActivationError,
    NetworkState,
    Reservoir,
    ReservoirBuildError,
    ReservoirConfig,
    Trajectory,
    activate,
    autonomous_power_form,
    build_reservoir,
    contractivity_margin,
    drive,
    load_reservoir,
    min_singular_value,
    save_reservoir,
    spectral_radius_of,
    state_decomposition,
    step,
)
from .dynamics import (
    DeltaEstimate,
    LyapunovReport,
    MemoryCurve,
    estimate_delta,
    input_ordering_gap,
    jacobian_spherical,
    local_expansion_matrix,
    lyapunov_spectrum_qr,
    max_lle_radius_product,
    memory_loss,
    spherical_alpha,
    theoretical_memory,
    theoretical_memory_curve,
)
from .readout import Metrics, ReadoutWeights, accuracy_gamma, fit_ridge, nrmse, predict
from .signals import (
    TimeSeries,
    load_santa_fe,
    lorenz_x,
    mackey_glass,
    mso,
    normalize_unit_variance,
    white_noise,
)
from .experiments import (
    DelayMemoryResult,
    SpotComparison,
    SweepPlan,
    TradeoffResult,
    delay_memory_experiment,
    lle_sweep_experiment,
    select_best_hyperparams,
    spot_prediction_experiment,
    tradeoff_grid_experiment,
)
