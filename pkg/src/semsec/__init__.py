"""Ergodic secrecy-rate optimization for semantic-assisted wiretap fading channels.

The transmitter superimposes a semantic stream on a bit stream; per fading
state it picks power, the semantic power share, and the receiver's decoding
order to maximize the expected secrecy rate against an eavesdropper under
average- and peak-power constraints.  Two solvers (a dual grid search and a
successive convex approximation) and two bit-oriented baselines share one
experiment harness.
"""

from .channel import (
    ChannelConfig,
    FadingState,
    dbm_to_watt,
    path_loss_linear,
    sample_states,
)
from .config import (
    ExperimentConfig,
    SweepResult,
    SweepRow,
    default_config,
    emit_csv,
    emit_plot,
    load_config,
    run_sweep,
)
from .dual import (
    DualConfig,
    DualSolution,
    PowerBudget,
    avg_power,
    per_state_objective,
    solve,
    solve_state,
)
from .errors import ConfigError, ConvergenceError, SweepError
from .rates import (
    Allocation,
    SchemeKind,
    bit_an_secrecy_rate,
    bit_only_secrecy_rate,
    rate_eve,
    rate_rx,
    secrecy_rate,
    sinr_bit,
    sinr_eve,
    sinr_sem,
)
from .sca import (
    ScaConfig,
    ScaPoint,
    ScaResult,
    eta_bound,
    init_point,
    re_upper_bound,
    solve_surrogate,
)
from .sca import run as sca_run
from .semantic import (
    SemanticParams,
    equivalent_bit_rate,
    semantic_rate_suts,
    semantic_similarity,
)

__version__ = "0.1.0"

__all__ = [
    "Allocation",
    "ChannelConfig",
    "ConfigError",
    "ConvergenceError",
    "DualConfig",
    "DualSolution",
    "ExperimentConfig",
    "FadingState",
    "PowerBudget",
    "ScaConfig",
    "ScaPoint",
    "ScaResult",
    "SchemeKind",
    "SemanticParams",
    "SweepError",
    "SweepResult",
    "SweepRow",
    "avg_power",
    "bit_an_secrecy_rate",
    "bit_only_secrecy_rate",
    "dbm_to_watt",
    "default_config",
    "emit_csv",
    "emit_plot",
    "equivalent_bit_rate",
    "eta_bound",
    "init_point",
    "load_config",
    "path_loss_linear",
    "per_state_objective",
    "rate_eve",
    "rate_rx",
    "re_upper_bound",
    "run_sweep",
    "sample_states",
    "sca_run",
    "secrecy_rate",
    "semantic_rate_suts",
    "semantic_similarity",
    "sinr_bit",
    "sinr_eve",
    "sinr_sem",
    "solve",
    "solve_state",
    "solve_surrogate",
    "__version__",
]
