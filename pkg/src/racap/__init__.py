"""Rate adaptation for symmetric random-access channels.

Optimal single-message policies, switching thresholds, exact and bounded
throughput curves, two-user capacity regions with a constant-gap
certificate, capacity-region polytopes with independent LP and vertex
oracles, and a seeded Monte Carlo slot simulator.
"""

from .numerics import (
    ChannelModel,
    awgn_capacity,
    binom_cdf,
    binom_pmf,
    poisson_cdf,
)
from .polytope import (
    LinearPolytope,
    VertexCandidate,
    awgn_closed_form_vertices,
    awgn_inner_polytope,
    awgn_polytope,
    awgn_vertex,
    bd_group_rate_vertices,
    bd_polytope,
    lp_maximize,
    to_group_rates,
    to_layer_rates,
    vertex_enumerate,
)
from .simulator import SimReport, SlotSimConfig, simulate, simulate_aloha, split_seed, sweep
from .thresholds import (
    ThresholdTable,
    awgn_thresholds,
    bd_thresholds,
    poisson_thresholds,
)
from .throughput import (
    RatePolicy,
    aloha_poisson,
    awgn_policy,
    awgn_rate,
    awgn_throughput_lower,
    awgn_throughput_upper,
    baseline_adaptive,
    baseline_aloha,
    baseline_csi,
    baseline_ml,
    bd_policy,
    bd_rate,
    bd_throughput,
    poisson_throughput,
)
from .two_user import (
    GAP_BOUND,
    RateTuple,
    ThroughputBracket,
    awgn_inner_contains,
    awgn_outer_contains,
    awgn_outer_vertices,
    bd_region_contains,
    bd_region_vertices,
    two_user_awgn_throughput,
    two_user_bd_throughput,
    verify_gap,
)

__version__ = "0.1.0"

__all__ = [
    "ChannelModel",
    "GAP_BOUND",
    "LinearPolytope",
    "RatePolicy",
    "RateTuple",
    "SimReport",
    "SlotSimConfig",
    "ThresholdTable",
    "ThroughputBracket",
    "VertexCandidate",
    "aloha_poisson",
    "awgn_capacity",
    "awgn_closed_form_vertices",
    "awgn_inner_contains",
    "awgn_inner_polytope",
    "awgn_outer_contains",
    "awgn_outer_vertices",
    "awgn_policy",
    "awgn_polytope",
    "awgn_rate",
    "awgn_thresholds",
    "awgn_throughput_lower",
    "awgn_throughput_upper",
    "awgn_vertex",
    "baseline_adaptive",
    "baseline_aloha",
    "baseline_csi",
    "baseline_ml",
    "bd_group_rate_vertices",
    "bd_policy",
    "bd_polytope",
    "bd_rate",
    "bd_region_contains",
    "bd_region_vertices",
    "bd_thresholds",
    "bd_throughput",
    "binom_cdf",
    "binom_pmf",
    "lp_maximize",
    "poisson_cdf",
    "poisson_thresholds",
    "poisson_throughput",
    "simulate",
    "simulate_aloha",
    "split_seed",
    "sweep",
    "to_group_rates",
    "to_layer_rates",
    "two_user_awgn_throughput",
    "two_user_bd_throughput",
    "verify_gap",
    "vertex_enumerate",
]
