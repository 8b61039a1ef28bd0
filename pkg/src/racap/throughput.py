"""Expected sum-rate curves: exact, bounded, limiting and baseline.

Every throughput here is an expectation over the random active set of
the decoded sum rate, in bits per symbol.  The exact binary-model value
and the AWGN lower bound have max-over-k closed forms that agree with
the piecewise expressions selected by the switching tables; the AWGN
upper bound is a small linear program over the outer layer-rate region.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .numerics import (
    ChannelModel,
    awgn_capacity,
    binom_cdf,
    binom_pmf_table,
    check_prob,
    check_snr,
    poisson_cdf_table,
)
from .polytope import awgn_polytope, awgn_vertex, lp_maximize
from .thresholds import ThresholdTable, awgn_thresholds, bd_thresholds

#: Above this population size the upper bound skips the linear program
#: and trusts the closed-form vertices.
_LP_MAX_M = 64


def _prefix_cdf(n: int, p: float) -> np.ndarray:
    """Binomial(n, p) CDF values F(0..n) as a cumulative sum of masses."""
    return np.cumsum(binom_pmf_table(n, p))


def _objective(p: float, m: int) -> np.ndarray:
    # Weight of layer j in the expected decoded sum rate: m*p*F(j-1)
    # with F the Binomial(m-1, p) CDF.
    return m * p * _prefix_cdf(m - 1, p)


def bd_throughput(p: float, m: int) -> float:
    """Exact throughput of the unit-capacity binary model.

    max over k of (m*p/k) * F(k-1); continuous in p, piecewise concave,
    equal on each switching interval to the term the interval selects.
    """
    p = check_prob(p)
    m = int(m)
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    if p == 0.0:
        return 0.0
    ks = np.arange(1, m + 1)
    return float(np.max(m * p * _prefix_cdf(m - 1, p) / ks))


def bd_rate(p: float, m: int, table: ThresholdTable | None = None) -> float:
    """Optimal per-user encoding rate 1/k on the interval containing p."""
    p = check_prob(p)
    if p == 0.0:
        raise ValueError("rate is defined for p in (0, 1]")
    if table is None:
        table = bd_thresholds(m)
    return table.rate_at(p)


def poisson_throughput(lam: float) -> float:
    """Large-population throughput at total arrival rate lam.

    max over k >= 1 of (lam/k) * P(N <= k-1) with N ~ Poisson(lam); the
    search window lam + 10*sqrt(lam) + 20 comfortably covers the argmax.
    Tends to 1 as lam grows.
    """
    lam = float(lam)
    if not lam > 0.0:
        raise ValueError(f"lambda must be > 0, got {lam!r}")
    k_hi = int(lam + 10.0 * math.sqrt(lam) + 20.0)
    cdf = poisson_cdf_table(k_hi - 1, lam)
    ks = np.arange(1, k_hi + 1)
    return float(np.max(lam * cdf / ks))


def awgn_throughput_lower(p: float, m: int, snr: float) -> float:
    """Single-message achievable throughput of the AWGN model.

    max over k of (cap(k)/k) * m*p * F(k-1) where cap(k) is the k-user
    sum capacity.
    """
    p = check_prob(p)
    m = int(m)
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    snr = check_snr(snr)
    if snr <= 0.0:
        raise ValueError("snr must be positive")
    if p == 0.0:
        return 0.0
    ks = np.arange(1, m + 1)
    caps = np.array([awgn_capacity(k * snr) for k in ks])
    return float(np.max(m * p * _prefix_cdf(m - 1, p) * caps / ks))


def awgn_rate(
    p: float, m: int, snr: float, table: ThresholdTable | None = None
) -> float:
    """Optimal per-user encoding rate cap(k)/k on the interval containing p."""
    p = check_prob(p)
    if p == 0.0:
        raise ValueError("rate is defined for p in (0, 1]")
    if table is None:
        table = awgn_thresholds(m, snr)
    return table.rate_at(p)


def awgn_throughput_upper(p: float, m: int, snr: float) -> float:
    """Converse throughput bound of the AWGN model.

    The authoritative value is the linear-program optimum over the outer
    layer-rate region.  Beyond m = 64 the dense solver is skipped and the
    maximum over the closed-form vertices is returned instead (the two
    agree to 1e-8 wherever both run); a RuntimeWarning flags that path.
    """
    p = check_prob(p)
    m = int(m)
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    snr = check_snr(snr)
    if snr <= 0.0:
        raise ValueError("snr must be positive")
    if p == 0.0:
        return 0.0
    w = _objective(p, m)
    if m <= _LP_MAX_M:
        value, _ = lp_maximize(awgn_polytope(m, snr), w)
        return value
    warnings.warn(
        "upper bound for m > 64 uses closed-form vertices without the "
        "linear-program cross-check",
        RuntimeWarning,
        stacklevel=2,
    )
    return max(float(w @ awgn_vertex(m, snr, k)) for k in range(1, m + 1))


def awgn_throughput_upper_closed_form(p: float, m: int, snr: float) -> float:
    """Upper bound evaluated as a maximum over the closed-form vertices.

    Cross-check companion to `awgn_throughput_upper`; no linear program.
    """
    p = check_prob(p)
    m = int(m)
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    snr = check_snr(snr)
    if p == 0.0:
        return 0.0
    w = _objective(p, m)
    return max(float(w @ awgn_vertex(m, snr, k)) for k in range(1, m + 1))


def baseline_csi(p: float, m: int, snr: float) -> float:
    """Throughput with the active set known to the transmitters.

    Expectation of cap(k) over k ~ Binomial(m, p).
    """
    p = check_prob(p)
    m = int(m)
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    snr = check_snr(snr)
    pmf = binom_pmf_table(m, p)
    caps = np.array([0.0] + [awgn_capacity(k * snr) for k in range(1, m + 1)])
    return float(pmf @ caps)


def baseline_adaptive(p: float, m: int, snr: float) -> float:
    """Always-decodable conservative rate: p * cap(m)."""
    p = check_prob(p)
    m = int(m)
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return p * awgn_capacity(m * check_snr(snr))


def baseline_ml(p: float, m: int, snr: float) -> float:
    """Throughput when transmitters target the most likely active count.

    Targets k = floor(m*p) clamped to [1, m]; any transmission involves
    at least one active user, hence the clamp at 1.
    """
    p = check_prob(p)
    m = int(m)
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    snr = check_snr(snr)
    if p == 0.0:
        return 0.0
    k = min(max(int(math.floor(m * p)), 1), m)
    return (
        m * p / k * awgn_capacity(k * snr) * binom_cdf(m - 1, k - 1, p)
    )


def baseline_aloha(p: float, m: int) -> float:
    """Classic fixed-rate-one scheme: a slot pays off iff exactly one user is active."""
    p = check_prob(p)
    m = int(m)
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return m * p * (1.0 - p) ** (m - 1)


def aloha_poisson(lam: float) -> float:
    """Large-population limit of the classic scheme: lam * exp(-lam)."""
    lam = float(lam)
    if lam < 0.0 or not math.isfinite(lam):
        raise ValueError(f"lambda must be finite and >= 0, got {lam!r}")
    return lam * math.exp(-lam)


@dataclass(frozen=True)
class RatePolicy:
    """Piecewise-constant per-user encoding rate keyed by activity probability."""

    model: ChannelModel
    m: int
    table: ThresholdTable

    def rate(self, p: float) -> float:
        return self.table.rate_at(p)


def bd_policy(m: int) -> RatePolicy:
    """Optimal single-message policy for the unit-capacity binary model."""
    table = bd_thresholds(m)
    return RatePolicy(table.model, int(m), table)


def awgn_policy(m: int, snr: float) -> RatePolicy:
    """Optimal single-message policy for the AWGN model."""
    table = awgn_thresholds(m, snr)
    return RatePolicy(table.model, int(m), table)
