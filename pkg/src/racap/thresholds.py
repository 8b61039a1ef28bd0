"""Activity-probability boundaries at which the optimal encoding rate switches.

The transmitters' best single-message rate is piecewise constant in the
activity probability p.  Each boundary is the root of a polynomial
balance between the expected payoff of targeting k versus k+1 active
users; the balance function is positive left of the boundary, negative
right of it, with a unique sign change before its interior minimum.
"""

from __future__ import annotations

import bisect as _bisect
from dataclasses import dataclass
from typing import Callable

from .numerics import (
    ChannelModel,
    awgn_capacity,
    binom_pmf_table,
    check_snr,
    poisson_cdf,
)

#: Lower end of every bracketing interval; the balance functions are
#: provably positive at 0+ but evaluating exactly at 0 would touch 0^0.
_BRACKET_EPS = 1e-15


@dataclass(frozen=True)
class ThresholdTable:
    """Partition of the activity-probability axis with per-interval rates.

    boundaries[0] = 0 and boundaries[k-1] < p <= boundaries[k] selects
    interval k (1-based), whose per-user rate is rates[k-1].  For the
    large-population limit the axis is an arrival rate instead of a
    probability and the final boundary is the last one solved for, not 1.
    """

    model: ChannelModel
    boundaries: tuple[float, ...]
    rates: tuple[float, ...]
    m: int | None = None

    def __post_init__(self) -> None:
        if len(self.boundaries) != len(self.rates) + 1:
            raise ValueError("need exactly one more boundary than rates")
        for lo, hi in zip(self.boundaries, self.boundaries[1:]):
            if not lo < hi:
                raise ValueError("boundaries must be strictly increasing")
        for hi, lo in zip(self.rates, self.rates[1:]):
            if not lo < hi:
                raise ValueError("per-interval rates must be strictly decreasing")

    def interval(self, p: float) -> int:
        """1-based index k of the interval (boundaries[k-1], boundaries[k]] containing p."""
        if not self.boundaries[0] < p <= self.boundaries[-1]:
            raise ValueError(
                f"p={p!r} outside ({self.boundaries[0]}, {self.boundaries[-1]}]"
            )
        return _bisect.bisect_left(self.boundaries, p)

    def rate_at(self, p: float) -> float:
        """Per-user encoding rate on the interval containing p."""
        return self.rates[self.interval(p) - 1]


def bisect_root(
    f: Callable[[float], float], lo: float, hi: float, xtol: float = 1e-12
) -> float:
    """Bisection for a function that is positive at lo and negative at hi.

    Raises RuntimeError when the bracket does not show the expected sign
    change, which for the balance functions here would indicate a numerics
    bug rather than a legitimate input.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if not (flo > 0.0 > fhi):
        raise RuntimeError(
            f"no sign change on bracket [{lo}, {hi}]: f(lo)={flo}, f(hi)={fhi}"
        )
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if fm > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def switch_gap(m: int, k: int, a: float, b: float, p: float) -> float:
    """a*F(k-1) - b*F(k) where F(j) is the Binomial(m-1, p) CDF at j.

    This is the payoff difference between rate families a and b; its root
    in (0, k/m) is the k-th switching boundary.
    """
    terms = binom_pmf_table(m - 1, p, upto=k)
    f_lo = float(terms[:k].sum())
    return a * f_lo - b * (f_lo + float(terms[k]))


def bd_threshold_root(m: int, k: int) -> float:
    """Single switching boundary p_k for the unit-capacity binary model."""
    m, k = int(m), int(k)
    if not 1 <= k <= m - 1:
        raise ValueError(f"k must lie in [1, m-1], got k={k}, m={m}")
    a, b = 1.0 / k, 1.0 / (k + 1)
    return bisect_root(
        lambda p: switch_gap(m, k, a, b, p), _BRACKET_EPS, (k + 1) / m
    )


def awgn_threshold_root(m: int, k: int, snr: float) -> float:
    """Single switching boundary p_k(P) for the AWGN model at linear SNR P."""
    m, k = int(m), int(k)
    if not 1 <= k <= m - 1:
        raise ValueError(f"k must lie in [1, m-1], got k={k}, m={m}")
    snr = check_snr(snr)
    if snr <= 0.0:
        raise ValueError("snr must be positive")
    a = awgn_capacity(k * snr) / k
    b = awgn_capacity((k + 1) * snr) / (k + 1)
    return bisect_root(
        lambda p: switch_gap(m, k, a, b, p), _BRACKET_EPS, (k + 1) / m
    )


def poisson_threshold_root(k: int) -> float:
    """Arrival-rate boundary lambda_k in the large-population limit.

    Root of cdf(k-1, lam)/k - cdf(k, lam)/(k+1); the balance is positive
    at 0+, minimized at lam = k+1 and approaches 0 from below afterwards,
    so [eps, k+1] brackets the unique root.
    """
    k = int(k)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")

    def gap(lam: float) -> float:
        return poisson_cdf(k - 1, lam) / k - poisson_cdf(k, lam) / (k + 1)

    return bisect_root(gap, _BRACKET_EPS, float(k + 1))


def bd_thresholds(m: int) -> ThresholdTable:
    """Full switching table for the unit-capacity binary model.

    The first boundary is exactly 1/m and the last interior one is
    m**(-1/(m-1)); every boundary lies strictly below k/m.
    """
    m = int(m)
    if not 2 <= m <= 1000:
        raise ValueError(f"m must lie in [2, 1000], got {m}")
    bounds = [0.0] + [bd_threshold_root(m, k) for k in range(1, m)] + [1.0]
    rates = [1.0 / k for k in range(1, m + 1)]
    return ThresholdTable(ChannelModel.bd(), tuple(bounds), tuple(rates), m)


def awgn_thresholds(m: int, snr: float) -> ThresholdTable:
    """Full switching table for the AWGN model at linear SNR."""
    m = int(m)
    if not 2 <= m <= 1000:
        raise ValueError(f"m must lie in [2, 1000], got {m}")
    snr = check_snr(snr)
    if snr <= 0.0:
        raise ValueError("snr must be positive")
    bounds = [0.0] + [awgn_threshold_root(m, k, snr) for k in range(1, m)] + [1.0]
    rates = [awgn_capacity(k * snr) / k for k in range(1, m + 1)]
    return ThresholdTable(ChannelModel.awgn(snr), tuple(bounds), tuple(rates), m)


def poisson_thresholds(k_max: int) -> ThresholdTable:
    """Switching table on the arrival-rate axis for the large-population limit.

    Covers intervals k = 1..k_max; the axis is open-ended beyond the last
    boundary, where the optimal rate keeps decreasing as 1/k.
    """
    k_max = int(k_max)
    if not 1 <= k_max <= 100:
        raise ValueError(f"k_max must lie in [1, 100], got {k_max}")
    bounds = [0.0] + [poisson_threshold_root(k) for k in range(1, k_max + 1)]
    rates = [1.0 / k for k in range(1, k_max + 1)]
    return ThresholdTable(ChannelModel.bd(), tuple(bounds), tuple(rates), None)
