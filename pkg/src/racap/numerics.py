"""Shared probability and channel-capacity primitives.

All functions are pure and safe to call concurrently.  Rates are measured
in bits per channel use, i.e. every logarithm is base 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np

_LN2 = math.log(2.0)

# Below this trial count binomial terms are evaluated by direct
# multiplication (exact on the small closed-form cases); above it the
# evaluation moves to log space to avoid overflow and underflow.
_DIRECT_LIMIT = 60

# Poisson weights switch to a log-sum-exp once exp(-lam) would go subnormal.
_POISSON_LOG_LIMIT = 700.0


def check_prob(p: float, name: str = "p") -> float:
    """Validate a probability and return it as a float."""
    p = float(p)
    if not (math.isfinite(p) and 0.0 <= p <= 1.0):
        raise ValueError(f"{name} must lie in [0, 1], got {p!r}")
    return p


def check_snr(x: float, name: str = "snr") -> float:
    """Validate a linear (not dB) signal-to-noise ratio."""
    x = float(x)
    if not math.isfinite(x) or x < 0.0:
        raise ValueError(f"{name} must be finite and nonnegative, got {x!r}")
    return x


@lru_cache(maxsize=64)
def _log_comb_row(n: int) -> np.ndarray:
    """log C(n, k) for k = 0..n, from exact integer binomial coefficients.

    Taking one correctly rounded log per coefficient keeps the relative
    error of downstream probabilities near machine precision even for
    n in the thousands, which a recurrence over logs would not.
    """
    row = np.empty(n + 1)
    c = 1
    for k in range(n + 1):
        row[k] = math.log(c)
        c = c * (n - k) // (k + 1)
    return row


def binom_pmf_table(m: int, p: float, upto: int | None = None) -> np.ndarray:
    """Binomial(m, p) point masses for k = 0..upto (default 0..m).

    Parameters
    ----------
    m : int
        Number of trials, m >= 0.
    p : float
        Success probability.
    upto : int, optional
        Largest k to tabulate; clipped to m.

    Returns
    -------
    ndarray
        Array t with t[k] = C(m, k) p^k (1-p)^(m-k).
    """
    p = check_prob(p)
    m = int(m)
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    hi = m if upto is None else min(int(upto), m)
    if hi < 0:
        return np.zeros(0)
    out = np.zeros(hi + 1)
    if p == 0.0:
        out[0] = 1.0
        return out
    if p == 1.0:
        if hi == m:
            out[m] = 1.0
        return out
    ks = np.arange(hi + 1)
    if m <= _DIRECT_LIMIT:
        return np.array(
            [math.comb(m, k) * p**k * (1.0 - p) ** (m - k) for k in range(hi + 1)]
        )
    logs = _log_comb_row(m)[: hi + 1] + ks * math.log(p) + (m - ks) * math.log1p(-p)
    return np.exp(logs)


def binom_pmf(m: int, k: int, p: float) -> float:
    """Probability of exactly k successes in m independent trials.

    Computed by direct multiplication for m <= 60 and in log space above
    that; relative error stays below 1e-12 for m up to 10^3.

    Raises
    ------
    ValueError
        If k < 0 or k > m.
    """
    m, k = int(m), int(k)
    if k < 0 or k > m:
        raise ValueError(f"k must lie in [0, m] = [0, {m}], got {k}")
    p = check_prob(p)
    if p == 0.0:
        return 1.0 if k == 0 else 0.0
    if p == 1.0:
        return 1.0 if k == m else 0.0
    if m <= _DIRECT_LIMIT:
        return math.comb(m, k) * p**k * (1.0 - p) ** (m - k)
    log_t = _log_comb_row(m)[k] + k * math.log(p) + (m - k) * math.log1p(-p)
    return math.exp(log_t)


def binom_cdf(m: int, k: int, p: float) -> float:
    """Probability of at most k successes in m independent trials.

    k may be -1 (empty sum, returns 0); k >= m returns 1.  The value is
    the running sum of `binom_pmf` terms, so consecutive differences
    reproduce the point masses to machine precision.
    """
    m = int(m)
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    p = check_prob(p)
    k = int(k)
    if k <= -1:
        return 0.0
    if k >= m:
        return 1.0
    s = float(binom_pmf_table(m, p, upto=k).sum())
    return min(s, 1.0)


def poisson_cdf(k: int, lam: float) -> float:
    """Probability of at most k events under a Poisson(lam) law.

    Term recursion is used while exp(-lam) is representable; for larger
    rates the partial sum is assembled in log space.  Relative error is
    below 1e-12 for lam <= 10^3.
    """
    k = int(k)
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    lam = float(lam)
    if not math.isfinite(lam) or lam < 0.0:
        raise ValueError(f"lambda must be finite and >= 0, got {lam!r}")
    if lam == 0.0:
        return 1.0
    if lam < _POISSON_LOG_LIMIT:
        t = math.exp(-lam)
        s = t
        for i in range(1, k + 1):
            t *= lam / i
            s += t
        return min(s, 1.0)
    logs = [i * math.log(lam) - lam - math.lgamma(i + 1) for i in range(k + 1)]
    top = max(logs)
    s = math.exp(top) * math.fsum(math.exp(v - top) for v in logs)
    return min(s, 1.0)


def poisson_cdf_table(k_max: int, lam: float) -> np.ndarray:
    """Poisson(lam) CDF values for k = 0..k_max."""
    k_max = int(k_max)
    if k_max < 0:
        raise ValueError(f"k_max must be >= 0, got {k_max}")
    lam = float(lam)
    if not math.isfinite(lam) or lam < 0.0:
        raise ValueError(f"lambda must be finite and >= 0, got {lam!r}")
    if lam == 0.0:
        return np.ones(k_max + 1)
    if lam < _POISSON_LOG_LIMIT:
        out = np.empty(k_max + 1)
        t = math.exp(-lam)
        s = t
        out[0] = s
        for i in range(1, k_max + 1):
            t *= lam / i
            s += t
            out[i] = s
        return np.minimum(out, 1.0)
    ks = np.arange(k_max + 1)
    logs = ks * math.log(lam) - lam - np.array([math.lgamma(i + 1) for i in ks])
    top = logs.max()
    return np.minimum(np.cumsum(np.exp(logs - top)) * math.exp(top), 1.0)


def awgn_capacity(x: float) -> float:
    """Point-to-point AWGN capacity 0.5*log2(1+x), bits per use.

    Strictly increasing and concave; awgn_capacity(k*x)/k is strictly
    decreasing in k for x > 0, which is what makes the per-user share of
    a k-user sum rate shrink as the active set grows.
    """
    x = check_snr(x)
    return 0.5 * math.log1p(x) / _LN2


@dataclass(frozen=True)
class ChannelModel:
    """Symmetric channel seen by every user.

    kind "bd" is the noise-free binary model whose sum rate is capped at
    one bit per use for any number of active users; kind "awgn" carries a
    per-user received SNR (linear) and caps the k-user sum rate at
    awgn_capacity(k * snr).
    """

    kind: Literal["bd", "awgn"]
    snr: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("bd", "awgn"):
            raise ValueError(f"unknown channel kind {self.kind!r}")
        if self.kind == "awgn":
            if self.snr is None:
                raise ValueError("awgn channel requires an snr")
            object.__setattr__(self, "snr", check_snr(self.snr))
        elif self.snr is not None:
            raise ValueError("bd channel takes no snr")

    @staticmethod
    def bd() -> "ChannelModel":
        return ChannelModel("bd")

    @staticmethod
    def awgn(snr: float) -> "ChannelModel":
        return ChannelModel("awgn", snr)

    def cap(self, k: int) -> float:
        """Sum-rate ceiling with k simultaneously active users."""
        k = int(k)
        if k < 0:
            raise ValueError(f"k must be >= 0, got {k}")
        if k == 0:
            return 0.0
        if self.kind == "bd":
            return 1.0
        return awgn_capacity(k * self.snr)
