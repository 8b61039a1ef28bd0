"""Seeded Monte Carlo slot simulation of the random-access channel.

Each slot activates each of m users independently with probability p;
every active user transmits one message at the configured rate and the
receiver decodes all of them iff the active count k satisfies
k * rate <= cap(k).  Only the count matters under symmetry, so slots draw
k directly from Binomial(m, p) instead of m coin flips.

Streams are counter-based: each batch owns a Philox generator keyed by
(seed, batch index), so any batch can be computed independently and the
reduction over batches in index order makes the result bit-identical
whether batches run serially or on a thread pool.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .numerics import ChannelModel, check_prob
from .throughput import RatePolicy

#: Relative slack applied to the decodability comparison so that exact
#: boundary policies (k users at rate cap(k)/k) are never lost to rounding.
_DECODE_SLACK = 1e-9

_MAX_SEED = 2**64


@dataclass(frozen=True)
class SlotSimConfig:
    """One simulation run: channel, population, activity, rate, size, seed."""

    model: ChannelModel
    m: int
    p: float
    rate: float | RatePolicy
    n_slots: int
    seed: int
    batch_size: int = 1 << 16

    def __post_init__(self) -> None:
        if int(self.m) < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        check_prob(self.p)
        if int(self.n_slots) < 1:
            raise ValueError(f"n_slots must be >= 1, got {self.n_slots}")
        if not 0 <= int(self.seed) < _MAX_SEED:
            raise ValueError("seed must fit in 64 bits")
        if int(self.batch_size) < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")

    def resolved_rate(self) -> float:
        """Fixed per-user rate for this run (policies are sampled at p)."""
        r = (
            self.rate.rate(self.p)
            if isinstance(self.rate, RatePolicy)
            else float(self.rate)
        )
        if not (math.isfinite(r) and r > 0.0):
            raise ValueError(f"rate must be positive, got {r!r}")
        return r


@dataclass(frozen=True)
class SimReport:
    """Empirical outcome of one run."""

    empirical_sum_rate: float
    collision_fraction: float
    std_error: float
    n_slots: int
    seed: int


def _contribution_table(model: ChannelModel, m: int, rate: float) -> np.ndarray:
    table = np.zeros(m + 1)
    for k in range(1, m + 1):
        payoff = k * rate
        cap = model.cap(k)
        if payoff <= cap + _DECODE_SLACK * max(1.0, cap):
            table[k] = payoff
    return table


def _batch_stats(
    seed: int,
    batch_index: int,
    size: int,
    m: int,
    p: float,
    contrib: np.ndarray,
) -> tuple[float, float, int, int]:
    rng = np.random.Generator(np.random.Philox(key=seed + (batch_index << 64)))
    ks = rng.binomial(m, p, size=size)
    values = contrib[ks]
    active = int(np.count_nonzero(ks))
    decoded = int(np.count_nonzero(values))
    return float(values.sum()), float((values * values).sum()), active, active - decoded


def simulate(config: SlotSimConfig, workers: int = 1) -> SimReport:
    """Run one configuration and report the empirical sum rate.

    The report is a deterministic function of (seed, config); the worker
    count only spreads independent batches over threads and never changes
    a single drawn sample or the reduction order.
    """
    workers = max(1, int(workers))
    rate = config.resolved_rate()
    contrib = _contribution_table(config.model, int(config.m), rate)
    n = int(config.n_slots)
    bs = int(config.batch_size)
    sizes = [min(bs, n - start) for start in range(0, n, bs)]

    def run(i: int) -> tuple[float, float, int, int]:
        return _batch_stats(
            int(config.seed), i, sizes[i], int(config.m), float(config.p), contrib
        )

    if workers == 1 or len(sizes) == 1:
        results = [run(i) for i in range(len(sizes))]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, range(len(sizes))))

    total = 0.0
    total_sq = 0.0
    active = 0
    collided = 0
    for s, sq, a, c in results:
        total += s
        total_sq += sq
        active += a
        collided += c

    mean = total / n
    var = (total_sq - total * total / n) / (n - 1) if n > 1 else 0.0
    std_error = math.sqrt(max(var, 0.0) / n)
    collision_fraction = collided / active if active else 0.0
    return SimReport(mean, collision_fraction, std_error, n, int(config.seed))


def simulate_aloha(
    m: int, p: float, n_slots: int, seed: int, workers: int = 1
) -> SimReport:
    """Fixed rate-one scheme on the binary channel: only singleton slots pay."""
    config = SlotSimConfig(ChannelModel.bd(), m, p, 1.0, n_slots, seed)
    return simulate(config, workers=workers)


def sweep(configs: list[SlotSimConfig], workers: int = 1) -> list[SimReport]:
    """Run a batch of independently seeded configurations.

    Each configuration carries its own seed, so results are independent
    of list order and of each other; see `split_seed` for deriving the
    per-configuration seeds from one master seed.
    """
    return [simulate(c, workers=workers) for c in configs]


def split_seed(master: int, index: int) -> int:
    """Derive the index-th child seed from a master seed (SplitMix64 step)."""
    master = int(master)
    if not 0 <= master < _MAX_SEED:
        raise ValueError("seed must fit in 64 bits")
    x = (master + (index + 1) * 0x9E3779B97F4A7C15) % _MAX_SEED
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) % _MAX_SEED
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) % _MAX_SEED
    return x ^ (x >> 31)
