"""Two-user capacity regions and the constant-gap certificate.

A rate point records what each user gets when alone and what survives
when both are active: (r1_solo, r2_solo, r1_joint, r2_joint).  The binary
model's region is exact; for the AWGN model an outer region and an
achievable inner region sandwich the truth, and the distance between
them is certified to stay below sqrt(3)/2 at every extreme point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import linprog

from .numerics import awgn_capacity, check_prob, check_snr

#: Universal bound on the outer-to-inner distance of the two-user AWGN region.
GAP_BOUND = math.sqrt(3.0) / 2.0

_TOL = 1e-12


@dataclass(frozen=True)
class RateTuple:
    """Two-user rate point (bits per use)."""

    r1_solo: float
    r2_solo: float
    r1_joint: float
    r2_joint: float

    def as_array(self) -> np.ndarray:
        return np.array(
            [self.r1_solo, self.r2_solo, self.r1_joint, self.r2_joint], dtype=float
        )


def _as_tuple(pt: "RateTuple | np.ndarray") -> RateTuple:
    if isinstance(pt, RateTuple):
        return pt
    arr = np.asarray(pt, dtype=float).ravel()
    if arr.shape != (4,):
        raise ValueError("rate point must have four coordinates")
    return RateTuple(*arr)


def _check_bd_params(n1: int, n2: int) -> tuple[int, int]:
    n1, n2 = int(n1), int(n2)
    if n1 < 0 or n2 < 0 or n2 > n1:
        raise ValueError(f"need n1 >= n2 >= 0, got n1={n1}, n2={n2}")
    return n1, n2


def bd_region_contains(n1: int, n2: int, pt, tol: float = _TOL) -> bool:
    """Exact membership in the two-user binary-model capacity region.

    Six inequalities: each solo rate is capped by the user's own pipe,
    a solo rate plus the other user's joint rate is capped by the wider
    pipe, and joint rates never exceed solo rates.
    """
    n1, n2 = _check_bd_params(n1, n2)
    r = _as_tuple(pt)
    return (
        min(r.r1_solo, r.r2_solo, r.r1_joint, r.r2_joint) >= -tol
        and r.r1_solo <= n1 + tol
        and r.r2_solo <= n2 + tol
        and r.r1_solo + r.r2_joint <= n1 + tol
        and r.r2_solo + r.r1_joint <= n1 + tol
        and r.r1_joint <= r.r1_solo + tol
        and r.r2_joint <= r.r2_solo + tol
    )


def bd_region_vertices(n1: int, n2: int) -> list[RateTuple]:
    """Dominant extreme points of the two-user binary-model region.

    Stated in per-message coordinates (opportunistic and always-decoded
    layer of each user) and mapped to rate points: solo rate = both
    layers, joint rate = always-decoded layer only.
    """
    n1, n2 = _check_bd_params(n1, n2)
    message_vertices = [
        (n2, n2, n1 - n2, 0),
        (n1 - n2, 0, 0, n2),
        (0, 0, n1 - n2, n2),
        (n1, n2, 0, 0),
        (0, 0, n1, 0),
        (0, 0, 0, n2),
    ]
    return [
        RateTuple(a1 + c1, a2 + c2, c1, c2) for (a1, a2, c1, c2) in message_vertices
    ]


def _check_powers(p1: float, p2: float) -> tuple[float, float]:
    p1, p2 = check_snr(p1, "p1"), check_snr(p2, "p2")
    if p1 < p2:
        raise ValueError(f"need p1 >= p2, got p1={p1}, p2={p2}")
    return p1, p2


def awgn_outer_contains(p1: float, p2: float, pt, tol: float = _TOL) -> bool:
    """Membership in the two-user AWGN outer region (converse bound)."""
    p1, p2 = _check_powers(p1, p2)
    r = _as_tuple(pt)
    c1, c2, c12 = (
        awgn_capacity(p1),
        awgn_capacity(p2),
        awgn_capacity(p1 + p2),
    )
    return (
        min(r.r1_solo, r.r2_solo, r.r1_joint, r.r2_joint) >= -tol
        and r.r1_solo <= c1 + tol
        and r.r2_solo <= c2 + tol
        and r.r1_solo + r.r2_joint <= c12 + tol
        and r.r2_solo + r.r1_joint <= c12 + tol
        and r.r1_joint <= r.r1_solo + tol
        and r.r2_joint <= r.r2_solo + tol
    )


def awgn_outer_vertices(p1: float, p2: float) -> list[RateTuple]:
    """The fourteen extreme points of the two-user AWGN outer region."""
    p1, p2 = _check_powers(p1, p2)
    c1, c2 = awgn_capacity(p1), awgn_capacity(p2)
    c1i = awgn_capacity(p1 / (p2 + 1.0))  # user 1 with user 2 as noise
    c2i = awgn_capacity(p2 / (p1 + 1.0))  # user 2 with user 1 as noise
    return [
        RateTuple(0.0, 0.0, 0.0, 0.0),
        RateTuple(c1, 0.0, 0.0, 0.0),
        RateTuple(0.0, c2, 0.0, 0.0),
        RateTuple(c1, c2, 0.0, 0.0),
        RateTuple(c1, 0.0, c1, 0.0),
        RateTuple(0.0, c2, 0.0, c2),
        RateTuple(c1i, c2, 0.0, c2),
        RateTuple(c1, c2i, 0.0, c2i),
        RateTuple(c1, c2i, c1, 0.0),
        RateTuple(c1, c2i, c1, c2i),
        RateTuple(c1i, c2, c1i, c2),
        RateTuple(c1, c2, c1i, 0.0),
        RateTuple(c1, c2, 0.0, c2i),
        RateTuple(c1, c2, c1i, c2i),
    ]


def _dominated_by_priority_regions(
    p1: float, p2: float, r: RateTuple, tol: float
) -> bool:
    # A point is achievable whenever some point of either keep-one-user-
    # at-full-joint-rate region dominates it; both reduce to the same
    # pentagon condition on the coordinate maxima.
    a = max(r.r1_solo, r.r1_joint)
    b = max(r.r2_solo, r.r2_joint)
    return (
        a <= awgn_capacity(p1) + tol
        and b <= awgn_capacity(p2) + tol
        and a + b <= awgn_capacity(p1 + p2) + tol
    )


def _split_caps(
    p1: float, p2: float, b1: np.ndarray, b2: np.ndarray
) -> tuple[np.ndarray, ...]:
    # Power-split decoding caps: the kept fractions (1-b) are decoded
    # first, treating both leftover fractions plus noise as interference.
    den = b1 * p1 + b2 * p2 + 1.0
    cap1 = 0.5 * np.log2(1.0 + (1.0 - b1) * p1 / den)
    cap2 = 0.5 * np.log2(1.0 + (1.0 - b2) * p2 / den)
    cap_sum = 0.5 * np.log2(1.0 + ((1.0 - b1) * p1 + (1.0 - b2) * p2) / den)
    solo1 = 0.5 * np.log2(1.0 + b1 * p1)
    solo2 = 0.5 * np.log2(1.0 + b2 * p2)
    return cap1, cap2, cap_sum, solo1, solo2


def _split_grid_contains(
    p1: float, p2: float, r: RateTuple, grid_n: int, tol: float
) -> bool:
    b1, b2 = np.meshgrid(np.linspace(0.0, 1.0, grid_n), np.linspace(0.0, 1.0, grid_n))
    cap1, cap2, cap_sum, solo1, solo2 = _split_caps(p1, p2, b1.ravel(), b2.ravel())
    ok = (
        (r.r1_joint <= cap1 + tol)
        & (r.r2_joint <= cap2 + tol)
        & (r.r1_joint + r.r2_joint <= cap_sum + tol)
        & (r.r1_solo <= r.r1_joint + solo1 + tol)
        & (r.r2_solo <= r.r2_joint + solo2 + tol)
    )
    return bool(np.any(ok))


def _hull_generators(p1: float, p2: float, grid_n: int) -> np.ndarray:
    c1, c2, c12 = awgn_capacity(p1), awgn_capacity(p2), awgn_capacity(p1 + p2)
    pentagon = [
        (0.0, 0.0),
        (c1, 0.0),
        (0.0, c2),
        (c1, c12 - c1),
        (c12 - c2, c2),
    ]
    gens: list[tuple[float, float, float, float]] = []
    for a, b in pentagon:
        for ja in (0.0, a):
            for jb in (0.0, b):
                gens.append((a, b, ja, jb))
    betas = np.linspace(0.0, 1.0, grid_n)
    b1, b2 = np.meshgrid(betas, betas)
    cap1, cap2, cap_sum, solo1, solo2 = _split_caps(p1, p2, b1.ravel(), b2.ravel())
    # Two corner points of each split's joint-rate pentagon, pushed to the
    # largest compatible solo rates.
    for r1j, r2j in (
        (cap1, cap_sum - cap1),
        (cap_sum - cap2, cap2),
    ):
        gens.extend(
            zip(r1j + solo1, r2j + solo2, r1j, r2j)
        )
    return np.unique(np.round(np.array(gens, dtype=float), 12), axis=0)


def _in_hull(point: np.ndarray, generators: np.ndarray) -> bool:
    n = generators.shape[0]
    a_eq = np.vstack([generators.T, np.ones((1, n))])
    b_eq = np.concatenate([point, [1.0]])
    res = linprog(
        np.zeros(n), A_eq=a_eq, b_eq=b_eq, bounds=(0.0, None), method="highs"
    )
    return res.status == 0


def awgn_inner_contains(
    p1: float, p2: float, pt, beta_grid_n: int = 101
) -> bool:
    """Conservative membership test for the two-user AWGN inner region.

    Accepts a point if it is dominated by one of the priority regions, or
    satisfies the power-split constraints for some split on a uniform
    beta_grid_n x beta_grid_n grid, or is a convex combination of the
    collected generator points.  A False can mean the witness fell
    between grid points, never that a certified member was rejected.
    """
    p1, p2 = _check_powers(p1, p2)
    beta_grid_n = int(beta_grid_n)
    if beta_grid_n < 2:
        raise ValueError("beta_grid_n must be >= 2")
    r = _as_tuple(pt)
    if min(r.r1_solo, r.r2_solo, r.r1_joint, r.r2_joint) < -_TOL:
        return False
    if not awgn_outer_contains(p1, p2, r, tol=1e-9):
        return False
    if _dominated_by_priority_regions(p1, p2, r, _TOL):
        return True
    if _split_grid_contains(p1, p2, r, beta_grid_n, _TOL):
        return True
    return _in_hull(r.as_array(), _hull_generators(p1, p2, beta_grid_n))


def _matched_inner_points(p1: float, p2: float) -> tuple[RateTuple, RateTuple]:
    # Explicit achievable companions for the three outer vertices that sit
    # strictly outside the inner region.  The first splits user 1's power
    # so that the leftover matches user 2's, the second parks both users
    # at their solo rates with nothing decoded jointly.
    delta = awgn_capacity((p1 - p2) / (2.0 * p2 + 1.0))
    c2 = awgn_capacity(p2)
    r12 = RateTuple(c2 + delta, c2, delta, 0.0)
    r13 = RateTuple(awgn_capacity(p1), c2, 0.0, 0.0)
    return r12, r13


def verify_gap(p1: float, p2: float) -> float:
    """Largest distance from an outer vertex to its achievable companion.

    Eleven of the fourteen outer vertices already lie in the inner region
    (distance zero); the remaining three are matched to explicit inner
    points.  The returned maximum is certified to stay below sqrt(3)/2.
    """
    p1, p2 = _check_powers(p1, p2)
    if p2 <= 0.0:
        raise ValueError("powers must be positive")
    vertices = awgn_outer_vertices(p1, p2)
    for v in vertices[:11]:
        # The full-solo-rates vertex is inside the inner region only via
        # the power-split family (both splits at 1), not by domination.
        if not (
            _dominated_by_priority_regions(p1, p2, v, 1e-9)
            or _split_grid_contains(p1, p2, v, 2, 1e-9)
        ):
            raise RuntimeError(
                "outer vertex unexpectedly escaped the inner region"
            )
    r12, r13 = _matched_inner_points(p1, p2)
    d12 = float(np.linalg.norm(vertices[11].as_array() - r12.as_array()))
    d13 = float(np.linalg.norm(vertices[12].as_array() - r13.as_array()))
    d14 = float(np.linalg.norm(vertices[13].as_array() - r12.as_array()))
    return max(0.0, d12, d13, d14)


def two_user_bd_throughput(p: float) -> float:
    """Exact two-user binary-model throughput: 2p(1-p) up to 1/2, then p."""
    p = check_prob(p)
    if p <= 0.5:
        return 2.0 * p * (1.0 - p)
    return p


class ThroughputBracket(NamedTuple):
    """Achievable value and its additive-one converse companion."""

    lower: float
    upper: float


def two_user_awgn_throughput(p: float, snr: float) -> ThroughputBracket:
    """Two-user AWGN throughput bracket [T, T + 1].

    Below the switching point 1 - cap(2)/(2*cap(1)) both users risk a
    collision at the full solo rate; above it they share the two-user sum
    capacity evenly and are always decoded.
    """
    p = check_prob(p)
    snr = check_snr(snr)
    if snr <= 0.0:
        raise ValueError("snr must be positive")
    c1, c2 = awgn_capacity(snr), awgn_capacity(2.0 * snr)
    threshold = 1.0 - c2 / (2.0 * c1)
    lower = 2.0 * p * (1.0 - p) * c1 if p <= threshold else p * c2
    return ThroughputBracket(lower, lower + 1.0)
