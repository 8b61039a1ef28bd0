"""Capacity-region polytopes, a dense simplex solver and vertex enumeration.

The expected-sum-rate region of the symmetric channel lives naturally in
two coordinate systems.  "Group rates" collect, for each active-set size
k, the total rate earned across all size-k sets.  "Layer rates" are the
per-user rates of the decode-when-at-most-k-active message layers; the
two are related by an invertible linear map, and in layer coordinates the
region's ordering constraints become plain nonnegativity.  All geometry
here is done in layer coordinates.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .numerics import awgn_capacity, check_snr

_FEAS_TOL = 1e-9
_PIVOT_TOL = 1e-11


@dataclass(frozen=True)
class LinearPolytope:
    """Feasible set {x >= 0 : a @ x <= b} with b >= 0.

    The origin is always feasible and every instance built here is
    bounded, so linear objectives attain their maximum at a vertex.
    """

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self) -> None:
        a = np.atleast_2d(np.asarray(self.a, dtype=float))
        b = np.asarray(self.b, dtype=float).ravel()
        if a.shape[0] != b.shape[0]:
            raise ValueError("constraint matrix and bounds disagree in length")
        if np.any(b < 0):
            raise ValueError("bounds must be nonnegative (origin feasible)")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def dim(self) -> int:
        return self.a.shape[1]

    def contains(self, x: np.ndarray, tol: float = _FEAS_TOL) -> bool:
        x = np.asarray(x, dtype=float)
        if np.any(x < -tol):
            return False
        return bool(np.all(self.a @ x <= self.b + tol))


def bd_polytope(m: int) -> LinearPolytope:
    """Layer-rate region of the unit-capacity binary model.

    A single cap constraint sum(k * x_k) <= 1 (plus x >= 0): whichever
    layers are decoded, the decoded sum rate never exceeds one bit.
    """
    m = int(m)
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return LinearPolytope(np.arange(1, m + 1, dtype=float)[None, :], np.ones(1))


def _staircase_rows(m: int) -> np.ndarray:
    # Row K has coefficient min(j, K) on x_j: with K users active, layers
    # below K are decoded by fewer receivers, layers >= K by all K.
    j = np.arange(1, m + 1)
    return np.minimum(j[None, :], np.arange(1, m + 1)[:, None]).astype(float)


def awgn_polytope(m: int, snr: float) -> LinearPolytope:
    """Outer layer-rate region of the AWGN model: one cap per active-set size."""
    m = int(m)
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    snr = check_snr(snr)
    caps = np.array([awgn_capacity(k * snr) for k in range(1, m + 1)])
    return LinearPolytope(_staircase_rows(m), caps)


def awgn_inner_polytope(m: int, snr: float) -> LinearPolytope:
    """Single-message achievable layer-rate region of the AWGN model.

    One aggregated constraint sum(k / cap(k) * x_k) <= 1; its vertices are
    the pure one-layer allocations x = (cap(k)/k) e_k.
    """
    m = int(m)
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    snr = check_snr(snr)
    ks = np.arange(1, m + 1, dtype=float)
    caps = np.array([awgn_capacity(k * snr) for k in range(1, m + 1)])
    return LinearPolytope((ks / caps)[None, :], np.ones(1))


def to_layer_rates(group_rates: np.ndarray) -> np.ndarray:
    """Map group rates (indexed by active-set size) to layer rates."""
    g = np.asarray(group_rates, dtype=float)
    m = g.shape[0]
    ks = np.arange(1, m + 1)
    scaled = g / (ks * np.array([math.comb(m, k) for k in ks]))
    x = scaled.copy()
    x[:-1] -= scaled[1:]
    return x


def to_group_rates(layer_rates: np.ndarray) -> np.ndarray:
    """Inverse of `to_layer_rates`."""
    x = np.asarray(layer_rates, dtype=float)
    m = x.shape[0]
    ks = np.arange(1, m + 1)
    tails = np.cumsum(x[::-1])[::-1]
    return ks * np.array([math.comb(m, k) for k in ks]) * tails


def bd_group_rate_vertices(m: int) -> list[np.ndarray]:
    """Extreme points of the binary model's group-rate region.

    The origin plus one vertex per target size k; the k-th vertex is the
    image of the pure layer allocation x = (1/k) e_k.
    """
    m = int(m)
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    out = [np.zeros(m)]
    for k in range(1, m + 1):
        v = np.zeros(m)
        for i in range(1, k + 1):
            v[i - 1] = i * math.comb(m, i) / k
        out.append(v)
    return out


def lp_maximize(
    poly: LinearPolytope, objective: np.ndarray
) -> tuple[float, np.ndarray]:
    """Maximize objective @ x over the polytope with a dense simplex.

    Bland's rule on both the entering and leaving choices makes the pivot
    sequence deterministic and cycle-free.  Returns (value, argmax vertex).

    Raises
    ------
    RuntimeError
        If an unbounded direction is detected, which violates the
        boundedness invariant and signals a malformed polytope.
    """
    c = np.asarray(objective, dtype=float).ravel()
    n_rows, dim = poly.a.shape
    if c.shape[0] != dim:
        raise ValueError("objective length does not match polytope dimension")
    n = dim + n_rows
    tab = np.zeros((n_rows, n + 1))
    tab[:, :dim] = poly.a
    tab[:, dim : dim + n_rows] = np.eye(n_rows)
    tab[:, -1] = poly.b
    red = np.zeros(n + 1)
    red[:dim] = -c
    basis = list(range(dim, dim + n_rows))

    while True:
        entering = -1
        for j in range(n):
            if red[j] < -_PIVOT_TOL:
                entering = j
                break
        if entering < 0:
            break
        col = tab[:, entering]
        best = None
        for i in range(n_rows):
            if col[i] > _PIVOT_TOL:
                ratio = tab[i, -1] / col[i]
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            raise RuntimeError("unbounded direction found; polytope is malformed")
        row = best[1]
        tab[row] /= tab[row, entering]
        for i in range(n_rows):
            if i != row and tab[i, entering] != 0.0:
                tab[i] -= tab[i, entering] * tab[row]
        red -= red[entering] * tab[row]
        basis[row] = entering

    x = np.zeros(dim)
    for i, bv in enumerate(basis):
        if bv < dim:
            x[bv] = tab[i, -1]
    return float(red[-1]), x


def vertex_enumerate(poly: LinearPolytope, tol: float = _FEAS_TOL) -> np.ndarray:
    """All vertices (basic feasible solutions) of the polytope.

    Brute force over dim-sized subsets of the constraint rows (cap rows
    plus nonnegativity), batched through numpy; intended for dim <= 12.
    Returns an array of shape (n_vertices, dim), deduplicated within tol
    in the max norm.
    """
    dim = poly.dim
    if dim > 12:
        raise ValueError("vertex enumeration is limited to dimension <= 12")
    rows = np.vstack([poly.a, -np.eye(dim)])
    rhs = np.concatenate([poly.b, np.zeros(dim)])
    combos = itertools.combinations(range(rows.shape[0]), dim)
    candidates: list[np.ndarray] = []
    chunk = 50_000
    while True:
        block = list(itertools.islice(combos, chunk))
        if not block:
            break
        idx = np.array(block)
        mats = rows[idx]
        dets = np.linalg.det(mats)
        ok = np.abs(dets) > 1e-9
        if not np.any(ok):
            continue
        sols = np.linalg.solve(mats[ok], rhs[idx][ok][:, :, None])[:, :, 0]
        feasible = np.all(sols @ rows.T <= rhs + tol, axis=1) & np.all(
            sols >= -tol, axis=1
        )
        candidates.extend(sols[feasible])
    verts: list[np.ndarray] = []
    for v in candidates:
        if not any(np.max(np.abs(v - w)) <= tol for w in verts):
            verts.append(v)
    order = np.lexsort(np.array(verts).T[::-1]) if verts else []
    return np.array([verts[i] for i in order]) if len(verts) else np.zeros((0, dim))


def awgn_vertex(m: int, snr: float, k: int) -> np.ndarray:
    """Layer-rate vertex with the size-K caps tight for every K >= k.

    Closed form of the basic solution whose first k-1 coordinates vanish:
    the k-th coordinate takes (k+1)/k caps(k) - caps(k+1), interior ones
    take the second difference 2*caps(j) - caps(j-1) - caps(j+1), and the
    last takes caps(m) - caps(m-1).  For k = m the vertex is caps(m)/m on
    the last coordinate alone.  Concavity of the caps in the active-set
    size makes every coordinate nonnegative.
    """
    m, k = int(m), int(k)
    if not 1 <= k <= m:
        raise ValueError(f"k must lie in [1, m], got k={k}, m={m}")
    snr = check_snr(snr)
    c = [awgn_capacity(j * snr) for j in range(0, m + 2)]
    x = np.zeros(m)
    if k == m:
        x[m - 1] = c[m] / m
        return x
    x[k - 1] = (k + 1) / k * c[k] - c[k + 1]
    for j in range(k + 1, m):
        x[j - 1] = 2.0 * c[j] - c[j - 1] - c[j + 1]
    x[m - 1] = c[m] - c[m - 1]
    return x


@dataclass(frozen=True)
class VertexCandidate:
    """A closed-form vertex candidate with its feasibility verdict."""

    k: int
    x: np.ndarray
    feasible: bool


def awgn_closed_form_vertices(
    m: int, snr: float, tol: float = _FEAS_TOL
) -> list[VertexCandidate]:
    """Closed-form vertex candidates per interval, feasibility-checked.

    The first-interval entry of this coefficient family differs from the
    tight-cap construction of `awgn_vertex` and is not a vertex of the
    region in general (it can break the single-user cap or go negative),
    so every candidate carries a feasibility flag and callers must skip
    flagged entries.  For k >= 2 the candidates coincide with
    `awgn_vertex`.
    """
    m = int(m)
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    snr = check_snr(snr)
    poly = awgn_polytope(m, snr)
    c = [awgn_capacity(j * snr) for j in range(0, m + 2)]
    out: list[VertexCandidate] = []
    for k in range(1, m + 1):
        x = np.zeros(m)
        if k == m:
            x[m - 1] = c[m] / m
        elif k == 1:
            x[0] = 2.0 * c[2] - c[1]
            for i in range(2, m):
                x[i - 1] = 2.0 * c[i] - c[i + 1] - 2.0 * c[i - 1]
            x[m - 1] = c[m] - c[m - 1]
        else:
            x[k - 1] = (k + 1) / k * c[k] - c[k + 1]
            for i in range(k + 1, m):
                x[i - 1] = 2.0 * c[i] - c[i - 1] - c[i + 1]
            x[m - 1] = c[m] - c[m - 1]
        out.append(VertexCandidate(k, x, poly.contains(x, tol)))
    return out
