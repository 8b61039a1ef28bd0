"""Acceptance suite: one checked criterion per test, one printed line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the PASS/FAIL
lines; every tolerance and runtime budget is pinned in the assertions.
"""

import math
import time

import numpy as np
import pytest

from racap import (
    GAP_BOUND,
    ChannelModel,
    SlotSimConfig,
    awgn_capacity,
    awgn_policy,
    awgn_polytope,
    awgn_thresholds,
    awgn_throughput_lower,
    awgn_throughput_upper,
    bd_policy,
    bd_polytope,
    bd_thresholds,
    bd_throughput,
    lp_maximize,
    poisson_throughput,
    simulate,
    split_seed,
    verify_gap,
    vertex_enumerate,
)
from racap.cli import main, read_table
from racap.throughput import _objective, aloha_poisson

P15DB = 10**1.5

# Exact asymptotics fixtures recorded at build time from the independent
# oracle (scipy binomial CDFs).
BD_T_HALF_FIXTURE = {
    10: 0.6501116071428571,
    100: 0.8178387399597685,
    1000: 0.9222572990791094,
}


def announce(num: int, name: str, ok: bool, elapsed: float, detail: str = "") -> None:
    verdict = "PASS" if ok else "FAIL"
    suffix = f" [{detail}]" if detail else ""
    print(f"ACCEPTANCE {num} {name}: {verdict} ({elapsed:.2f} s){suffix}")


def test_criterion_1_threshold_identities():
    start = time.perf_counter()
    failures = []
    for m in range(2, 21):
        table = bd_thresholds(m)
        if abs(table.boundaries[1] - 1.0 / m) > 1e-9:
            failures.append(f"m={m}: first boundary != 1/m")
        if abs(table.boundaries[m - 1] - m ** (-1.0 / (m - 1))) > 1e-9:
            failures.append(f"m={m}: last interior boundary mismatch")
        for k in range(1, m):
            if not table.boundaries[k] < k / m:
                failures.append(f"m={m}, k={k}: boundary >= k/m")
        if not all(
            a < b for a, b in zip(table.boundaries, table.boundaries[1:])
        ):
            failures.append(f"m={m}: boundaries not strictly increasing")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 1.0
    announce(1, "threshold-identities", ok, elapsed)
    assert not failures, failures
    assert elapsed < 1.0


def test_criterion_2_two_user_closed_forms():
    start = time.perf_counter()
    failures = []
    for p in np.linspace(1e-3, 1.0, 1000):
        expected = 2 * p * (1 - p) if p <= 0.5 else p
        if abs(bd_throughput(p, 2) - expected) > 1e-12:
            failures.append(f"two-user value at p={p}")
    for P in (1.0, 10.0, 100.0):
        expected = 1.0 - awgn_capacity(2 * P) / (2 * awgn_capacity(P))
        if abs(awgn_thresholds(2, P).boundaries[1] - expected) > 1e-9:
            failures.append(f"two-user switching point at P={P}")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 1.0
    announce(2, "two-user-closed-forms", ok, elapsed)
    assert not failures, failures
    assert elapsed < 1.0


def test_criterion_3_oracle_equivalence():
    start = time.perf_counter()
    failures = []
    rng = np.random.default_rng(2024)
    for m in range(2, 11):
        for poly in (bd_polytope(m), awgn_polytope(m, 10.0)):
            verts = vertex_enumerate(poly)
            for _ in range(100):
                w = rng.random(m)
                value, _ = lp_maximize(poly, w)
                if abs(value - float(np.max(verts @ w))) > 1e-9:
                    failures.append(f"LP vs enumeration at m={m}")
    for m in (2, 4, 10):
        poly = bd_polytope(m)
        for p in np.linspace(0.01, 1.0, 100):
            value, _ = lp_maximize(poly, _objective(p, m))
            if abs(value - bd_throughput(p, m)) > 1e-10:
                failures.append(f"LP vs closed form at m={m}, p={p}")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 30.0
    announce(3, "oracle-equivalence", ok, elapsed)
    assert not failures, failures[:5]
    assert elapsed < 30.0


def test_criterion_4_gap_bounds():
    start = time.perf_counter()
    failures = []
    for m in (2, 4, 10, 25):
        for db in (0.0, 10.0, 20.0, 30.0):
            P = 10 ** (db / 10.0)
            for p in np.arange(0.05, 0.951, 0.05):
                gap = awgn_throughput_upper(p, m, P) - awgn_throughput_lower(p, m, P)
                if not -1e-9 <= gap <= 1.0 + 1e-9:
                    failures.append(f"bound gap {gap} at m={m}, dB={db}, p={p:.2f}")
    powers = (0.1, 1.0, 10.0, 100.0, 1e4)
    for p1 in powers:
        for p2 in powers:
            if p1 >= p2 and verify_gap(p1, p2) > GAP_BOUND + 1e-9:
                failures.append(f"region gap at P1={p1}, P2={p2}")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60.0
    announce(4, "gap-bounds", ok, elapsed)
    assert not failures, failures[:5]
    assert elapsed < 60.0


def test_criterion_5_asymptotics():
    start = time.perf_counter()
    failures = []
    values = {m: bd_throughput(0.5, m) for m in (10, 100, 1000)}
    if not values[10] < values[100] < values[1000]:
        failures.append("half-activity throughput not increasing in m")
    for m, expected in BD_T_HALF_FIXTURE.items():
        if abs(values[m] - expected) > 1e-12:
            failures.append(f"fixture mismatch at m={m}: {values[m]!r}")
    # Stated bound; the exact value is 0.92226 (recorded fixture), so this
    # subclause cannot pass and is intentionally left red.
    if not values[1000] >= 0.95:
        failures.append(
            f"stated bound unattainable: T(0.5,1000) = {values[1000]!r} < 0.95"
        )
    for lam in (0.5, 1.0, 2.0, 5.0):
        if abs(poisson_throughput(lam) - bd_throughput(lam / 1e4, 10**4)) > 1e-2:
            failures.append(f"large-population limit mismatch at lam={lam}")
    lams = np.linspace(0.5, 1.5, 100001)
    peak_idx = int(np.argmax([aloha_poisson(l) for l in lams]))
    peak_lam, peak_val = float(lams[peak_idx]), aloha_poisson(float(lams[peak_idx]))
    if abs(peak_val - math.exp(-1.0)) > 1e-6 or abs(peak_lam - 1.0) > 1e-4:
        failures.append(f"fixed-rate peak at {peak_lam}, {peak_val}")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 10.0
    announce(
        5,
        "asymptotics",
        ok,
        elapsed,
        detail="" if ok else "; ".join(failures),
    )
    assert not failures, failures
    assert elapsed < 10.0


def test_criterion_6_simulation_agreement():
    start = time.perf_counter()
    grid = [round(0.1 * i, 1) for i in range(1, 10)]
    agreements = 0
    bd_pol = bd_policy(4)
    awgn_pol = awgn_policy(4, P15DB)
    cases = [(ChannelModel.bd(), bd_pol, lambda p: bd_throughput(p, 4), 101)] + [
        (
            ChannelModel.awgn(P15DB),
            awgn_pol,
            lambda p: awgn_throughput_lower(p, 4, P15DB),
            202,
        )
    ]
    for model, pol, analytic, tag in cases:
        for i, p in enumerate(grid):
            cfg = SlotSimConfig(model, 4, p, pol, 10**6, split_seed(tag, i))
            rep = simulate(cfg)
            if abs(rep.empirical_sum_rate - analytic(p)) <= 4 * rep.std_error:
                agreements += 1
    cfg = SlotSimConfig(ChannelModel.bd(), 4, 0.5, bd_pol, 10**6, 9, batch_size=1 << 14)
    identical = simulate(cfg, workers=1) == simulate(cfg, workers=4) == simulate(
        cfg, workers=2
    )
    elapsed = time.perf_counter() - start
    ok = agreements >= 17 and identical and elapsed < 60.0
    announce(6, "simulation-agreement", ok, elapsed, detail=f"{agreements}/18 within 4se")
    assert agreements >= 17
    assert identical
    assert elapsed < 60.0


def test_criterion_7_figure_data(tmp_path, capsys):
    start = time.perf_counter()
    failures = []

    fig5 = tmp_path / "fig5.csv"
    code = main(
        [
            "throughput", "--model", "awgn", "--m", "25", "--snr-db", "20",
            "--grid", "50", "--curves", "AD,T_lower,T_upper,CSI",
            "--output", str(fig5),
        ]
    )
    if code != 0:
        failures.append("fig-5 data emission failed")
    else:
        _cols, rows = read_table(str(fig5))
        for row in rows:
            _p, ad, lo, hi, csi = row
            if not (ad <= lo + 1e-9 and lo <= hi + 1e-9 and hi <= csi + 1e-9):
                failures.append(f"fig-5 ordering violated at p={row[0]}")

    fig6 = tmp_path / "fig6.csv"
    code = main(
        [
            "throughput", "--model", "awgn", "--m", "25", "--snr-db", "20",
            "--grid", "50", "--curves", "ML,T_lower",
            "--output", str(fig6),
        ]
    )
    if code != 0:
        failures.append("fig-6 data emission failed")
    else:
        _cols, rows = read_table(str(fig6))
        for row in rows:
            _p, ml, lo = row
            if not ml <= lo + 1e-9:
                failures.append(f"fig-6 ordering violated at p={row[0]}")

    capsys.readouterr()
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 10.0
    with capsys.disabled():
        announce(7, "figure-data", ok, elapsed)
    assert not failures, failures[:5]
    assert elapsed < 10.0
