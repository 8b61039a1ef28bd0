"""Slot simulation: determinism, exact cases, statistical agreement."""

import numpy as np
import pytest

from racap import (
    ChannelModel,
    SlotSimConfig,
    awgn_policy,
    awgn_throughput_lower,
    baseline_aloha,
    bd_policy,
    bd_thresholds,
    bd_throughput,
    binom_pmf,
    simulate,
    simulate_aloha,
    split_seed,
    sweep,
)

P15DB = 10**1.5


def bd_config(m, p, rate, n_slots=50_000, seed=1234, **kw):
    return SlotSimConfig(ChannelModel.bd(), m, p, rate, n_slots, seed, **kw)


class TestExactCases:
    def test_always_decodable_pair(self):
        # both users always active at half rate: every slot pays exactly 1
        report = simulate(bd_config(2, 1.0, 0.5, n_slots=10_000))
        assert report.empirical_sum_rate == 1.0
        assert report.collision_fraction == 0.0
        assert report.std_error == 0.0

    def test_silent_channel(self):
        report = simulate(bd_config(6, 0.0, 1.0))
        assert report.empirical_sum_rate == 0.0
        assert report.collision_fraction == 0.0

    def test_guaranteed_collision(self):
        # all four users active at rate 1: nothing ever decodes
        report = simulate(bd_config(4, 1.0, 1.0, n_slots=5_000))
        assert report.empirical_sum_rate == 0.0
        assert report.collision_fraction == 1.0


class TestDeterminism:
    def test_identical_reruns(self):
        cfg = bd_config(4, 0.5, bd_policy(4), n_slots=100_000, seed=99)
        assert simulate(cfg) == simulate(cfg)

    def test_worker_count_invariance(self):
        cfg = bd_config(4, 0.37, bd_policy(4), n_slots=200_000, seed=7, batch_size=1 << 14)
        reports = {simulate(cfg, workers=w) for w in (1, 2, 3, 8)}
        assert len(reports) == 1

    def test_seed_sensitivity(self):
        a = simulate(bd_config(4, 0.5, 0.5, seed=1))
        b = simulate(bd_config(4, 0.5, 0.5, seed=2))
        assert a.empirical_sum_rate != b.empirical_sum_rate

    def test_split_seed_distinct_and_stable(self):
        seeds = [split_seed(2024, i) for i in range(200)]
        assert len(set(seeds)) == 200
        assert seeds[0] == split_seed(2024, 0)
        assert all(0 <= s < 2**64 for s in seeds)


class TestStatisticalAgreement:
    def test_bd_policy_matches_analytic_value(self):
        pol = bd_policy(4)
        for i, p in enumerate((0.2, 0.5, 0.8)):
            rep = simulate(
                bd_config(4, p, pol, n_slots=300_000, seed=split_seed(5, i))
            )
            assert abs(rep.empirical_sum_rate - bd_throughput(p, 4)) <= 4 * rep.std_error

    def test_awgn_policy_matches_analytic_value(self):
        pol = awgn_policy(4, P15DB)
        model = ChannelModel.awgn(P15DB)
        for i, p in enumerate((0.3, 0.7)):
            rep = simulate(
                SlotSimConfig(model, 4, p, pol, 300_000, split_seed(6, i))
            )
            ana = awgn_throughput_lower(p, 4, P15DB)
            assert abs(rep.empirical_sum_rate - ana) <= 4 * rep.std_error

    def test_aloha_matches_closed_form(self):
        rep = simulate_aloha(6, 0.2, 300_000, seed=42)
        expected = baseline_aloha(0.2, 6)
        assert abs(rep.empirical_sum_rate - expected) <= 4 * rep.std_error

    def test_policy_beats_fixed_rates(self):
        # the switching policy never loses to any single fixed rate (up to
        # Monte Carlo noise)
        pol = bd_policy(4)
        for i, p in enumerate((0.15, 0.35, 0.55, 0.75, 0.95)):
            best = simulate(
                bd_config(4, p, pol, n_slots=200_000, seed=split_seed(8, i))
            )
            for j, rate in enumerate((1.0, 0.5, 1.0 / 3.0, 0.25)):
                fixed = simulate(
                    bd_config(4, p, rate, n_slots=200_000, seed=split_seed(80 + j, i))
                )
                tol = 4 * (best.std_error + fixed.std_error)
                assert best.empirical_sum_rate >= fixed.empirical_sum_rate - tol

    def test_collision_fraction_single_user_regime(self):
        # rate 1 decodes only singleton slots: the collision fraction among
        # active slots is 1 - P(k=1 | k>=1)
        m, p = 5, 0.15
        assert p <= bd_thresholds(m).boundaries[1] + 0.05
        rep = simulate(bd_config(m, p, 1.0, n_slots=400_000, seed=21))
        p_active = 1.0 - (1.0 - p) ** m
        expected = 1.0 - binom_pmf(m, 1, p) / p_active
        n_active = rep.n_slots * p_active
        se = (expected * (1 - expected) / n_active) ** 0.5
        assert abs(rep.collision_fraction - expected) <= 4 * se + 1e-9


class TestSweep:
    def test_empty(self):
        assert sweep([]) == []

    def test_singleton_matches_simulate(self):
        cfg = bd_config(3, 0.4, 0.5, n_slots=20_000, seed=77)
        assert sweep([cfg]) == [simulate(cfg)]

    def test_order_independent(self):
        cfgs = [
            bd_config(3, p, 1.0, n_slots=20_000, seed=split_seed(1, i))
            for i, p in enumerate((0.2, 0.4, 0.6))
        ]
        forward = sweep(cfgs)
        backward = sweep(list(reversed(cfgs)))
        assert forward == list(reversed(backward))


class TestValidation:
    def test_bad_probability(self):
        with pytest.raises(ValueError):
            bd_config(2, 1.5, 1.0)

    def test_bad_rate(self):
        cfg = bd_config(2, 0.5, -1.0)
        with pytest.raises(ValueError):
            simulate(cfg)

    def test_bad_slots(self):
        with pytest.raises(ValueError):
            bd_config(2, 0.5, 1.0, n_slots=0)

    def test_bad_seed(self):
        with pytest.raises(ValueError):
            bd_config(2, 0.5, 1.0, seed=-1)


class TestDecodability:
    def test_awgn_boundary_rate_is_kept(self):
        # k users at exactly cap(k)/k must decode despite rounding
        model = ChannelModel.awgn(10.0)
        rate = model.cap(3) / 3
        cfg = SlotSimConfig(model, 3, 1.0, rate, 5_000, 3)
        rep = simulate(cfg)
        assert rep.empirical_sum_rate == pytest.approx(model.cap(3), rel=1e-12)
        assert rep.collision_fraction == 0.0

    def test_awgn_above_cap_collides(self):
        model = ChannelModel.awgn(10.0)
        rate = model.cap(3) / 3 * 1.001
        rep = simulate(SlotSimConfig(model, 3, 1.0, rate, 5_000, 3))
        assert rep.empirical_sum_rate == 0.0
