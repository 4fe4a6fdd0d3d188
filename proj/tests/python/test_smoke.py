import math

import pytest

import mcdfp


def test_oracle_on_three_robots():
    costs = [[1.0, 2.0, 3.0], [2.0, 1.0, 3.0], [3.0, 2.0, 1.0]]
    ne = mcdfp.enumerate_pure_ne(costs)
    assert len(ne) == 6
    assert all(sorted(p) == [0, 1, 2] for p in ne)
    assert mcdfp.is_pure_ne([2, 0, 1], costs)
    assert not mcdfp.is_pure_ne([0, 0, 1], costs)
    profile, cost = mcdfp.optimal_assignment(costs)
    assert profile == [0, 1, 2] and cost == pytest.approx(3.0)


def test_capacity_limit():
    with pytest.raises(mcdfp.CapacityError):
        mcdfp.enumerate_pure_ne([[1.0] * 9 for _ in range(9)])


def test_expected_utility_product_form():
    ones = [[1.0] * 3 for _ in range(3)]
    est = {1: [0.5, 0.5, 0.0], 2: [0.5, 0.0, 0.5]}
    assert mcdfp.expected_utility(0, 0, est, ones) == pytest.approx(0.75)


def test_channel_and_mobility():
    rates = mcdfp.allocate_rates({1: 2.0, 2: 1.0, 3: 1.0})
    assert rates == pytest.approx({1: 0.5, 2: 0.25, 3: 0.25})
    assert mcdfp.link_success_prob(1.0, (0, 0), (2, 0)) == pytest.approx(math.exp(-2.6))
    assert mcdfp.select_direction((0, 0), [((1, 1), 1.0)]) == pytest.approx((0.5, 0.5))
    with pytest.raises(mcdfp.UsageError):
        mcdfp.allocate_rates({0: -1.0})


def test_presets_and_config():
    s1 = mcdfp.preset("scenario1")
    assert s1["robots"] == [[0.0, 0.0]] * 5
    assert s1["mobility"]["alpha"] == 0.1
    assert mcdfp.config(preset="scenario2")["mobility"]["alpha"] == 0.05
    assert mcdfp.cost_matrix(s1["robots"], s1["targets"])[0] == pytest.approx([1, 2, 2, 2, 2])
    with pytest.raises(mcdfp.UsageError):
        mcdfp.config(speed=3)


def test_simulation_runs():
    cfg = mcdfp.config(preset="scenario1", variant="dfp", horizon=30, replications=3, seed=7)
    run = mcdfp.run_replication(cfg, 0)
    assert len(run["frames"]) == 30
    assert run["total_attempts"] == 20 * 30
    assert all(f["attempts"] == 20 for f in run["frames"])

    batch = mcdfp.run_batch(cfg, threads=2)
    assert len(batch["runs"]) == 3
    assert batch["summary"]["total_attempts"] == 3 * 20 * 30
    assert batch["runs"][0]["frames"][-1] == run["frames"][-1]
    assert batch["summary"]["optimal_assignment_cost"] == pytest.approx(9.0)
