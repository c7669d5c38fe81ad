import numpy as np

from mcdecomp.driver import (
    BenchmarkConfig,
    VariantSpec,
    aggregate,
    entangling_totals,
    mixer_histogram,
    run_benchmark,
)
from mcdecomp.graphs import random_regular
from mcdecomp.metrics import exact_count_zeroed
from mcdecomp.optimize import maximize


def test_maximize_quadratic():
    res = maximize(lambda v: -((v[0] - 2.0) ** 2), np.array([0.0]))
    assert abs(res.x[0] - 2.0) < 1e-3


def test_maximize_constant_terminates_quickly():
    res = maximize(lambda v: 1.5, np.zeros(3), tol=1e-4)
    assert res.value == 1.5
    assert res.evals <= 3 + 2


def test_maximize_budget_flag():
    rng = np.random.default_rng(0)
    res = maximize(lambda v: float(np.sum(np.sin(v))), rng.uniform(0, 1, 4), max_evals=10)
    assert res.evals <= 15
    assert not res.converged


def test_mixer_histogram_3_regular():
    g = random_regular(20, 3, seed=1)
    assert mixer_histogram(g, 1) == {3: 20}
    assert mixer_histogram(g, 10) == {3: 200}


def test_entangling_totals_cross_check():
    g = random_regular(20, 3, seed=2)
    hist = mixer_histogram(g, 1)
    totals = entangling_totals(hist)
    assert totals["s2_3/n"] == 20 * exact_count_zeroed(3, "s2_3", "n")
    assert totals["s2_2/one"] == 20 * exact_count_zeroed(3, "s2_2", "one")


def _tiny_config(**over):
    base = dict(
        ensemble="erdos_renyi",
        nodes=6,
        edge_prob=0.5,
        graph_count=3,
        variants=[VariantSpec("ma", 1), VariantSpec("dqva", 1, 3)],
        repetitions=2,
        seed=5,
        mixer_rounds=2,
        max_evals=400,
    )
    base.update(over)
    return BenchmarkConfig(**base)


def test_benchmark_deterministic():
    a = [r.to_dict() for r in run_benchmark(_tiny_config())]
    b = [r.to_dict() for r in run_benchmark(_tiny_config())]
    assert a == b
    c = [r.to_dict() for r in run_benchmark(_tiny_config(seed=6))]
    assert a != c


def test_benchmark_parallel_matches_serial():
    serial = [r.to_dict() for r in run_benchmark(_tiny_config())]
    parallel = [r.to_dict() for r in run_benchmark(_tiny_config(), jobs=4)]
    assert serial == parallel


def test_benchmark_record_invariants():
    records = list(run_benchmark(_tiny_config()))
    assert records
    for r in records:
        assert 0 < r.ratio <= 1.0
        assert r.best_size <= r.optimum
        assert (r.ratio == 1.0) == (r.best_size == r.optimum)
        assert r.rounds >= 1
        assert r.entangling == entangling_totals(r.mixer_histogram)


def test_empty_edge_ensemble_all_optimal():
    cfg = _tiny_config(ensemble="erdos_renyi", nodes=6, edge_prob=None, density=0.0,
                       variants=[VariantSpec("ma", 1)])
    for r in run_benchmark(cfg):
        assert r.ratio == 1.0


def test_aggregate_shape():
    records = list(run_benchmark(_tiny_config()))
    agg = aggregate(records)
    for variant, stats in agg.items():
        assert 0 < stats["mean_ratio"] <= 1.0
        assert stats["min_ratio"] <= stats["mean_ratio"] <= stats["max_ratio"]
        assert stats["trials"] == 3


def test_config_json_round_trip():
    cfg = _tiny_config()
    again = BenchmarkConfig.from_json(cfg.to_json())
    assert again == cfg
