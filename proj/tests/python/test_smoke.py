import math

import numpy as np
import pytest

import survsplit


@pytest.fixture
def d1():
    X = np.array([[0.2], [0.8], [0.5], [0.1], [0.9],
                  [0.4], [0.7], [0.3], [0.6], [0.05]])
    times = np.array([3.0, 1.0, 2.0, 4.0, 1.0, 3.0, 2.0, 4.0, 1.0, 2.0])
    events = np.array([1, 1, 0, 1, 0, 1, 1, 0, 0, 1], dtype=np.uint8)
    return survsplit.SurvivalDataset(X, times, events)


def test_kaplan_meier_fixture():
    times = [1.0, 2.0, 2.0, 3.0, 4.0]
    events = [1, 1, 0, 1, 1]
    km = survsplit.kaplan_meier(times, events, [1.0, 2.0, 3.0, 4.0])
    assert np.allclose(km.values, [0.8, 0.6, 0.3, 0.0], atol=1e-12)
    na = survsplit.nelson_aalen(times, events, [1.0, 2.0, 3.0, 4.0])
    assert np.allclose(na.values, [0.2, 0.45, 0.95, 1.95], atol=1e-12)


def test_train_predict_roundtrip(tmp_path):
    rng = np.random.default_rng(11)
    n, p = 250, 4
    X = rng.normal(size=(n, p))
    t = rng.exponential(scale=np.exp(-X[:, 0]))
    c = rng.exponential(scale=2.0, size=n)
    times = np.minimum(t, c)
    events = (t <= c).astype(np.uint8)
    data = survsplit.SurvivalDataset(X, times, events)

    model = survsplit.train(data, num_trees=30, seed=3, min_node_size=10)
    curve = model.predict_curve(X[0])
    vals = np.asarray(curve.values)
    assert vals.shape[0] == len(curve.grid)
    assert np.all(vals >= 0.0) and np.all(vals <= 1.0)
    assert np.all(np.diff(vals) <= 1e-15)

    s = model.predict_at(X[0], float(np.median(times)))
    assert 0.0 <= s <= 1.0

    path = tmp_path / "model.json"
    model.save(str(path))
    back = survsplit.load_model(str(path))
    assert back.to_json() == model.to_json()
    assert np.array_equal(back.predict_curve(X[0]).values, vals)


def test_training_is_deterministic(d1):
    rng = np.random.default_rng(5)
    X = rng.normal(size=(120, 3))
    t = rng.exponential(size=120)
    ev = np.ones(120, dtype=np.uint8)
    data = survsplit.SurvivalDataset(X, t, ev)
    a = survsplit.train(data, num_trees=10, seed=1)
    b = survsplit.train(data, num_trees=10, seed=1)
    c = survsplit.train(data, num_trees=10, seed=2)
    assert a.to_json() == b.to_json()
    assert a.to_json() != c.to_json()


def test_split_rules_both_run(d1):
    for rule in ("exact", "fast"):
        model = survsplit.train(d1, num_trees=5, seed=9, min_node_size=2,
                                split_rule=rule)
        assert len(model.global_grid) == 4


def test_oob_and_metrics():
    data, truth = survsplit.gen_ph(n=400, p=4, seed=21)
    model = survsplit.train(data, num_trees=50, seed=22)
    risks = np.asarray(model.oob_hazard_risk(data))
    finite = np.isfinite(risks)
    assert finite.mean() > 0.95
    times = np.asarray(data.times)[finite]
    events = np.asarray(data.events, dtype=np.uint8)[finite]
    err = survsplit.concordance_error(risks[finite].tolist(), times.tolist(),
                                      events.tolist())
    assert 0.0 <= err <= 1.0
    assert err < 0.5  # better than random on a PH signal

    surv = np.asarray(model.oob_survival_at(data, 5.0))
    truth = np.asarray(truth)
    rmse = survsplit.rmse_at_horizon(truth[finite].tolist(),
                                     surv[finite].tolist())
    baseline = survsplit.rmse_at_horizon(
        truth[finite].tolist(),
        [float(truth[finite].mean())] * int(finite.sum()))
    assert rmse < baseline


def test_input_validation():
    with pytest.raises(Exception):
        survsplit.SurvivalDataset(np.zeros((2, 1)), np.array([1.0, -1.0]),
                                  np.array([1, 0], dtype=np.uint8))
    with pytest.raises(Exception):
        survsplit.SurvivalDataset(np.array([[np.nan]]), np.array([1.0]),
                                  np.array([1], dtype=np.uint8))


def test_gen_poisson_bench():
    data = survsplit.gen_poisson_bench(n=2000, p=2, target_M=25, seed=2)
    event_times = {data.times[i] for i in range(2000) if data.events[i]}
    assert 0.85 * 25 <= len(event_times) <= 1.15 * 25
