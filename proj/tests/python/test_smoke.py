import json

import pytest

import dauction as d


def test_mv_beats_me_on_small_book():
    book = d.OrderBook([6, 10], [5, 9])
    assert d.me_quantity(book) == 1
    assert d.mv_get_q(book) == 2
    result = d.clear(book, "mv")
    assert result["matching"].prices() == [(6.0, 5.0), (10.0, 9.0)]
    assert d.is_fair(result["matching"], book) and d.is_orderly(result["matching"])
    assert d.reported_profit(result["matching"]) == pytest.approx(2.0)
    assert [t.price for t in d.price_matching(result["matching"])] == [5.5, 9.5]


def test_me_uniform_price():
    book = d.OrderBook([6, 10], [5, 9])
    result = d.clear(book, "me")
    trades = d.price_matching(result["matching"], "uniform", result["price_interval"])
    assert [t.price for t in trades] == [7.5]


def test_theta_endpoints():
    book = d.OrderBook([6, 10], [5, 9])
    assert d.clear(book, "mtheta", -1.0)["q_target"] == 0
    assert d.clear(book, "mtheta", 0.0)["q_target"] == 1
    assert d.clear(book, "mtheta", 1.0)["q_target"] == 2


def test_errors_map_to_python_exceptions():
    with pytest.raises(d.UniformInapplicable):
        m = d.clear(d.OrderBook([6, 10], [5, 9]), "mv")["matching"]
        d.price_matching(m, "uniform", (6.0, 9.0))
    with pytest.raises(ValueError):
        d.clear(d.OrderBook([1], [2]), "bogus")


def test_truthful_clearing_house_is_efficient():
    rows = d.simulate("ch", "tt", traders=20, rounds=1, days=2, seed=7)
    assert len(rows) == 2
    assert all(r["ea"] == pytest.approx(1.0) for r in rows)


def test_simulate_with_given_values():
    rows = d.simulate("cda", "tt", buyers=[100.0], sellers=[60.0])
    assert rows[0]["volume"] == 1
    assert rows[0]["trades"][0].price == pytest.approx(80.0)


def test_small_experiment():
    cfg = json.dumps({"repetitions": 3, "traders": 6})
    out = d.experiment("baseline", cfg, jobs=1)
    assert out["rows"]
    assert all(len(c) == 3 for c in out["checks"])
