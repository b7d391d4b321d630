import json
import os
from pathlib import Path

import pytest

import stable_market as sm

GOLDEN = Path(os.environ.get("STABLE_MARKET_GOLDEN_DIR", Path(__file__).resolve().parent.parent / "golden"))


def load(name):
    return (GOLDEN / name).read_text()


def test_solve_one_by_one_matches_golden():
    outcome, trace = sm.solve(load("one_by_one.instance.json"))
    assert outcome == json.loads(load("one_by_one.outcome.json"))
    assert outcome["matching"] == [{"seller": "1", "buyer": "1", "price": 7}]
    assert trace[-1]["K"] == []


def test_competition_is_stable_and_audits_clean():
    instance = load("competition.instance.json")
    outcome, trace = sm.solve(instance)
    assert outcome["r"]["1"] == "8"
    assert sm.verify(instance, outcome)["stable"]
    assert sm.audit(instance, trace)["clean"]


def test_planted_blocking_pair():
    report = sm.verify(load("one_by_one.instance.json"), {"matching": [], "q": {"1": "0"}, "r": {"1": "0"}, "iterations": 0})
    assert not report["stable"]
    assert [w["c"] for w in report["witnesses"]] == [4, 5, 6]


def test_generated_pipeline():
    for seed in range(20):
        instance = sm.generate(seed=seed, num_sellers=3, num_buyers=3)
        assert sm.validate(instance)["valid"]
        outcome, _ = sm.solve(instance)
        assert sm.verify(instance, outcome)["stable"]
    assert sm.generate(seed=1) == sm.generate(seed=1)
    assert sm.generate(seed=1) != sm.generate(seed=2)


def test_oracle_contains_solver_outcome():
    instance = load("one_by_one.instance.json")
    outcome, _ = sm.solve(instance)
    found = sm.oracle(instance)
    assert found["count"] == 5
    assert any(o["matching"] == outcome["matching"] for o in found["outcomes"])


def test_threshold_queries():
    instance = load("one_by_one.instance.json")
    assert sm.max_acceptable_price(instance, "1", "1") == 7
    assert sm.min_decrement(instance, "1", "1", 7, "3") == 3
    assert sm.min_decrement(instance, "1", "1", 0, "8") is None


def test_errors():
    with pytest.raises(sm.ParseError):
        sm.solve("{not json")
    with pytest.raises(sm.ConfigError):
        sm.generate(price_lo=5, price_hi=4)
    with pytest.raises(sm.GuardError):
        sm.oracle(sm.generate(seed=3, num_sellers=3, num_buyers=3))
