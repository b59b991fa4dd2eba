import json
import math
import random

import pytest

import tastecomp as tc


@pytest.fixture(scope="module")
def corpus():
    return tc.synthetic_corpus()


@pytest.fixture(scope="module")
def model(corpus):
    return tc.train(corpus)


def two_phase(t1, t2, v1, d):
    # classical two-phase bracket, written out independently
    v2 = 1.0 - v1
    lower = t1 + v2 / (1.0 / (t2 - t1) + v1 / (d * t1))
    upper = t2 + v1 / (1.0 / (t1 - t2) + v2 / (d * t2))
    return lower, upper


def test_worked_bounds():
    assert tc.voigt([10, 30], [0.5, 0.5]) == pytest.approx(20.0)
    assert tc.reuss([10, 30], [0.5, 0.5]) == pytest.approx(15.0)
    lo, hi = tc.hs_bounds([10, 30], [0.5, 0.5])
    assert lo == pytest.approx(17.5, abs=1e-9)
    assert hi == pytest.approx(18.75, abs=1e-9)


def test_two_phase_oracle():
    rng = random.Random(4)
    for _ in range(50):
        t1, t2 = sorted(rng.uniform(1, 100) for _ in range(2))
        v1 = rng.uniform(0.05, 0.95)
        lo, hi = tc.hs_bounds([t1, t2], [v1, 1 - v1])
        rlo, rhi = two_phase(t1, t2, v1, 3.0)
        assert lo == pytest.approx(rlo, abs=1e-9)
        assert hi == pytest.approx(rhi, abs=1e-9)


def test_corpus_basics(corpus):
    assert len(corpus) == 70
    assert "RP68" in corpus.recipe_ids
    again = tc.parse_corpus(corpus.ingredients_csv(), corpus.recipes_csv())
    assert again.fingerprint() == corpus.fingerprint()


def test_user_errors_are_value_errors():
    with pytest.raises(ValueError):
        tc.parse_corpus("ingredient_id\n", "recipe_id\n")
    with pytest.raises(ValueError):
        tc.repair([0.5, 0.5], [(0.6, 1.0), (0.6, 1.0)])


def test_repair_feasible():
    w = tc.repair([2.0, -1.0, 0.4], [(0.0, 0.5), (0.1, 1.0), (0.0, 1.0)])
    assert math.isclose(sum(w), 1.0, abs_tol=1e-9)
    assert w[0] <= 0.5 and w[1] >= 0.1


def test_predict(model):
    out = tc.predict(model, {"tomato-paste": 0.6, "sugar": 0.3, "salt": 0.1})
    assert out["model"] == "hybrid"
    for dim in ("sweet", "sour", "bitter", "umami", "salt"):
        b = out["bounds"][dim]
        assert b["reuss"] <= b["hs_lower"] + 1e-9 <= b["hs_upper"] + 2e-9 <= b["voigt"] + 3e-9
        assert math.isfinite(out["hybrid_prediction"][dim])


def test_design(model):
    res = tc.design(model, {"recipe_id": "RP68", "target_delta": {"umami": 3}, "max_iterations": 10,
                            "bounds": {"sugar": [0, 0.05]}})
    assert math.isclose(res["fraction_sum"], 1.0, abs_tol=1e-9)
    sugar = [i for i in res["ingredients"] if i["ingredient_id"] == "sugar"][0]
    assert sugar["optimized"] <= 0.05


def test_bundle_json(model):
    bundle = json.loads(model.bundle_json())
    assert bundle["kind"] == "hybrid"
    assert len(bundle["feature_names"]) == 10


def test_planted_recovery():
    m = tc.train(tc.planted_salt_corpus())
    bundle = json.loads(m.bundle_json())
    k = bundle["feature_names"].index("phi_salt")
    for dim in bundle["dimensions"].values():
        assert dim["raw_coefficients"][k] == pytest.approx(5.0, abs=0.2)


def test_evaluate_small():
    rep = tc.evaluate(tc.synthetic_corpus(), models=["hs", "rv"])
    assert rep["format"] == "tastecomp-report/1"
    assert {r["model"] for r in rep["metrics"]} == {"hs", "rv"}
