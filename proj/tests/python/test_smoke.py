import math

import pytest

import measlab


def test_lebesgue_integral_of_identity():
    space = measlab.Space.box([0.0], [1.0])
    leb = measlab.FiniteMeasure.lebesgue(space)
    f = measlab.function({"type": "affine", "coef": [1], "offset": 0})
    value, error = measlab.integrate(f, leb)
    assert abs(value - 0.5) <= max(error, 1e-12)
    half = measlab.BorelSet.half_open(space, [0.0], [0.5])
    assert leb(half) == pytest.approx(0.5)
    value, _ = measlab.integrate(f, leb, half)
    assert value == pytest.approx(0.125)


def test_dirac_mass():
    space = measlab.Space.box([0.0], [1.0])
    d = measlab.FiniteMeasure.dirac(space, [0.25], 2.0)
    assert d.total_mass == 2.0
    assert d(measlab.BorelSet.points(space, [[0.25]])) == 2.0


def test_trend():
    decay = measlab.classify_trend([1.0 / n for n in range(1, 65)])
    assert decay["status"] == measlab.Status.SUPPORTED
    flat = measlab.classify_trend([0.5] * 64)
    assert flat["status"] == measlab.Status.REFUTED
    assert math.isclose(flat["final_mean"], 0.5)


def test_catalog_runs_and_meets_expectations():
    names = [e["name"] for e in measlab.catalog()]
    assert "bounded-family" in names
    rows = measlab.run_catalog("bounded-family")
    assert rows
    for r in rows:
        assert r["status"] in {"SUPPORTED", "REFUTED", "INCONCLUSIVE"}
        assert r.get("expectation_met", True)


def test_inline_scenario():
    scenario = measlab.describe("dirac-escape")
    scenario["n_max"] = 32
    rows = measlab.run(scenario)
    assert {r["n_max"] for r in rows} == {32}


def test_errors():
    with pytest.raises(measlab.NotFound):
        measlab.describe("no-such-scenario")
    with pytest.raises(measlab.ParseError):
        measlab.run("{ not json")
    with pytest.raises(measlab.MeaslabError):
        measlab.Space.from_json('{"kind": "box", "lower": [1], "upper": [0]}')
