import json
import math

import numpy as np
import pytest

import adlab


def test_or3_degree():
    r = adlab.approx_degree(adlab.build_named("OR", 3))
    assert r["degree"] == 2
    assert r["achieved_error"] <= 1 / 3 + 1e-9
    assert json.loads(r["witness"])["m"] == 3


def test_pror_needs_boundedness():
    f = adlab.build_named("PrOR", 5)
    assert adlab.approx_degree(f, bounded=False)["degree"] == 1
    assert adlab.approx_degree(f)["degree"] > 1


def test_truth_table_round_trip():
    f = adlab.PartialFn(2, [0, 0, 0, 1], "and2")
    assert f.arity == 2
    assert adlab.approx_degree(f)["degree"] == 1


def test_sweep():
    rows = adlab.composition_sweep([{"outer": "OR_2", "inner": ["AND_2", "AND_2"]}])
    assert rows[0]["adeg_composed"] == 2
    assert rows[0]["ratio"] == pytest.approx(math.sqrt(2))


def test_witness():
    r = adlab.witness_report(3)
    assert r["max_constraint_dev"] <= 1e-6
    assert r["objective"] == pytest.approx(math.pi * math.sqrt(3), rel=1e-12)


def test_gamma2_of_j_and_identity():
    for k in (1, 4):
        assert adlab.gamma2_exact(np.ones((k, k)))["value"] == pytest.approx(1.0, abs=1e-5)
    r = adlab.gamma2_exact(np.eye(3))
    assert np.allclose(r["b"] @ r["c"], np.eye(3), atol=1e-6)


def test_approx_gamma2_disj():
    m = adlab.comm_matrix("DISJ", 1)
    assert m.tolist() == [[-1, -1], [-1, 1]]
    r = adlab.approx_gamma2(m)
    assert r["value"] == pytest.approx(0.4714, abs=1e-3)
    assert r["max_violation"] <= 1e-6


def test_kronecker_and_robustness():
    assert adlab.grid_size(2, 3) == 10
    assert adlab.kronecker_deviation(2, 3) == 0.0
    h = adlab.build_named("OR", 2)
    assert adlab.robustness_margin(h, 0.1, unit_box=True)["margin"] == pytest.approx(0.19, abs=1e-12)


def test_errors_map_to_python():
    with pytest.raises(adlab.InputError):
        adlab.build_named("FOO", 3)
    with pytest.raises(adlab.ResourceError):
        adlab.gamma2_exact(np.ones((65, 65)))
    assert issubclass(adlab.InputError, adlab.AdlabError)
