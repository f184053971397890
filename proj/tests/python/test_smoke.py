import json

import numpy as np
import pytest

import cbdp


def test_matrices_and_ranks():
    A = cbdp.matrix("2x1", "A")
    assert len(A) == 9 and len(A[0]) == 14
    assert cbdp.rank("2x1", "A") == 8
    assert cbdp.rank("2x1", "S") == 6
    assert cbdp.predicted_ranks("2x2") == (12, 12)
    assert cbdp.edge_names("1x1")[:2] == ["R00", "R01"]


def test_bases():
    assert cbdp.profile("2x1", "graver")["total"] == 29
    assert cbdp.profile("2x1", "markov")["total"] == 12
    assert cbdp.profile("2x2", "markov-saturation")["by_degree"] == {2: 24, 4: 2}
    assert len(cbdp.basis("1x1", "graver")) == 6
    assert cbdp.is_unimodular("2x2")


def test_parametrization_round_trip():
    params = cbdp.random_parametrization("2x2", 7)
    kernel = cbdp.kernel_of(params)
    assert cbdp.check_kernel(kernel)["commuting"]
    back = json.loads(cbdp.parametrize(kernel))
    orig = json.loads(params)
    for key, value in orig["W"].items():
        assert back["W"][key] == pytest.approx(value, rel=1e-12)


def test_spectral_and_simulation():
    params = cbdp.normalize(cbdp.random_parametrization("2x1", 3), 0.2)
    P = cbdp.tstep(params, 4, 0.2)
    assert P.shape == (6, 6)
    assert np.allclose(P.sum(axis=1), 1.0, atol=1e-12)
    P1 = cbdp.tstep(params, 1, 0.2)
    assert np.allclose(np.linalg.matrix_power(P1, 4), P, atol=1e-12)
    freq = np.array(cbdp.simulate(params, 0, 4, 0.2, 200000, 11))
    assert np.max(np.abs(freq - P[0])) < 0.01


def test_ideal_and_errors():
    gens = cbdp.ideal_generators("1x1")
    assert len(gens) == 4
    assert cbdp.ideal_member("1x1", "R00*U10 - R01*U00")
    assert not cbdp.ideal_member("1x1", "R00*L10 - R01*L11")
    assert cbdp.ideal_member("1x1", "R00*U00", gens=["R00"])
    assert cbdp.verify_unit_square_decomposition()
    with pytest.raises(ValueError):
        cbdp.rank("2y1")
    with pytest.raises(ValueError):
        cbdp.ideal_member("1x1", "Q00 - R00")


def test_verify_quick():
    report = cbdp.verify_paper("quick")
    assert report["passed"]
    assert all(c["outcome"] == "pass" for c in report["checks"])
