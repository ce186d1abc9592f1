"""Smoke tests for the python bindings."""

import numpy as np
import pytest

import homcone as hc


@pytest.fixture(scope="module")
def vinberg():
    return hc.preset("vinberg")


def test_presets_validate(vinberg):
    for name in ("vinberg", "sym(3)", "dual_vinberg"):
        s = hc.preset(name)
        assert hc.validate(s)["pass"]
    assert vinberg.rank == 3
    assert vinberg.dim_z == 5


def test_projection_is_idempotent(vinberg):
    rng = np.random.default_rng(1)
    x = rng.normal(size=(3, 3))
    x = 0.5 * (x + x.T)
    p = vinberg.project(x)
    assert p[0, 1] == 0.0
    assert np.allclose(vinberg.project(p), p)
    assert np.allclose(vinberg.from_coords(vinberg.coords(x)), p)


def test_power_functions_normalize(vinberg):
    identity = np.eye(3)
    ones = np.ones(3)
    assert hc.power_cone(vinberg, ones, identity) == pytest.approx(1.0)
    assert hc.power_dual(vinberg, ones, identity) == pytest.approx(1.0)


def test_full_cone_power_is_determinant():
    s = hc.preset("sym(3)")
    x = np.eye(3) + 0.2 * np.ones((3, 3))
    assert hc.power_cone(s, np.ones(3), x) == pytest.approx(np.linalg.det(x))


def test_completion_round_trip(vinberg):
    m = np.array([[2.0, 0.0, -1.0], [0.0, 2.0, -1.0], [-1.0, -1.0, 1.0]])
    assert hc.in_dual_cone(vinberg, m)
    y = hc.lauritzen(vinberg, m)
    assert np.allclose(vinberg.project(np.linalg.inv(y)), m)
    hat = hc.hat_completion(vinberg, m)
    assert hat[0, 1] == pytest.approx(m[2, 0] * m[2, 1] / m[2, 2])


def test_mean_inverse_mean_round_trip(vinberg):
    shape = np.array([1.0, 1.5, 2.0])
    theta = np.array([[1.5, 0.0, 0.3], [0.0, 1.2, -0.2], [0.3, -0.2, 1.0]])
    m = hc.mean_Q(vinberg, shape, theta)
    assert np.allclose(hc.inverse_mean_Q(vinberg, shape, m), theta, atol=1e-9)


def test_variance_classical_case():
    s = hc.preset("sym(3)")
    p = 2.0
    m = np.eye(3) + 0.1
    v = hc.variance_Q(s, p * np.ones(3), m)
    direction = np.diag([1.0, 2.0, 3.0])
    applied = s.from_coords(v @ s.coords(direction))
    assert np.allclose(applied, m @ direction @ m / p)


def test_variance_is_spd(vinberg):
    m = np.array([[2.0, 0.0, -1.0], [0.0, 2.0, -1.0], [-1.0, -1.0, 1.0]])
    v = hc.variance_Q(vinberg, np.array([1.0, 1.0, 1.5]), m)
    assert np.allclose(v, v.T)
    assert np.linalg.eigvalsh(v).min() > 0


def test_gindikin(vinberg):
    g = hc.gindikin(vinberg, "Q", np.array([0.5, 1.0, 1.0]))
    assert g["in_set"]
    assert g["epsilon"] == [0, 1, 1]
    assert not hc.gindikin(vinberg, "Q", np.array([0.3, 1.0, 1.0]))["in_set"]


def test_graph_gate():
    s, order = hc.structure_from_graph(4, [(0, 1), (0, 2), (0, 3)])
    assert hc.validate(s)["pass"]
    assert order[-1] == 0
    with pytest.raises(hc.NotHomogeneousError):
        hc.structure_from_graph(4, [(0, 1), (1, 2), (2, 3)])


def test_dualize(vinberg):
    real = hc.dualize(vinberg)
    assert real.target.sizes == [3, 1, 1]
    assert hc.validate(real.target)["pass"]
    x = np.eye(5)
    assert hc.check_strange(real, np.array([1.0, 1.0, 1.0]), x) < 1e-12
    theta = np.array([[1.5, 0.0, 0.3], [0.0, 1.2, -0.2], [0.3, -0.2, 1.0]])
    shape = np.array([1.0, 1.0, 2.5])
    via = hc.variance_P_via_dual(real, shape, theta)
    direct = hc.variance_P(vinberg, shape, theta)
    assert np.allclose(via, direct, atol=1e-8)


def test_sampling_moments(vinberg):
    theta = np.eye(3)
    coords = hc.sample(vinberg, theta, 2, 20000, seed=5)
    assert coords.shape == (20000, 5)
    mom = hc.empirical_moments(vinberg, coords)
    # mean of the degree-2 family at the identity is the identity
    diff = vinberg.coords(mom["mean"]) - vinberg.coords(np.eye(3))
    assert np.all(np.abs(diff) <= 4.0 * mom["mean_se"])
    # determinism
    again = hc.sample(vinberg, theta, 2, 20000, seed=5)
    assert np.array_equal(coords, again)


def test_fixtures():
    reports = hc.run_fixtures()
    assert len(reports) == 3
    assert all(rep["pass"] for rep in reports)


def test_json_round_trip(vinberg):
    text = vinberg.to_json()
    back = hc.structure_from_json(text)
    assert back == vinberg
