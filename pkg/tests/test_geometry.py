import math

import numpy as np
import pytest
from scipy.integrate import solve_ivp

import reebkit as rk
from reebkit.errors import PreconditionViolation
from reebkit.integrate import dopri45

E1 = np.array([1.0, 0.0, 0.0, 0.0])
E3 = np.array([0.0, 0.0, 1.0, 0.0])


def random_sphere_points(rng, n):
    pts = rng.normal(size=(n, 4))
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def tangent_at(rng, pt):
    v = rng.normal(size=4)
    v -= (v @ pt) * pt
    return v


# ---------------------------------------------------------------------------
# the contact form


def test_lambda0_closed_form_values():
    assert rk.lambda0_eval(E1, [0, 1, 0, 0]) == pytest.approx(0.5, abs=1e-15)
    assert rk.lambda0_eval(E3, [1, 0, 0, 0]) == pytest.approx(0.0, abs=1e-15)
    s = 1.0 / math.sqrt(2.0)
    assert rk.lambda0_eval([s, 0, s, 0], [0, s, 0, -s]) == pytest.approx(0.0, abs=1e-15)


def test_lambda0_rejects_non_tangent():
    with pytest.raises(PreconditionViolation):
        rk.lambda0_eval(E1, [1.0, 0.0, 0.0, 0.0])
    with pytest.raises(PreconditionViolation):
        rk.lambda0_eval([2.0, 0, 0, 0], [0, 1, 0, 0])


def test_lens_params_validation():
    rk.LensParams(5, 2)
    with pytest.raises(PreconditionViolation):
        rk.LensParams(4, 2)
    with pytest.raises(PreconditionViolation):
        rk.LensParams(3, 5)


# ---------------------------------------------------------------------------
# the Reeb field


def test_reeb_round_closed_form():
    sys_ = rk.ContactSystem("round")
    assert np.allclose(rk.reeb_vector(sys_, E1), [0, 2, 0, 0])


def test_reeb_solve_matches_closed_form():
    rng = np.random.default_rng(0)
    for sys_ in (
        rk.ContactSystem("round"),
        rk.ContactSystem("ellipsoid", a=1.0, b=math.sqrt(2.0)),
        rk.ContactSystem("ellipsoid", a=0.7, b=1.9),
    ):
        for pt in random_sphere_points(rng, 12):
            closed = rk.reeb_vector(sys_, pt)
            solved = rk.reeb_vector(sys_, pt, method="solve")
            assert np.linalg.norm(closed - solved) < 1e-9


def test_reeb_defining_equations_at_random_points():
    rng = np.random.default_rng(1)
    sys_ = rk.ContactSystem("ellipsoid", a=1.0, b=math.sqrt(2.0))
    for pt in random_sphere_points(rng, 100):
        R = rk.reeb_vector(sys_, pt)
        assert abs(rk.lambda_eval(sys_, pt, R) - 1.0) < 1e-10
        for _ in range(3):
            v = tangent_at(rng, pt)
            assert abs(rk.dlambda_eval(sys_, pt, R, v)) < 1e-8


def test_reeb_unit_ellipsoid_is_round_up_to_rate():
    sys_ = rk.ContactSystem("ellipsoid", a=1.0, b=1.0)
    rng = np.random.default_rng(2)
    for pt in random_sphere_points(rng, 5):
        r_ell = rk.reeb_vector(sys_, pt)
        r_round = rk.reeb_vector(rk.ContactSystem("round"), pt)
        assert np.allclose(r_ell, math.pi * r_round)


def test_reeb_w_circle_rate_is_half_for_b_two():
    sys_ = rk.ContactSystem("ellipsoid", a=1.0, b=2.0)
    R = rk.reeb_vector(sys_, E3)
    # w-plane rotation at rate pi, half the z-plane rate 2 pi
    assert np.allclose(R, [0, 0, 0, math.pi])
    Rz = rk.reeb_vector(sys_, E1)
    assert np.allclose(Rz, [0, 2 * math.pi, 0, 0])


# ---------------------------------------------------------------------------
# flows


def test_flow_round_period_pi():
    sys_ = rk.ContactSystem("round")
    assert np.linalg.norm(rk.flow(sys_, E1, math.pi) - E1) < 1e-12


def test_flow_time_zero_is_identity():
    for sys_ in (rk.ContactSystem("round"), rk.ContactSystem("ellipsoid", a=1.3, b=0.8)):
        assert np.array_equal(rk.flow(sys_, E1, 0.0), E1)


def test_flow_short_orbit_period_is_a():
    sys_ = rk.ContactSystem("ellipsoid", a=1.0, b=math.sqrt(2.0))
    assert np.linalg.norm(rk.flow(sys_, E1, 1.0) - E1) < 1e-12


def test_flow_numeric_matches_closed_form():
    sys_ = rk.ContactSystem("ellipsoid", a=1.0, b=math.sqrt(2.0))
    rng = np.random.default_rng(3)
    tol = 1e-10
    for pt in random_sphere_points(rng, 3):
        for t in (0.7, 5.3, 20.0):
            closed = rk.flow(sys_, pt, t)
            numeric = rk.flow(sys_, pt, t, tol=tol, method="numeric")
            assert np.linalg.norm(closed - numeric) < tol * 100 * max(1.0, t)


def test_flow_preserves_lambda_along_transported_vectors():
    # transport a tangent vector with the variational equations; the value of
    # the contact form on it must be constant
    sys_ = rk.ContactSystem("ellipsoid", a=1.0, b=math.sqrt(2.0))
    w1, w2 = sys_.plane_rates()
    A = np.zeros((4, 4))
    A[0, 1], A[1, 0], A[2, 3], A[3, 2] = -w1, w1, -w2, w2
    rng = np.random.default_rng(4)
    pt = random_sphere_points(rng, 1)[0]
    v = tangent_at(rng, pt)
    lam0 = rk.lambda_eval(sys_, pt, v)

    def rhs(_t, y):
        return np.concatenate([rk.reeb_vector(sys_, y[:4] / np.linalg.norm(y[:4])), A @ y[4:]])

    res = dopri45(rhs, 0.0, np.concatenate([pt, v]), 10.0, rtol=1e-10, atol=1e-10,
                  t_eval=np.linspace(0.0, 10.0, 41), max_step=0.2)
    for y in res.ys:
        p = y[:4] / np.linalg.norm(y[:4])
        vv = y[4:] - (y[4:] @ p) * p
        assert abs(rk.lambda_eval(sys_, p, vv) - lam0) < 1e-9


def test_integrator_against_scipy_oracle():
    # a nonlinear test problem exercises the stepper independently of flows
    def rhs(t, y):
        return np.array([y[1], -math.sin(y[0]) - 0.1 * y[1] + 0.3 * math.cos(t)])

    y0 = np.array([0.4, -0.2])
    mine = dopri45(rhs, 0.0, y0, 15.0, rtol=1e-11, atol=1e-11)
    ref = solve_ivp(rhs, (0.0, 15.0), y0, method="DOP853", rtol=1e-12, atol=1e-12)
    assert np.linalg.norm(mine.y_end - ref.y[:, -1]) < 1e-8


def test_integrator_backward_time():
    def rhs(_t, y):
        return np.array([y[0]])

    res = dopri45(rhs, 0.0, [1.0], -1.0, rtol=1e-12, atol=1e-12)
    assert res.y_end[0] == pytest.approx(math.exp(-1.0), rel=1e-10)


# ---------------------------------------------------------------------------
# the deck action


def test_deck_action_examples():
    L = rk.LensParams(2, 1)
    pt = np.array([0.6, 0.0, 0.8, 0.0])
    assert np.allclose(rk.deck_action(L, 1, pt), -pt)
    assert np.allclose(rk.deck_action(L, 0, pt), pt)
    got = rk.deck_action(rk.LensParams(5, 2), 1, E1)
    assert np.allclose(got, [math.cos(2 * math.pi / 5), math.sin(2 * math.pi / 5), 0, 0])


def test_lens_equivalent():
    L2 = rk.LensParams(2, 1)
    pt = np.array([0.6, 0.0, 0.8, 0.0])
    assert rk.lens_equivalent(L2, pt, -pt)
    L3 = rk.LensParams(3, 1)
    assert rk.lens_equivalent(L3, pt, pt)
    L5 = rk.LensParams(5, 2)
    assert rk.lens_equivalent(L5, pt, rk.deck_action(L5, 3, pt))
    assert not rk.lens_equivalent(L5, pt, np.array([0.0, 0.6, 0.8, 0.0]))


def test_flow_commutes_with_deck_action():
    L = rk.LensParams(5, 2)
    sys_ = rk.ContactSystem("ellipsoid", a=1.0, b=math.sqrt(2.0), lens=L)
    rng = np.random.default_rng(5)
    for pt in random_sphere_points(rng, 10):
        for t in (0.3, 1.7):
            a = rk.flow(sys_, rk.deck_action(L, 2, pt), t)
            b = rk.deck_action(L, 2, rk.flow(sys_, pt, t))
            assert np.linalg.norm(a - b) < 1e-8


# ---------------------------------------------------------------------------
# serialization


def test_system_json_round_trip():
    sys_ = rk.ContactSystem("ellipsoid", a=1.0, b=math.sqrt(2.0), lens=rk.LensParams(2, 1))
    data = rk.system_to_json(sys_)
    assert data == {
        "family": "ellipsoid",
        "a": 1.0,
        "b": math.sqrt(2.0),
        "lens": {"p": 2, "q": 1},
    }
    back = rk.system_from_json(data)
    assert back == sys_
    assert rk.system_from_json({"family": "round"}) == rk.ContactSystem("round")
    assert rk.system_from_json(rk.system_to_json(rk.ContactSystem("round"))) == rk.ContactSystem(
        "round"
    )
