import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from skdirac.errors import DimensionError, PoleError, PreconditionError
from skdirac.fixtures import q1, q2, zero_quadruple
from skdirac.quadruple import (
    AdmissibleQuadruple,
    associate,
    balanced_k,
    balanced_t,
    balanced_x,
    flow_gdhm,
    flow_gdhm_ode,
    flow_zs,
    flow_zs_ode,
    is_strong,
    iterate_k,
    phi1,
    phi2,
    propagate_k,
    propagate_x,
    s_quadrature,
    transfer,
    validate,
)
from skdirac.sampling import sample_points

from .conftest import admissible_from, blocks, seeds, strong_from


def rel_res(q):
    return q.relative_identity_residual()


def is_pd(s):
    return np.linalg.eigvalsh(0.5 * (s + s.conj().T))[0] > 0


# --- construction and validation -------------------------------------------


def test_fixtures_validate():
    for q in (q1(), q2(), zero_quadruple()):
        rep = validate(q)
        assert rep.passed, rep.messages
        assert rep.identity_residual < 1e-15


def test_validate_reports_non_pd():
    q = AdmissibleQuadruple([[1j]], [[-1.0]], [[1.0]], [[1.0]])
    rep = validate(q)
    assert not rep.passed
    assert any("not positive definite" in m for m in rep.messages)


def test_validate_reports_identity_violation():
    q = AdmissibleQuadruple([[1j]], [[1.0]], [[2.0]], [[1.0]])
    rep = validate(q)
    assert not rep.passed
    assert any("identity" in m for m in rep.messages)


def test_constructor_checks_shapes():
    with pytest.raises(DimensionError):
        AdmissibleQuadruple(np.eye(2), np.eye(3), np.ones((2, 1)), np.ones((2, 1)))


def test_strong_flags():
    f1 = is_strong(q1())
    assert f1.controllable and f1.spectrum_in_upper_half_plane and not f1.i_not_eigenvalue
    f2 = is_strong(q2())
    assert f2.strong and f2.i_not_eigenvalue
    assert not is_strong(zero_quadruple()).controllable


@given(seeds, st.integers(1, 6), blocks, blocks)
def test_random_quadruples_are_admissible(seed, n, m1, m2):
    q = admissible_from(seed, n, m1, m2)
    assert validate(q).passed
    assert rel_res(q) < 1e-13


# --- transfer function ------------------------------------------------------


def test_transfer_q1_at_zero():
    np.testing.assert_allclose(transfer(q1(), 0), [[0, -1], [-1, 0]], atol=1e-15)


def test_transfer_q1_unitary_on_real_line():
    w = transfer(q1(), 1.0)
    assert np.linalg.norm(w @ w.conj().T - np.eye(2)) < 1e-12


def test_transfer_at_infinity_and_pole():
    q = q2()
    assert np.linalg.norm(transfer(q, 1e9j) - np.eye(2)) < 1e-6
    with pytest.raises(PoleError):
        transfer(q, 2j)
    np.testing.assert_array_equal(transfer(AdmissibleQuadruple.empty(1, 2), 3.0), np.eye(3))


def lemma_first(q, z, zeta):
    # I - W(z) W(conj zeta)^* ; the right-hand resolvent uses alpha^*
    sinv = np.linalg.inv(q.s0)
    eye = np.eye(q.n)
    lam = q.lam
    lhs = np.eye(q.m) - transfer(q, z) @ transfer(q, np.conj(zeta)).conj().T
    rhs = 1j * (z - zeta) * lam.conj().T @ sinv @ np.linalg.inv(z * eye - q.alpha) @ q.s0 @ np.linalg.inv(
        zeta * eye - q.alpha.conj().T
    ) @ sinv @ lam
    return np.linalg.norm(lhs - rhs)


def lemma_second(q, z):
    sinv = np.linalg.inv(q.s0)
    eye = np.eye(q.n)
    lam = q.lam
    w = transfer(q, z)
    lhs = np.eye(q.m) - w.conj().T @ w
    rhs = 1j * (z - np.conj(z)) * lam.conj().T @ np.linalg.inv(np.conj(z) * eye - q.alpha.conj().T) @ sinv @ np.linalg.inv(
        z * eye - q.alpha
    ) @ lam
    return np.linalg.norm(lhs - rhs)


@given(seeds, st.integers(1, 6), blocks, blocks)
def test_transfer_identities(seed, n, m1, m2):
    q = admissible_from(seed, n, m1, m2)
    rng = np.random.default_rng(seed + 1)
    poles = np.linalg.eigvals(q.alpha)
    pts = sample_points(rng, 10, poles, im_range=(-2.0, 3.0))
    for z, zeta in zip(pts, pts[::-1]):
        assert lemma_first(q, z, zeta) < 1e-10
        assert lemma_second(q, z) < 1e-10
    for lam in rng.uniform(-5, 5, size=10):
        w = transfer(q, lam)
        assert np.linalg.norm(w @ w.conj().T - np.eye(q.m)) < 1e-10


# --- phi1 / phi2 / associate ----------------------------------------------------


def test_phi_fixtures():
    f = phi1(q1())
    g = phi2(q2())
    for z in (1j, 2 + 1j, -0.5 + 3j):
        assert abs(f(z)[0, 0] - 1j / z) < 1e-14
        assert abs(g(z)[0, 0] + 2j / z) < 1e-14
    assert phi1(zero_quadruple())(1j).shape == (1, 1)
    assert np.all(phi1(zero_quadruple())(2j) == 0)
    assert np.all(phi2(zero_quadruple())(2j) == 0)


@given(seeds, st.integers(1, 5), blocks, blocks)
def test_phi1_block_formula(seed, n, m1, m2):
    q = admissible_from(seed, n, m1, m2)
    f = phi1(q)
    rng = np.random.default_rng(seed)
    pts = sample_points(rng, 10, list(np.linalg.eigvals(q.alpha)) + list(f.poles()), im_range=(1.0, 4.0))
    for z in pts:
        w = transfer(q, z)
        a, c = w[:m1, :m1], w[m1:, :m1]
        assert np.linalg.norm(f(z) - c @ np.linalg.inv(a)) < 1e-10 * max(1.0, np.linalg.norm(f(z)))


@given(seeds, st.integers(1, 5), blocks, blocks)
def test_phi2_is_phi1_of_associate_at_minus_z(seed, n, m1, m2):
    q = admissible_from(seed, n, m1, m2)
    f, g = phi1(associate(q)), phi2(q)
    rng = np.random.default_rng(seed)
    for z in sample_points(rng, 10, list(-f.poles()) + list(g.poles()), im_range=(-3.0, 3.0)):
        assert np.linalg.norm(g(z) - f(-z)) < 1e-10 * max(1.0, np.linalg.norm(g(z)))


@given(seeds, st.integers(1, 5), blocks, blocks)
def test_associate_involution(seed, n, m1, m2):
    q = admissible_from(seed, n, m1, m2)
    assert associate(associate(q)).equals(q)
    assert validate(associate(q)).passed
    assert associate(q1()).equals(q1())


# --- x flow ---------------------------------------------------------------------------


def test_propagate_x_q1():
    q = q1()
    assert propagate_x(q, 0) is q
    s = propagate_x(q, 1.0).s0[0, 0]
    assert abs(s - math.cosh(2.0)) < 1e-13
    with pytest.raises(ValueError):
        propagate_x(q, -1)


@given(seeds, st.integers(1, 5), blocks, blocks, st.sampled_from([0.5, 1.0, 2.0]))
def test_propagate_x_admissible_and_matches_quadrature(seed, n, m1, m2, x):
    q = admissible_from(seed, n, m1, m2)
    p = propagate_x(q, x)
    assert rel_res(p) < 1e-9
    assert is_pd(p.s0)
    sq = s_quadrature(q, x, tol=1e-11)
    assert np.linalg.norm(p.s0 - sq) <= 1e-8 * (1 + np.linalg.norm(sq))


@given(seeds, st.integers(1, 4), st.floats(0.0, 1.5), st.floats(0.0, 1.5))
def test_propagate_x_semigroup(seed, n, a, b):
    q = admissible_from(seed, n, 2, 1)
    one = propagate_x(propagate_x(q, a), b)
    two = propagate_x(q, a + b)
    assert one.distance(two) < 1e-9


@given(seeds, st.integers(1, 5), blocks, blocks, st.sampled_from([0.5, 1.0, 2.0]))
def test_balanced_x_is_similar(seed, n, m1, m2, x):
    q = admissible_from(seed, n, m1, m2)
    b, lit = balanced_x(q, x), propagate_x(q, x)
    assert rel_res(b) < 1e-12
    assert np.all(b.theta1 == q.theta1)
    rng = np.random.default_rng(seed)
    for z in sample_points(rng, 5, np.linalg.eigvals(q.alpha)):
        wl = transfer(lit, z)
        assert np.linalg.norm(transfer(b, z) - wl) < 1e-9 * max(1.0, np.linalg.norm(wl))


# --- k flow ---------------------------------------------------------------------------


def test_propagate_k_q2():
    q = q2()
    assert propagate_k(q, 0) is q
    q_1 = propagate_k(q, 1)
    r = math.sqrt(2)
    np.testing.assert_allclose(q_1.lam, [[3 * r / 2, r / 2]], atol=1e-15)
    assert abs(q_1.s0[0, 0] - 1.25) < 1e-15


def test_propagate_k_requires_invertible_alpha():
    with pytest.raises(PreconditionError):
        propagate_k(zero_quadruple(), 1)


@given(seeds, st.integers(1, 4), blocks, blocks, st.integers(0, 6), st.integers(0, 6))
def test_propagate_k_semigroup(seed, n, m1, m2, a, b):
    q = strong_from(seed, n, m1, m2)
    one = propagate_k(propagate_k(q, a), b)
    two = propagate_k(q, a + b)
    assert one.distance(two) < 1e-9


@given(seeds, st.integers(1, 5), blocks, blocks)
def test_iterate_k_admissible(seed, n, m1, m2):
    q = strong_from(seed, n, m1, m2, k_spread=(12, 1e8))
    for sig in iterate_k(q, 12):
        assert rel_res(sig) < 1e-9
        assert is_pd(sig.s0)


@given(seeds, st.integers(1, 5), blocks, blocks, st.integers(1, 10))
def test_balanced_k_is_similar(seed, n, m1, m2, k):
    # the literal recursion is the inaccurate side, so keep its growth spread modest
    q = strong_from(seed, n, m1, m2, k_spread=(k, 1e6))
    b, lit = balanced_k(q, k), propagate_k(q, k)
    assert rel_res(b) < 1e-12
    rng = np.random.default_rng(seed)
    for z in sample_points(rng, 5, np.linalg.eigvals(q.alpha)):
        wl = transfer(lit, z)
        assert np.linalg.norm(transfer(b, z) - wl) < 1e-8 * max(1.0, np.linalg.norm(wl))


# --- time flows ---------------------------------------------------------------------


def test_flow_gdhm_q2_phases():
    for t in (0.3, 1.0, -0.7):
        s = flow_gdhm(q2(), t)
        assert abs(s.s0[0, 0] - 1) < 1e-14
        assert abs(abs(s.theta1[0, 0]) - math.sqrt(2)) < 1e-14
        assert abs(abs(s.theta2[0, 0]) - math.sqrt(2)) < 1e-14
        assert abs(s.theta1[0, 0] - math.sqrt(2) * np.exp(2j * t)) < 1e-13
        assert abs(s.theta2[0, 0] - math.sqrt(2) * np.exp(2j * t / 3)) < 1e-13
    assert flow_gdhm(q2(), 0) is not None
    with pytest.raises(PreconditionError):
        flow_gdhm(q1(), 0.5)


@given(seeds, st.integers(1, 4), blocks, blocks, st.sampled_from([0.3, 1.0]))
def test_flow_gdhm_matches_ode(seed, n, m1, m2, t):
    q = strong_from(seed, n, m1, m2)
    s = flow_gdhm(q, t)
    assert rel_res(s) < 1e-9
    ode = flow_gdhm_ode(q, t, steps=400)
    assert np.linalg.norm(s.s0 - ode) < 1e-7 * (1 + np.linalg.norm(s.s0))


@given(seeds, st.integers(1, 4), st.floats(-1, 1), st.floats(-1, 1))
def test_flow_gdhm_semigroup(seed, n, a, b):
    q = strong_from(seed, n, 1, 2)
    assert flow_gdhm(flow_gdhm(q, a), b).distance(flow_gdhm(q, a + b)) < 1e-9


@given(seeds, st.integers(1, 4), blocks, blocks, st.floats(-1, 1))
def test_balanced_t_is_similar(seed, n, m1, m2, t):
    q = strong_from(seed, n, m1, m2)
    b, lit = balanced_t(q, t), flow_gdhm(q, t)
    assert rel_res(b) < 1e-12
    rng = np.random.default_rng(seed)
    for z in sample_points(rng, 5, np.linalg.eigvals(q.alpha)):
        wl = transfer(lit, z)
        assert np.linalg.norm(transfer(b, z) - wl) < 1e-8 * max(1.0, np.linalg.norm(wl))


def test_flow_zs_q1():
    s = flow_zs(q1(), 0.4, 2)
    assert abs(s.theta1[0, 0] - np.exp(0.4j)) < 1e-14
    assert abs(s.theta2[0, 0] - np.exp(-0.4j)) < 1e-14
    assert abs(s.s0[0, 0] - 1) < 1e-14
    with pytest.raises(ValueError):
        flow_zs(q1(), 0.4, 4)


@given(seeds, st.integers(1, 4), blocks, blocks, st.sampled_from([2, 3]), st.floats(0.05, 1.0))
def test_flow_zs_matches_integral(seed, n, m1, m2, p, t):
    q = strong_from(seed, n, m1, m2)
    s = flow_zs(q, t, p)
    assert rel_res(s) < 1e-9
    assert is_strong(s).strong
    ode = flow_zs_ode(q, t, p, steps=400)
    assert np.linalg.norm(s.s0 - ode) < 1e-7 * (1 + np.linalg.norm(s.s0))
