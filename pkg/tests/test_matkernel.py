import math

import numpy as np
import pytest
import scipy.linalg as spla
from hypothesis import given
from hypothesis import strategies as st

from skdirac.errors import (
    DimensionError,
    NonFiniteError,
    NotHermitianError,
    NotPositiveDefiniteError,
    RiccatiError,
    SylvesterSingularError,
)
from skdirac.matkernel import (
    care_solve,
    controllability_rank,
    is_controllable,
    is_observable,
    mat_exp,
    minimal_realization,
    pd_sqrt,
    riccati_residual,
    spectrum,
    sylvester_solve,
)
from skdirac.sampling import complex_normal, random_pd

from .conftest import seeds


def taylor_exp(a, terms=30):
    out = np.eye(a.shape[0], dtype=complex)
    term = np.eye(a.shape[0], dtype=complex)
    for r in range(1, terms):
        term = term @ a / r
        out = out + term
    return out


def scaled(rng, n, norm):
    a = complex_normal(rng, (n, n))
    return a * norm / np.linalg.norm(a, 2)


def kron_sylvester(a, b, c):
    p, q = c.shape
    op = np.kron(np.eye(q), a) + np.kron(b.T, np.eye(p))
    return np.linalg.solve(op, c.reshape(-1, order="F")).reshape((p, q), order="F")


def transfer_value(g, b, c, z):
    return c @ np.linalg.solve(z * np.eye(g.shape[0]) - g, b)


# --- mat_exp -----------------------------------------------------------------------


def test_exp_of_zero_is_identity():
    np.testing.assert_array_equal(mat_exp(np.zeros((3, 3))), np.eye(3))


def test_exp_euler():
    e = mat_exp(np.diag([1j * math.pi, -1j * math.pi]))
    np.testing.assert_allclose(e, -np.eye(2), atol=1e-14)


def test_exp_empty_and_errors():
    assert mat_exp(np.zeros((0, 0))).shape == (0, 0)
    with pytest.raises(DimensionError):
        mat_exp(np.zeros((2, 3)))
    with pytest.raises(NonFiniteError):
        mat_exp(np.array([[np.nan]]))


@given(seeds)
def test_exp_matches_taylor(seed):
    rng = np.random.default_rng(seed)
    a = scaled(rng, 4, rng.uniform(0.0, 1.0))
    ref = taylor_exp(a)
    assert np.linalg.norm(mat_exp(a) - ref) <= 1e-12 * np.linalg.norm(ref)
    assert np.linalg.norm(mat_exp(a) @ mat_exp(-a) - np.eye(4)) < 1e-12


@given(seeds, st.floats(-1.0, 1.0), st.floats(-1.0, 1.0))
def test_exp_group_property(seed, s, t):
    rng = np.random.default_rng(seed)
    a = scaled(rng, 4, rng.uniform(0.0, 5.0))
    assert np.linalg.norm(mat_exp(a) @ mat_exp(-a) - np.eye(4)) < 1e-12 * np.linalg.norm(mat_exp(a)) * np.linalg.norm(mat_exp(-a))
    lhs = mat_exp((s + t) * a)
    rhs = mat_exp(s * a) @ mat_exp(t * a)
    assert np.linalg.norm(lhs - rhs) <= 1e-11 * max(1.0, np.linalg.norm(lhs))


# --- pd_sqrt -------------------------------------------------------------------------


def test_sqrt_examples():
    np.testing.assert_allclose(pd_sqrt(np.eye(2)), np.eye(2), atol=1e-15)
    np.testing.assert_allclose(pd_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]), atol=1e-14)
    np.testing.assert_allclose(pd_sqrt(np.diag([4.0, 9.0]), inverse=True), np.diag([0.5, 1 / 3]), atol=1e-14)


@given(seeds, st.integers(1, 6))
def test_sqrt_squares_back(seed, n):
    rng = np.random.default_rng(seed)
    m = complex_normal(rng, (n, n))
    s = m @ m.conj().T + np.eye(n)
    r = pd_sqrt(s)
    assert np.linalg.norm(r - r.conj().T) <= 1e-12 * np.linalg.norm(r)
    assert np.linalg.norm(r @ r - s, 2) <= 1e-11 * np.linalg.norm(s, 2)
    assert np.linalg.eigvalsh(r)[0] > 0


def test_sqrt_rejects_bad_input():
    with pytest.raises(NotHermitianError):
        pd_sqrt(np.array([[1.0, 1.0], [0.0, 1.0]]))
    with pytest.raises(NotPositiveDefiniteError):
        pd_sqrt(np.diag([1.0, -1.0]))


# --- sylvester_solve ------------------------------------------------------------------


def test_sylvester_examples():
    np.testing.assert_allclose(sylvester_solve([[2j]], [[2j]], [[4j]]), [[1.0]], atol=1e-15)
    m = np.arange(6.0).reshape(2, 3)
    np.testing.assert_allclose(sylvester_solve(np.eye(2), np.eye(3), 2 * m), m, atol=1e-14)


@given(seeds, st.integers(1, 6), st.integers(1, 6))
def test_sylvester_matches_kronecker(seed, p, q):
    rng = np.random.default_rng(seed)
    a = complex_normal(rng, (p, p)) + 3 * np.eye(p)
    b = complex_normal(rng, (q, q)) + 3 * np.eye(q)
    c = complex_normal(rng, (p, q))
    x = sylvester_solve(a, b, c)
    ref = kron_sylvester(a, b, c)
    assert np.linalg.norm(x - ref) <= 1e-10 * max(1.0, np.linalg.norm(ref))
    assert np.linalg.norm(a @ x + x @ b - c) <= 1e-10 * (np.linalg.norm(c) + 1)


def test_sylvester_singular():
    with pytest.raises(SylvesterSingularError, match="no unique solution"):
        sylvester_solve([[1.0]], [[-1.0]], [[1.0]])
    with pytest.raises(DimensionError):
        sylvester_solve(np.eye(2), np.eye(2), np.ones((3, 2)))


# --- care_solve ------------------------------------------------------------------------


def test_care_scalar_examples():
    np.testing.assert_allclose(care_solve([[0]], [[1]], [[1]]), [[1.0]], atol=1e-13)
    np.testing.assert_allclose(care_solve([[0]], [[math.sqrt(2)]], [[2]]), [[1.0]], atol=1e-13)


def minimal_triple(rng, n, m):
    g = complex_normal(rng, (n, n)) / np.sqrt(n)
    b = complex_normal(rng, (n, m))
    t1 = complex_normal(rng, (n, m))
    return g, b, t1 @ t1.conj().T


@given(seeds, st.integers(1, 6), st.integers(1, 3))
def test_care_random_minimal(seed, n, m):
    rng = np.random.default_rng(seed)
    g, b, q = minimal_triple(rng, n, m)
    x = care_solve(g, b, q)
    assert np.linalg.norm(x - x.conj().T) <= 1e-11 * np.linalg.norm(x)
    assert np.linalg.eigvalsh(x)[0] > 0
    res = np.linalg.norm(riccati_residual(g, b, q, x), 2)
    assert res < 1e-10 * (1 + np.linalg.norm(x, 2) ** 2)


@given(seeds, st.integers(1, 5), st.integers(1, 3))
def test_care_matches_scipy_oracle(seed, n, m):
    rng = np.random.default_rng(seed)
    g, b, q = minimal_triple(rng, n, m)
    x = care_solve(g, b, q)
    ref = spla.solve_continuous_are(1j * g.conj().T, b, q, np.eye(m))
    assert np.linalg.norm(x - ref) <= 1e-9 * np.linalg.norm(ref)


@given(seeds, st.integers(1, 5))
def test_care_newton_start_independent(seed, n):
    rng = np.random.default_rng(seed)
    g, b, q = minimal_triple(rng, n, 2)
    x = care_solve(g, b, q)
    x0 = x + 1e-3 * random_pd(rng, n)
    x_again = care_solve(g, b, q, x0=x0)
    assert np.linalg.norm(x_again - x) <= 1e-10 * np.linalg.norm(x)


def test_care_non_minimal_fails():
    # (gamma, B) with B = 0 has no stabilizing solution
    with pytest.raises(RiccatiError):
        care_solve(np.zeros((2, 2)), np.zeros((2, 1)), np.eye(2))


# --- spectrum -----------------------------------------------------------------------


def test_spectrum_examples():
    ev = spectrum(np.diag([1j, 2j])).eigenvalues
    np.testing.assert_allclose(sorted(ev, key=lambda z: z.imag), [1j, 2j], atol=1e-15)
    companion = np.array([[0.0, -1.0], [1.0, 0.0]])
    ev = sorted(spectrum(companion).eigenvalues, key=lambda z: z.imag)
    np.testing.assert_allclose(ev, [-1j, 1j], atol=1e-12)
    rep = spectrum(np.diag([1j, 2j]))
    assert rep.max_imag == pytest.approx(2.0) and rep.min_imag == pytest.approx(1.0)
    assert rep.distance_to(1.5j) == pytest.approx(0.5)


def _multiset_distance(a, b):
    from scipy.optimize import linear_sum_assignment

    cost = np.abs(a[:, None] - b[None, :])
    r, c = linear_sum_assignment(cost)
    return cost[r, c].max()


@given(seeds, st.integers(1, 8))
def test_spectrum_similarity_invariant(seed, n):
    rng = np.random.default_rng(seed)
    a = np.diag(complex_normal(rng, n) * 3) + 0.1 * complex_normal(rng, (n, n))
    p = random_pd(rng, n, cond=3.0) + 0.2 * complex_normal(rng, (n, n))
    b = p @ a @ np.linalg.inv(p)
    assert _multiset_distance(spectrum(a).eigenvalues, spectrum(b).eigenvalues) < 1e-7


# --- controllability and minimal realizations ----------------------------------------


def test_controllability_examples():
    assert controllability_rank(np.diag([1.0, 2.0, 3.0]), np.eye(3)) == 3
    assert controllability_rank(np.diag([1.0, 2.0]), np.zeros((2, 1))) == 0
    assert controllability_rank(np.diag([1.0, 2.0]), np.ones((2, 1))) == 2
    assert not is_controllable(np.diag([1.0, 1.0]), np.ones((2, 1)))


def test_minimal_realization_of_redundant_i_over_z():
    # i/z written with a second, unreachable state
    g = np.zeros((2, 2))
    b = np.array([[1.0], [0.0]])
    c = np.array([[1j, 5.0]])
    g2, b2, c2, degree = minimal_realization(g, b, c)
    assert degree == 1
    for z in (1 + 1j, -2 + 0.5j, 3j):
        np.testing.assert_allclose(transfer_value(g2, b2, c2, z), [[1j / z]], atol=1e-13)


@given(seeds, st.integers(1, 5), st.integers(1, 3), st.integers(0, 3))
def test_minimal_realization_drops_pad(seed, n, m, pad):
    rng = np.random.default_rng(seed)
    g = complex_normal(rng, (n, n))
    b = complex_normal(rng, (n, m))
    c = complex_normal(rng, (m, n))
    # unreachable block: no input enters, it only feeds itself
    gp = np.block([[g, complex_normal(rng, (n, pad))], [np.zeros((pad, n)), complex_normal(rng, (pad, pad))]])
    bp = np.vstack([b, np.zeros((pad, m))])
    cp = np.hstack([c, complex_normal(rng, (m, pad))])
    g2, b2, c2, degree = minimal_realization(gp, bp, cp)
    assert degree == n
    assert controllability_rank(g2, b2) == degree
    assert is_observable(c2, g2)
    scale = 1.0
    for _ in range(20):
        z = complex(rng.uniform(-3, 3), rng.uniform(4, 8))
        ref = transfer_value(gp, bp, cp, z)
        scale = max(scale, np.linalg.norm(ref))
        assert np.linalg.norm(transfer_value(g2, b2, c2, z) - ref) <= 1e-9 * scale


def test_minimal_realization_idempotent_and_zero():
    rng = np.random.default_rng(1)
    g, b, c = complex_normal(rng, (3, 3)), complex_normal(rng, (3, 2)), complex_normal(rng, (2, 3))
    assert minimal_realization(g, b, c)[3] == 3
    assert minimal_realization(g, np.zeros((3, 2)), c)[3] == 0
