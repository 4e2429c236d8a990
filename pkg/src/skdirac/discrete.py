"""Discrete skew-selfadjoint Dirac system ``w_{k+1}(z) = (I + (i/z) C_k) w_k(z)``.

The potential ``C_k`` is a Hermitian involution built from the k-flow
``Sigma_k`` of a strongly admissible quadruple. The matrices ``H_k^+-`` used
by the Heisenberg magnet model live here too, since they are static objects
of the same sequence.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as spla

from .errors import NotPositiveDefiniteError, PoleError
from .matkernel import norm2, numerical_rank
from .quadruple import balanced_k, iterate_balanced, phi2, require_strong, transfer


@dataclass(frozen=True)
class InvolutionReport:
    hermitian_residual: float
    involution_residual: float
    rank_plus: int
    rank_minus: int
    passed: bool


def involution_check(c, m1=None, m2=None, tol=1e-9):
    """Check ``C = C^* = C^{-1}`` and, when ``(m1, m2)`` are given, ``rank(I + C) = m1``, ``rank(I - C) = m2``."""
    c = np.asarray(c, dtype=complex)
    if c.ndim != 2 or c.shape[0] != c.shape[1]:
        raise ValueError("C must be square")
    m = c.shape[0]
    eye = np.eye(m)
    scale = max(norm2(c), 1.0)
    herm_res = norm2(c - c.conj().T) / scale
    inv_res = norm2(c @ c - eye)
    rp, rm = numerical_rank(eye + c), numerical_rank(eye - c)
    ok = herm_res <= 1e-10 and inv_res <= tol
    if m1 is not None and m2 is not None:
        ok = ok and rp == m1 and rm == m2
    return InvolutionReport(herm_res, inv_res, rp, rm, bool(ok))


def _gram(sig):
    """``Lambda^* S^{-1} Lambda`` from a Cholesky factor, Hermitian by construction."""
    if sig.n == 0:
        return np.zeros((sig.m, sig.m), dtype=complex)
    try:
        low = np.linalg.cholesky(sig.s0)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefiniteError(
            "S_k is not numerically positive definite; the k-flow is too ill-conditioned "
            "at this horizon (see quadruple.k_growth_spread)"
        ) from exc
    m = spla.solve_triangular(low, sig.lam, lower=True)
    g = m.conj().T @ m
    return 0.5 * (g + g.conj().T)


def c_from_pair(sig_k, sig_next):
    """``C_k = j + Lambda_k^* S_k^{-1} Lambda_k - Lambda_{k+1}^* S_{k+1}^{-1} Lambda_{k+1}``."""
    return sig_k.j + _gram(sig_k) - _gram(sig_next)


def annihilation_residuals(c, hp, hp_next, hm, hm_next):
    """Norms of ``(I - C)H_k^+``, ``H_{k+1}^+(I - C)``, ``(I + C)H_k^-``, ``H_{k+1}^-(I + C)``."""
    eye = np.eye(c.shape[0])
    return (
        norm2((eye - c) @ hp),
        norm2(hp_next @ (eye - c)),
        norm2((eye + c) @ hm),
        norm2(hm_next @ (eye + c)),
    )


def h_from_sigma(sig):
    """``H^+ = 2 W(i) P1 W(-i)^*`` and ``H^- = 2 W(-i) P2 W(i)^*`` for one quadruple."""
    j = sig.j
    eye = np.eye(sig.m)
    wp, wm = transfer(sig, 1j), transfer(sig, -1j)
    hp = wp @ (eye + j) @ wm.conj().T
    hm = wm @ (eye - j) @ wp.conj().T
    return hp, hm


def _step_power(q, k, z):
    d = np.concatenate([np.full(q.m1, 1.0 + 1j / z), np.full(q.m2, 1.0 - 1j / z)])
    return np.diag(d**k)


def _check_z(z):
    z = complex(z)
    if z == 0:
        raise PoleError("z = 0 is excluded")
    return z


def w_closed(sig0, sig_k, k, z):
    """``W_{Sigma_k}(-z) (I + (i/z) j)^k W_{Sigma_0}(-z)^{-1}``."""
    z = _check_z(z)
    w0 = transfer(sig0, -z)
    if np.linalg.cond(w0) > 1e14:
        raise PoleError(f"W(-z) is not invertible at z = {z}")
    return transfer(sig_k, -z) @ _step_power(sig0, k, z) @ np.linalg.inv(w0)


@dataclass(frozen=True, eq=False)
class DiscretePotentialSequence:
    """``C_0 ... C_K`` together with quadruples representing ``Sigma_0 ... Sigma_{K+1}``.

    The cached quadruples are the balanced representatives of
    :func:`~skdirac.quadruple.balanced_k`: similar to ``Sigma_k``, hence with
    the same transfer function, but with ``S`` well conditioned for all k.
    """

    source: object
    horizon: int
    c: tuple
    sigmas: tuple = field(repr=False)

    def __len__(self):
        return len(self.c)

    def __getitem__(self, k):
        return self.c[k]

    def w(self, k, z):
        """Closed-form fundamental solution ``w_k(z)`` from cached quadruples."""
        return w_closed(self.sigmas[0], self.sigmas[k], k, z)

    def w_recursive(self, k, z):
        """``(I + (i/z) C_{k-1}) ... (I + (i/z) C_0)``."""
        z = _check_z(z)
        m = self.source.m
        out = np.eye(m, dtype=complex)
        for r in range(k):
            out = (np.eye(m) + (1j / z) * self.c[r]) @ out
        return out

    def h(self, k):
        require_strong(self.source, need_i_free=True)
        return h_from_sigma(self.sigmas[k])

    def involution_reports(self, tol=1e-9):
        q = self.source
        return [involution_check(c, q.m1, q.m2, tol) for c in self.c]


def potential_seq(q, horizon):
    """Potential ``C_0 ... C_K`` of the discrete system generated by ``q``.

    The empty quadruple (``n = 0``) gives ``C_k = j`` for all k.
    """
    horizon = int(horizon)
    if horizon < 0:
        raise ValueError("horizon must be non-negative")
    require_strong(q)
    sigmas = iterate_balanced(q, horizon + 1)
    cs = tuple(c_from_pair(sigmas[k], sigmas[k + 1]) for k in range(horizon + 1))
    return DiscretePotentialSequence(q, horizon, cs, tuple(sigmas))


def fundamental_w(q, k, z):
    """``w_k(z) = W_{Sigma_k}(-z) (I + (i/z) j)^k W_{Sigma_0}(-z)^{-1}``."""
    k = int(k)
    require_strong(q)
    return w_closed(q, balanced_k(q, k), k, z)


def fundamental_w_recursive(q, k, z):
    """Same as :func:`fundamental_w` via the product of one-step factors."""
    return potential_seq(q, max(int(k) - 1, 0)).w_recursive(int(k), z)


def weyl_d(q):
    """Weyl function ``-i theta1^* S0^{-1} (zI + beta)^{-1} theta2``, ``beta = alpha - i theta2 theta2^* S0^{-1}``."""
    require_strong(q)
    return phi2(q)


def summability_terms(seq, z, phi, count=None):
    """Terms ``tr([phi^* I] w_k^* w_k [phi; I])`` for ``k = 0 .. count-1``.

    ``w_k`` is advanced by the one-step recursion on ``seq.c``.
    """
    q = seq.source
    z = _check_z(z)
    count = len(seq.c) + 1 if count is None else int(count)
    if count > len(seq.c) + 1:
        raise ValueError("sequence too short for the requested number of terms")
    phi = np.asarray(phi, dtype=complex).reshape(q.m1, q.m2)
    y = np.vstack([phi, np.eye(q.m2)])
    out = np.empty(count)
    eye = np.eye(q.m)
    for k in range(count):
        out[k] = float(np.real(np.vdot(y, y)))
        if k < len(seq.c):
            y = (eye + (1j / z) * seq.c[k]) @ y
    return out


def summability_partial_sums(q, z, phi=None, count=61):
    """Partial sums of the series that defines the discrete Weyl function.

    ``phi`` defaults to ``weyl_d(q)(z)``. For the Weyl function the sums
    converge when ``Im z > 1/2``; for any other candidate they grow
    geometrically.
    """
    z = complex(z)
    if phi is None:
        phi = weyl_d(q)(z)
    seq = potential_seq(q, max(count - 2, 0))
    return np.cumsum(summability_terms(seq, z, phi, count))


def h_pm(q, k):
    """``(H_k^+, H_k^-)``; requires a strong quadruple with ``i`` not an eigenvalue of alpha."""
    require_strong(q, need_i_free=True)
    return h_from_sigma(balanced_k(q, int(k)))


def h_identity_residual(hp, hm):
    """``||H^+ + (H^-)^* - 2I||``."""
    return norm2(hp + hm.conj().T - 2.0 * np.eye(hp.shape[0]))

