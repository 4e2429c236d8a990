"""Explicit inverse problems: Weyl function -> generating quadruple.

Both procedures follow the same three steps: reduce the given realization
to a minimal one, solve an algebraic Riccati equation for a positive definite
``X``, and rescale by ``X^{+-1/2}`` into a quadruple with ``S0 = I``.
"""

from dataclasses import dataclass

import numpy as np

from .continuous import weyl
from .discrete import weyl_d
from .matkernel import care_solve, norm2, pd_sqrt, riccati_residual
from .quadruple import AdmissibleQuadruple
from .realization import CONTINUOUS, DISCRETE, StateSpaceRealization

MODES = (CONTINUOUS, DISCRETE)


@dataclass(frozen=True, eq=False)
class InverseResult:
    quadruple: AdmissibleQuadruple
    minimal: StateSpaceRealization
    x: np.ndarray
    riccati_residual: float  # scaled by 1 + ||X||^2


def _check(phi):
    if not isinstance(phi, StateSpaceRealization):
        raise TypeError("phi must be a StateSpaceRealization")


def solve_continuous(phi):
    """Recover ``{alpha, I, theta1, theta2}`` whose continuous Weyl function is ``phi``.

    ``phi(z) = i theta2_^* (zI - gamma)^{-1} theta1_`` minimal, then
    ``gamma X - X gamma^* - i X theta2_ theta2_^* X + i theta1_ theta1_^* = 0`` and
    ``theta1 = X^{-1/2} theta1_``, ``theta2 = X^{1/2} theta2_``,
    ``alpha = X^{-1/2} gamma X^{1/2} + i theta1 theta1^*``.
    """
    _check(phi)
    m2, m1 = phi.shape
    r = phi.as_convention(CONTINUOUS).minimal()
    if r.state_dim == 0:
        return InverseResult(AdmissibleQuadruple.empty(m1, m2), r, np.zeros((0, 0)), 0.0)
    gamma = r.gamma
    b1 = r.input_map
    b2 = r.output_map.conj().T
    x = care_solve(gamma, b2, b1 @ b1.conj().T)
    res = norm2(riccati_residual(gamma, b2, b1 @ b1.conj().T, x)) / (1.0 + norm2(x) ** 2)
    xh, xmh = pd_sqrt(x), pd_sqrt(x, inverse=True)
    t1, t2 = xmh @ b1, xh @ b2
    alpha = xmh @ gamma @ xh + 1j * t1 @ t1.conj().T
    q = AdmissibleQuadruple(alpha, np.eye(r.state_dim), t1, t2)
    return InverseResult(q, r, x, res)


def solve_discrete(phi):
    """Recover ``{alpha, I, theta1, theta2}`` whose discrete Weyl function is ``phi``.

    ``phi(z) = -i theta1_^* (zI + gamma)^{-1} theta2_`` minimal, then
    ``gamma X - X gamma^* - i X theta1_ theta1_^* X + i theta2_ theta2_^* = 0`` and
    ``theta1 = X^{1/2} theta1_``, ``theta2 = X^{-1/2} theta2_``,
    ``alpha = X^{-1/2} gamma X^{1/2} + i theta2 theta2^*``.
    """
    _check(phi)
    m1, m2 = phi.shape
    r = phi.as_convention(DISCRETE).minimal()
    if r.state_dim == 0:
        return InverseResult(AdmissibleQuadruple.empty(m1, m2), r, np.zeros((0, 0)), 0.0)
    gamma = r.gamma
    b2 = r.input_map
    b1 = r.output_map.conj().T
    x = care_solve(gamma, b1, b2 @ b2.conj().T)
    res = norm2(riccati_residual(gamma, b1, b2 @ b2.conj().T, x)) / (1.0 + norm2(x) ** 2)
    xh, xmh = pd_sqrt(x), pd_sqrt(x, inverse=True)
    t1, t2 = xh @ b1, xmh @ b2
    alpha = xmh @ gamma @ xh + 1j * t2 @ t2.conj().T
    q = AdmissibleQuadruple(alpha, np.eye(r.state_dim), t1, t2)
    return InverseResult(q, r, x, res)


def invert_continuous(phi):
    return solve_continuous(phi).quadruple


def invert_discrete(phi):
    return solve_discrete(phi).quadruple


def invert(phi, mode):
    if mode == CONTINUOUS:
        return invert_continuous(phi)
    if mode == DISCRETE:
        return invert_discrete(phi)
    raise ValueError(f"unknown mode {mode!r}")


def reconstruct(phi, mode):
    """Weyl function of the recovered quadruple (should equal ``phi``)."""
    q = invert(phi, mode)
    return weyl(q) if mode == CONTINUOUS else weyl_d(q)


def roundtrip_error(phi, mode, samples):
    """``max ||phi(z) - phi_reconstructed(z)||`` over ``samples``."""
    return phi.max_difference(reconstruct(phi, mode), samples)
