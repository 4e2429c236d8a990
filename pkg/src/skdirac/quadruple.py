"""Admissible quadruples ``{alpha, S0, theta1, theta2}`` and their flows.

A quadruple is admissible when ``S0 > 0`` and

    alpha S0 - S0 alpha^* = i (theta1 theta1^* + theta2 theta2^*).

Every explicit formula in the package (potentials, transfer functions, Weyl
functions, lattice solutions) is generated from one of these and the flows
below, each of which maps admissible quadruples to admissible quadruples.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as spla

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    ConsistencyError,
    DimensionError,
    PoleError,
    PreconditionError,
)
from .matkernel import (
    as_matrix,
    controllability_rank,
    herm,
    mat_exp,
    norm2,
    spectrum,
    sylvester_solve,
)
from .realization import CONTINUOUS, DISCRETE, StateSpaceRealization


@dataclass(frozen=True, eq=False)
class AdmissibleQuadruple:
    """Generating data ``{alpha, S0, theta1, theta2}``.

    Construction only checks shapes and finiteness; admissibility itself is
    checked by :func:`validate`. Arrays are stored read-only.
    """

    alpha: np.ndarray
    s0: np.ndarray
    theta1: np.ndarray
    theta2: np.ndarray

    def __post_init__(self):
        alpha = as_matrix(self.alpha, "alpha")
        s0 = as_matrix(self.s0, "s0")
        t1 = as_matrix(self.theta1, "theta1")
        t2 = as_matrix(self.theta2, "theta2")
        n = alpha.shape[0]
        if alpha.shape != (n, n) or s0.shape != (n, n):
            raise DimensionError(f"alpha {alpha.shape} and s0 {s0.shape} must be n x n")
        if t1.shape[0] != n or t2.shape[0] != n:
            raise DimensionError(f"theta1 {t1.shape} and theta2 {t2.shape} must have {n} rows")
        for name, arr in (("alpha", alpha), ("s0", s0), ("theta1", t1), ("theta2", t2)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @classmethod
    def empty(cls, m1, m2):
        """The quadruple with no state space; generates the zero potential."""
        z = np.zeros((0, 0))
        return cls(z, z, np.zeros((0, m1)), np.zeros((0, m2)))

    @property
    def n(self):
        return self.alpha.shape[0]

    @property
    def m1(self):
        return self.theta1.shape[1]

    @property
    def m2(self):
        return self.theta2.shape[1]

    @property
    def m(self):
        return self.m1 + self.m2

    @property
    def lam(self):
        """``Lambda = [theta1 theta2]``."""
        return np.hstack([self.theta1, self.theta2])

    @property
    def j(self):
        return signature(self.m1, self.m2)

    def replace(self, **changes):
        fields = dict(alpha=self.alpha, s0=self.s0, theta1=self.theta1, theta2=self.theta2)
        fields.update(changes)
        return AdmissibleQuadruple(**fields)

    def identity_residual(self):
        """``||alpha S - S alpha^* - i Lambda Lambda^*||``."""
        lam = self.lam
        r = self.alpha @ self.s0 - self.s0 @ self.alpha.conj().T - 1j * lam @ lam.conj().T
        return norm2(r)

    def relative_identity_residual(self):
        return self.identity_residual() / (1.0 + norm2(self.alpha) * norm2(self.s0))

    def equals(self, other):
        """Exact (bitwise) equality of all four matrices."""
        return all(
            np.array_equal(a, b)
            for a, b in zip(
                (self.alpha, self.s0, self.theta1, self.theta2),
                (other.alpha, other.s0, other.theta1, other.theta2),
            )
        )

    def distance(self, other):
        """Largest relative difference over the four matrices."""
        if (self.n, self.m1, self.m2) != (other.n, other.m1, other.m2):
            return np.inf
        out = 0.0
        for a, b in zip(
            (self.alpha, self.s0, self.theta1, self.theta2),
            (other.alpha, other.s0, other.theta1, other.theta2),
        ):
            out = max(out, norm2(a - b) / (1.0 + norm2(a)))
        return out


def signature(m1, m2):
    """``j = diag(I_m1, -I_m2)``."""
    return np.diag(np.concatenate([np.ones(m1), -np.ones(m2)])).astype(complex)


@dataclass(frozen=True)
class ValidationReport:
    hermitian_residual: float
    min_eigenvalue: float
    identity_residual: float
    relative_identity_residual: float
    passed: bool
    messages: tuple = field(default_factory=tuple)


def validate(q, tol=None, tolerances: Tolerances = DEFAULT_TOLERANCES):
    """Check that ``q`` is admissible.

    The identity residual is measured relative to ``1 + ||alpha|| ||S0||``
    and must not exceed ``tol`` (default ``tolerances.admissible``).
    """
    tol = tolerances.admissible if tol is None else tol
    s = q.s0
    msgs = []
    hres = norm2(s - s.conj().T)
    if hres > tolerances.hermitian * max(norm2(s), 1e-300):
        msgs.append("S0 is not Hermitian")
    if q.n:
        min_eig = float(np.linalg.eigvalsh(herm(s))[0])
    else:
        min_eig = np.inf
    if not min_eig > 0:
        msgs.append("S0 is not positive definite")
    ires = q.identity_residual()
    rel = ires / (1.0 + norm2(q.alpha) * norm2(s))
    if rel > tol:
        msgs.append(f"admissibility identity violated (relative residual {rel:.3e})")
    return ValidationReport(hres, min_eig, ires, rel, not msgs, tuple(msgs))


@dataclass(frozen=True)
class StrongFlag:
    controllable: bool
    spectrum_in_upper_half_plane: bool
    i_not_eigenvalue: bool

    @property
    def strong(self):
        return self.controllable and self.spectrum_in_upper_half_plane


def is_strong(q, tolerances: Tolerances = DEFAULT_TOLERANCES):
    """Controllability of ``(alpha, theta1)`` plus the spectral side conditions."""
    ctrl = controllability_rank(q.alpha, q.theta1, tolerances.rank_rtol) == q.n
    spec = spectrum(q.alpha)
    upper = q.n == 0 or spec.min_imag > tolerances.strong_margin
    i_free = spec.distance_to(1j) >= tolerances.pole_rtol * (1.0 + norm2(q.alpha))
    return StrongFlag(ctrl, upper, i_free)


def require_strong(q, need_i_free=False):
    flag = is_strong(q)
    if not flag.controllable:
        raise PreconditionError("quadruple is not strongly admissible: (alpha, theta1) not controllable")
    if not flag.spectrum_in_upper_half_plane:
        raise PreconditionError("quadruple is not strongly admissible: spectrum of alpha not in C+")
    if need_i_free and not flag.i_not_eigenvalue:
        raise PreconditionError("i is an eigenvalue of alpha")
    return flag


def _s_inv_lam(q):
    if q.n == 0:
        return np.zeros((0, q.m), dtype=complex)
    return spla.solve(q.s0, q.lam, assume_a="her")


def transfer(q, z, tolerances: Tolerances = DEFAULT_TOLERANCES):
    """``W(z) = I + i Lambda^* S0^{-1} (zI - alpha)^{-1} Lambda``."""
    z = complex(z)
    eye_m = np.eye(q.m, dtype=complex)
    if q.n == 0:
        return eye_m
    if spectrum(q.alpha).distance_to(z) < tolerances.pole_rtol * (1.0 + norm2(q.alpha)):
        raise PoleError(f"z = {z} is an eigenvalue of alpha")
    lam = q.lam
    res = np.linalg.solve(z * np.eye(q.n) - q.alpha, lam)
    return eye_m + 1j * _s_inv_lam(q).conj().T @ res


def phi1(q):
    """``i theta2^* S0^{-1} (zI - beta1)^{-1} theta1`` with ``beta1 = alpha - i theta1 theta1^* S0^{-1}``."""
    if q.n == 0:
        return StateSpaceRealization.zero(q.m2, q.m1, CONTINUOUS)
    sinv = np.linalg.inv(q.s0)
    beta1 = q.alpha - 1j * q.theta1 @ q.theta1.conj().T @ sinv
    return StateSpaceRealization(beta1, q.theta1, q.theta2.conj().T @ sinv, CONTINUOUS)


def phi2(q):
    """``-i theta1^* S0^{-1} (zI + beta2)^{-1} theta2`` with ``beta2 = alpha - i theta2 theta2^* S0^{-1}``."""
    if q.n == 0:
        return StateSpaceRealization.zero(q.m1, q.m2, DISCRETE)
    sinv = np.linalg.inv(q.s0)
    beta2 = q.alpha - 1j * q.theta2 @ q.theta2.conj().T @ sinv
    return StateSpaceRealization(beta2, q.theta2, q.theta1.conj().T @ sinv, DISCRETE)


def associate(q):
    """Swap the roles of theta1 and theta2."""
    return AdmissibleQuadruple(q.alpha, q.s0, q.theta2, q.theta1)


def _lyapunov_s(alpha, lam):
    # unique solution of alpha S - S alpha^* = i Lambda Lambda^* when
    # spectrum(alpha) lies in the open upper half-plane
    return herm(sylvester_solve(alpha, -alpha.conj().T, 1j * lam @ lam.conj().T))


def s_from_identity(alpha, theta1, theta2):
    """``S`` determined by the admissibility identity (requires ``spectrum(alpha)`` in C+)."""
    return _lyapunov_s(as_matrix(alpha), np.hstack([as_matrix(theta1), as_matrix(theta2)]))


# --- continuous x flow -------------------------------------------------------


def _x_exponentials(q, x):
    return mat_exp(-1j * x * q.alpha), mat_exp(1j * x * q.alpha)


def x_block_matrix(q):
    """The ``2n x 2n`` matrix ``A = [[alpha^*, 0], [-theta1 theta1^*, alpha]]``."""
    n = q.n
    return np.block(
        [
            [q.alpha.conj().T, np.zeros((n, n))],
            [-q.theta1 @ q.theta1.conj().T, q.alpha],
        ]
    )


def inner_q(q, x):
    """``Q(x) = [S0 -iI] e^{-2ixA} [I; 0]``, so that ``S(x) = e^{ix alpha} Q(x) e^{ix alpha^*}``."""
    n = q.n
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    e = mat_exp(-2j * float(x) * x_block_matrix(q))
    return q.s0 @ e[:n, :n] - 1j * e[n:, :n]


def s_closed_form(q, x):
    """``S(x)`` via ``e^{ix alpha} [S0 -iI] e^{-2ixA} [I; 0] e^{ix alpha^*}``."""
    if q.n == 0:
        return np.zeros((0, 0), dtype=complex)
    inner = inner_q(q, x)
    # right factor is exp(ix alpha^*), not the adjoint of exp(ix alpha)
    return herm(mat_exp(1j * x * q.alpha) @ inner @ mat_exp(1j * x * q.alpha.conj().T))


def _x_integrand(q, t):
    em, ep = _x_exponentials(q, t)
    lam = np.hstack([em @ q.theta1, ep @ q.theta2])
    return lam @ q.j @ lam.conj().T


def adaptive_simpson(f, a, b, tol=1e-10, max_depth=40):
    """Adaptive Simpson rule for matrix-valued ``f`` on ``[a, b]``."""

    def simpson(fa, fm, fb, lo, hi):
        return (hi - lo) / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(lo, hi, fa, fm, fb, whole, eps, depth):
        mid = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flm, frm = f(lm), f(rm)
        left = simpson(fa, flm, fm, lo, mid)
        right = simpson(fm, frm, fb, mid, hi)
        err = np.max(np.abs(left + right - whole))
        if depth >= max_depth or err <= 15.0 * eps:
            return left + right + (left + right - whole) / 15.0
        return recurse(lo, mid, fa, flm, fm, left, eps / 2, depth + 1) + recurse(
            mid, hi, fm, frm, fb, right, eps / 2, depth + 1
        )

    fa, fb, fm = f(a), f(b), f(0.5 * (a + b))
    return recurse(a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, 0)


def s_quadrature(q, x, tol=1e-10):
    """``S0 + int_0^x Lambda(t) j Lambda(t)^* dt`` by adaptive Simpson."""
    if q.n == 0 or x == 0:
        return np.array(q.s0, dtype=complex)
    return q.s0 + adaptive_simpson(lambda t: _x_integrand(q, t), 0.0, float(x), tol)


def propagate_x(q, x, check=False):
    """``Sigma(x) = {alpha, S(x), e^{-ix alpha} theta1, e^{ix alpha} theta2}``.

    With ``check=True`` the closed form for ``S(x)`` is compared against
    quadrature of its defining integral.
    """
    x = float(x)
    if x < 0:
        raise ValueError("x must be non-negative")
    if x == 0.0:
        return q
    if q.n == 0:
        return q
    s = s_closed_form(q, x)
    if check:
        sq = s_quadrature(q, x, tol=1e-10 * (1.0 + norm2(s)))
        disc = norm2(s - sq) / (1.0 + norm2(s))
        if disc > 1e-6:
            raise ConsistencyError(f"closed form and quadrature for S(x) differ by {disc:.3e}")
    em, ep = _x_exponentials(q, x)
    return AdmissibleQuadruple(q.alpha, s, em @ q.theta1, ep @ q.theta2)


def balanced_x(q, x, margin=1e-6):
    """A well-conditioned quadruple similar to ``Sigma(x)``.

    With ``G = e^{-ix alpha}`` the quadruple ``{alpha, G^{-1} S(x) G^{-*}, G^{-1} Lambda(x)}``
    is ``{alpha, S~(x), theta1, e^{2ix alpha} theta2}``, where ``S~(x)`` solves the
    admissibility identity. ``S(x)`` itself grows at different exponential
    rates along different eigenvectors of alpha, so its condition number
    explodes with x; ``S~(x)`` stays bounded. Potentials and transfer functions
    are unchanged by the similarity. Falls back to :func:`propagate_x` when the
    spectrum of alpha is within ``margin * (1 + ||alpha||)`` of the real axis,
    where the Sylvester solve loses uniqueness.
    """
    x = float(x)
    if x < 0:
        raise ValueError("x must be non-negative")
    if x == 0.0 or q.n == 0:
        return q
    if spectrum(q.alpha).min_imag <= margin * (1.0 + norm2(q.alpha)):
        return propagate_x(q, x)
    t2 = mat_exp(2j * x * q.alpha) @ q.theta2
    return AdmissibleQuadruple(q.alpha, _lyapunov_s(q.alpha, np.hstack([q.theta1, t2])), q.theta1, t2)


# --- discrete k flow ---------------------------------------------------------


def _alpha_inverse(q):
    if q.n == 0:
        return np.zeros((0, 0), dtype=complex)
    if np.linalg.cond(q.alpha) > 1e14:
        raise PreconditionError("alpha is singular")
    return np.linalg.inv(q.alpha)


def iterate_k(q, k):
    """List ``[Sigma_0, ..., Sigma_k]``."""
    k = int(k)
    if k < 0:
        raise ValueError("k must be non-negative")
    out = [q]
    if k == 0:
        return out
    if q.n == 0:
        return out * (k + 1)
    ainv = _alpha_inverse(q)
    ainv_h = ainv.conj().T
    j = q.j
    lam = q.lam
    s = np.array(q.s0)
    for _ in range(k):
        s = s + ainv @ s @ ainv_h + ainv @ lam @ j @ lam.conj().T @ ainv_h
        s = herm(s)
        lam = lam + 1j * ainv @ lam @ j
        out.append(AdmissibleQuadruple(q.alpha, s, lam[:, : q.m1], lam[:, q.m1 :]))
    return out


def propagate_k(q, k):
    """``Sigma_k = {alpha, S_k, (I + i alpha^{-1})^k theta1, (I - i alpha^{-1})^k theta2}``."""
    return iterate_k(q, k)[-1]


def balanced_k(q, k):
    """A well-conditioned quadruple similar to ``Sigma_k``.

    With ``G = (I + i alpha^{-1})^k`` (which commutes with alpha),
    ``{alpha, G^{-1} S_k G^{-*}, G^{-1} Lambda_k}`` equals
    ``{alpha, S~_k, theta1, R^k theta2}``, ``R = (alpha + iI)^{-1}(alpha - iI)``,
    with ``S~_k`` the solution of the admissibility identity. Transfer
    functions, ``C_k`` and ``H_k^+-`` are invariant under such similarities,
    while ``S~_k`` stays bounded below by the controllability Gramian of
    ``(alpha, theta1)`` for every k. Requires ``spectrum(alpha)`` in C+.
    """
    k = int(k)
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0 or q.n == 0:
        return q
    eye = np.eye(q.n)
    r = np.linalg.solve(q.alpha + 1j * eye, q.alpha - 1j * eye)
    t2 = np.linalg.matrix_power(r, k) @ q.theta2
    s = _lyapunov_s(q.alpha, np.hstack([q.theta1, t2]))
    return AdmissibleQuadruple(q.alpha, s, q.theta1, t2)


def iterate_balanced(q, k):
    """``[balanced_k(q, 0), ..., balanced_k(q, k)]``."""
    return [balanced_k(q, r) for r in range(int(k) + 1)]


def k_growth_spread(alpha, k):
    """A priori estimate of how far ``S_k`` drifts from ``S0`` in conditioning.

    ``Lambda_k`` grows like ``(I + i alpha^{-1})^k`` whose modulus differs
    between eigenvectors of alpha; ``S_k`` inherits the squared spread
    ``(max_g / min_g)^{2k}`` with ``g = |1 + i / lambda|``. When this exceeds
    about ``1e15`` the computed ``S_k`` cannot be certified positive definite
    in double precision, although it is in exact arithmetic.
    """
    ev = spectrum(alpha).eigenvalues
    if ev.size == 0:
        return 1.0
    g = np.abs(1.0 + 1j / ev)
    return float((g.max() / g.min()) ** (2 * int(k)))


# --- time flows --------------------------------------------------------------


def _gdhm_generators(alpha):
    n = alpha.shape[0]
    eye = np.eye(n)
    return np.linalg.inv(alpha - 1j * eye), np.linalg.inv(alpha + 1j * eye)


def flow_gdhm(q, t):
    """Time flow generating the lattice (Heisenberg magnet) solutions.

    ``theta1(t) = exp(-2t (alpha - iI)^{-1}) theta1``,
    ``theta2(t) = exp(-2t (alpha + iI)^{-1}) theta2``, and ``S(t)`` is the
    unique solution of the admissibility identity.
    """
    t = float(t)
    if t == 0.0 or q.n == 0:
        return q
    require_strong(q, need_i_free=True)
    gm, gp = _gdhm_generators(q.alpha)
    t1 = mat_exp(-2.0 * t * gm) @ q.theta1
    t2 = mat_exp(-2.0 * t * gp) @ q.theta2
    s = _lyapunov_s(q.alpha, np.hstack([t1, t2]))
    return AdmissibleQuadruple(q.alpha, s, t1, t2)


def balanced_t(q, t):
    """A well-conditioned quadruple similar to ``flow_gdhm(q, t)``.

    ``G = exp(-2t alpha (alpha^2 + I)^{-1})`` commutes with alpha and splits the
    two flow exponentials evenly:
    ``{alpha, S~(t), e^{-2it R} theta1, e^{2it R} theta2}`` with ``R = (alpha^2 + I)^{-1}``.
    The literal flow moves theta1 and theta2 by ``e^{-2t (alpha -+ iI)^{-1}}``,
    which blow up in opposite directions when alpha has eigenvalues near i.
    """
    t = float(t)
    if t == 0.0 or q.n == 0:
        return q
    require_strong(q, need_i_free=True)
    r = np.linalg.inv(q.alpha @ q.alpha + np.eye(q.n))
    t1 = mat_exp(-2j * t * r) @ q.theta1
    t2 = mat_exp(2j * t * r) @ q.theta2
    return AdmissibleQuadruple(q.alpha, _lyapunov_s(q.alpha, np.hstack([t1, t2])), t1, t2)


def gdhm_s_derivative(alpha, s, lam, j):
    """Right-hand side of the linear ODE satisfied by ``S(t)`` under :func:`flow_gdhm`."""
    n = alpha.shape[0]
    eye = np.eye(n)
    am, ap = np.linalg.inv(alpha - 1j * eye), np.linalg.inv(alpha + 1j * eye)
    ah = alpha.conj().T
    amh, aph = np.linalg.inv(ah - 1j * eye), np.linalg.inv(ah + 1j * eye)
    sq = np.linalg.inv(alpha @ alpha + eye)
    sqh = np.linalg.inv(ah @ ah + eye)
    ljl = lam @ j @ lam.conj().T
    return -(am @ s + ap @ s + s @ aph + s @ amh + 2.0 * sq @ (alpha @ ljl + ljl @ ah) @ sqh)


def rk4(f, y0, t, steps):
    """Classical RK4 for ``y' = f(s, y)`` on ``[0, t]``."""
    y = np.array(y0, dtype=complex)
    h = t / steps
    s = 0.0
    for _ in range(steps):
        k1 = f(s, y)
        k2 = f(s + h / 2, y + h / 2 * k1)
        k3 = f(s + h / 2, y + h / 2 * k2)
        k4 = f(s + h, y + h * k3)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        s += h
    return y


def flow_gdhm_ode(q, t, steps=400):
    """``S(t)`` of :func:`flow_gdhm` by RK4 on its ODE; cross-check only."""
    gm, gp = _gdhm_generators(q.alpha)
    j = q.j

    def rhs(s, y):
        lam = np.hstack([mat_exp(-2.0 * s * gm) @ q.theta1, mat_exp(-2.0 * s * gp) @ q.theta2])
        return gdhm_s_derivative(q.alpha, y, lam, j)

    return rk4(rhs, q.s0, float(t), steps)


def _zs_exponentials(q, t, p):
    ap = np.linalg.matrix_power(q.alpha, p)
    return mat_exp(-1j * t * ap), mat_exp(1j * t * ap)


def flow_zs(q, t, p):
    """Zakharov-Shabat time flow of order ``p`` (2: NLS, 3: mKdV).

    ``theta1(t) = exp(-it alpha^p) theta1``, ``theta2(t) = exp(it alpha^p) theta2``;
    ``S(t)`` from the admissibility identity.
    """
    if p not in (2, 3):
        raise ValueError("p must be 2 or 3")
    t = float(t)
    if t == 0.0 or q.n == 0:
        return q
    require_strong(q)
    em, ep = _zs_exponentials(q, t, p)
    t1, t2 = em @ q.theta1, ep @ q.theta2
    s = _lyapunov_s(q.alpha, np.hstack([t1, t2]))
    return AdmissibleQuadruple(q.alpha, s, t1, t2)


def flow_zs_ode(q, t, p, steps=400):
    """``S(t)`` of :func:`flow_zs` by RK4 on the derivative of its defining integral."""
    j = q.j
    powers = [np.linalg.matrix_power(q.alpha, r) for r in range(p)]
    powers_h = [a.conj().T for a in powers]

    def rhs(s, _y):
        em, ep = _zs_exponentials(q, s, p)
        lam = np.hstack([em @ q.theta1, ep @ q.theta2])
        ljl = lam @ j @ lam.conj().T
        return sum(powers[nu - 1] @ ljl @ powers_h[p - nu] for nu in range(1, p + 1))

    return rk4(rhs, q.s0, float(t), steps)
