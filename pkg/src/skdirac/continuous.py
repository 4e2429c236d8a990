"""Continuous skew-selfadjoint Dirac system ``y' = (izj + jV(x)) y``.

``V = [[0, v], [v^*, 0]]`` with the pseudo-exponential potential ``v(x)``
generated by an admissible quadruple. Everything is evaluated in closed form
from the x-flow ``Sigma(x)`` of :mod:`skdirac.quadruple`.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg as spla

from .errors import ConsistencyError, DimensionError, PoleError
from .matkernel import norm2
from .quadruple import balanced_x, inner_q, phi1, transfer


@dataclass(frozen=True, eq=False)
class GridSeries:
    """Matrix samples ``values[i]`` taken at strictly increasing ``abscissae[i]``."""

    abscissae: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.abscissae, dtype=float)
        vals = np.asarray(self.values, dtype=complex)
        if xs.ndim != 1 or vals.ndim != 3 or len(xs) != len(vals):
            raise DimensionError("abscissae and values must have equal lengths")
        if len(xs) > 1 and np.any(np.diff(xs) <= 0):
            raise ValueError("abscissae must be strictly increasing")
        object.__setattr__(self, "abscissae", xs)
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.abscissae)

    def norms(self):
        return np.array([norm2(v) for v in self.values])


def _check_x(x):
    x = float(x)
    if x < 0:
        raise ValueError("x must be non-negative")
    return x


def _potential_from(sig):
    if sig.n == 0:
        return np.zeros((sig.m1, sig.m2), dtype=complex)
    cho = spla.cho_factor(sig.s0)
    return 2.0 * sig.theta1.conj().T @ spla.cho_solve(cho, sig.theta2)


def potential(q, x):
    """``v(x) = 2 theta1(x)^* S(x)^{-1} theta2(x)`` (an ``m1 x m2`` matrix).

    Evaluated on :func:`~skdirac.quadruple.balanced_x`, which is similar to
    ``Sigma(x)`` and gives the same value without the ill-conditioning of ``S(x)``.
    """
    return _potential_from(balanced_x(q, _check_x(x)))


def potential_alt(q, x):
    """``v(x) = 2 theta1^* Q(x)^{-1} theta2`` with ``Q(x) = [S0 -iI] e^{-2ixA} [I; 0]``.

    The exponentials ``e^{+-ix alpha}`` of :func:`potential` cancel here, so
    this is an independent route to the same value.
    """
    x = _check_x(x)
    if q.n == 0:
        return np.zeros((q.m1, q.m2), dtype=complex)
    inner = inner_q(q, x)
    if np.linalg.cond(inner) > 1e14:
        raise ConsistencyError("Q(x) is numerically singular; the quadruple is not admissible")
    return 2.0 * q.theta1.conj().T @ np.linalg.solve(inner, q.theta2)


def potential_grid(q, xs):
    """Batch version of :func:`potential`; ``S(x)`` is Cholesky-factored once per abscissa."""
    xs = np.asarray(xs, dtype=float)
    return GridSeries(xs, np.array([_potential_from(balanced_x(q, _check_x(x))) for x in xs]))


def potential_sup(q, x_max=50.0, steps=500):
    """``max ||v(x)||`` over a uniform grid on ``[0, x_max]``."""
    return float(potential_grid(q, np.linspace(0.0, x_max, steps + 1)).norms().max())


def half_plane_constant(q, x_max=50.0, steps=500):
    """Default ``M`` for the Weyl half-plane ``Im z > M``: ``sup ||v|| + 1`` on a grid."""
    return potential_sup(q, x_max, steps) + 1.0


def signature_exponential(q, x, z):
    """``e^{ixzj} = diag(e^{ixz} I_{m1}, e^{-ixz} I_{m2})``."""
    d = np.concatenate([np.full(q.m1, np.exp(1j * x * z)), np.full(q.m2, np.exp(-1j * x * z))])
    return np.diag(d)


def dirac_matrix(q, x, z):
    """Coefficient ``izj + jV(x)`` of the system."""
    v = potential(q, x)
    big_v = np.block(
        [[np.zeros((q.m1, q.m1)), v], [v.conj().T, np.zeros((q.m2, q.m2))]]
    )
    j = q.j
    return 1j * complex(z) * j + j @ big_v


def fundamental(q, x, z):
    """``u(x, z) = W_{Sigma(x)}(z) e^{ixzj} W_{Sigma(0)}(z)^{-1}``, normalized by ``u(0, z) = I``."""
    x = _check_x(x)
    z = complex(z)
    w0 = transfer(q, z)
    if np.linalg.cond(w0) > 1e14:
        raise PoleError(f"W(z) is not invertible at z = {z}")
    wx = transfer(balanced_x(q, x), z)
    return wx @ signature_exponential(q, x, z) @ np.linalg.inv(w0)


def weyl(q):
    """Weyl function ``i theta2^* S0^{-1} (zI - alpha_x)^{-1} theta1``, ``alpha_x = alpha - i theta1 theta1^* S0^{-1}``."""
    return phi1(q)


@dataclass(frozen=True)
class WeylCertificate:
    """Outcome of :func:`weyl_certificate`.

    integral
        Trapezoid value of ``int_0^{x_max} tr([I phi^*] u^* u [I; phi]) dx``.
    tail_fraction
        Share of ``integral`` contributed by the last 20% of the grid.
    decay_rate
        Least-squares slope of ``log tr(integrand)`` over that tail window
        (negative when the integrand decays).
    converged
        ``tail_fraction < 0.01``.
    """

    integral: float
    tail_fraction: float
    decay_rate: float
    converged: bool


def weyl_certificate(q, z, x_max=30.0, steps=2000, phi=None):
    """Numerical check of the square-integrability that characterizes the Weyl function.

    ``phi`` defaults to ``weyl(q)(z)``; pass another ``m2 x m1`` matrix to test
    a different candidate. The integrand is ``[I phi^*] u^* u [I; phi]``.

    In exact arithmetic ``W(z)^{-1} [I; phi]`` has zero lower block; in
    floating point that block carries rounding noise which ``e^{-ixzj}``
    amplifies like ``e^{x Im z}``, so for large ``x_max * Im z`` even the true
    Weyl function eventually shows growth. Keep ``e^{2 x_max Im z} * 1e-16``
    small compared with the integral when interpreting the result.
    """
    z = complex(z)
    if phi is None:
        phi = weyl(q)(z)
    phi = np.asarray(phi, dtype=complex).reshape(q.m2, q.m1)
    col = np.vstack([np.eye(q.m1), phi])
    w0 = transfer(q, z)
    coeff = np.linalg.solve(w0, col)
    xs = np.linspace(0.0, float(x_max), int(steps))
    vals = np.empty(len(xs))
    for i, x in enumerate(xs):
        y = transfer(balanced_x(q, x), z) @ signature_exponential(q, x, z) @ coeff
        vals[i] = float(np.real(np.vdot(y, y)))
    total = float(np.trapezoid(vals, xs))
    start = int(0.8 * len(xs))
    tail = float(np.trapezoid(vals[start:], xs[start:]))
    frac = tail / total if total > 0 else 0.0
    logs = np.log(np.maximum(vals[start:], 1e-300))
    rate = float(np.polyfit(xs[start:], logs, 1)[0])
    return WeylCertificate(total, frac, rate, bool(frac < 0.01))
