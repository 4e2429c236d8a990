"""Dense complex linear-algebra kernels.

Everything here works on plain ``numpy`` arrays of dtype ``complex128`` and is
pure: inputs are never modified. Empty (0 x 0) operands are accepted wherever
the mathematics makes sense, because the degenerate quadruple with no state
space is a legitimate object downstream.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg as spla

from .config import DEFAULT_TOLERANCES
from .errors import (
    ConvergenceError,
    DimensionError,
    NonFiniteError,
    NotHermitianError,
    NotPositiveDefiniteError,
    RiccatiError,
    SylvesterSingularError,
)

RANK_RTOL = DEFAULT_TOLERANCES.rank_rtol


def as_matrix(a, name="matrix"):
    """Return ``a`` as a finite 2-D complex array (copy)."""
    m = np.array(a, dtype=complex)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFiniteError(f"{name} has non-finite entries")
    return m


def _square(a, name):
    m = as_matrix(a, name)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {m.shape}")
    return m


def norm2(a):
    """Spectral norm; 0 for empty matrices."""
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def herm(a):
    """Hermitian part ``(a + a^*) / 2``."""
    return 0.5 * (a + a.conj().T)


def mat_exp(a):
    """Matrix exponential by scaling and squaring with a degree-13 Pade approximant."""
    a = _square(a, "A")
    if a.shape[0] == 0:
        return a.copy()
    return spla.expm(a)


def pd_sqrt(s, inverse=False):
    """Hermitian positive definite square root of ``s`` (or its inverse).

    Raises
    ------
    NotHermitianError
        If ``||s - s^*|| > 1e-10 ||s||``.
    NotPositiveDefiniteError
        If the smallest eigenvalue is not positive.
    """
    s = _square(s, "S")
    if s.shape[0] == 0:
        return s.copy()
    scale = norm2(s)
    if norm2(s - s.conj().T) > DEFAULT_TOLERANCES.hermitian * max(scale, 1e-300):
        raise NotHermitianError("matrix is not Hermitian")
    w, v = np.linalg.eigh(herm(s))
    if w[0] <= 0.0:
        raise NotPositiveDefiniteError(f"matrix is not positive definite (min eigenvalue {w[0]:.3e})")
    root = np.sqrt(w)
    if inverse:
        root = 1.0 / root
    return herm((v * root) @ v.conj().T)


def sylvester_solve(a, b, c, sep_rtol=1e-13):
    """Solve ``A X + X B = C`` (Bartels-Stewart).

    A unique solution exists iff the spectra of ``A`` and ``-B`` are disjoint;
    when the smallest gap ``|lambda + mu|`` falls below
    ``sep_rtol * (1 + ||A|| + ||B||)`` we refuse rather than return garbage.
    """
    a = _square(a, "A")
    b = _square(b, "B")
    c = as_matrix(c, "C")
    p, q = a.shape[0], b.shape[0]
    if c.shape != (p, q):
        raise DimensionError(f"C must be {p}x{q}, got {c.shape}")
    if p == 0 or q == 0:
        return np.zeros((p, q), dtype=complex)
    la = np.linalg.eigvals(a)
    lb = np.linalg.eigvals(b)
    gap = np.min(np.abs(la[:, None] + lb[None, :]))
    if gap <= sep_rtol * (1.0 + norm2(a) + norm2(b)):
        raise SylvesterSingularError(
            f"no unique solution: spectra of A and -B overlap (gap {gap:.3e})"
        )
    return spla.solve_sylvester(a, b, c)


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: np.ndarray
    max_imag: float
    min_imag: float

    def distance_to(self, z):
        """Distance from ``z`` to the spectrum (``inf`` when empty)."""
        if self.eigenvalues.size == 0:
            return np.inf
        return float(np.min(np.abs(self.eigenvalues - z)))


def spectrum(a):
    a = _square(a, "A")
    if a.shape[0] == 0:
        return SpectrumReport(np.zeros(0, dtype=complex), -np.inf, np.inf)
    try:
        ev = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"eigenvalue iteration failed: {exc}") from exc
    return SpectrumReport(ev, float(ev.imag.max()), float(ev.imag.min()))


def numerical_rank(m, rtol=RANK_RTOL):
    """Rank with tolerance ``dim * sigma_max * rtol``."""
    m = np.asarray(m)
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    tau = max(m.shape) * s[0] * rtol
    return int(np.sum(s > tau))


def _krylov(a, b):
    # A is rescaled to unit norm; rank of the Krylov matrix is unchanged and
    # the column blocks stay comparable in size.
    n = a.shape[0]
    na = norm2(a)
    if na > 0:
        a = a / na
    blocks = [b]
    for _ in range(n - 1):
        blocks.append(a @ blocks[-1])
    return np.hstack(blocks)


def controllability_rank(a, b, rtol=RANK_RTOL):
    """Rank of ``[B, AB, ..., A^{n-1} B]``; the pair is controllable iff it equals n."""
    a = _square(a, "A")
    b = as_matrix(b, "B")
    if b.shape[0] != a.shape[0]:
        raise DimensionError(f"B must have {a.shape[0]} rows, got {b.shape[0]}")
    if a.shape[0] == 0 or b.shape[1] == 0:
        return 0
    return numerical_rank(_krylov(a, b), rtol)


def is_controllable(a, b, rtol=RANK_RTOL):
    return controllability_rank(a, b, rtol) == np.shape(a)[0]


def is_observable(c, a, rtol=RANK_RTOL):
    a = np.asarray(a)
    return controllability_rank(a.conj().T, np.asarray(c).conj().T, rtol) == a.shape[0]


def _reachable_basis(a, b, rtol):
    n = a.shape[0]
    if n == 0 or b.shape[1] == 0:
        return np.zeros((n, 0), dtype=complex)
    k = _krylov(a, b)
    u, s, _ = np.linalg.svd(k, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((n, 0), dtype=complex)
    r = int(np.sum(s > max(k.shape) * s[0] * rtol))
    return u[:, :r]


def minimal_realization(gamma, b, c, rtol=RANK_RTOL):
    """Reduce ``C (zI - gamma)^{-1} B`` to a minimal realization.

    Two orthogonal projections: first onto the reachable subspace of
    ``(gamma, B)``, then onto the orthogonal complement of the unobservable
    subspace of what remains. Returns ``(gamma', B', C', degree)``.
    """
    gamma = _square(gamma, "gamma")
    b = as_matrix(b, "B")
    c = as_matrix(c, "C")
    n = gamma.shape[0]
    if b.shape[0] != n or c.shape[1] != n:
        raise DimensionError("realization blocks do not conform")
    v = _reachable_basis(gamma, b, rtol)
    g1, b1, c1 = v.conj().T @ gamma @ v, v.conj().T @ b, c @ v
    w = _reachable_basis(g1.conj().T, c1.conj().T, rtol)
    g2, b2, c2 = w.conj().T @ g1 @ w, w.conj().T @ b1, c1 @ w
    return g2, b2, c2, g2.shape[0]


def _sign_function(h, tol=1e-13, maxiter=100):
    """Matrix sign function by Newton (Roberts) iteration with determinant scaling."""
    z = h.copy()
    dim = z.shape[0]
    scaling = True
    for _ in range(maxiter):
        if not np.all(np.isfinite(z)):
            # eigenvalues on the imaginary axis drive the iterates to inf/nan
            raise ConvergenceError("sign function iterates are not finite")
        if scaling:
            sign, logdet = np.linalg.slogdet(z)
            if sign == 0:
                raise ConvergenceError("sign function iterate is singular")
            c = np.exp(-logdet / dim)
        else:
            c = 1.0
        znew = 0.5 * (c * z + np.linalg.inv(c * z))
        diff = np.linalg.norm(znew - z, 1)
        z = znew
        if diff < 1e-2 * np.linalg.norm(z, 1):
            scaling = False
        if diff <= tol * np.linalg.norm(z, 1):
            return z
    raise ConvergenceError("sign function iteration did not converge")


def riccati_residual(gamma, b, q, x):
    """``gamma X - X gamma^* - i X B B^* X + i Q`` (the form used by the inverse problems)."""
    g = b @ b.conj().T
    return gamma @ x - x @ gamma.conj().T - 1j * x @ g @ x + 1j * q


def care_solve(gamma, b, q, x0=None, newton_steps=5, tol=1e-10):
    """Positive definite solution of ``gamma X - X gamma^* - i X B B^* X + i Q = 0``.

    Multiplying by ``-i`` gives the standard continuous algebraic Riccati
    equation ``A^* X + X A - X B B^* X + Q = 0`` with ``A = i gamma^*``; its
    stabilizing solution is the one we want. It is read off the stable
    invariant subspace of the Hamiltonian via the matrix sign function and
    then polished by Newton (Kleinman) steps, each one a Lyapunov solve.

    ``x0`` skips the sign iteration and starts Newton from the given
    (stabilizing) matrix instead.
    """
    gamma = _square(gamma, "gamma")
    b = as_matrix(b, "B")
    q = _square(q, "Q")
    n = gamma.shape[0]
    if b.shape[0] != n or q.shape[0] != n:
        raise DimensionError("Riccati data do not conform")
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    a = 1j * gamma.conj().T
    g = b @ b.conj().T
    if x0 is None:
        h = np.block([[a, -g], [-q, -a.conj().T]])
        try:
            s = _sign_function(h)
        except (ConvergenceError, np.linalg.LinAlgError) as exc:
            raise RiccatiError(f"sign iteration failed: {exc}") from exc
        eye = np.eye(n)
        lhs = np.vstack([s[:n, n:], s[n:, n:] + eye])
        rhs = -np.vstack([s[:n, :n] + eye, s[n:, :n]])
        x = np.linalg.lstsq(lhs, rhs, rcond=None)[0]
        steps = newton_steps
    else:
        x = _square(x0, "x0")
        steps = max(newton_steps, 50)
    x = herm(x)

    def scaled_res(xx):
        return norm2(riccati_residual(gamma, b, q, xx)) / (1.0 + norm2(xx) ** 2)

    res = scaled_res(x)
    for _ in range(steps):
        if res < 1e-15:
            break
        acl = a - g @ x
        try:
            xn = herm(sylvester_solve(acl.conj().T, acl, -(q + x @ g @ x)))
        except SylvesterSingularError:
            break
        rn = scaled_res(xn)
        # Kleinman iterates from a stabilizing start converge monotonically in
        # X but not in the residual, so only the refinement path is guarded.
        if x0 is None and not rn < res:
            break
        x, res = xn, rn
    w = np.linalg.eigvalsh(x)
    if not np.all(np.isfinite(x)) or res > tol:
        raise RiccatiError(f"Riccati residual {res:.3e} above tolerance")
    if w[0] <= 0:
        raise RiccatiError("no positive definite solution (input realization not minimal?)")
    return x
