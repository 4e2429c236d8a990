"""Random admissible quadruples and realizations for experiments and tests."""

import numpy as np

from .matkernel import herm, norm2, spectrum
from .quadruple import AdmissibleQuadruple, is_strong, k_growth_spread
from .realization import CONTINUOUS, StateSpaceRealization


def complex_normal(rng, shape):
    return (rng.normal(size=shape) + 1j * rng.normal(size=shape)) / np.sqrt(2.0)


def random_pd(rng, n, cond=4.0):
    """Hermitian positive definite matrix with eigenvalues in ``[1, cond]``."""
    u, _ = np.linalg.qr(complex_normal(rng, (n, n)))
    w = rng.uniform(1.0, cond, size=n)
    return herm((u * w) @ u.conj().T)


def random_quadruple(rng, n, m1, m2, theta_scale=(0.8, 1.5), herm_scale=(0.5, 1.5), general_s0=True):
    """Admissible quadruple built as ``alpha = H + (i/2) Lambda Lambda^*`` with ``S0 = I``.

    ``||Lambda||`` and ``||H||`` are drawn uniformly from ``theta_scale`` and
    ``herm_scale`` so that ``||alpha|| = O(1)`` whatever the dimensions.
    With ``general_s0`` the result is conjugated by a random positive definite
    ``T``: ``{T alpha T^{-1}, T T^*, T theta1, T theta2}`` stays admissible.
    """
    lam = complex_normal(rng, (n, m1 + m2))
    if lam.size:
        lam *= rng.uniform(*theta_scale) / norm2(lam)
    t1, t2 = lam[:, :m1], lam[:, m1:]
    h = herm(complex_normal(rng, (n, n)))
    if n:
        h *= rng.uniform(*herm_scale) / norm2(h)
    alpha = h + 0.5j * lam @ lam.conj().T
    s0 = np.eye(n, dtype=complex)
    if general_s0 and n:
        t = random_pd(rng, n, cond=2.0)
        alpha = t @ alpha @ np.linalg.inv(t)
        s0 = herm(t @ t.conj().T)
        t1, t2 = t @ t1, t @ t2
    return AdmissibleQuadruple(alpha, s0, t1, t2)


def random_strong_quadruple(
    rng,
    n,
    m1,
    m2,
    min_imag=0.05,
    i_margin=0.1,
    min_modulus=0.1,
    k_spread=None,
    max_tries=1000,
    **kwargs,
):
    """Strongly admissible quadruple with a well-separated spectrum.

    Draws are rejected until ``Im lambda >= min_imag``, ``|lambda| >= min_modulus``
    and ``|lambda - i| >= i_margin`` for every eigenvalue of alpha. These are
    conditioning filters: the flows involve ``alpha^{-1}`` and ``(alpha -+ iI)^{-1}``.
    ``k_spread=(k, bound)`` further requires ``k_growth_spread(alpha, k) <= bound``
    so that ``S_0 ... S_k`` stay numerically positive definite.
    """
    for _ in range(max_tries):
        q = random_quadruple(rng, n, m1, m2, **kwargs)
        ev = spectrum(q.alpha).eigenvalues
        if n and (
            ev.imag.min() < min_imag
            or np.abs(ev).min() < min_modulus
            or np.abs(ev - 1j).min() < i_margin
        ):
            continue
        if k_spread is not None and k_growth_spread(q.alpha, k_spread[0]) > k_spread[1]:
            continue
        if is_strong(q).strong:
            return q
    raise RuntimeError("could not draw a well-conditioned strongly admissible quadruple")


def random_realization(rng, n, rows, cols, convention=CONTINUOUS, scale=1.0):
    """Generic (hence minimal) strictly proper realization of McMillan degree ``n``."""
    gamma = scale * complex_normal(rng, (n, n)) / np.sqrt(max(n, 1))
    b = complex_normal(rng, (n, cols))
    c = complex_normal(rng, (rows, n))
    return StateSpaceRealization(gamma, b, c, convention)


def sample_points(rng, count, poles=(), im_range=(0.5, 3.0), re_range=(-3.0, 3.0), min_dist=0.3):
    """Points in a box of the upper half-plane kept ``min_dist`` away from ``poles``."""
    poles = np.asarray(list(poles), dtype=complex)
    out = []
    while len(out) < count:
        z = complex(rng.uniform(*re_range), rng.uniform(*im_range))
        if poles.size and np.min(np.abs(poles - z)) < min_dist:
            continue
        out.append(z)
    return out


def relative_scale(q):
    return 1.0 + norm2(q.alpha) * norm2(q.s0)
