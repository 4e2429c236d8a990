"""Scalar quadruples with closed-form potentials.

``q1``: ``{i, 1, 1, 1}`` generates ``v(x) = 2 sech(2x)`` and the Weyl function ``i/z``.
``q2``: ``{2i, 1, sqrt2, sqrt2}`` generates the lattice potential with
``C_0 = [[-3/5, 4/5], [4/5, 3/5]]`` and discrete Weyl function ``-2i/z``.
"""

import numpy as np

from .quadruple import AdmissibleQuadruple

SQRT2 = np.sqrt(2.0)


def q1():
    return AdmissibleQuadruple([[1j]], [[1.0]], [[1.0]], [[1.0]])


def q2():
    return AdmissibleQuadruple([[2j]], [[1.0]], [[SQRT2]], [[SQRT2]])


def zero_quadruple(n=1, m1=1, m2=1):
    """``alpha = 0``, ``S0 = I``, zero thetas: admissible, potential identically zero."""
    return AdmissibleQuadruple(
        np.zeros((n, n)), np.eye(n), np.zeros((n, m1)), np.zeros((n, m2))
    )
