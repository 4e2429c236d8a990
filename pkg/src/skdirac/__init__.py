"""Explicit direct and inverse problems for skew-selfadjoint Dirac systems.

Continuous and discrete systems with pseudo-exponential potentials, generated
by admissible quadruples, and the explicit solutions of the generalized
discrete Heisenberg magnet model.
"""

from .continuous import fundamental, potential, potential_alt, weyl, weyl_certificate
from .discrete import fundamental_w, h_pm, potential_seq, weyl_d
from .evolution import (
    gdhm_C,
    gdhm_H,
    gdhm_residual,
    mkdv_residual,
    nls_residual,
    state,
    vxt,
    weyl_evolution,
    zcc_residual,
)
from .inverse import invert_continuous, invert_discrete, roundtrip_error
from .quadruple import (
    AdmissibleQuadruple,
    associate,
    flow_gdhm,
    flow_zs,
    is_strong,
    phi1,
    phi2,
    propagate_k,
    propagate_x,
    transfer,
    validate,
)
from .realization import StateSpaceRealization

__version__ = "0.1.0"
