from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used across the package.

    rank_rtol
        Relative factor in the rank tolerance ``dim * sigma_max * rank_rtol``.
    admissible
        Relative bound on the residual of ``alpha S - S alpha^* - i Lambda Lambda^*``.
    hermitian
        Relative bound on ``||S - S^*||``.
    strong_margin
        Eigenvalues of alpha count as inside the open upper half-plane only
        when ``Im lambda > strong_margin``.
    pole_rtol
        ``z`` is a pole when ``dist(z, spectrum) < pole_rtol * (1 + ||alpha||)``.
    """

    rank_rtol: float = 1e-12
    admissible: float = 1e-9
    hermitian: float = 1e-10
    strong_margin: float = 1e-10
    pole_rtol: float = 1e-12


DEFAULT_TOLERANCES = Tolerances()
