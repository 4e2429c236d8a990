"""Strictly proper rational matrix functions in state-space form."""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, PoleError
from .matkernel import as_matrix, minimal_realization, norm2, spectrum

CONTINUOUS = "continuous"
DISCRETE = "discrete"
CONVENTIONS = (CONTINUOUS, DISCRETE)


@dataclass(frozen=True, eq=False)
class StateSpaceRealization:
    """A strictly proper rational function stored as ``(gamma, input_map, output_map)``.

    ``continuous``: ``phi(z) = i * out @ inv(zI - gamma) @ in``
    ``discrete``:   ``phi(z) = -i * out @ inv(zI + gamma) @ in``

    The two conventions match the two inverse problems; any function can be
    stored in either (see :meth:`as_convention`).
    """

    gamma: np.ndarray
    input_map: np.ndarray
    output_map: np.ndarray
    convention: str = CONTINUOUS

    def __post_init__(self):
        if self.convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {self.convention!r}")
        g = as_matrix(self.gamma, "gamma")
        b = as_matrix(self.input_map, "input_map")
        c = as_matrix(self.output_map, "output_map")
        n = g.shape[0]
        if g.shape != (n, n) or b.shape[0] != n or c.shape[1] != n:
            raise DimensionError(
                f"non-conforming realization: gamma {g.shape}, in {b.shape}, out {c.shape}"
            )
        for name, arr in (("gamma", g), ("input_map", b), ("output_map", c)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @classmethod
    def zero(cls, rows, cols, convention=CONTINUOUS):
        return cls(np.zeros((0, 0)), np.zeros((0, cols)), np.zeros((rows, 0)), convention)

    @property
    def state_dim(self):
        return self.gamma.shape[0]

    @property
    def shape(self):
        """``(rows, cols)`` of the function values."""
        return self.output_map.shape[0], self.input_map.shape[1]

    def poles(self):
        g = self.gamma if self.convention == CONTINUOUS else -self.gamma
        return spectrum(g).eigenvalues

    def __call__(self, z):
        z = complex(z)
        n = self.state_dim
        if n == 0:
            return np.zeros(self.shape, dtype=complex)
        poles = self.poles()
        if np.min(np.abs(poles - z)) < 1e-12 * (1.0 + norm2(self.gamma)):
            raise PoleError(f"z = {z} is a pole")
        if self.convention == CONTINUOUS:
            return 1j * self.output_map @ np.linalg.solve(z * np.eye(n) - self.gamma, self.input_map)
        return -1j * self.output_map @ np.linalg.solve(z * np.eye(n) + self.gamma, self.input_map)

    def as_convention(self, convention):
        """Same function, stored in the other convention if needed."""
        if convention == self.convention:
            return self
        # i C (zI - A)^{-1} B = -i (-C) (zI + (-A))^{-1} B, and symmetrically
        return StateSpaceRealization(-self.gamma, self.input_map, -self.output_map, convention)

    def minimal(self):
        g, b, c, _ = minimal_realization(self.gamma, self.input_map, self.output_map)
        return StateSpaceRealization(g, b, c, self.convention)

    def max_difference(self, other, samples):
        """``max_z ||self(z) - other(z)||`` over ``samples``."""
        return max((norm2(self(z) - other(z)) for z in samples), default=0.0)
