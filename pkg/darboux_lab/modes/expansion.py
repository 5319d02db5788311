"""Coefficient vectors over a mode index and their quadrature statistics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from darboux_lab.utils.errors import CapExceeded

MODE_CAP = 64

Direction = Literal["raise", "lower"]


@dataclass(frozen=True)
class Quadratures:
    """Uncertainties of q = (A+ + A-)/sqrt(2) and p = i(A+ - A-)/sqrt(2)."""

    dq: float
    dp: float

    @property
    def product(self) -> float:
        return self.dq * self.dp


@dataclass(frozen=True)
class ModeExpansion:
    """Coefficients c_0..c_N over basis states indexed by n <= MODE_CAP."""

    coeffs: np.ndarray

    def __post_init__(self) -> None:
        coeffs = np.array(self.coeffs, dtype=complex).ravel()
        if coeffs.size == 0:
            raise ValueError("an expansion needs at least one coefficient")
        if coeffs.size > MODE_CAP + 1:
            raise CapExceeded(f"expansion of length {coeffs.size} exceeds the cap n <= {MODE_CAP}")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def basis(cls, n: int, size: int | None = None) -> "ModeExpansion":
        """Unit vector e_n."""
        length = n + 1 if size is None else size
        coeffs = np.zeros(length, dtype=complex)
        coeffs[n] = 1.0
        return cls(coeffs)

    @property
    def n_max(self) -> int:
        return self.coeffs.size - 1

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.coeffs) ** 2

    def ladder(self, direction: Direction) -> "ModeExpansion":
        """Exact index-space action of the lowering or raising operator.

        Lowering sends c_n e_n to sqrt(n) c_n e_{n-1}; raising sends it to
        sqrt(n+1) c_n e_{n+1}, growing the vector by one entry up to the cap.

        Raises:
            CapExceeded: If raising would populate an index above MODE_CAP.
        """
        c = self.coeffs
        if direction == "lower":
            lowered = np.sqrt(np.arange(1, c.size)) * c[1:]
            return ModeExpansion(lowered if lowered.size else np.zeros(1, dtype=complex))
        if direction != "raise":
            raise ValueError(f"direction must be 'raise' or 'lower', got {direction!r}")
        if c.size == MODE_CAP + 1:
            if c[-1] != 0:
                raise CapExceeded(f"raising populates n = {MODE_CAP + 1} beyond the cap")
            c = c[:-1]
        raised = np.zeros(c.size + 1, dtype=complex)
        raised[1:] = np.sqrt(np.arange(1, c.size + 1)) * c
        return ModeExpansion(raised)

    def inner(self, other: "ModeExpansion") -> complex:
        size = max(self.coeffs.size, other.coeffs.size)
        return complex(np.vdot(self._padded(size), other._padded(size)))

    def _padded(self, size: int) -> np.ndarray:
        out = np.zeros(size, dtype=complex)
        out[: self.coeffs.size] = self.coeffs
        return out

    def quadratures(self) -> Quadratures:
        """Quadrature uncertainties from the ladder algebra, with no grid involved.

        The vector is padded by one entry so the truncated lowering and raising
        matrices act exactly on it.
        """
        size = self.coeffs.size + 1
        c = self._padded(size)
        lower = np.diag(np.sqrt(np.arange(1, size)), k=1)
        raise_ = lower.T
        q = (raise_ + lower) / np.sqrt(2.0)
        p = 1j * (raise_ - lower) / np.sqrt(2.0)
        norm2 = np.vdot(c, c).real
        spreads = []
        for op in (q, p):
            image = op @ c
            mean = np.vdot(c, image).real / norm2
            second = np.vdot(image, image).real / norm2
            spreads.append(float(np.sqrt(max(second - mean**2, 0.0))))
        return Quadratures(dq=spreads[0], dp=spreads[1])
