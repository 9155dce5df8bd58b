"""Bipartite density matrices and the qutrit state families.

Basis convention: for a d-level party, ket ``|k>`` sits at index ``d - 1 - k``,
so for two qutrits the ordering is |2,2>, |2,1>, |2,0>, |1,2>, ..., |0,0>.
Every constructor goes through :func:`basis_index`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DimensionError, DomainError
from .matrixcore import TOL, as_matrix, hermitian_eigenvalues, hermiticity_defect, kron


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated state on C^dim_a (x) C^dim_b.

    The stored matrix is a read-only copy. Pass ``validate=False`` to wrap a
    matrix that is only approximately a state (e.g. for out-of-range family
    parameters).
    """

    matrix: np.ndarray
    dim_a: int
    dim_b: int
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        m = as_matrix(self.matrix).copy()
        n = self.dim_a * self.dim_b
        if m.shape != (n, n):
            raise DimensionError(
                f"matrix shape {m.shape} does not match dims {self.dim_a}x{self.dim_b}"
            )
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        if self.validate:
            self._check()

    def _check(self):
        defect = hermiticity_defect(self.matrix)
        if defect > TOL.hermitian:
            raise DomainError(f"density matrix is not Hermitian (defect {defect:.3g})")
        tr = np.trace(self.matrix)
        if abs(tr - 1.0) > TOL.trace:
            raise DomainError(f"density matrix trace is {tr:.12g}, expected 1")
        lo = hermitian_eigenvalues(self.matrix)[0]
        if lo < -TOL.positivity:
            raise DomainError(f"density matrix has negative eigenvalue {lo:.3g}")

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b

    def eigenvalues(self) -> np.ndarray:
        return hermitian_eigenvalues(self.matrix)

    def reduced_a(self) -> np.ndarray:
        t = self.matrix.reshape(self.dim_a, self.dim_b, self.dim_a, self.dim_b)
        return np.einsum("ikjk->ij", t)

    def reduced_b(self) -> np.ndarray:
        t = self.matrix.reshape(self.dim_a, self.dim_b, self.dim_a, self.dim_b)
        return np.einsum("kikj->ij", t)

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def conjugated(self, u) -> "DensityMatrix":
        """Return ``u rho u^H`` as a new state."""
        u = as_matrix(u)
        return DensityMatrix(u @ self.matrix @ u.conj().T, self.dim_a, self.dim_b)


@dataclass(frozen=True)
class HorodeckiParams:
    alpha: float

    def __post_init__(self):
        if not 2.0 <= self.alpha <= 5.0:
            raise DomainError(f"alpha must lie in [2, 5], got {self.alpha}")


@dataclass(frozen=True)
class IsotropicParams:
    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise DomainError(f"p must lie in [0, 1], got {self.p}")


def basis_index(a: int, b: int, d: int = 3) -> int:
    """Matrix index of the product ket |a, b> for two d-level parties."""
    if not (0 <= a < d and 0 <= b < d):
        raise DomainError(f"level out of range for d={d}: ({a}, {b})")
    return (d - 1 - a) * d + (d - 1 - b)


def ket(a: int, b: int, d: int = 3) -> np.ndarray:
    v = np.zeros(d * d, dtype=complex)
    v[basis_index(a, b, d)] = 1.0
    return v


def level_index(k: int, d: int = 3) -> int:
    """Single-party index of level |k>."""
    return d - 1 - k


def _projector(v: np.ndarray) -> np.ndarray:
    return np.outer(v, v.conj())


def max_entangled_vector(d: int = 3) -> np.ndarray:
    if d < 2:
        raise DomainError(f"dimension must be >= 2, got {d}")
    return sum(ket(k, k, d) for k in range(d)) / np.sqrt(d)


def max_entangled(d: int = 3) -> DensityMatrix:
    return DensityMatrix(_projector(max_entangled_vector(d)), d, d)


def _sigma(pairs) -> np.ndarray:
    return sum(_projector(ket(a, b)) for a, b in pairs) / 3.0


SIGMA_PLUS_KETS = ((0, 1), (1, 2), (2, 0))
SIGMA_MINUS_KETS = ((1, 0), (2, 1), (0, 2))


def sigma_plus() -> np.ndarray:
    return _sigma(SIGMA_PLUS_KETS)


def sigma_minus() -> np.ndarray:
    return _sigma(SIGMA_MINUS_KETS)


def horodecki_state(alpha: float, *, unchecked: bool = False) -> DensityMatrix:
    """The one-parameter qutrit family mixing |Psi+> with two separable states.

    rho = 2/7 |Psi+><Psi+| + alpha/7 sigma_+ + (5 - alpha)/7 sigma_-.
    Separable for alpha in [2, 3], PPT-entangled for (3, 4], NPT for (4, 5].
    """
    if not unchecked:
        HorodeckiParams(alpha)
    m = (
        2.0 / 7.0 * _projector(max_entangled_vector(3))
        + alpha / 7.0 * sigma_plus()
        + (5.0 - alpha) / 7.0 * sigma_minus()
    )
    return DensityMatrix(m, 3, 3, validate=not unchecked)


def theta_unitary() -> np.ndarray:
    """Single-qutrit permutation |0><1| + |1><0| + |2><2|."""
    th = np.zeros((3, 3), dtype=complex)
    for out, inp in ((0, 1), (1, 0), (2, 2)):
        th[level_index(out), level_index(inp)] = 1.0
    return th


def local_rotation() -> np.ndarray:
    return kron(np.eye(3), theta_unitary())


def rotated_state(alpha: float, *, unchecked: bool = False) -> DensityMatrix:
    """``(I (x) theta) rho_alpha (I (x) theta)^H`` with theta swapping levels 0 and 1 of B."""
    rho = horodecki_state(alpha, unchecked=unchecked)
    u = local_rotation()
    return DensityMatrix(u @ rho.matrix @ u.conj().T, 3, 3, validate=not unchecked)


def isotropic_state(p: float, *, unchecked: bool = False) -> DensityMatrix:
    if not unchecked:
        IsotropicParams(p)
    m = p * _projector(max_entangled_vector(3)) + (1.0 - p) / 9.0 * np.eye(9)
    return DensityMatrix(m, 3, 3, validate=not unchecked)


def product_state(rho_a, rho_b) -> DensityMatrix:
    a, b = as_matrix(rho_a), as_matrix(rho_b)
    return DensityMatrix(kron(a, b), a.shape[0], b.shape[0])


class Family(str, Enum):
    HORODECKI = "horodecki"
    ROTATED = "rotated"
    ISOTROPIC = "isotropic"

    def build(self, param: float) -> DensityMatrix:
        if self is Family.HORODECKI:
            return horodecki_state(param)
        if self is Family.ROTATED:
            return rotated_state(param)
        return isotropic_state(param)

    def validate(self, param: float) -> None:
        if self is Family.ISOTROPIC:
            IsotropicParams(param)
        else:
            HorodeckiParams(param)
