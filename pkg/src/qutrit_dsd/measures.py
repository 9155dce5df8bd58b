"""Partial transpose, negativity, realignment (CCNR) and the 2x2 block probe."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .matrixcore import TOL, hermitian_eigenvalues, trace_norm
from .states import DensityMatrix, basis_index


@dataclass(frozen=True)
class CcnrResult:
    trace_norm: float

    @property
    def value(self) -> float:
        """``||rho^R||_1 - 1``; positive certifies entanglement."""
        return self.trace_norm - 1.0


@dataclass(frozen=True)
class BlockReport:
    label: tuple[tuple[int, int], ...]
    state: DensityMatrix | None
    is_npt: bool
    weight: float
    degenerate: bool = False


def partial_transpose_matrix(m: np.ndarray, dim_a: int, dim_b: int) -> np.ndarray:
    """Transpose the B factor: ``out[(i,j),(k,l)] = m[(i,l),(k,j)]``."""
    n = dim_a * dim_b
    if m.shape != (n, n):
        raise DimensionError(f"shape {m.shape} does not match dims {dim_a}x{dim_b}")
    return m.reshape(dim_a, dim_b, dim_a, dim_b).transpose(0, 3, 2, 1).reshape(n, n)


def partial_transpose(rho: DensityMatrix) -> np.ndarray:
    return partial_transpose_matrix(rho.matrix, rho.dim_a, rho.dim_b)


def pt_eigenvalues(rho: DensityMatrix) -> np.ndarray:
    return hermitian_eigenvalues(partial_transpose(rho))


def min_pt_eigenvalue(rho: DensityMatrix) -> float:
    return float(pt_eigenvalues(rho)[0])


def negativity(rho: DensityMatrix) -> float:
    """Sum of the magnitudes of the negative partial-transpose eigenvalues."""
    ev = pt_eigenvalues(rho)
    return float(np.abs(ev[ev < 0]).sum())


def is_ppt(rho: DensityMatrix, tol: float = TOL.ppt) -> bool:
    if tol < 0:
        raise ValueError("tol must be non-negative")
    return min_pt_eigenvalue(rho) >= -tol


def realign_matrix(m: np.ndarray, dim_a: int, dim_b: int) -> np.ndarray:
    """``R[(i,j),(k,l)] = m[(i,k),(j,l)]``; shape ``(dim_a**2, dim_b**2)``."""
    n = dim_a * dim_b
    if m.shape != (n, n):
        raise DimensionError(f"shape {m.shape} does not match dims {dim_a}x{dim_b}")
    return m.reshape(dim_a, dim_b, dim_a, dim_b).transpose(0, 2, 1, 3).reshape(
        dim_a * dim_a, dim_b * dim_b
    )


def realign(rho: DensityMatrix) -> np.ndarray:
    if rho.dim_a != rho.dim_b:
        raise DimensionError("realignment is implemented for d x d systems only")
    return realign_matrix(rho.matrix, rho.dim_a, rho.dim_b)


def ccnr(rho: DensityMatrix) -> CcnrResult:
    return CcnrResult(trace_norm(realign(rho)))


# Each block lists its four kets A-major, so the extracted 4x4 is a 2x2 system.
QUBIT_BLOCKS: tuple[tuple[tuple[int, int], ...], ...] = (
    ((1, 1), (1, 0), (0, 1), (0, 0)),
    ((2, 2), (2, 1), (0, 2), (0, 1)),
    ((2, 2), (2, 0), (1, 2), (1, 0)),
)


def two_qubit_blocks(rho: DensityMatrix, tol: float = TOL.ppt) -> list[BlockReport]:
    """Project onto each 2x2 subspace and test the renormalized block for NPT.

    Any NPT block means the parent qutrit state is distillable.
    """
    if (rho.dim_a, rho.dim_b) != (3, 3):
        raise DimensionError("block probe expects a 3x3 system")
    reports = []
    for label in QUBIT_BLOCKS:
        idx = [basis_index(a, b) for a, b in label]
        sub = rho.matrix[np.ix_(idx, idx)]
        weight = float(np.trace(sub).real)
        if weight < TOL.block_weight:
            reports.append(BlockReport(label, None, False, weight, degenerate=True))
            continue
        block = DensityMatrix(sub / weight, 2, 2, validate=False)
        reports.append(BlockReport(label, block, min_pt_eigenvalue(block) < -tol, weight))
    return reports
