"""Dense complex matrix kernels for the small (at most 9x9) matrices used here.

Two eigenvalue routes are available. ``method="lapack"`` (the default) calls
``numpy.linalg``; ``method="jacobi"`` runs a self-contained cyclic Jacobi
solver. The two are cross-checked in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, SymmetryError


@dataclass(frozen=True)
class Tolerances:
    hermitian: float = 1e-10
    trace: float = 1e-10
    positivity: float = 1e-10
    jacobi_offdiag: float = 1e-12
    singular_clamp: float = 1e-12
    ppt: float = 1e-10
    block_weight: float = 1e-14
    jacobi_max_sweeps: int = 100


TOL = Tolerances()


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-d matrix, got shape {a.shape}")
    return a


def _require_square(a: np.ndarray) -> None:
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")


def hermiticity_defect(m) -> float:
    a = as_matrix(m)
    _require_square(a)
    return float(np.max(np.abs(a - a.conj().T), initial=0.0))


def jacobi_eigenvalues(m) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the pivot ``a[p, q]`` and then
    applies the real symmetric Jacobi rotation, so the pivot is annihilated
    exactly. Sweeps stop once the off-diagonal Frobenius norm drops below
    ``TOL.jacobi_offdiag`` relative to the matrix norm.
    """
    a = as_matrix(m).copy()
    _require_square(a)
    n = a.shape[0]
    a = 0.5 * (a + a.conj().T)
    scale = max(1.0, float(np.linalg.norm(a)))
    for _ in range(TOL.jacobi_max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off < TOL.jacobi_offdiag * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                if abs(tau) > 1e150:
                    t = 0.5 / tau
                else:
                    t = 1.0 / (abs(tau) + np.sqrt(1.0 + tau * tau))
                    if tau < 0:
                        t = -t
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                w = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ w
                a[idx, :] = w.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
    else:
        raise RuntimeError("Jacobi eigensolver did not converge")
    return np.sort(np.diag(a).real)


def hermitian_eigenvalues(m, method: str = "lapack") -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix.

    Raises DimensionError for non-square input and SymmetryError when
    ``max|m - m^H|`` exceeds ``TOL.hermitian``.
    """
    a = as_matrix(m)
    _require_square(a)
    defect = hermiticity_defect(a)
    if defect > TOL.hermitian:
        raise SymmetryError(f"matrix is not Hermitian (max |m - m^H| = {defect:.3g})")
    if method == "lapack":
        return np.linalg.eigvalsh(a)
    if method == "jacobi":
        return jacobi_eigenvalues(a)
    raise ValueError(f"unknown eigenvalue method {method!r}")


def singular_values(m, method: str = "lapack") -> np.ndarray:
    """Singular values in descending order.

    The ``jacobi`` route takes square roots of the eigenvalues of ``m^H m``;
    that squares the condition number, so singular values near zero come
    back with an absolute error around 1e-9.
    """
    a = as_matrix(m)
    if method == "lapack":
        return np.linalg.svd(a, compute_uv=False)
    if method == "jacobi":
        ev = jacobi_eigenvalues(a.conj().T @ a)
        if ev[0] < -TOL.singular_clamp * max(1.0, ev[-1]):
            raise ArithmeticError(f"Gram matrix has a negative eigenvalue {ev[0]:.3g}")
        return np.sqrt(np.clip(ev, 0.0, None))[::-1]
    raise ValueError(f"unknown singular value method {method!r}")


def trace_norm(m, method: str = "lapack") -> float:
    a = as_matrix(m)
    _require_square(a)
    return float(np.sum(singular_values(a, method=method)))


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))
