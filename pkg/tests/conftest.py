import time

import numpy as np
import pytest

from qutrit_dsd.states import DensityMatrix

SUITE_BUDGET_S = 60.0

_acceptance_lines: list[str] = []
_session_start = 0.0


def record_criterion(label: str, ok: bool, detail: str) -> None:
    _acceptance_lines.append(f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}")


def pytest_sessionstart(session):
    global _session_start
    _session_start = time.perf_counter()


def pytest_sessionfinish(session, exitstatus):
    elapsed = time.perf_counter() - _session_start
    if _acceptance_lines:
        ok = elapsed < SUITE_BUDGET_S
        record_criterion("C11 suite runtime", ok, f"{elapsed:.1f} s (budget {SUITE_BUDGET_S:.0f} s)")
        if not ok:
            session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_density(rng, n=9, rank=None) -> np.ndarray:
    k = n if rank is None else rank
    g = rng.normal(size=(n, k)) + 1j * rng.normal(size=(n, k))
    m = g @ g.conj().T
    return m / np.trace(m).real


def random_state(rng, dim_a=3, dim_b=3, rank=None) -> DensityMatrix:
    return DensityMatrix(random_density(rng, dim_a * dim_b, rank), dim_a, dim_b)


def random_unitary(rng, n) -> np.ndarray:
    """Haar unitary from the QR decomposition of a complex Gaussian matrix."""
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_hermitian(rng, n) -> np.ndarray:
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (a + a.conj().T)
