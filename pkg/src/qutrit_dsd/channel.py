"""Global dephasing of two qutrits: independent local fields plus one shared field.

The map is available two ways that must agree:

* :func:`apply_channel` sums the 27 Kraus terms ``G^H rho G`` with
  ``G = E_i F_j D_k``;
* :func:`damping_matrix_map` multiplies every entry by its closed-form damping
  factor, read from :data:`FACTOR_TABLE`.

Time enters only through a :class:`DampingProfile`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import DimensionError, DomainError
from .matrixcore import kron
from .states import DensityMatrix


@dataclass(frozen=True)
class DecoherenceParams:
    """Phase-damping rates: ``gamma1`` for the local fields, ``gamma2`` for the shared one."""

    gamma1: float
    gamma2: float

    def __post_init__(self):
        if self.gamma1 < 0 or self.gamma2 < 0:
            raise DomainError(f"rates must be non-negative, got {self.gamma1}, {self.gamma2}")


@dataclass(frozen=True)
class DampingProfile:
    gamma_a: float
    gamma_b: float
    gamma: float
    omega_a: float
    omega_b: float
    omega1: float
    omega2: float
    omega3: float

    @classmethod
    def from_factors(cls, gamma_a: float, gamma_b: float, gamma: float) -> "DampingProfile":
        for name, g in (("gamma_a", gamma_a), ("gamma_b", gamma_b), ("gamma", gamma)):
            if not 0.0 <= g <= 1.0:
                raise DomainError(f"{name} must lie in [0, 1], got {g}")
        g2 = gamma * gamma
        return cls(
            gamma_a=gamma_a,
            gamma_b=gamma_b,
            gamma=gamma,
            omega_a=math.sqrt(1.0 - gamma_a * gamma_a),
            omega_b=math.sqrt(1.0 - gamma_b * gamma_b),
            omega1=math.sqrt(1.0 - g2),
            # the minus sign is required for the gamma^4 coherence factor
            omega2=-g2 * math.sqrt(1.0 - g2),
            omega3=(1.0 - g2) * math.sqrt(1.0 + g2),
        )


IDENTITY_PROFILE = DampingProfile.from_factors(1.0, 1.0, 1.0)


def damping_profile(params: DecoherenceParams, t: float) -> DampingProfile:
    if t < 0:
        raise DomainError(f"time must be non-negative, got {t}")
    local = math.exp(-params.gamma1 * t / 2.0)
    return DampingProfile.from_factors(local, local, math.exp(-params.gamma2 * t / 2.0))


class Mode(str, Enum):
    GLOBAL = "global"
    MULTILOCAL = "multilocal"
    COLLECTIVE = "collective"


@dataclass(frozen=True)
class Scenario:
    """Noise configuration; the mode switches off one of the two rates.

    Times handed to :meth:`profile_at` are dimensionless ``Gamma t`` with
    ``Gamma`` the larger effective rate (or 1 when both vanish).
    """

    mode: Mode
    decoherence: DecoherenceParams

    @classmethod
    def of(cls, mode: str | Mode, gamma1: float = 1.0, gamma2: float = 1.0) -> "Scenario":
        return cls(Mode(mode), DecoherenceParams(gamma1, gamma2))

    @property
    def effective(self) -> DecoherenceParams:
        d = self.decoherence
        if self.mode is Mode.MULTILOCAL:
            return DecoherenceParams(d.gamma1, 0.0)
        if self.mode is Mode.COLLECTIVE:
            return DecoherenceParams(0.0, d.gamma2)
        return d

    @property
    def rate_scale(self) -> float:
        eff = self.effective
        return max(eff.gamma1, eff.gamma2) or 1.0

    def profile_at(self, gamma_t: float) -> DampingProfile:
        return damping_profile(self.effective, gamma_t / self.rate_scale)


def generalized_local_kraus(d: int, gamma_local: float) -> list[np.ndarray]:
    """Single-party phase-damping family for a d-level system.

    ``diag(1, g, ..., g)`` followed by ``d - 1`` operators each carrying
    ``sqrt(1 - g^2)`` on one excited level.
    """
    if d < 2:
        raise DomainError(f"dimension must be >= 2, got {d}")
    if not 0.0 <= gamma_local <= 1.0:
        raise DomainError(f"damping factor must lie in [0, 1], got {gamma_local}")
    omega = math.sqrt(1.0 - gamma_local**2)
    ops = [np.diag([1.0] + [gamma_local] * (d - 1)).astype(complex)]
    for k in range(1, d):
        diag = np.zeros(d, dtype=complex)
        diag[k] = omega
        ops.append(np.diag(diag))
    return ops


def collective_kraus(profile: DampingProfile) -> list[np.ndarray]:
    g, w1, w2, w3 = profile.gamma, profile.omega1, profile.omega2, profile.omega3
    return [
        np.diag([g, 1, 1, 1, g, 1, 1, 1, g]).astype(complex),
        np.diag([w1, 0, 0, 0, w2, 0, 0, 0, w2]).astype(complex),
        np.diag([0, 0, 0, 0, w3, 0, 0, 0, w3]).astype(complex),
    ]


def kraus_operators(profile: DampingProfile) -> list[np.ndarray]:
    """The 27 operators ``E_i F_j D_k``, ordered with k fastest then j then i."""
    eye = np.eye(3)
    es = [kron(e, eye) for e in generalized_local_kraus(3, profile.gamma_a)]
    fs = [kron(eye, f) for f in generalized_local_kraus(3, profile.gamma_b)]
    ds = collective_kraus(profile)
    return [e @ f @ dk for e in es for f in fs for dk in ds]


def _require_two_qutrits(rho: DensityMatrix) -> None:
    if (rho.dim_a, rho.dim_b) != (3, 3):
        raise DimensionError(f"channel acts on 3x3 systems, got {rho.dim_a}x{rho.dim_b}")


def apply_channel(rho0: DensityMatrix, profile: DampingProfile) -> DensityMatrix:
    _require_two_qutrits(rho0)
    g = np.stack(kraus_operators(profile))
    out = (g.conj().transpose(0, 2, 1) @ rho0.matrix @ g).sum(axis=0)
    return DensityMatrix(out, 3, 3, validate=False)


# Entry (r, c) of the evolved state is FACTOR_TABLE[r][c] times the initial
# entry. Tokens: g = gamma, gA = gamma_a, gB = gamma_b, trailing digit = power.
FACTOR_TABLE = (
    ("1", "g gB", "g gB", "g gA", "g4 gA gB", "g gA gB", "g gA", "g gA gB", "g4 gA gB"),
    ("g gB", "1", "gB2", "gA gB", "g gA", "gA gB2", "gA gB", "gA", "g gA gB2"),
    ("g gB", "gB2", "1", "gA gB", "g gA gB2", "gA", "gA gB", "gA gB2", "g gA"),
    ("g gA", "gA gB", "gA gB", "1", "g gB", "gB", "gA2", "gA2 gB", "g gA2 gB"),
    ("g4 gA gB", "g gA", "g gA gB2", "g gB", "1", "g gB2", "g gA2 gB", "g gA2", "gA2 gB2"),
    ("g gA gB", "gA gB2", "gA", "gB", "g gB2", "1", "gA2 gB", "gA2 gB2", "g gA2"),
    ("g gA", "gA gB", "gA gB", "gA2", "g gA2 gB", "gA2 gB", "1", "gB", "g gB"),
    ("g gA gB", "gA", "gA gB2", "gA2 gB", "g gA2", "gA2 gB2", "gB", "1", "g gB2"),
    ("g4 gA gB", "g gA gB2", "g gA", "g gA2 gB", "gA2 gB2", "g gA2", "g gB", "g gB2", "1"),
)

_TOKEN = re.compile(r"^(gA|gB|g)(\d*)$")


def _parse_factor(entry: str) -> tuple[int, int, int]:
    powers = {"gA": 0, "gB": 0, "g": 0}
    if entry == "1":
        return (0, 0, 0)
    for tok in entry.split():
        match = _TOKEN.match(tok)
        if match is None:
            raise ValueError(f"bad factor token {tok!r}")
        powers[match.group(1)] += int(match.group(2) or 1)
    return powers["gA"], powers["gB"], powers["g"]


@lru_cache(maxsize=None)
def factor_exponents() -> np.ndarray:
    """Integer array of shape (9, 9, 3): powers of (gamma_a, gamma_b, gamma)."""
    out = np.array([[_parse_factor(e) for e in row] for row in FACTOR_TABLE], dtype=int)
    out.setflags(write=False)
    return out


def factor_matrix(profile: DampingProfile) -> np.ndarray:
    exps = factor_exponents()
    return (
        profile.gamma_a ** exps[..., 0]
        * profile.gamma_b ** exps[..., 1]
        * profile.gamma ** exps[..., 2]
    )


def damping_matrix_map(rho0: DensityMatrix, profile: DampingProfile) -> DensityMatrix:
    _require_two_qutrits(rho0)
    return DensityMatrix(factor_matrix(profile) * rho0.matrix, 3, 3, validate=False)
