"""Closed-form partial-transpose spectra and sudden-death times.

For each family the only eigenvalues of the evolved partial transpose that
can go negative are three known functions of the damping factors. They are
written out literally below and serve as the independent check on the
numeric pipeline in :mod:`qutrit_dsd.measures`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channel import DampingProfile, DecoherenceParams, Mode, Scenario
from .states import Family, HorodeckiParams, IsotropicParams


@dataclass(frozen=True)
class ClosedFormSpectrum:
    family: Family
    values: tuple[float, float, float]


def _five_minus_root(base: float, x: float) -> float:
    """``(5 - sqrt(base + 16 x)) / 42`` without cancellation near zero."""
    return (25 - base - 16 * x) / (42 * (5 + math.sqrt(base + 16 * x)))


def horodecki_pt_eigenvalues(alpha: float, profile: DampingProfile) -> ClosedFormSpectrum:
    HorodeckiParams(alpha)
    g, ga, gb = profile.gamma, profile.gamma_a, profile.gamma_b
    base = (2 * alpha - 5) ** 2
    lam12 = _five_minus_root(base, g**8 * ga**2 * gb**2)
    lam3 = _five_minus_root(base, ga**4 * gb**4)
    return ClosedFormSpectrum(Family.HORODECKI, (lam12, lam12, lam3))


def rotated_pt_eigenvalues(alpha: float, profile: DampingProfile) -> ClosedFormSpectrum:
    HorodeckiParams(alpha)
    g, ga, gb = profile.gamma, profile.gamma_a, profile.gamma_b
    base = (2 * alpha - 5) ** 2
    eta12 = _five_minus_root(base, g**2 * ga**2 * gb**2)
    eta3 = _five_minus_root(base, ga**4 * gb**4)
    return ClosedFormSpectrum(Family.ROTATED, (eta12, eta12, eta3))


def isotropic_pt_eigenvalues(p: float, profile: DampingProfile) -> ClosedFormSpectrum:
    IsotropicParams(p)
    g, ga, gb = profile.gamma, profile.gamma_a, profile.gamma_b
    xi12 = (1 - p - 3 * p * g**4 * ga * gb) / 9
    xi3 = (1 - p - 3 * p * ga**2 * gb**2) / 9
    return ClosedFormSpectrum(Family.ISOTROPIC, (xi12, xi12, xi3))


_SPECTRA = {
    Family.HORODECKI: horodecki_pt_eigenvalues,
    Family.ROTATED: rotated_pt_eigenvalues,
    Family.ISOTROPIC: isotropic_pt_eigenvalues,
}


def closed_form_spectrum(family: Family | str, param: float, profile: DampingProfile) -> ClosedFormSpectrum:
    return _SPECTRA[Family(family)](param, profile)


def negativity_closed_form(family: Family | str, param: float, profile: DampingProfile) -> float:
    return sum(max(0.0, -v) for v in closed_form_spectrum(family, param, profile).values)


# Each candidate eigenvalue is negative exactly while a decaying product of
# damping factors X(t) = exp(-(c1*Gamma1 + c2*Gamma2) t) exceeds a threshold.
# Entries are (c1, c2) for the distinct candidates; gamma_a^2 = exp(-Gamma1 t),
# gamma^2 = exp(-Gamma2 t).
DECAY_EXPONENTS: dict[Family, tuple[tuple[int, int], ...]] = {
    Family.HORODECKI: ((2, 4), (4, 0)),  # g^8 gA^2 gB^2, gA^4 gB^4
    Family.ROTATED: ((2, 1), (4, 0)),  # g^2 gA^2 gB^2, gA^4 gB^4
    Family.ISOTROPIC: ((1, 2), (2, 0)),  # g^4 gA gB, gA^2 gB^2
}


def negativity_threshold(family: Family | str, param: float) -> float:
    """Value of X below which every candidate eigenvalue is non-negative."""
    family = Family(family)
    family.validate(param)
    if family is Family.ISOTROPIC:
        if param == 0:
            return math.inf
        return (1 - param) / (3 * param)
    return (25 - (2 * param - 5) ** 2) / 16


def crossing_time_closed_form(
    family: Family | str,
    param: float,
    decoherence: DecoherenceParams,
    mode: Mode | str = Mode.GLOBAL,
) -> float | None:
    """Time (not Gamma t) after which the negativity stays zero.

    Returns 0.0 for states that are already PPT, and None when some
    initially negative eigenvalue never crosses zero at finite time.
    """
    family = Family(family)
    eff = Scenario(Mode(mode), decoherence).effective
    threshold = negativity_threshold(family, param)
    if threshold >= 1:
        return 0.0
    latest = 0.0
    for c1, c2 in DECAY_EXPONENTS[family]:
        rate = c1 * eff.gamma1 + c2 * eff.gamma2
        if threshold <= 0 or rate == 0:
            return None
        latest = max(latest, -math.log(threshold) / rate)
    return latest


def crossing_gamma_t(family: Family | str, param: float, scenario: Scenario) -> float | None:
    """:func:`crossing_time_closed_form` in the dimensionless units of ``scenario``."""
    t = crossing_time_closed_form(family, param, scenario.decoherence, scenario.mode)
    return None if t is None else t * scenario.rate_scale

