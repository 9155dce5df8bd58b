import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_state
from qutrit_dsd.channel import (
    FACTOR_TABLE,
    DampingProfile,
    DecoherenceParams,
    Mode,
    Scenario,
    apply_channel,
    damping_matrix_map,
    damping_profile,
    factor_exponents,
    generalized_local_kraus,
    kraus_operators,
)
from qutrit_dsd.errors import DimensionError, DomainError
from qutrit_dsd.states import DensityMatrix, basis_index, horodecki_state, ket, max_entangled

unit = st.floats(min_value=0.0, max_value=1.0)


def test_profile_at_zero():
    p = damping_profile(DecoherenceParams(0.7, 2.3), 0.0)
    assert (p.gamma_a, p.gamma_b, p.gamma) == (1.0, 1.0, 1.0)
    assert p.omega_a == p.omega_b == p.omega1 == p.omega3 == 0.0
    assert p.omega2 == 0.0


def test_profile_at_ln4():
    p = damping_profile(DecoherenceParams(1.0, 1.0), math.log(4.0))
    assert p.gamma_a == pytest.approx(0.5, abs=1e-15)
    assert p.omega_a == pytest.approx(math.sqrt(3) / 2, abs=1e-15)
    assert p.gamma == pytest.approx(0.5, abs=1e-15)
    assert p.omega2 == pytest.approx(-0.25 * math.sqrt(0.75), abs=1e-15)


def test_profile_long_time_limit():
    p = damping_profile(DecoherenceParams(1.0, 1.0), 100.0)
    assert p.gamma_a < 1e-20 and p.gamma < 1e-20
    assert p.omega1 == pytest.approx(1.0)
    assert abs(p.omega2) < 1e-20
    assert p.omega3 == pytest.approx(1.0)


def test_profile_errors():
    with pytest.raises(DomainError):
        damping_profile(DecoherenceParams(1.0, 1.0), -0.1)
    with pytest.raises(DomainError):
        DecoherenceParams(-1.0, 0.0)


@settings(max_examples=200, deadline=None)
@given(st.floats(0, 10), st.floats(0, 10), st.floats(0, 50))
def test_profile_invariants(g1, g2, t):
    p = damping_profile(DecoherenceParams(g1, g2), t)
    assert p.gamma_a == p.gamma_b
    assert abs(p.omega_a**2 - (1 - p.gamma_a**2)) < 1e-12
    assert abs(p.omega1**2 - (1 - p.gamma**2)) < 1e-12
    assert abs(p.gamma**2 + p.omega2**2 + p.omega3**2 - 1) < 1e-12
    # coherence between |2,2> and |1,1> picks up exactly gamma^4
    assert abs(p.gamma**2 + p.omega1 * p.omega2 - p.gamma**4) < 1e-12
    later = damping_profile(DecoherenceParams(g1, g2), t + 0.5)
    assert later.gamma_a <= p.gamma_a and later.gamma <= p.gamma


def test_kraus_count_and_identity_at_zero():
    ops = kraus_operators(damping_profile(DecoherenceParams(1, 1), 0.0))
    assert len(ops) == 27
    assert np.allclose(ops[0], np.eye(9), atol=0)
    assert all(np.count_nonzero(g) == 0 for g in ops[1:])


@pytest.mark.parametrize("gt", [0.1, 0.5, 2.0])
def test_kraus_completeness(gt):
    ops = kraus_operators(damping_profile(DecoherenceParams(1, 1), gt))
    total = sum(g.conj().T @ g for g in ops)
    assert np.max(np.abs(total - np.eye(9))) < 1e-12


def test_kraus_ordering_matches_composition():
    p = DampingProfile.from_factors(0.6, 0.7, 0.8)
    es = generalized_local_kraus(3, 0.6)
    fs = generalized_local_kraus(3, 0.7)
    ops = kraus_operators(p)
    # G_2 = E_1 F_1 D_2; G_27 = E_3 F_3 D_3
    d2 = np.diag([p.omega1, 0, 0, 0, p.omega2, 0, 0, 0, p.omega2])
    assert np.allclose(ops[1], np.kron(es[0], np.eye(3)) @ np.kron(np.eye(3), fs[0]) @ d2)
    d3 = np.diag([0, 0, 0, 0, p.omega3, 0, 0, 0, p.omega3])
    assert np.allclose(ops[26], np.kron(es[2], np.eye(3)) @ np.kron(np.eye(3), fs[2]) @ d3)


def test_factor_table_spot_entries():
    exps = factor_exponents()
    # powers are (gamma_a, gamma_b, gamma); indices are 0-based
    assert tuple(exps[0, 4]) == (1, 1, 4)
    assert tuple(exps[0, 8]) == (1, 1, 4)
    assert tuple(exps[4, 8]) == (2, 2, 0)
    assert all(tuple(exps[i, i]) == (0, 0, 0) for i in range(9))
    assert np.array_equal(exps, exps.transpose(1, 0, 2))
    assert len(FACTOR_TABLE) == 9 and all(len(r) == 9 for r in FACTOR_TABLE)


def test_factor_table_matches_kraus_diagonals():
    # every G_n is diagonal, so the (r, c) factor is sum_n G_n[r] G_n[c]
    p = DampingProfile.from_factors(0.37, 0.61, 0.83)
    diags = np.array([np.diag(g).real for g in kraus_operators(p)])
    brute = diags.T @ diags
    exps = factor_exponents()
    table = p.gamma_a ** exps[..., 0] * p.gamma_b ** exps[..., 1] * p.gamma ** exps[..., 2]
    assert np.max(np.abs(brute - table)) < 1e-14


def test_apply_channel_identity_at_zero(rng):
    rho = random_state(rng)
    out = apply_channel(rho, damping_profile(DecoherenceParams(1, 1), 0.0))
    assert np.max(np.abs(out.matrix - rho.matrix)) < 1e-15


def test_apply_channel_long_time_diagonalizes():
    rho = horodecki_state(4.3)
    out = apply_channel(rho, damping_profile(DecoherenceParams(1, 1), 80.0))
    off = out.matrix - np.diag(np.diag(out.matrix))
    assert np.max(np.abs(off)) < 1e-15
    assert np.allclose(np.diag(out.matrix), np.diag(rho.matrix), atol=1e-15)


@settings(max_examples=40, deadline=None)
@given(unit, unit, unit, st.integers(0, 2**32 - 1))
def test_kraus_equals_factor_map(ga, gb, g, seed):
    rho = random_state(np.random.default_rng(seed))
    p = DampingProfile.from_factors(ga, gb, g)
    a = apply_channel(rho, p).matrix
    b = damping_matrix_map(rho, p).matrix
    assert np.max(np.abs(a - b)) < 1e-12


def test_channel_preserves_state_properties(rng):
    for _ in range(20):
        rho = random_state(rng, rank=int(rng.integers(1, 10)))
        p = damping_profile(DecoherenceParams(*rng.uniform(0, 3, size=2)), rng.uniform(0, 3))
        out = apply_channel(rho, p)
        DensityMatrix(out.matrix, 3, 3)  # validates
        assert np.allclose(np.diag(out.matrix), np.diag(rho.matrix), atol=1e-15)
        assert np.linalg.eigvalsh(out.matrix)[0] >= -1e-10


def test_multilocal_composition_law(rng):
    rho = random_state(rng)
    params = DecoherenceParams(0.9, 0.0)
    once = damping_matrix_map(
        damping_matrix_map(rho, damping_profile(params, 0.3)), damping_profile(params, 0.45)
    )
    direct = damping_matrix_map(rho, damping_profile(params, 0.75))
    assert np.max(np.abs(once.matrix - direct.matrix)) < 1e-12
    via_kraus = apply_channel(apply_channel(rho, damping_profile(params, 0.3)), damping_profile(params, 0.45))
    assert np.max(np.abs(via_kraus.matrix - direct.matrix)) < 1e-12


@pytest.mark.parametrize("pair", [((2, 1), (1, 2)), ((1, 0), (0, 1)), ((2, 0), (0, 2))])
def test_decoherence_free_subspaces(pair, rng):
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    v /= np.linalg.norm(v)
    psi = v[0] * ket(*pair[0]) + v[1] * ket(*pair[1])
    rho = DensityMatrix(np.outer(psi, psi.conj()), 3, 3)
    for gt in (0.3, 2.0, 10.0):
        p = damping_profile(DecoherenceParams(0.0, 1.0), gt)
        out = apply_channel(rho, p)
        assert np.max(np.abs(out.matrix - rho.matrix)) < 1e-12


def test_dfs_entries_of_factor_map():
    rho = max_entangled(3)
    exps = factor_exponents()
    for i, j in [(1, 3), (2, 6), (4, 8), (5, 7)]:
        assert exps[i, j, 2] == 0
    p = DampingProfile.from_factors(1.0, 1.0, 0.2)
    out = damping_matrix_map(rho, p).matrix
    for i, j in [(1, 3), (2, 6), (4, 8), (5, 7)]:
        assert out[i, j] == rho.matrix[i, j]


def test_generalized_local_kraus():
    ops = generalized_local_kraus(3, 0.4)
    w = math.sqrt(1 - 0.16)
    assert np.allclose(ops[0], np.diag([1, 0.4, 0.4]))
    assert np.allclose(ops[1], np.diag([0, w, 0]))
    assert np.allclose(ops[2], np.diag([0, 0, w]))
    two = generalized_local_kraus(2, 0.4)
    assert len(two) == 2
    assert np.allclose(two[1], np.diag([0, w]))
    ident = generalized_local_kraus(5, 1.0)
    assert np.array_equal(ident[0], np.eye(5)) and all(not k.any() for k in ident[1:])
    for d in (2, 3, 4, 7):
        ops = generalized_local_kraus(d, 0.3)
        assert np.max(np.abs(sum(k.conj().T @ k for k in ops) - np.eye(d))) < 1e-12
    with pytest.raises(DomainError):
        generalized_local_kraus(1, 0.5)


def test_wrong_dimension_rejected(rng):
    rho = random_state(rng, 2, 2)
    with pytest.raises(DimensionError):
        apply_channel(rho, damping_profile(DecoherenceParams(1, 1), 0.1))
    with pytest.raises(DimensionError):
        damping_matrix_map(rho, damping_profile(DecoherenceParams(1, 1), 0.1))


def test_scenario_switches_rates_off():
    s = Scenario.of("multilocal", 2.0, 3.0)
    assert s.effective == DecoherenceParams(2.0, 0.0)
    assert s.rate_scale == 2.0
    p = s.profile_at(1.0)
    assert p.gamma == 1.0 and p.gamma_a == pytest.approx(math.exp(-0.5))
    c = Scenario.of(Mode.COLLECTIVE, 2.0, 3.0)
    assert c.effective == DecoherenceParams(0.0, 3.0)
    assert c.profile_at(1.0).gamma_a == 1.0
    g = Scenario.of("global", 1.0, 4.0)
    assert g.rate_scale == 4.0
    assert g.profile_at(2.0).gamma == pytest.approx(math.exp(-1.0))
