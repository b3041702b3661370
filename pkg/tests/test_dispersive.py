import math

import numpy as np
import pytest

from gupjc.dispersive import (
    DispersiveConfig,
    build_effective_hamiltonian,
    commutator_check,
    decomposition_field_state,
    dyson_consistency_check,
    evolve_dispersive_exact,
    interaction_picture_propagate,
    interaction_picture_rk4,
    lowering_operator_dressed,
    photon_added_decomposition,
)
from gupjc.errors import DispersiveRegimeError, LinearityError
from gupjc.fock import coherent_state, hermiticity_residual
from gupjc.gup import GupCoefficients, GupParams, InteractionConfig, derive_coefficients

# electroweak-scale benchmark: gamma = 1e3 (SI), |alpha| = 1, mu = 1e5 rad/s,
# t = 1e3 s, field at 1e15 rad/s
BENCH = dict(gamma=1e3, omega=1e15, mu=1e5, alpha=1.0, t=1e3, ncut=40)


def bench_config():
    c = derive_coefficients(GupParams.from_gamma(BENCH["gamma"], 1.0, 1.0), BENCH["omega"])
    d = DispersiveConfig(
        mu=BENCH["mu"], phi=c.phi, alpha=BENCH["alpha"], t=BENCH["t"], ncut=BENCH["ncut"]
    )
    return c, d


def _dispersive_cfg(coupling=1.0, detuning=500.0, omega=1e4):
    return InteractionConfig(omega=omega, omega0=omega + detuning, coupling=coupling)


def _phi_only(phi, omega=1e4):
    return GupCoefficients(phi=phi, chi=0.0, beta=-phi / 2.0, omega=omega)


def test_config_validity_flag():
    c, d = bench_config()
    assert d.mean_square_photon == pytest.approx(2.0)
    assert d.linear_expansion_parameter == pytest.approx(2.0 * c.phi * 1e5 * 1e3 * 2.0, rel=1e-12)
    assert d.valid_linear
    long = DispersiveConfig(mu=d.mu, phi=d.phi, alpha=d.alpha, t=1e9, ncut=d.ncut)
    assert not long.valid_linear


def test_taylor_time_bounds_at_stated_scales():
    # at mu = 1e5 rad/s and omega = 1e14 rad/s the expansion holds for times
    # up to ~1e24 s (Planck-scale strength) or ~1e8 s (electroweak strength)
    mu, omega = 1e5, 1e14
    planck = derive_coefficients(GupParams(1.0, 1.0, 1.0), omega)
    d_pl = DispersiveConfig(mu=mu, phi=planck.phi, alpha=1.0, t=1.0, ncut=30)
    assert math.floor(math.log10(d_pl.linear_time_bound())) == 24
    ew = derive_coefficients(GupParams.from_gamma(1e3, 1.0, 1.0), omega)
    d_ew = DispersiveConfig(mu=mu, phi=ew.phi, alpha=1.0, t=1.0, ncut=30)
    assert math.floor(math.log10(d_ew.linear_time_bound())) == 8


def test_effective_hamiltonian_standard_limit():
    cfg = _dispersive_cfg()
    c = _phi_only(0.0)
    h = build_effective_hamiltonian(cfg, c, 6).entries
    mu = cfg.mu
    n = np.arange(7)
    assert np.allclose(np.diag(h)[:7], -mu * n)
    assert np.allclose(np.diag(h)[7:], mu * (n + 1))
    assert np.count_nonzero(h - np.diag(np.diag(h))) == 0


def test_effective_hamiltonian_eigenvalues_with_gup():
    cfg = _dispersive_cfg()
    phi = 1e-4
    c = _phi_only(phi)
    h = build_effective_hamiltonian(cfg, c, 8).entries
    mu = cfg.mu
    for n in (0, 3, 7):
        assert h[n, n].real == pytest.approx(-mu * (n - 2 * n**2 * phi), rel=1e-12)
        assert h[9 + n, 9 + n].real == pytest.approx(
            mu * (n - 2 * n**2 * phi + 1 - 2 * phi - 4 * n * phi), rel=1e-12
        )


def test_effective_hamiltonian_regime_guard():
    cfg = InteractionConfig(omega=1e4, omega0=1e4 + 10.0, coupling=1.0)
    with pytest.raises(DispersiveRegimeError):
        build_effective_hamiltonian(cfg, _phi_only(0.0), 6)


def test_commutator_exact_without_gup():
    cfg = _dispersive_cfg()
    residual = commutator_check(cfg, _phi_only(0.0), ncut=10)
    assert residual < 1e-12 * abs(cfg.mu)


def test_commutator_hermitian():
    cfg = _dispersive_cfg()
    c = _phi_only(1e-5)
    op_a = lowering_operator_dressed(c, 12)
    comm = (cfg.coupling**2 / cfg.detuning) * (
        op_a @ op_a.conj().T - op_a.conj().T @ op_a
    )
    assert hermiticity_residual(comm) < 1e-12 * abs(cfg.mu)


def test_commutator_residual_quadratic_in_phi():
    cfg = _dispersive_cfg()
    phis = [1e-5, 5e-6, 2.5e-6]
    residuals = [commutator_check(cfg, _phi_only(p), ncut=20) for p in phis]
    slope = np.polyfit(np.log(phis), np.log(residuals), 1)[0]
    assert slope == pytest.approx(2.0, abs=0.1)
    # magnitude: mu * phi^2 * (ncut-1)^3 on the excited interior block
    expected = abs(cfg.mu) * phis[0] ** 2 * 19**3
    assert residuals[0] == pytest.approx(expected, rel=0.05)


def test_exact_evolution_is_rotated_coherent_when_phi_zero():
    d = DispersiveConfig(mu=1e5, phi=0.0, alpha=1.0, t=1e3, ncut=30)
    state = evolve_dispersive_exact(d, "g")
    target = coherent_state(1.0 * np.exp(1j * d.mu * d.t), 30)
    infidelity = 1.0 - abs(np.vdot(state.amps_g, target.amps)) ** 2
    assert infidelity < 1e-10
    assert np.allclose(state.amps_e, 0.0)


def test_exact_evolution_identity_at_t_zero():
    _, d = bench_config()
    d0 = DispersiveConfig(mu=d.mu, phi=d.phi, alpha=d.alpha, t=0.0, ncut=d.ncut)
    state = evolve_dispersive_exact(d0, "e")
    coh = coherent_state(d.alpha, d.ncut)
    assert np.allclose(state.amps_e, coh.amps)
    assert state.norm() == pytest.approx(1.0, abs=1e-12)


def test_decomposition_pure_rotation_when_phi_zero():
    d = DispersiveConfig(mu=2.0, phi=0.0, alpha=0.8, t=1.3, ncut=25)
    dec = photon_added_decomposition(d, "g")
    assert dec.pacs1_amp == 0.0 and dec.pacs2_amp == 0.0
    assert abs(dec.base_amp) == pytest.approx(1.0, abs=1e-12)
    assert dec.normalization == pytest.approx(1.0, abs=1e-12)


def test_decomposition_benchmark_amplitudes():
    c, d = bench_config()
    dec = photon_added_decomposition(d, "g")
    s = 2.0 * c.phi * d.mu * d.t
    assert abs(dec.pacs1_amp) * dec.normalization == pytest.approx(
        s * math.sqrt(2.0), rel=1e-10
    )
    assert abs(dec.pacs1_amp) * dec.normalization == pytest.approx(3.0e-5, rel=0.02)
    assert abs(dec.pacs2_amp) * dec.normalization == pytest.approx(
        s * math.sqrt(7.0), rel=1e-10
    )


def test_decomposition_normalization_approaches_one():
    # the coherent/photon-added cross terms are purely imaginary, so the norm
    # defect of the assembled state is quadratic in phi*mu*t, not linear
    _, d = bench_config()
    norms = []
    for phi in (1e-10, 1e-11, 1e-12):
        dp = DispersiveConfig(mu=d.mu, phi=phi, alpha=d.alpha, t=d.t, ncut=d.ncut)
        norms.append(abs(photon_added_decomposition(dp, "g").normalization - 1.0))
    assert norms[0] > norms[1] > norms[2]
    assert norms[0] / norms[1] == pytest.approx(100.0, rel=0.05)
    assert norms[2] < 1e-6


def test_decomposition_rejects_long_times():
    _, d = bench_config()
    too_long = DispersiveConfig(mu=d.mu, phi=d.phi, alpha=d.alpha, t=1e9, ncut=d.ncut)
    with pytest.raises(LinearityError):
        photon_added_decomposition(too_long, "g")


def test_decomposition_state_is_normalized():
    _, d = bench_config()
    for atom in ("g", "e"):
        dec = photon_added_decomposition(d, atom)
        state = decomposition_field_state(d, dec, atom)
        assert state.norm() == pytest.approx(1.0, abs=1e-10)


def test_decomposition_matches_exact_evolution():
    # overlap bounded by the second-order Taylor remainder; coherent <n^4> at
    # |alpha| = 1 is 15
    c, d = bench_config()
    n4 = 15.0
    for atom in ("g", "e"):
        exact = evolve_dispersive_exact(d, atom)
        field = exact.amps_g if atom == "g" else exact.amps_e
        dec = photon_added_decomposition(d, atom)
        approx = decomposition_field_state(d, dec, atom)
        overlap = abs(np.vdot(field, approx.amps)) ** 2
        assert overlap >= 1.0 - 10.0 * (2.0 * c.phi * d.mu * d.t) ** 2 * n4


def test_decomposition_fidelity_remainder_scaling():
    # with the normalization fixed to the exact assembled norm, the quadratic
    # Taylor remainder cancels in the overlap and the infidelity is quartic in
    # phi*mu*t: halving phi drops it 16x (prefactor (<n^8>-<n^4>^2)/4)
    _, d = bench_config()
    defects = []
    for phi in (4e-12, 2e-12):
        dp = DispersiveConfig(mu=d.mu, phi=phi, alpha=d.alpha, t=d.t, ncut=d.ncut)
        exact = evolve_dispersive_exact(dp, "g")
        dec = photon_added_decomposition(dp, "g")
        approx = decomposition_field_state(dp, dec, "g")
        defects.append(1.0 - abs(np.vdot(exact.amps_g, approx.amps)) ** 2)
    assert defects[0] / defects[1] == pytest.approx(16.0, rel=0.05)
    s = 2.0 * 4e-12 * d.mu * d.t
    n8, n4 = 4140.0, 15.0  # coherent moments at |alpha| = 1
    assert defects[0] == pytest.approx(s**4 * (n8 - n4**2) / 4.0, rel=0.05)


def test_dyson_lambda_zero_is_exact():
    cfg = InteractionConfig(omega=200.0, omega0=280.0, coupling=0.0)
    c = _phi_only(1e-4, omega=200.0)
    report = dyson_consistency_check(cfg, c, ncut=18, t=0.5, alpha=1.0)
    assert report.fidelity == pytest.approx(1.0, abs=1e-12)
    assert report.dropped_term_mag == 0.0


def test_dyson_fidelity_defect_scaling():
    # fixed absolute time: the defect scales with the square of the dropped term
    c = GupCoefficients(phi=1e-4, chi=0.0, beta=-5e-5, omega=200.0)
    t = 2.0
    defects, droppeds = [], []
    for coupling in (1.5, 0.75):
        cfg = InteractionConfig(omega=200.0, omega0=280.0, coupling=coupling)
        rep = dyson_consistency_check(cfg, c, ncut=18, t=t)
        defects.append(1.0 - rep.fidelity)
        droppeds.append(rep.dropped_term_mag)
    assert droppeds[0] / droppeds[1] == pytest.approx(2.0, rel=1e-12)
    assert defects[0] / defects[1] == pytest.approx(4.0, rel=0.2)
    assert defects[0] < 10.0 * droppeds[0] ** 2


def test_dyson_dropped_term_linear_in_coupling():
    c = _phi_only(0.0, omega=200.0)
    mags = []
    for coupling in (1.0, 2.0):
        cfg = InteractionConfig(omega=200.0, omega0=2000.0, coupling=coupling)
        mags.append(dyson_consistency_check(cfg, c, ncut=18, t=0.1).dropped_term_mag)
    assert mags[1] == pytest.approx(2.0 * mags[0], rel=1e-12)


def test_dyson_regime_guard():
    cfg = InteractionConfig(omega=200.0, omega0=210.0, coupling=1.5)
    with pytest.raises(DispersiveRegimeError):
        dyson_consistency_check(cfg, _phi_only(0.0, omega=200.0), ncut=18, t=0.1)


def test_interaction_picture_integrators_agree():
    # the stepped integrator is an independent check of the factored
    # propagator, including the blockwise chi-dependent phases
    cfg = InteractionConfig(omega=200.0, omega0=280.0, coupling=1.5)
    c = GupCoefficients(phi=2e-4, chi=1e-5, beta=(8e-5 - 2e-4) / 2.0, omega=200.0)
    coh = coherent_state(1.0, 18)
    psi0 = np.concatenate([coh.amps, np.zeros(19, dtype=complex)])
    t = 0.8
    exact = interaction_picture_propagate(cfg, c, 18, t, psi0)
    stepped = interaction_picture_rk4(cfg, c, 18, t, psi0)
    assert np.max(np.abs(exact - stepped)) < 1e-9
    assert abs(np.linalg.norm(stepped) - 1.0) < 1e-9
