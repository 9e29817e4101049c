"""Quadratic expansion of the effective potential around the trap centers.

The closed-form coefficients are validated against central finite
differences of the full potential; that comparison is the main guard on
every sign and prefactor in this module.
"""

import dataclasses

import numpy as np
import pytest

from ionbridge import (
    AtomPairGeometry,
    effective_frequencies,
    effective_potential_U,
    expansion_coefficients,
    quadratic_potential,
    reference_config,
)

FD_STEP = 2e-9  # m, balances cancellation noise against truncation


def u_of_coords(config, vec):
    geom = AtomPairGeometry(np.asarray(vec[:3]), np.asarray(vec[3:]))
    return effective_potential_U(geom, config.ion_mode, config)


def centers(config):
    z0 = config.half_separation_z0
    return np.array([0.0, 0.0, z0, 0.0, 0.0, -z0])


def fd_gradient(config, a, h=FD_STEP):
    x = centers(config)
    e = np.zeros(6)
    e[a] = h
    return (u_of_coords(config, x + e) - u_of_coords(config, x - e)) / (2 * h)


def fd_curvature(config, a, b, h=FD_STEP):
    x = centers(config)
    ea = np.zeros(6)
    ea[a] = h
    if a == b:
        f0 = u_of_coords(config, x)
        return (u_of_coords(config, x + ea) - 2 * f0 + u_of_coords(config, x - ea)) / h**2
    eb = np.zeros(6)
    eb[b] = h
    return (u_of_coords(config, x + ea + eb) - u_of_coords(config, x + ea - eb)
            - u_of_coords(config, x - ea + eb) + u_of_coords(config, x - ea - eb)) / (4 * h**2)


class TestCoefficients:
    def test_closed_form_values(self, cfg_rg):
        co = expansion_coefficients(cfg_rg)
        c4_1, c4_2 = cfg_rg.c4_pair
        m_a, m_i = cfg_rg.atom.mass, cfg_rg.ion.mass
        w_rho2 = cfg_rg.ion_trap.radial**2
        w_z2 = cfg_rg.ion_trap.axial**2
        assert co.A12_1 == pytest.approx(16 * c4_1**2 / (m_a * m_i * w_rho2), rel=1e-14)
        assert co.A12_ab == pytest.approx(16 * c4_1 * c4_2 / (m_a * m_i * w_rho2), rel=1e-14)
        assert co.A10_ab == pytest.approx(16 * c4_1 * c4_2 / (m_a * m_i * w_z2), rel=1e-14)
        assert co.A6_2 == pytest.approx(4 * c4_2 / m_a, rel=1e-14)
        assert co.A4_1 == pytest.approx(2 * c4_1 / m_a, rel=1e-14)

    def test_a12_a6_identity(self, cfg_rg):
        # A12_j = A6_j^2 m_a / (m_i w_rho^2) ties the two coefficient families
        co = expansion_coefficients(cfg_rg)
        m_a, m_i = cfg_rg.atom.mass, cfg_rg.ion.mass
        w_rho2 = cfg_rg.ion_trap.radial**2
        assert co.A12_1 == pytest.approx(co.A6_1**2 * m_a / (m_i * w_rho2), rel=1e-13)
        assert co.A12_ab == pytest.approx(co.A6_1 * co.A6_2 * m_a / (m_i * w_rho2), rel=1e-13)

    def test_constant_term_equals_potential_at_centers(self, cfg_rr):
        co = expansion_coefficients(cfg_rr)
        assert co.E0_bar == pytest.approx(u_of_coords(cfg_rr, centers(cfg_rr)), rel=1e-13)


class TestFrequenciesAgainstFiniteDifferences:
    """Each frequency scale is an independent second derivative of U."""

    @pytest.fixture(params=["rr", "rg"])
    def cfg(self, request):
        return reference_config(request.param, z0=7e-6)

    def test_axial_curvatures(self, cfg):
        fr = effective_frequencies(cfg, cfg.half_separation_z0)
        m_a = cfg.atom.mass
        assert fd_curvature(cfg, 2, 2) == pytest.approx(m_a * fr.omega_bar_z1_sq, rel=1e-6)
        assert fd_curvature(cfg, 5, 5) == pytest.approx(m_a * fr.omega_bar_z2_sq, rel=1e-6)
        assert fd_curvature(cfg, 2, 5) == pytest.approx(m_a * fr.omega_zz_sq, rel=1e-5)

    def test_transverse_curvatures(self, cfg):
        fr = effective_frequencies(cfg, cfg.half_separation_z0)
        m_a = cfg.atom.mass
        assert fd_curvature(cfg, 0, 0) == pytest.approx(m_a * fr.omega_bar_rho1_sq, rel=1e-6)
        assert fd_curvature(cfg, 4, 4) == pytest.approx(m_a * fr.omega_bar_rho2_sq, rel=1e-6)
        assert fd_curvature(cfg, 0, 3) == pytest.approx(-m_a * fr.omega_xy_sq, rel=1e-5)

    def test_linear_forces(self, cfg):
        fr = effective_frequencies(cfg, cfg.half_separation_z0)
        m_a = cfg.atom.mass
        z0 = cfg.half_separation_z0
        assert fd_gradient(cfg, 2) == pytest.approx(m_a * z0 * fr.Omega_1_sq, rel=1e-6)
        assert fd_gradient(cfg, 5) == pytest.approx(-m_a * z0 * fr.Omega_2_sq, rel=1e-6)
        # no transverse force at the centers
        assert abs(fd_gradient(cfg, 0)) < 1e-6 * abs(fd_gradient(cfg, 2))

    def test_axial_softens_transverse_stiffens(self, cfg):
        fr = effective_frequencies(cfg, cfg.half_separation_z0)
        assert fr.omega_bar_z1_sq < cfg.atom_trap.axial**2
        assert fr.omega_bar_rho1_sq > cfg.atom_trap.radial**2


class TestSymmetriesAndStructure:
    def test_identical_states_give_identical_frequencies(self, cfg_rr):
        fr = effective_frequencies(cfg_rr, cfg_rr.half_separation_z0)
        assert fr.omega_bar_z1_sq == fr.omega_bar_z2_sq
        assert fr.Omega_1_sq == fr.Omega_2_sq

    def test_doubling_c4_scales_families(self, cfg_rr):
        z0 = cfg_rr.half_separation_z0
        co = expansion_coefficients(cfg_rr)
        doubled_cfg = dataclasses.replace(
            cfg_rr, coefficients=dataclasses.replace(cfg_rr.coefficients,
                                                     c4_ground=2 * cfg_rr.coefficients.c4_ground))
        co2 = expansion_coefficients(doubled_cfg, z0=z0)
        assert co2.A4_1 == pytest.approx(2 * co.A4_1, rel=1e-13)
        assert co2.A6_1 == pytest.approx(2 * co.A6_1, rel=1e-13)
        assert co2.A10_ab == pytest.approx(4 * co.A10_ab, rel=1e-13)
        assert co2.A12_1 == pytest.approx(4 * co.A12_1, rel=1e-13)

    def test_real_frequencies_mark_unstable_entries(self, cfg_rr):
        fr = effective_frequencies(cfg_rr, 4.0e-6)  # 2z0 = 8 um, below threshold
        real = fr.real_frequencies()
        assert real["omega_bar_rho1"] is not None
        assert any(v is None for v in real.values())

    def test_quadratic_form_layout(self, cfg_rr):
        form = quadratic_potential(cfg_rr, cfg_rr.half_separation_z0)
        np.testing.assert_array_equal(form.hessian, form.hessian.T)
        # forces act along z only, in the scaled relative/center coordinates
        assert form.linear[0] == form.linear[1] == 0.0
        assert form.linear[3] == form.linear[4] == 0.0
        assert form.linear[2] != 0.0 or form.linear[5] != 0.0

    def test_com_axial_mode_free_of_c6(self, cfg_rr):
        from ionbridge import phonon_spectrum

        z0 = cfg_rr.half_separation_z0
        no_c6 = dataclasses.replace(
            cfg_rr, coefficients=dataclasses.replace(cfg_rr.coefficients,
                                                     c6_rydberg_anchor=0.0))
        with_c6 = phonon_spectrum(cfg_rr, z0)
        without = phonon_spectrum(no_c6, z0)
        for sector in ("axial", "transverse"):
            a = with_c6.branch(sector, "com").omega_sq
            b = without.branch(sector, "com").omega_sq
            assert a == pytest.approx(b, rel=1e-10)

    def test_repulsive_c6_stiffens_axial_stretch(self, cfg_rr):
        from ionbridge import phonon_spectrum

        z0 = cfg_rr.half_separation_z0
        no_c6 = dataclasses.replace(
            cfg_rr, coefficients=dataclasses.replace(cfg_rr.coefficients,
                                                     c6_rydberg_anchor=0.0))
        with_c6 = phonon_spectrum(cfg_rr, z0)
        without = phonon_spectrum(no_c6, z0)
        assert with_c6.branch("axial", "stretch").omega_sq \
            > without.branch("axial", "stretch").omega_sq
        assert with_c6.branch("transverse", "stretch").omega_sq \
            < without.branch("transverse", "stretch").omega_sq
