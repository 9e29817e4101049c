"""Phonon branches, the stability threshold, and equilibrium shifts."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import minimize

from ionbridge import (
    AtomPairGeometry,
    ConfigError,
    InstabilityError,
    NotBracketedError,
    critical_separation,
    effective_frequencies,
    effective_potential_U,
    equilibrium_shift,
    mode_sweep,
    phonon_spectrum,
    reference_config,
)
from ionbridge.motion import _axial_mode_matrix


class TestSpectrum:
    def test_branch_lookup(self, cfg_rr):
        spec = phonon_spectrum(cfg_rr, cfg_rr.half_separation_z0)
        assert spec.branch("axial", "com").character == "com"
        with pytest.raises(KeyError):
            spec.branch("axial", "breathing")

    def test_symmetric_pair_angles_are_zero(self, cfg_rr):
        spec = phonon_spectrum(cfg_rr, cfg_rr.half_separation_z0)
        assert spec.axial[0].mixing_angle == 0.0
        assert spec.transverse[0].mixing_angle == 0.0

    def test_com_below_stretch_axially(self, cfg_rr):
        # the cross-curvature is negative, so the center of mass softens first
        spec = phonon_spectrum(cfg_rr, cfg_rr.half_separation_z0)
        assert spec.branch("axial", "com").omega_sq < spec.branch("axial", "stretch").omega_sq

    def test_splitting_equals_coupling_scale_exactly(self, cfg_rr):
        z0 = cfg_rr.half_separation_z0
        spec = phonon_spectrum(cfg_rr, z0)
        fr = effective_frequencies(cfg_rr, z0)
        split = spec.branch("axial", "stretch").omega_sq - spec.branch("axial", "com").omega_sq
        expected = 2.0 * abs(fr.omega_zz_sq)
        assert abs(split - expected) <= 64 * np.spacing(fr.omega_prime_z_sq)

    @settings(max_examples=40, deadline=None)
    @given(st.floats(min_value=5.0e-6, max_value=20.0e-6))
    def test_eigenvalues_match_atom_basis_matrix(self, z0):
        cfg = reference_config("rg")
        spec = phonon_spectrum(cfg, z0)
        got = sorted(mode.omega_sq for mode in spec.axial)
        expected = np.linalg.eigvalsh(_axial_mode_matrix(cfg, z0))
        np.testing.assert_allclose(got, expected, rtol=1e-10)


class TestCriticalSeparation:
    def test_reference_thresholds(self, cfg_rr, cfg_rg, cfg_25):
        crit_rr = critical_separation(cfg_rr)
        assert crit_rr.critical_2z0 == pytest.approx(9.188670e-6, abs=1e-9)
        assert crit_rr.limiting_branch == "axial-com"

        crit_rg = critical_separation(cfg_rg)
        assert crit_rg.critical_2z0 == pytest.approx(9.189982e-6, abs=1e-9)

        crit_25 = critical_separation(cfg_25)
        assert crit_25.critical_2z0 == pytest.approx(7.428045e-6, abs=1e-9)

    def test_sign_flip_around_threshold(self, cfg_rr):
        crit = critical_separation(cfg_rr).critical_2z0
        below = phonon_spectrum(cfg_rr, 0.5 * crit * (1 - 1e-4))
        above = phonon_spectrum(cfg_rr, 0.5 * crit * (1 + 1e-4))
        assert not below.stable
        assert above.stable

    def test_crossing_is_unique_on_a_prescan(self, cfg_rr):
        grid = np.arange(8.5e-6, 40e-6, 0.05e-6)
        signs = np.sign([
            min(m.omega_sq for s in [phonon_spectrum(cfg_rr, 0.5 * sep)]
                for m in s.axial + s.transverse)
            for sep in grid
        ])
        flips = np.count_nonzero(np.diff(signs))
        assert flips == 1

    def test_no_threshold_for_ground_pair(self, cfg_gg):
        with pytest.raises(NotBracketedError) as err:
            critical_separation(cfg_gg)
        assert err.value.f_lo > 0.0 and err.value.f_hi > 0.0


class TestModeSweep:
    def test_grid_validation(self, cfg_rr):
        with pytest.raises(ConfigError):
            mode_sweep(cfg_rr, [10e-6, 12e-6, 11e-6])
        with pytest.raises(ConfigError):
            mode_sweep(cfg_rr, [-1e-6, 10e-6])

    def test_stable_flags_track_threshold(self, cfg_rr):
        crit = critical_separation(cfg_rr).critical_2z0
        grid = np.linspace(9.0e-6, 10.0e-6, 21)
        sweep = mode_sweep(cfg_rr, grid)
        np.testing.assert_array_equal(sweep["stable"], grid > crit)

    def test_deviations_fade_with_distance(self, cfg_rr):
        # every branch relaxes toward its bare trap value at large separation
        grid = np.linspace(12e-6, 24e-6, 25)
        sweep = mode_sweep(cfg_rr, grid)
        bare_ax = cfg_rr.atom_trap.axial**2
        bare_tr = cfg_rr.atom_trap.radial**2
        for key, bare in (("axial_stretch_sq", bare_ax), ("axial_com_sq", bare_ax),
                          ("transverse_stretch_sq", bare_tr), ("transverse_com_sq", bare_tr)):
            dev = np.abs(sweep[key] - bare)
            assert np.all(np.diff(dev) < 0.0), key


class TestEquilibriumShift:
    def test_antisymmetric_for_identical_states(self, cfg_rr):
        dz1, dz2 = equilibrium_shift(cfg_rr, cfg_rr.half_separation_z0)
        assert dz1 == -dz2
        assert dz1 < 0.0  # both atoms lean toward the ion

    @staticmethod
    def _minimize_full_potential(config):
        z0 = config.half_separation_z0

        def u(p):
            geom = AtomPairGeometry.on_axis(z0 + p[0], -z0 + p[1])
            return effective_potential_U(geom, config.ion_mode, config)

        # a small starting simplex keeps the search inside the local well
        simplex = [[0.0, 0.0], [2e-8, 0.0], [0.0, 2e-8]]
        res = minimize(u, x0=[0.0, 0.0], method="Nelder-Mead",
                       options={"xatol": 1e-13, "fatol": 1e-32, "maxiter": 4000,
                                "initial_simplex": simplex})
        return res.x

    def test_matches_direct_minimization(self, cfg_rr):
        dz1, dz2 = equilibrium_shift(cfg_rr, cfg_rr.half_separation_z0)
        found = self._minimize_full_potential(cfg_rr)
        assert found[0] == pytest.approx(dz1, rel=1e-3)
        assert found[1] == pytest.approx(dz2, rel=1e-3)

    def test_asymmetric_pair_minimization(self, cfg_rg):
        # the ground atom barely moves, so only its magnitude is bounded
        dz1, dz2 = equilibrium_shift(cfg_rg, cfg_rg.half_separation_z0)
        found = self._minimize_full_potential(cfg_rg)
        assert found[0] == pytest.approx(dz1, rel=1e-3)
        assert abs(dz2) < 1e-12
        assert abs(found[1]) < 1e-10

    def test_unstable_separation_raises(self, cfg_rr):
        with pytest.raises(InstabilityError):
            equilibrium_shift(cfg_rr, 4.0e-6)
