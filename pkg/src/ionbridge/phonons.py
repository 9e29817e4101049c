"""Phonon normal modes of the atom pair and the stability threshold.

Both the axial and the transverse sector reduce to a symmetric 2x2 form
in the scaled relative/center-of-mass coordinates.  Eigenvalues are
signed squared frequencies; a negative value marks an unstable (in
practice collisional) configuration.  The critical separation is the
bisection root of the smallest squared frequency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, InstabilityError, NotBracketedError
from .expansion import effective_frequencies, quadratic_potential
from .model import SystemConfig, require_valid

__all__ = [
    "ModeBranch",
    "PhononSpectrum",
    "StabilityResult",
    "phonon_spectrum",
    "critical_separation",
    "mode_sweep",
    "equilibrium_shift",
]

_SQRT2 = math.sqrt(2.0)
# Eigenvector weights this close to an even stretch/com mixture carry no
# label information; fall back to comparing against the bare trap value.
_TIE_WEIGHT = 1e-6


@dataclass(frozen=True)
class ModeBranch:
    """One normal mode: signed squared frequency, mixing angle from the
    (relative, com) basis, and its stretch/com character."""

    omega_sq: float       # rad^2/s^2, signed
    mixing_angle: float   # rad, in (-pi/4, pi/4]
    character: str        # "stretch" or "com"


@dataclass(frozen=True)
class PhononSpectrum:
    """Axial and transverse mode pairs, each sorted by squared frequency."""

    axial: tuple[ModeBranch, ModeBranch]
    transverse: tuple[ModeBranch, ModeBranch]
    stable: bool

    def branch(self, sector: str, character: str) -> ModeBranch:
        pair = getattr(self, sector)
        for mode in pair:
            if mode.character == character:
                return mode
        raise KeyError(f"no {character} branch in {sector}")


@dataclass(frozen=True)
class StabilityResult:
    critical_2z0: float     # m
    limiting_branch: str    # e.g. "axial-com"


def _diagonalize_sector(a: float, b: float, c: float, bare_sq: float
                        ) -> tuple[ModeBranch, ModeBranch]:
    """Eigenpairs of [[a, c], [c, b]] in the (relative, com) basis.

    ``a`` is the relative-relative entry.  The mixing angle is clamped
    to (-pi/4, pi/4] so the first eigenvector stays mostly relative;
    when the eigenvectors carry an even weight split the branch whose
    eigenvalue sits closest to ``bare_sq`` is labeled "com".
    """
    if c == 0.0:
        rel = (a, 0.0)
        com = (b, 0.0)
        theta = 0.0
    else:
        mean = 0.5 * (a + b)
        disc = math.hypot(0.5 * (a - b), c)
        theta = 0.5 * math.atan2(2.0 * c, a - b)
        if theta > 0.25 * math.pi:
            theta -= 0.5 * math.pi
            lam_rel, lam_com = mean - disc, mean + disc
        elif theta <= -0.25 * math.pi:
            theta += 0.5 * math.pi
            lam_rel, lam_com = mean - disc, mean + disc
        else:
            lam_rel, lam_com = mean + disc, mean - disc
        rel = (lam_rel, theta)
        com = (lam_com, theta)

    com_weight = math.sin(theta) ** 2
    if abs(com_weight - 0.5) >= _TIE_WEIGHT:
        branches = [ModeBranch(rel[0], rel[1], "stretch"),
                    ModeBranch(com[0], com[1], "com")]
    else:
        # Atom-local eigenvectors: label by closeness to the bare trap.
        if abs(rel[0] - bare_sq) <= abs(com[0] - bare_sq):
            branches = [ModeBranch(rel[0], rel[1], "com"),
                        ModeBranch(com[0], com[1], "stretch")]
        else:
            branches = [ModeBranch(rel[0], rel[1], "stretch"),
                        ModeBranch(com[0], com[1], "com")]
    branches.sort(key=lambda mode: mode.omega_sq)
    return branches[0], branches[1]


def phonon_spectrum(config: SystemConfig, z0: float) -> PhononSpectrum:
    """Normal modes of the quadratic expansion at half-separation z0."""
    fr = effective_frequencies(config, z0)
    delta_z = 0.5 * (fr.omega_bar_z1_sq - fr.omega_bar_z2_sq)
    delta_rho = 0.5 * (fr.omega_bar_rho1_sq - fr.omega_bar_rho2_sq)

    axial = _diagonalize_sector(
        fr.omega_prime_z_sq - fr.omega_zz_sq,
        fr.omega_prime_z_sq + fr.omega_zz_sq,
        delta_z,
        config.atom_trap.axial**2,
    )
    transverse = _diagonalize_sector(
        fr.omega_prime_rho_sq + fr.omega_xy_sq,
        fr.omega_prime_rho_sq - fr.omega_xy_sq,
        delta_rho,
        config.atom_trap.radial**2,
    )
    stable = all(mode.omega_sq > 0.0 for mode in axial + transverse)
    return PhononSpectrum(axial=axial, transverse=transverse, stable=stable)


def _min_omega_sq(config: SystemConfig, separation: float) -> float:
    spec = phonon_spectrum(config, 0.5 * separation)
    return min(mode.omega_sq for mode in spec.axial + spec.transverse)


def critical_separation(config: SystemConfig, bracket: tuple[float, float] = (1e-6, 40e-6),
                        ) -> StabilityResult:
    """Bisection root of the smallest squared mode frequency over 2z0.

    The bracket is resolved to 1e-13 m (far below the 1 nm reporting
    precision) so that the spectrum is guaranteed stable at
    critical*(1 + 1e-6) and unstable at critical*(1 - 1e-6).
    """
    require_valid(config)
    lo, hi = bracket
    f_lo = _min_omega_sq(config, lo)
    f_hi = _min_omega_sq(config, hi)
    if not (f_lo < 0.0 < f_hi):
        raise NotBracketedError(
            "no stability threshold inside the bracket: "
            f"min omega^2 = {f_lo:.6g} rad^2/s^2 at {lo:.3g} m and "
            f"{f_hi:.6g} rad^2/s^2 at {hi:.3g} m",
            f_lo=f_lo, f_hi=f_hi,
        )
    while hi - lo > 1e-13:
        mid = 0.5 * (lo + hi)
        if _min_omega_sq(config, mid) < 0.0:
            lo = mid
        else:
            hi = mid
    critical = 0.5 * (lo + hi)

    spec = phonon_spectrum(config, 0.5 * critical * (1.0 - 1e-6))
    worst = None
    for sector in ("axial", "transverse"):
        for mode in getattr(spec, sector):
            if worst is None or mode.omega_sq < worst[0]:
                worst = (mode.omega_sq, f"{sector}-{mode.character}")
    return StabilityResult(critical_2z0=critical, limiting_branch=worst[1])


def mode_sweep(config: SystemConfig, separations) -> dict[str, np.ndarray]:
    """Phonon spectra over a monotone grid of full separations 2z0, SI."""
    separations = np.asarray(separations, dtype=float)
    if separations.size < 1 or np.any(separations <= 0.0):
        raise ConfigError("separation grid must be positive and non-empty")
    steps = np.diff(separations)
    if steps.size and not (np.all(steps > 0.0) or np.all(steps < 0.0)):
        raise ConfigError("separation grid must be monotone")

    cols = {name: np.empty(separations.size) for name in (
        "axial_stretch_sq", "axial_com_sq", "transverse_stretch_sq",
        "transverse_com_sq", "axial_angle", "transverse_angle")}
    stable = np.empty(separations.size, dtype=bool)
    for k, sep in enumerate(separations):
        spec = phonon_spectrum(config, 0.5 * sep)
        cols["axial_stretch_sq"][k] = spec.branch("axial", "stretch").omega_sq
        cols["axial_com_sq"][k] = spec.branch("axial", "com").omega_sq
        cols["transverse_stretch_sq"][k] = spec.branch("transverse", "stretch").omega_sq
        cols["transverse_com_sq"][k] = spec.branch("transverse", "com").omega_sq
        cols["axial_angle"][k] = spec.axial[0].mixing_angle
        cols["transverse_angle"][k] = spec.transverse[0].mixing_angle
        stable[k] = spec.stable
    out: dict[str, np.ndarray] = {"separation": separations.copy()}
    out.update(cols)
    out["stable"] = stable
    return out


def equilibrium_shift(config: SystemConfig, z0: float) -> tuple[float, float]:
    """Axial equilibrium displacements (dz1, dz2) of the two atoms, m.

    Solves the stationarity condition of the quadratic form on its
    axial block.  Both atoms are pulled toward the ion; for identical
    states the shifts are exactly opposite.
    """
    spec = phonon_spectrum(config, z0)
    if any(mode.omega_sq <= 0.0 for mode in spec.axial):
        raise InstabilityError(
            f"axial sector unstable at 2z0 = {2.0 * z0:.4g} m, no equilibrium to solve for"
        )
    form = quadratic_potential(config, z0)
    block = form.hessian[np.ix_((2, 5), (2, 5))]
    rhs = -form.linear[[2, 5]]
    d_rel, d_com = np.linalg.solve(block, rhs)
    dz1 = (d_rel + d_com) / _SQRT2
    dz2 = (d_com - d_rel) / _SQRT2
    return float(dz1), float(dz2)
