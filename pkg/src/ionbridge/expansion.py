"""Quadratic expansion of the effective two-atom potential around the trap centers.

The expansion is carried out in the trap-centered (primed) coordinates
and assembled in scaled relative/center-of-mass coordinates
q_rel = (q1 - q2)/sqrt(2), q_com = (q1 + q2)/sqrt(2).  All frequency
corrections are stored as signed squares so the stability search can
bracket sign changes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import IonModeIndex, SystemConfig

__all__ = [
    "ExpansionCoefficients",
    "EffectiveFrequencies",
    "QuadraticForm",
    "expansion_coefficients",
    "effective_frequencies",
    "quadratic_potential",
]

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class ExpansionCoefficients:
    """Power-law coefficients of the expanded potential.

    The subscripts name the inverse power of z0 each term multiplies in
    the frequency corrections; _1/_2 refer to the per-atom C4 values and
    _ab to the cross product C4_1 * C4_2.  A4 and A6 carry m^6/s^2,
    A10 and A12 carry m^12/s^2.  E0_bar is the constant term of the
    expansion, J, equal to the effective potential at the trap centers.
    """

    A12_1: float
    A12_2: float
    A12_ab: float
    A10_1: float
    A10_2: float
    A10_ab: float
    A6_1: float
    A6_2: float
    A4_1: float
    A4_2: float
    E0_bar: float


def expansion_coefficients(config: SystemConfig, z0: float | None = None,
                           mu: IonModeIndex | None = None) -> ExpansionCoefficients:
    """Evaluate every A coefficient plus the constant offset E0_bar.

    ``z0`` and ``mu`` default to the configured half-separation and ion
    mode; only E0_bar depends on them.
    """
    if z0 is None:
        z0 = config.half_separation_z0
    if mu is None:
        mu = config.ion_mode
    c4_1, c4_2 = config.c4_pair
    c6 = config.c6_pair
    m_a = config.atom.mass
    m_i = config.ion.mass
    w_ir_sq = config.ion_trap.radial**2
    w_iz_sq = config.ion_trap.axial**2

    a12_1 = 16.0 * c4_1**2 / (m_a * m_i * w_ir_sq)
    a12_2 = 16.0 * c4_2**2 / (m_a * m_i * w_ir_sq)
    a12_ab = 16.0 * c4_1 * c4_2 / (m_a * m_i * w_ir_sq)
    a10_1 = 16.0 * c4_1**2 / (m_a * m_i * w_iz_sq)
    a10_2 = 16.0 * c4_2**2 / (m_a * m_i * w_iz_sq)
    a10_ab = 16.0 * c4_1 * c4_2 / (m_a * m_i * w_iz_sq)
    a6_1 = 4.0 * c4_1 / m_a
    a6_2 = 4.0 * c4_2 / m_a
    a4_1 = 2.0 * c4_1 / m_a
    a4_2 = 2.0 * c4_2 / m_a

    e0_bar = mu.bare_energy(config.ion_trap)
    e0_bar -= m_a * (a4_1 + a4_2) / (2.0 * z0**4)
    e0_bar -= m_a * (a10_1 + a10_2 - 2.0 * a10_ab) / (2.0 * z0**10)
    e0_bar -= c6 / (64.0 * z0**6)

    return ExpansionCoefficients(a12_1, a12_2, a12_ab, a10_1, a10_2, a10_ab,
                                 a6_1, a6_2, a4_1, a4_2, e0_bar)


@dataclass(frozen=True)
class EffectiveFrequencies:
    """Signed squared frequency scales of the quadratic expansion, rad^2/s^2.

    omega_bar_* are the per-atom modified trap frequencies, omega_prime_*
    their means, omega_xy/omega_zz the transverse/axial two-atom coupling
    scales, and Omega_1/Omega_2 the linear-force scales.  Values may go
    negative near the instability; square roots are taken only for
    display.
    """

    omega_bar_rho1_sq: float
    omega_bar_rho2_sq: float
    omega_bar_z1_sq: float
    omega_bar_z2_sq: float
    omega_prime_rho_sq: float
    omega_prime_z_sq: float
    omega_xy_sq: float
    omega_zz_sq: float
    Omega_1_sq: float
    Omega_2_sq: float

    def real_frequencies(self) -> dict[str, float | None]:
        """Square roots of the non-negative squares, rad/s; None elsewhere."""
        out: dict[str, float | None] = {}
        for name in ("omega_bar_rho1", "omega_bar_rho2", "omega_bar_z1",
                     "omega_bar_z2", "omega_prime_rho", "omega_prime_z"):
            sq = getattr(self, name + "_sq")
            out[name] = math.sqrt(sq) if sq >= 0.0 else None
        return out


def effective_frequencies(config: SystemConfig, z0: float) -> EffectiveFrequencies:
    """Closed-form frequency corrections of the quadratic expansion at z0.

    The transverse correction is stiffening at leading order (an atom
    moving off-axis recedes from the ion) while the axial one softens;
    the ion-following A10 terms enter both, including a transverse
    6*(A10_j - A10_ab) piece that cancels for identical states.
    """
    co = expansion_coefficients(config, z0=z0)
    m_a = config.atom.mass
    c6 = config.c6_pair
    z6 = z0**6
    z12 = z0**12
    c6_rho = 3.0 * c6 / (128.0 * m_a * z0**8)
    c6_z = 21.0 * c6 / (128.0 * m_a * z0**8)
    w_ar_sq = config.atom_trap.radial**2
    w_az_sq = config.atom_trap.axial**2

    def rho_sq(a6, a12, a10):
        return w_ar_sq + a6 / z6 - a12 / z12 + 6.0 * (a10 - co.A10_ab) / z12 + c6_rho

    def z_sq(a4, a10):
        return w_az_sq - 10.0 * a4 / z6 - (55.0 * a10 - 30.0 * co.A10_ab) / z12 - c6_z

    wbr1 = rho_sq(co.A6_1, co.A12_1, co.A10_1)
    wbr2 = rho_sq(co.A6_2, co.A12_2, co.A10_2)
    wbz1 = z_sq(co.A4_1, co.A10_1)
    wbz2 = z_sq(co.A4_2, co.A10_2)

    return EffectiveFrequencies(
        omega_bar_rho1_sq=wbr1,
        omega_bar_rho2_sq=wbr2,
        omega_bar_z1_sq=wbz1,
        omega_bar_z2_sq=wbz2,
        omega_prime_rho_sq=0.5 * (wbr1 + wbr2),
        omega_prime_z_sq=0.5 * (wbz1 + wbz2),
        omega_xy_sq=co.A12_ab / z12 + c6_rho,
        omega_zz_sq=-25.0 * co.A10_ab / z12 + c6_z,
        Omega_1_sq=2.0 * co.A4_1 / z6 + 5.0 * (co.A10_1 - co.A10_ab) / z12 + 2.0 * c6_rho,
        Omega_2_sq=2.0 * co.A4_2 / z6 + 5.0 * (co.A10_2 - co.A10_ab) / z12 + 2.0 * c6_rho,
    )


@dataclass(frozen=True)
class QuadraticForm:
    """Second-order expansion of the effective potential, J / SI powers.

    Coordinates are ordered (x, y, z, X, Y, Z): lowercase relative,
    uppercase center of mass, both scaled by 1/sqrt(2) and measured from
    the trap centers.  The Hessian couples only the (x, X), (y, Y) and
    (z, Z) pairs; transverse and axial blocks never mix.
    """

    constant: float
    linear: np.ndarray   # 6-vector, J/m
    hessian: np.ndarray  # 6x6 symmetric, J/m^2


def quadratic_potential(config: SystemConfig, z0: float,
                        mu: IonModeIndex | None = None) -> QuadraticForm:
    """Assemble the quadratic form of the effective potential at z0."""
    if mu is None:
        mu = config.ion_mode
    co = expansion_coefficients(config, z0=z0, mu=mu)
    fr = effective_frequencies(config, z0)
    m_a = config.atom.mass

    linear = np.zeros(6)
    linear[2] = m_a * z0 * (fr.Omega_1_sq + fr.Omega_2_sq) / _SQRT2
    linear[5] = m_a * z0 * (fr.Omega_1_sq - fr.Omega_2_sq) / _SQRT2

    hessian = np.zeros((6, 6))
    delta_rho = 0.5 * (fr.omega_bar_rho1_sq - fr.omega_bar_rho2_sq)
    delta_z = 0.5 * (fr.omega_bar_z1_sq - fr.omega_bar_z2_sq)
    for k in (0, 1):  # x and y blocks are identical
        hessian[k, k] = m_a * (fr.omega_prime_rho_sq + fr.omega_xy_sq)
        hessian[k + 3, k + 3] = m_a * (fr.omega_prime_rho_sq - fr.omega_xy_sq)
        hessian[k, k + 3] = hessian[k + 3, k] = m_a * delta_rho
    hessian[2, 2] = m_a * (fr.omega_prime_z_sq - fr.omega_zz_sq)
    hessian[5, 5] = m_a * (fr.omega_prime_z_sq + fr.omega_zz_sq)
    hessian[2, 5] = hessian[5, 2] = m_a * delta_z

    return QuadraticForm(constant=co.E0_bar, linear=linear, hessian=hessian)
