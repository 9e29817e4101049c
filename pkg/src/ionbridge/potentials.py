"""Ion displacement, adiabatic eigenvalues, and the effective two-atom potential.

The fast ion adjusts to the slow atom pair: completing the square of the
expanded ion-atom attraction displaces the ion trap center and lowers
the oscillator energy.  The resulting eigenvalue V(r1, r2) acts as a
potential for the atoms; adding their own trap terms gives the
effective two-atom potential U.  A brute-force minimizer over the
unexpanded ion potential serves as the accuracy oracle for the
displacement formulas.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import constants as cst
from .errors import AccuracyError, ConfigError, SingularGeometryError
from .model import IonModeIndex, SystemConfig, characteristic_scales

__all__ = [
    "AtomPairGeometry",
    "IonDisplacement",
    "ion_displacement",
    "bo_eigenvalue",
    "exact_ion_potential",
    "oracle_min_ion_energy",
    "effective_potential_U",
    "axial_bo_curve",
]


@dataclass(frozen=True)
class AtomPairGeometry:
    """Cartesian positions of the two atoms, m.  The ion trap sits at the
    origin, so both atoms must keep a finite distance from it and from
    each other."""

    r1: np.ndarray
    r2: np.ndarray

    def __post_init__(self):
        r1 = np.asarray(self.r1, dtype=float)
        r2 = np.asarray(self.r2, dtype=float)
        if r1.shape != (3,) or r2.shape != (3,):
            raise ConfigError("atom positions must be 3-vectors")
        object.__setattr__(self, "r1", r1)
        object.__setattr__(self, "r2", r2)
        if not (np.all(np.isfinite(r1)) and np.all(np.isfinite(r2))):
            raise ConfigError("atom positions must be finite")
        if np.linalg.norm(r1) == 0.0 or np.linalg.norm(r2) == 0.0:
            raise SingularGeometryError("atom at the ion-trap center")
        if np.linalg.norm(r1 - r2) == 0.0:
            raise SingularGeometryError("coincident atoms")

    @classmethod
    def on_axis(cls, z1: float, z2: float) -> "AtomPairGeometry":
        return cls(np.array([0.0, 0.0, z1]), np.array([0.0, 0.0, z2]))

    @classmethod
    def at_trap_centers(cls, config: SystemConfig) -> "AtomPairGeometry":
        z0 = config.half_separation_z0
        return cls.on_axis(z0, -z0)


@dataclass(frozen=True)
class IonDisplacement:
    """Equilibrium shift of the ion trap center, m."""

    x0: float
    y0: float
    zeta0: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x0, self.y0, self.zeta0])

    @property
    def rho0_sq(self) -> float:
        return self.x0 * self.x0 + self.y0 * self.y0


def ion_displacement(geometry: AtomPairGeometry, config: SystemConfig) -> IonDisplacement:
    """Closed-form ion displacement induced by the two ion-atom attractions.

    Each component is (4 / (m_i w^2)) * (C4_1 q_1 / r_1^6 + C4_2 q_2 / r_2^6)
    with the radial trap frequency for x and y and the axial one for z.
    """
    c4_1, c4_2 = config.c4_pair
    m_i = config.ion.mass
    r1, r2 = geometry.r1, geometry.r2
    r1_6 = float(np.dot(r1, r1)) ** 3
    r2_6 = float(np.dot(r2, r2)) ** 3

    pull = c4_1 * r1 / r1_6 + c4_2 * r2 / r2_6
    k_rho = 4.0 / (m_i * config.ion_trap.radial**2)
    k_z = 4.0 / (m_i * config.ion_trap.axial**2)
    return IonDisplacement(k_rho * pull[0], k_rho * pull[1], k_z * pull[2])


def bo_eigenvalue(geometry: AtomPairGeometry, mu: IonModeIndex,
                  config: SystemConfig) -> float:
    """Adiabatic eigenvalue V(r1, r2) of the displaced ion oscillator, J.

    Bare oscillator energy of mode ``mu`` minus the displacement energy
    gains, minus the direct ion-atom attractions, minus the atom-atom
    van der Waals term.
    """
    c4_1, c4_2 = config.c4_pair
    m_i = config.ion.mass
    d = ion_displacement(geometry, config)
    r1_sq = float(np.dot(geometry.r1, geometry.r1))
    r2_sq = float(np.dot(geometry.r2, geometry.r2))
    r12 = geometry.r1 - geometry.r2
    r12_6 = float(np.dot(r12, r12)) ** 3

    energy = mu.bare_energy(config.ion_trap)
    energy -= 0.5 * m_i * config.ion_trap.radial**2 * d.rho0_sq
    energy -= 0.5 * m_i * config.ion_trap.axial**2 * d.zeta0**2
    energy -= c4_1 / r1_sq**2 + c4_2 / r2_sq**2
    energy -= config.c6_pair / r12_6
    return energy


def exact_ion_potential(r_i: np.ndarray, geometry: AtomPairGeometry,
                        config: SystemConfig) -> float:
    """Unexpanded ion potential at ion position ``r_i``, J.

    Harmonic ion trap plus the two -C4/r^4 attractions; the atom-atom
    term does not involve the ion and is excluded.
    """
    r_i = np.asarray(r_i, dtype=float)
    c4_1, c4_2 = config.c4_pair
    d1_sq = float(np.dot(r_i - geometry.r1, r_i - geometry.r1))
    d2_sq = float(np.dot(r_i - geometry.r2, r_i - geometry.r2))
    if d1_sq == 0.0 or d2_sq == 0.0:
        raise SingularGeometryError("ion coordinate coincides with an atom")

    trap = config.ion_trap
    harmonic = 0.5 * config.ion.mass * (
        trap.radial**2 * (r_i[0]**2 + r_i[1]**2) + trap.axial**2 * r_i[2]**2
    )
    return harmonic - c4_1 / d1_sq**2 - c4_2 / d2_sq**2


def _fd_gradient(f, x: np.ndarray, h: float) -> np.ndarray:
    g = np.zeros(3)
    for a in range(3):
        e = np.zeros(3)
        e[a] = h
        g[a] = (f(x + e) - f(x - e)) / (2.0 * h)
    return g


def _fd_hessian(f, x: np.ndarray, h: float) -> np.ndarray:
    hess = np.zeros((3, 3))
    f0 = f(x)
    for a in range(3):
        ea = np.zeros(3)
        ea[a] = h
        hess[a, a] = (f(x + ea) - 2.0 * f0 + f(x - ea)) / h**2
        for b in range(a + 1, 3):
            eb = np.zeros(3)
            eb[b] = h
            mixed = (f(x + ea + eb) - f(x + ea - eb)
                     - f(x - ea + eb) + f(x - ea - eb)) / (4.0 * h**2)
            hess[a, b] = hess[b, a] = mixed
    return hess


def oracle_min_ion_energy(geometry: AtomPairGeometry, config: SystemConfig,
                          max_iter: int = 500) -> tuple[float, np.ndarray]:
    """Damped-Newton minimization of the unexpanded ion potential.

    Starts at the origin and iterates with finite-difference derivatives
    until the energy is stationary to 1e-12 relative.  Returns the
    minimum energy and its position; the position must agree with
    ``ion_displacement`` up to second-order corrections.
    """
    scales = characteristic_scales(config)
    for r in (geometry.r1, geometry.r2):
        if np.linalg.norm(r) <= 10.0 * scales.L_i:
            raise ValueError("atoms too close to the ion trap center for the oracle")

    def f(x):
        return exact_ion_potential(x, geometry, config)

    h = 1e-3 * scales.L_i
    x = np.zeros(3)
    energy = f(x)
    for _ in range(max_iter):
        g = _fd_gradient(f, x, h)
        hess = _fd_hessian(f, x, h)
        try:
            step = -np.linalg.solve(hess, g)
        except np.linalg.LinAlgError:
            step = -g * (h / max(np.linalg.norm(g), 1e-300))
        # Backtracking keeps the iterate inside the trap-dominated well.
        scale = 1.0
        for _ in range(40):
            e_new = f(x + scale * step)
            if e_new <= energy:
                break
            scale *= 0.5
        else:
            e_new = energy
            scale = 0.0
        x = x + scale * step
        done = abs(e_new - energy) <= 1e-12 * max(abs(e_new), abs(energy))
        energy = e_new
        if done:
            return energy, x
    raise AccuracyError(f"ion-energy minimization did not converge in {max_iter} iterations")


def effective_potential_U(geometry: AtomPairGeometry, mu: IonModeIndex,
                          config: SystemConfig) -> float:
    """Effective two-atom potential: atom trap terms plus the adiabatic
    eigenvalue, J.  Atom 1's trap is centered at +z0, atom 2's at -z0."""
    m_a = config.atom.mass
    trap = config.atom_trap
    z0 = config.half_separation_z0
    r1, r2 = geometry.r1, geometry.r2
    trap_energy = 0.5 * m_a * trap.radial**2 * (r1[0]**2 + r1[1]**2 + r2[0]**2 + r2[1]**2)
    trap_energy += 0.5 * m_a * trap.axial**2 * ((r1[2] - z0)**2 + (r2[2] + z0)**2)
    return trap_energy + bo_eigenvalue(geometry, mu, config)


def _curve_states(config: SystemConfig):
    """The (rr, rg, gg) state pairs derived from the configured Rydberg level."""
    from .model import GROUND

    rydberg = next((s for s in config.state_pair if s.is_rydberg), None)
    if rydberg is None:
        raise ConfigError("axial curves need a Rydberg state in the configured pair")
    return {
        "V_rr": (rydberg, rydberg),
        "V_rg": (rydberg, GROUND),
        "V_gg": (GROUND, GROUND),
    }


def axial_bo_curve(z_grid, mu: IonModeIndex, config: SystemConfig,
                   placement: str = "symmetric") -> dict[str, np.ndarray]:
    """Adiabatic potential curves along the trap axis, J, asymptote removed.

    For each separation z the two atoms sit on the z axis: symmetrically
    at +-z/2 ("symmetric" placement) or with atom 2 pinned at its trap
    center -z0 and atom 1 at -z0 + z ("atom2-fixed").  Columns hold
    V - E0 for the rr, rg, and gg state pairs built from the configured
    Rydberg level.
    """
    if placement not in ("symmetric", "atom2-fixed"):
        raise ConfigError(f"unknown placement {placement!r}")
    z_grid = np.asarray(z_grid, dtype=float)
    if np.any(z_grid <= 0.0):
        raise SingularGeometryError("separation grid must stay positive")

    states = _curve_states(config)
    e0 = mu.bare_energy(config.ion_trap)
    out: dict[str, np.ndarray] = {"z": z_grid.copy()}
    for name, pair in states.items():
        cfg = config.with_states(*pair)
        values = np.empty_like(z_grid)
        for k, z in enumerate(z_grid):
            if placement == "symmetric":
                geom = AtomPairGeometry.on_axis(0.5 * z, -0.5 * z)
            else:
                z2 = -config.half_separation_z0
                geom = AtomPairGeometry.on_axis(z2 + z, z2)
            values[k] = bo_eigenvalue(geom, mu, cfg) - e0
        out[name] = values
    return out
