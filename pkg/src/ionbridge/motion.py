"""Two-atom axial motional states beyond the quadratic approximation.

The pair wavefunction is expanded in products of bare trap oscillator
states centered at +z0 and -z0; the untruncated axial interaction is
integrated with Gauss-Hermite quadrature, whose weight absorbs the
basis Gaussians exactly.  The radial degrees of freedom stay frozen in
their ground state and contribute the constant 2 hbar omega_rho.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.hermite import hermgauss

from . import constants as cst
from .errors import AccuracyError, InstabilityError
from .model import SystemConfig
from .phonons import equilibrium_shift, phonon_spectrum

__all__ = [
    "CorrelatedGaussian",
    "BasisExpansionState",
    "axial_collision_threshold",
    "axial_hamiltonian_matrix",
    "symmetric_eigensolve",
    "basis_ground_state",
    "gaussian_ground_state",
    "bare_product_state",
    "pair_density",
    "state_overlap",
]

_MAX_BASIS = 60
_RAMP_LIMIT = 50
_CONVERGENCE_STEP = 4
_QUAD_MARGIN = 8


def hermite_values(n_max: int, xi: np.ndarray) -> np.ndarray:
    """Orthonormal Hermite polynomials p_0..p_n_max at the points xi.

    These are the oscillator eigenfunctions with the Gaussian factor
    removed: orthonormal under the weight exp(-xi^2), which is exactly
    the Gauss-Hermite quadrature weight.  The stable three-term
    recurrence keeps values finite for every n used here.
    """
    xi = np.asarray(xi, dtype=float)
    p = np.empty((xi.size, n_max + 1))
    p[:, 0] = math.pi ** -0.25
    if n_max >= 1:
        p[:, 1] = math.sqrt(2.0) * xi * p[:, 0]
    for n in range(1, n_max):
        p[:, n + 1] = (math.sqrt(2.0 / (n + 1)) * xi * p[:, n]
                       - math.sqrt(n / (n + 1)) * p[:, n - 1])
    return p


def _oscillator_values(n_max: int, z: np.ndarray, center: float, length: float) -> np.ndarray:
    """Real-space oscillator eigenfunctions phi_n(z) around ``center``."""
    xi = (np.asarray(z, dtype=float) - center) / length
    gauss = np.exp(-0.5 * xi * xi) / math.sqrt(length)
    return hermite_values(n_max, xi) * gauss[:, None]


def axial_collision_threshold(config: SystemConfig) -> float:
    """Largest half-separation z0 at which an atom's axial well vanishes, m.

    For a single atom in its trap against the ion's -C4/z^4 pull, the
    local minimum and maximum merge in a saddle-node at
    z0 = 1.2 (20 C4 / (m_a w_az^2))^(1/6); below that there is nothing
    to bind to.  The pair threshold takes the larger of the two states.
    """
    m_a = config.atom.mass
    w_az_sq = config.atom_trap.axial**2
    return max(
        1.2 * (20.0 * c4 / (m_a * w_az_sq)) ** (1.0 / 6.0) if c4 > 0.0 else 0.0
        for c4 in config.c4_pair
    )


def _axial_interaction(config: SystemConfig):
    """Full on-axis interaction W(z1, z2): everything in the effective
    potential except the atom trap quadratics and the constant mode energy."""
    c4_1, c4_2 = config.c4_pair
    c6 = config.c6_pair
    m_i = config.ion.mass
    w_iz_sq = config.ion_trap.axial**2

    def w(z1, z2):
        zeta0 = (4.0 / (m_i * w_iz_sq)) * (c4_1 * z1 / np.abs(z1) ** 6
                                           + c4_2 * z2 / np.abs(z2) ** 6)
        v = -0.5 * m_i * w_iz_sq * zeta0 * zeta0
        v = v - c4_1 / z1**4 - c4_2 / z2**4
        v = v - c6 / (z1 - z2) ** 6
        return v

    return w


def _quadrature_block(config: SystemConfig, z0: float, n_max: int, order: int,
                      potential_fn) -> np.ndarray:
    """Gauss-Hermite matrix of the interaction in the product basis.

    Returns the (N^2, N^2) block ordered with flat index n1 * N + n2.
    """
    length = math.sqrt(cst.HBAR / (config.atom.mass * config.atom_trap.axial))
    xi, weights = hermgauss(order)
    z1 = z0 + length * xi
    z2 = -z0 + length * xi
    w_grid = potential_fn(z1[:, None], z2[None, :])

    p = hermite_values(n_max, xi)
    n = n_max + 1
    # pair[a, (bra, ket)] = w_a p_bra(xi_a) p_ket(xi_a)
    pair = (p[:, :, None] * p[:, None, :] * weights[:, None, None]).reshape(order, n * n)
    block = pair.T @ w_grid @ pair            # [(bra1, ket1), (bra2, ket2)]
    block = block.reshape(n, n, n, n).transpose(0, 2, 1, 3).reshape(n * n, n * n)
    return block


def axial_hamiltonian_matrix(config: SystemConfig, z0: float, n_max: int,
                             potential_fn=None) -> np.ndarray:
    """Axial pair Hamiltonian in the bare oscillator product basis, J.

    Default interaction: ion-following energy, the two -C4/z^4 pulls and
    the -C6/(z1-z2)^6 term, untruncated, with the constant mode energy
    and the frozen radial zero point 2 hbar w_rho folded into the
    diagonal.  Passing ``potential_fn(z1, z2)`` replaces exactly the
    potential beyond the bare traps; no constants are folded then.
    Successive quadrature orders must agree to 1e-8 relative.
    """
    if not 0 <= n_max <= _MAX_BASIS:
        raise ValueError(f"n_max must lie in [0, {_MAX_BASIS}], got {n_max}")
    injected = potential_fn is not None
    if not injected:
        threshold = axial_collision_threshold(config)
        if z0 <= threshold:
            raise InstabilityError(
                f"no bound axial well at z0 = {z0:.4g} m; collision threshold is "
                f"{threshold:.4g} m"
            )
        potential_fn = _axial_interaction(config)

    order = 4 * n_max + _QUAD_MARGIN
    block = _quadrature_block(config, z0, n_max, order, potential_fn)
    check = _quadrature_block(config, z0, n_max, order + 16, potential_fn)
    scale = np.max(np.abs(check))
    drift = np.max(np.abs(block - check))
    if scale > 0.0 and drift > 1e-8 * scale:
        raise AccuracyError(
            f"quadrature not converged: order {order} vs {order + 16} differ by "
            f"{drift / scale:.3g} relative"
        )

    n = n_max + 1
    n1, n2 = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    diag = cst.HBAR * config.atom_trap.axial * (n1 + n2 + 1).reshape(-1).astype(float)
    if not injected:
        diag = diag + config.ion_mode.bare_energy(config.ion_trap) \
            + 2.0 * cst.HBAR * config.atom_trap.radial
    h = check + np.diag(diag)
    return 0.5 * (h + h.T)


def symmetric_eigensolve(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a real symmetric matrix with fixed conventions.

    Eigenvalues ascend; each eigenvector's largest-magnitude component
    is made positive.  The residual ||A v - lambda v|| of every pair is
    checked against 1e-10 ||A||.
    """
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] > 4000:
        raise ValueError(f"matrix dimension {a.shape[0]} exceeds the 4000 contract")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix must be finite")
    if np.max(np.abs(a - a.T)) > 1e-12 * max(np.max(np.abs(a)), 1e-300):
        raise ValueError("matrix is not symmetric")

    try:
        values, vectors = np.linalg.eigh(a)
    except np.linalg.LinAlgError as err:
        raise AccuracyError(f"eigensolver failed to converge: {err}") from err

    lead = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[lead, np.arange(vectors.shape[1])])
    signs[signs == 0.0] = 1.0
    vectors = vectors * signs

    norm = max(np.max(np.abs(values)), 1e-300) if values.size else 1e-300
    residual = a @ vectors - vectors * values
    worst = np.max(np.linalg.norm(residual, axis=0))
    if worst > 1e-10 * norm:
        raise AccuracyError(f"eigenpair residual {worst:.3g} exceeds 1e-10 * ||A|| = {1e-10 * norm:.3g}")
    return values, vectors


@dataclass(frozen=True)
class BasisExpansionState:
    """Pair state expanded over bare oscillator products at +-z0."""

    n_max: int
    coefficients: np.ndarray   # (n_max+1, n_max+1), real, unit norm
    energy: float              # J, full absolute energy
    half_separation: float     # z0, m
    osc_length: float          # atom axial oscillator length, m
    residual: float            # relative energy drift of the convergence check

    def wavefunction(self, z1, z2) -> np.ndarray:
        """psi(z1, z2) on the tensor grid, 1/m."""
        phi1 = _oscillator_values(self.n_max, z1, self.half_separation, self.osc_length)
        phi2 = _oscillator_values(self.n_max, z2, -self.half_separation, self.osc_length)
        return phi1 @ self.coefficients @ phi2.T


@dataclass(frozen=True)
class CorrelatedGaussian:
    """Ground state of the quadratic axial form: a rotated 2-D Gaussian."""

    center: tuple[float, float]   # (z1, z2), m
    normal_axes: np.ndarray       # columns are normal-mode directions in (z1, z2)
    widths: tuple[float, float]   # sqrt(hbar / (m omega)) per mode, ascending omega

    def wavefunction(self, z1, z2) -> np.ndarray:
        """psi(z1, z2) on the tensor grid, 1/m."""
        z1 = np.asarray(z1, dtype=float)
        z2 = np.asarray(z2, dtype=float)
        d1 = z1[:, None] - self.center[0]
        d2 = z2[None, :] - self.center[1]
        r = self.normal_axes
        u1 = r[0, 0] * d1 + r[1, 0] * d2
        u2 = r[0, 1] * d1 + r[1, 1] * d2
        s1, s2 = self.widths
        norm = 1.0 / math.sqrt(math.pi * s1 * s2)
        return norm * np.exp(-0.5 * (u1 / s1) ** 2 - 0.5 * (u2 / s2) ** 2)


def _axial_energy_scale(config: SystemConfig) -> float:
    return cst.HBAR * config.atom_trap.axial


def _constant_offset(config: SystemConfig) -> float:
    return config.ion_mode.bare_energy(config.ion_trap) \
        + 2.0 * cst.HBAR * config.atom_trap.radial


def basis_ground_state(config: SystemConfig, z0: float, n_max: int = 30) -> BasisExpansionState:
    """Variational ground state of the full axial pair Hamiltonian.

    The basis is ramped from ``n_max`` to 50 if the ground energy has
    not settled to 1e-6 relative (measured on the axial part of the
    energy) between n_max and n_max + 4.
    """
    a_z = math.sqrt(cst.HBAR / (config.atom.mass * config.atom_trap.axial))
    offset = _constant_offset(config)

    def solve(n):
        h = axial_hamiltonian_matrix(config, z0, n)
        values, vectors = symmetric_eigensolve(h)
        return values[0], vectors[:, 0]

    for attempt, n in enumerate((n_max, _RAMP_LIMIT)):
        if attempt and n <= n_max:
            break
        energy, vector = solve(n)
        energy_check, _ = solve(n + _CONVERGENCE_STEP)
        scale = max(abs(energy_check - offset), _axial_energy_scale(config))
        residual = abs(energy - energy_check) / scale
        if residual < 1e-6:
            dim = n + 1
            return BasisExpansionState(
                n_max=n,
                coefficients=vector.reshape(dim, dim),
                energy=energy,
                half_separation=z0,
                osc_length=a_z,
                residual=residual,
            )
    raise AccuracyError(
        f"ground energy not converged to 1e-6 at n_max = {_RAMP_LIMIT} "
        f"(relative drift {residual:.3g})"
    )


def _axial_mode_matrix(config: SystemConfig, z0: float) -> np.ndarray:
    """Squared-frequency matrix of the axial pair in atom coordinates."""
    from .expansion import effective_frequencies

    fr = effective_frequencies(config, z0)
    return np.array([
        [fr.omega_bar_z1_sq, fr.omega_zz_sq],
        [fr.omega_zz_sq, fr.omega_bar_z2_sq],
    ])


def gaussian_ground_state(config: SystemConfig, z0: float) -> CorrelatedGaussian:
    """Analytic ground state of the quadratic axial expansion.

    Widths use the sqrt(hbar / (m omega)) convention, so the density
    along a normal axis u is proportional to exp(-u^2 / sigma^2).
    """
    if not phonon_spectrum(config, z0).stable:
        raise InstabilityError(
            f"configuration unstable at 2z0 = {2.0 * z0:.4g} m, no Gaussian ground state"
        )
    dz1, dz2 = equilibrium_shift(config, z0)
    values, vectors = symmetric_eigensolve(_axial_mode_matrix(config, z0))
    widths = tuple(math.sqrt(cst.HBAR / (config.atom.mass * math.sqrt(v))) for v in values)
    return CorrelatedGaussian(
        center=(z0 + dz1, -z0 + dz2),
        normal_axes=vectors,
        widths=widths,
    )


def bare_product_state(config: SystemConfig, z0: float) -> CorrelatedGaussian:
    """Uncoupled trap ground state: the no-interaction reference."""
    a_z = math.sqrt(cst.HBAR / (config.atom.mass * config.atom_trap.axial))
    return CorrelatedGaussian(center=(z0, -z0), normal_axes=np.eye(2), widths=(a_z, a_z))


def pair_density(state, z1_grid, z2_grid) -> np.ndarray:
    """|psi(z1, z2)|^2 on the tensor grid, 1/m^2.

    The grid must resolve and cover the state: the trapezoid integral of
    the density is required to equal 1 within 1e-3 (defaults land well
    inside 1e-4).
    """
    z1 = np.asarray(z1_grid, dtype=float)
    z2 = np.asarray(z2_grid, dtype=float)
    psi = state.wavefunction(z1, z2)
    density = psi * psi
    total = np.trapezoid(np.trapezoid(density, z2, axis=1), z1)
    if abs(total - 1.0) > 1e-3:
        raise AccuracyError(
            f"density integrates to {total:.6g}; the grid under-covers or "
            "under-resolves the state"
        )
    return density


def state_overlap(state_a, state_b, z1_grid, z2_grid) -> float:
    """Trapezoid overlap integral <a|b> of two real pair states."""
    z1 = np.asarray(z1_grid, dtype=float)
    z2 = np.asarray(z2_grid, dtype=float)
    product = state_a.wavefunction(z1, z2) * state_b.wavefunction(z1, z2)
    return float(np.trapezoid(np.trapezoid(product, z2, axis=1), z1))
