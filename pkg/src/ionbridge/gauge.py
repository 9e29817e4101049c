"""Non-adiabatic gauge connection over atom-coordinate space.

The ionic eigenstates are displaced-oscillator products, so their
parametric derivative with respect to an atom coordinate is the
displacement Jacobian chained with analytic one-quantum ladder
elements: the connection obeys a strict delta n = +-1 selection rule
per Cartesian axis, is Hermitian, and has an identically vanishing
diagonal, which makes every Berry phase of a single surface zero.
Cartesian ion modes are used throughout; the cylindrical phase
convention under displacement is not defined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from . import constants as cst
from .errors import AccuracyError, ConfigError
from .model import IonModeIndex, SystemConfig
from .potentials import AtomPairGeometry

__all__ = [
    "GaugeConnection",
    "LoopPath",
    "cartesian_modes",
    "displacement_jacobian",
    "gauge_element",
    "connection_matrix",
    "connection_records",
    "gauge_hermiticity_check",
    "berry_phase",
    "wilson_loop",
    "square_loop",
]

_SQRT2 = math.sqrt(2.0)


def cartesian_modes(max_n: int) -> list[IonModeIndex]:
    """All Cartesian ion modes with every quantum number <= max_n,
    ordered lexicographically."""
    return [IonModeIndex.cartesian(nx, ny, nz)
            for nx in range(max_n + 1)
            for ny in range(max_n + 1)
            for nz in range(max_n + 1)]


def _require_cartesian(mode: IonModeIndex) -> tuple[int, int, int]:
    if mode.basis != "cartesian":
        raise ConfigError("gauge quantities need Cartesian ion modes")
    return mode.n1, mode.n2, mode.n3


def displacement_jacobian(atom_index: int, geometry: AtomPairGeometry,
                          config: SystemConfig) -> np.ndarray:
    """d(displacement)/d(atom position): J[a, b] = d d_a / d r_{j,b}.

    Row a runs over the displacement components (x0, y0, zeta0), column
    b over the coordinates of atom ``atom_index`` (1 or 2).
    """
    if atom_index not in (1, 2):
        raise ConfigError(f"atom_index must be 1 or 2, got {atom_index}")
    r = geometry.r1 if atom_index == 1 else geometry.r2
    c4 = config.c4_pair[atom_index - 1]
    r_sq = float(np.dot(r, r))
    core = np.eye(3) / r_sq**3 - 6.0 * np.outer(r, r) / r_sq**4
    m_i = config.ion.mass
    kappa = np.array([
        4.0 / (m_i * config.ion_trap.radial**2),
        4.0 / (m_i * config.ion_trap.radial**2),
        4.0 / (m_i * config.ion_trap.axial**2),
    ])
    return c4 * kappa[:, None] * core


def _ladder_derivatives(modes: list[IonModeIndex], config: SystemConfig) -> np.ndarray:
    """D[a, bra, ket] = <bra| d/du_a |ket> over the displaced-oscillator modes."""
    triples = [_require_cartesian(m) for m in modes]
    index = {t: i for i, t in enumerate(triples)}
    omegas = (config.ion_trap.radial, config.ion_trap.radial, config.ion_trap.axial)
    lengths = [math.sqrt(cst.HBAR / (config.ion.mass * w)) for w in omegas]

    d = np.zeros((3, len(modes), len(modes)))
    for ket, t in enumerate(triples):
        for a in range(3):
            n = t[a]
            down = list(t)
            down[a] = n - 1
            bra = index.get(tuple(down))
            if bra is not None:
                d[a, bra, ket] = math.sqrt(n) / (_SQRT2 * lengths[a])
            up = list(t)
            up[a] = n + 1
            bra = index.get(tuple(up))
            if bra is not None:
                d[a, bra, ket] = -math.sqrt(n + 1) / (_SQRT2 * lengths[a])
    return d


def connection_matrix(modes: list[IonModeIndex], atom_index: int,
                      geometry: AtomPairGeometry, config: SystemConfig) -> np.ndarray:
    """Gauge connection A[mu, nu, b] over the mode set, J s/m (complex).

    A is i hbar times the overlap of mode nu with the gradient of mode
    mu with respect to atom ``atom_index``; the displaced-center
    structure makes it purely imaginary and Hermitian.
    """
    jac = displacement_jacobian(atom_index, geometry, config)
    ladders = _ladder_derivatives(modes, config)
    m = len(modes)
    out = np.zeros((m, m, 3), dtype=complex)
    for b in range(3):
        acc = np.zeros((m, m))
        for a in range(3):
            if jac[a, b] != 0.0:
                acc = acc + jac[a, b] * ladders[a].T
        out[:, :, b] = -1j * cst.HBAR * acc
    return out


def gauge_element(bra: IonModeIndex, ket: IonModeIndex, atom_index: int,
                  geometry: AtomPairGeometry, config: SystemConfig) -> np.ndarray:
    """Single connection element A_{bra,ket} for one atom, 3-vector J s/m."""
    modes = [bra, ket] if bra != ket else [bra]
    matrix = connection_matrix(modes, atom_index, geometry, config)
    return matrix[0, -1 if bra != ket else 0]


@dataclass(frozen=True)
class GaugeConnection:
    """One stored connection element (for table output)."""

    bra_mode: IonModeIndex
    ket_mode: IonModeIndex
    atom_index: int
    value: np.ndarray  # complex 3-vector, J s/m


def connection_records(modes: list[IonModeIndex], geometry: AtomPairGeometry,
                       config: SystemConfig) -> list[GaugeConnection]:
    """Every connection element over the mode set, both atoms, row-major."""
    records = []
    for atom_index in (1, 2):
        matrix = connection_matrix(modes, atom_index, geometry, config)
        for i, bra in enumerate(modes):
            for k, ket in enumerate(modes):
                records.append(GaugeConnection(bra, ket, atom_index, matrix[i, k]))
    return records


def gauge_hermiticity_check(modes: list[IonModeIndex], geometry: AtomPairGeometry,
                            config: SystemConfig) -> float:
    """max |A_{mu nu} - conj(A_{nu mu})| over both atoms, J s/m."""
    worst = 0.0
    for atom_index in (1, 2):
        matrix = connection_matrix(modes, atom_index, geometry, config)
        for b in range(3):
            dev = np.max(np.abs(matrix[:, :, b] - matrix[:, :, b].conj().T))
            worst = max(worst, float(dev))
    return worst


@dataclass(frozen=True)
class LoopPath:
    """Ordered waypoints in (r1, r2) space; shape (points, 2, 3), m."""

    waypoints: np.ndarray
    closed: bool = True
    max_step: float | None = None

    def __post_init__(self):
        w = np.asarray(self.waypoints, dtype=float)
        if w.ndim != 3 or w.shape[1:] != (2, 3) or w.shape[0] < 2:
            raise ConfigError("waypoints must have shape (points >= 2, 2, 3)")
        object.__setattr__(self, "waypoints", w)
        if self.closed and not np.array_equal(w[0], w[-1]):
            raise ConfigError("a closed loop must end exactly at its first waypoint")
        if self.max_step is not None:
            steps = np.linalg.norm((w[1:] - w[:-1]).reshape(-1, 6), axis=1)
            if np.any(steps > self.max_step):
                raise ConfigError(f"waypoint step exceeds max_step = {self.max_step}")

    def segments(self, subdivide: int = 1) -> list[tuple[np.ndarray, np.ndarray]]:
        """(midpoint, delta) pairs, each waypoint leg cut into ``subdivide`` pieces."""
        out = []
        w = self.waypoints
        for k in range(w.shape[0] - 1):
            start, end = w[k], w[k + 1]
            for piece in range(subdivide):
                lo = start + (end - start) * (piece / subdivide)
                hi = start + (end - start) * ((piece + 1) / subdivide)
                out.append((0.5 * (lo + hi), hi - lo))
        return out


def square_loop(config: SystemConfig, side: float = 1e-6) -> LoopPath:
    """Default closed path: atom 1 runs a square in its x-z plane around
    its trap center while atom 2 stays at its own center."""
    z0 = config.half_separation_z0
    r2 = [0.0, 0.0, -z0]
    half = 0.5 * side
    corners = [(-half, z0 - half), (half, z0 - half), (half, z0 + half),
               (-half, z0 + half), (-half, z0 - half)]
    waypoints = [[[x, 0.0, z], r2] for x, z in corners]
    return LoopPath(np.array(waypoints), closed=True)


def _diagonal_integral(loop: LoopPath, mode: IonModeIndex, config: SystemConfig,
                       subdivide: int) -> float:
    total = 0.0j
    for mid, delta in loop.segments(subdivide):
        geometry = AtomPairGeometry(mid[0], mid[1])
        for atom_index in (1, 2):
            element = gauge_element(mode, mode, atom_index, geometry, config)
            total += np.dot(element, delta[atom_index - 1])
    return float(total.real) / cst.HBAR


def berry_phase(loop: LoopPath, mode: IonModeIndex, config: SystemConfig,
                max_levels: int = 20) -> float:
    """Geometric phase of one adiabatic surface around a closed loop, rad.

    Midpoint-rule line integral of the diagonal connection with step
    halving until successive refinements agree to 1e-8 rad.  For the
    real displaced-oscillator states the diagonal vanishes identically,
    so the phase is zero for every loop.
    """
    _require_cartesian(mode)
    if not loop.closed:
        raise ConfigError("Berry phase needs a closed loop")
    previous = _diagonal_integral(loop, mode, config, 1)
    for level in range(1, max_levels + 1):
        current = _diagonal_integral(loop, mode, config, 2**level)
        if abs(current - previous) < 1e-8:
            return current
        previous = current
    raise AccuracyError(f"Berry phase did not settle within {max_levels} refinements")


def wilson_loop(loop: LoopPath, modes: list[IonModeIndex], config: SystemConfig,
                resolution: int = 8) -> np.ndarray:
    """Path-ordered transport matrix over the mode set (complex, unitary).

    Product of exp(-i A . dr / hbar) over the subdivided path, later
    factors applied on the left; doubling ``resolution`` must leave the
    result unchanged at the 1e-6 level for trustworthy output.
    """
    for mode in modes:
        _require_cartesian(mode)
    transport = np.eye(len(modes), dtype=complex)
    for mid, delta in loop.segments(resolution):
        geometry = AtomPairGeometry(mid[0], mid[1])
        step = np.zeros((len(modes), len(modes)), dtype=complex)
        for atom_index in (1, 2):
            matrix = connection_matrix(modes, atom_index, geometry, config)
            step += np.tensordot(matrix, delta[atom_index - 1], axes=([2], [0]))
        transport = expm(-1j * step / cst.HBAR) @ transport
    return transport
