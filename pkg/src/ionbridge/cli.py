"""Command line front end.

Subcommands mirror the library surface: scales, bo-curve, phonons,
critical, density, and gauge.  Every command takes --config PATH and the
table-producing ones take --out DIR [--overwrite].  Exit codes: 0 on
success, 2 for configuration problems, 3 for accuracy or convergence
failures, 4 when the request lands in the unstable or collisional
domain.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import constants as cst
from .config import load_config, parse_state
from .csvio import write_table
from .errors import (
    AccuracyError,
    ConfigError,
    InstabilityError,
    NotBracketedError,
    SingularGeometryError,
)
from .gauge import berry_phase, cartesian_modes, connection_records, \
    gauge_hermiticity_check, square_loop
from .model import GROUND, characteristic_scales, validate
from .motion import basis_ground_state, gaussian_ground_state, pair_density
from .phonons import critical_separation, mode_sweep
from .potentials import AtomPairGeometry, axial_bo_curve

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_ACCURACY = 3
EXIT_INSTABILITY = 4

FORMAT_VERSION = 1

_KHZ2 = (cst.TWO_PI * 1e3) ** 2  # rad^2/s^2 per kHz^2


def _to_khz(energy_j: float) -> float:
    return energy_j / cst.PLANCK / 1e3


def _load(args, check_stability: bool = False):
    config, resolved, digest = load_config(args.config)
    diagnostics = validate(config, check_stability=check_stability)
    errors = [d.message for d in diagnostics if d.severity == "error"]
    if errors:
        raise ConfigError("; ".join(errors))
    for diag in diagnostics:
        if diag.severity == "warning":
            print(f"warning: {diag.message}", file=sys.stderr)
    return config, resolved, digest


def _metadata(command: str, digest: str, **extra) -> dict:
    meta = {
        "format_version": FORMAT_VERSION,
        "command": command,
        "config_digest": "sha256:" + digest,
    }
    meta.update(extra)
    return meta


def _require_out(args) -> Path:
    if args.out is None:
        raise ConfigError(f"{args.command} writes tables and needs --out DIR")
    return Path(args.out)


def cmd_scales(args) -> int:
    config, _, digest = _load(args, check_stability=True)
    s = characteristic_scales(config)
    pair = "-".join(state.label() for state in config.state_pair)

    def um_or_na(value: float) -> str:
        return f"{value * 1e6:.6g} um" if value > 0.0 else "n/a"

    print(f"system: {config.atom.name} atoms + {config.ion.name} ion, "
          f"states {pair}, 2z0 = {2e6 * config.half_separation_z0:.6g} um")
    print(f"adiabaticity eta = {s.eta:.2f} ({s.eta:.9g})")
    print(f"atom oscillator lengths: a_z = {s.a_z * 1e6:.6g} um, "
          f"a_rho = {s.a_rho * 1e6:.6g} um")
    print(f"mean-frequency lengths: L_i = {s.L_i * 1e6:.6g} um, "
          f"L_a = {s.L_a * 1e6:.6g} um")
    print(f"trap periods: T_i = {s.T_i * 1e3:.6g} ms, T_a = {s.T_a * 1e3:.6g} ms")
    print(f"ion-atom polarization length R_ia* = {um_or_na(s.R_ia_star)}")
    print(f"atom-atom van der Waals length R_aa* = {um_or_na(s.R_aa_star)}")

    if args.out is not None:
        rows = [
            ("eta", s.eta, "1"),
            ("a_z", s.a_z * 1e6, "um"),
            ("a_rho", s.a_rho * 1e6, "um"),
            ("L_i", s.L_i * 1e6, "um"),
            ("L_a", s.L_a * 1e6, "um"),
            ("T_i", s.T_i * 1e3, "ms"),
            ("T_a", s.T_a * 1e3, "ms"),
            ("R_ia_star", s.R_ia_star * 1e6, "um"),
            ("R_aa_star", s.R_aa_star * 1e6, "um"),
        ]
        path = write_table(
            Path(args.out) / "scales.csv",
            _metadata("scales", digest, states=pair),
            ["quantity", "value", "unit"],
            rows,
            overwrite=args.overwrite,
        )
        print(f"wrote {path}")
    return EXIT_OK


def cmd_bo_curve(args) -> int:
    config, _, digest = _load(args, check_stability=True)
    if args.z_min_um <= 0.0:
        raise ConfigError(f"--z-min-um must be positive, got {args.z_min_um}")
    if args.z_max_um <= args.z_min_um:
        raise ConfigError(
            f"separation range is reversed or empty: [{args.z_min_um}, {args.z_max_um}] um"
        )
    if args.points < 2:
        raise ConfigError(f"--points must be at least 2, got {args.points}")

    grid = np.linspace(args.z_min_um, args.z_max_um, args.points) * 1e-6
    curves = axial_bo_curve(grid, config.ion_mode, config, placement=args.placement)

    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.abs(curves["V_rr"]) / np.abs(curves["V_rg"])
    rows = [
        (z * 1e6, _to_khz(vrr), _to_khz(vrg), vgg / cst.PLANCK, r)
        for z, vrr, vrg, vgg, r in zip(
            curves["z"], curves["V_rr"], curves["V_rg"], curves["V_gg"], ratio
        )
    ]
    path = write_table(
        _require_out(args) / "bo_curve.csv",
        _metadata("bo-curve", digest, placement=args.placement,
                  z_min_um=args.z_min_um, z_max_um=args.z_max_um,
                  points=args.points, ion_mode=config.ion_mode.label()),
        ["separation_um", "V_rr_kHz", "V_rg_kHz", "V_gg_Hz", "abs_ratio_rr_rg"],
        rows,
        overwrite=args.overwrite,
    )
    print(f"wrote {path}")
    return EXIT_OK


def cmd_phonons(args) -> int:
    config, _, digest = _load(args)
    if args.sep_min_um <= 0.0 or args.sep_max_um <= args.sep_min_um:
        raise ConfigError(
            f"separation range is reversed or empty: [{args.sep_min_um}, {args.sep_max_um}] um"
        )
    if args.points < 2:
        raise ConfigError(f"--points must be at least 2, got {args.points}")

    grid = np.linspace(args.sep_min_um, args.sep_max_um, args.points) * 1e-6
    sweep = mode_sweep(config, grid)
    rows = [
        (
            sweep["separation"][k] * 1e6,
            sweep["axial_stretch_sq"][k] / _KHZ2,
            sweep["axial_com_sq"][k] / _KHZ2,
            sweep["transverse_stretch_sq"][k] / _KHZ2,
            sweep["transverse_com_sq"][k] / _KHZ2,
            sweep["axial_angle"][k],
            sweep["transverse_angle"][k],
            bool(sweep["stable"][k]),
        )
        for k in range(grid.size)
    ]
    path = write_table(
        _require_out(args) / "phonons.csv",
        _metadata("phonons", digest, sep_min_um=args.sep_min_um,
                  sep_max_um=args.sep_max_um, points=args.points),
        ["separation_um", "axial_stretch_kHz2", "axial_com_kHz2",
         "transverse_stretch_kHz2", "transverse_com_kHz2",
         "axial_angle_rad", "transverse_angle_rad", "stable"],
        rows,
        overwrite=args.overwrite,
    )
    print(f"wrote {path}")
    return EXIT_OK


def _pair_from_token(token: str, config):
    """State pair for a stability token: 'rr', 'rg', 'gg', or '30S-25S'."""
    shorthand = {"rr", "rg", "gg"}
    if token in shorthand:
        rydberg = next((s for s in config.state_pair if s.is_rydberg), None)
        if token == "gg":
            return (GROUND, GROUND)
        if rydberg is None:
            raise ConfigError(
                f"pair token {token!r} needs a Rydberg level in the configured states"
            )
        return (rydberg, rydberg) if token == "rr" else (rydberg, GROUND)
    if "-" in token:
        left, right = token.split("-", 1)
        return (parse_state(left), parse_state(right))
    raise ConfigError(f"malformed pair token {token!r}, expected like '30S-30S' or 'rr'")


def cmd_critical(args) -> int:
    config, _, digest = _load(args)
    tokens = args.pairs or ["-".join(s.label() for s in config.state_pair)]

    rows = []
    for token in tokens:
        pair = _pair_from_token(token, config)
        label = "-".join(s.label() for s in pair)
        variant = config.with_states(*pair)
        try:
            result = critical_separation(variant)
        except NotBracketedError as err:
            print(f"pair {label}: no instability inside the bracket ({err})")
            rows.append((label, "n/a", "none"))
            continue
        print(f"pair {label}: critical 2z0 = {result.critical_2z0 * 1e6:.6f} um, "
              f"limiting branch {result.limiting_branch}")
        rows.append((label, result.critical_2z0 * 1e6, result.limiting_branch))

    if args.out is not None:
        path = write_table(
            Path(args.out) / "critical.csv",
            _metadata("critical", digest, pairs=" ".join(tokens)),
            ["pair", "critical_2z0_um", "limiting_branch"],
            rows,
            overwrite=args.overwrite,
        )
        print(f"wrote {path}")
    return EXIT_OK


def cmd_density(args) -> int:
    config, _, digest = _load(args)
    if args.n_max < 0:
        raise ConfigError(f"--n-max must be non-negative, got {args.n_max}")
    if args.points < 16:
        raise ConfigError(f"--points must be at least 16, got {args.points}")
    if any(sep <= 0.0 for sep in args.separations_um):
        raise ConfigError("separations must be positive")
    out_dir = _require_out(args)

    for sep_um in args.separations_um:
        z0 = 0.5 * sep_um * 1e-6
        variant = config.with_half_separation(z0)
        gauss = gaussian_ground_state(variant, z0)
        state = basis_ground_state(variant, z0, n_max=args.n_max)

        reach = max(gauss.widths) * 8.0
        reach = max(reach, state.osc_length * (np.sqrt(2.0 * state.n_max + 1.0) + 5.0))
        z1 = np.linspace(gauss.center[0] - reach, gauss.center[0] + reach, args.points)
        z2 = np.linspace(gauss.center[1] - reach, gauss.center[1] + reach, args.points)
        density = pair_density(state, z1, z2)

        rows = [
            (z1[i] * 1e6, z2[j] * 1e6, density[i, j] * 1e-12)
            for i in range(z1.size)
            for j in range(z2.size)
        ]
        path = write_table(
            out_dir / f"density_{sep_um:g}um.csv",
            _metadata("density", digest, separation_um=sep_um,
                      n_max_used=state.n_max,
                      convergence_residual=state.residual,
                      ground_energy_kHz=_to_khz(state.energy),
                      grid_points=args.points, grid_half_width_um=reach * 1e6),
            ["z1_um", "z2_um", "density_per_um2"],
            rows,
            overwrite=args.overwrite,
        )
        print(f"2z0 = {sep_um:g} um: n_max = {state.n_max}, "
              f"energy drift {state.residual:.3g}, wrote {path}")
    return EXIT_OK


def cmd_gauge(args) -> int:
    config, _, digest = _load(args, check_stability=True)
    if args.max_n < 0:
        raise ConfigError(f"--max-n must be non-negative, got {args.max_n}")
    if args.side_um <= 0.0:
        raise ConfigError(f"--side-um must be positive, got {args.side_um}")
    out_dir = _require_out(args)

    modes = cartesian_modes(args.max_n)
    geometry = AtomPairGeometry.at_trap_centers(config)
    records = connection_records(modes, geometry, config)
    hermiticity = gauge_hermiticity_check(modes, geometry, config)

    rows = [
        (
            rec.atom_index,
            rec.bra_mode.n1, rec.bra_mode.n2, rec.bra_mode.n3,
            rec.ket_mode.n1, rec.ket_mode.n2, rec.ket_mode.n3,
            "xyz"[axis],
            rec.value[axis].real,
            rec.value[axis].imag,
        )
        for rec in records
        for axis in range(3)
    ]
    path = write_table(
        out_dir / "connection.csv",
        _metadata("gauge", digest, max_n=args.max_n,
                  geometry="trap-centers", hermiticity_residual_Js_per_m=hermiticity),
        ["atom", "bra_nx", "bra_ny", "bra_nz", "ket_nx", "ket_ny", "ket_nz",
         "axis", "re_Js_per_m", "im_Js_per_m"],
        rows,
        overwrite=args.overwrite,
    )
    print(f"wrote {path} (hermiticity residual {hermiticity:.3g} J s/m)")

    loop = square_loop(config, side=args.side_um * 1e-6)
    phase_rows = []
    for mode in modes:
        phase = berry_phase(loop, mode, config)
        phase_rows.append((mode.n1, mode.n2, mode.n3, phase))
        print(f"mode ({mode.n1},{mode.n2},{mode.n3}): "
              f"Berry phase {phase:.3g} rad on a {args.side_um:g} um square loop")
    path = write_table(
        out_dir / "phases.csv",
        _metadata("gauge", digest, loop="square", side_um=args.side_um),
        ["mode_nx", "mode_ny", "mode_nz", "berry_phase_rad"],
        phase_rows,
        overwrite=args.overwrite,
    )
    print(f"wrote {path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ionbridge",
        description="Ion-mediated potentials, phonon modes, and gauge "
                    "structure of a trapped atom-ion-atom system.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="JSON configuration file")
    common.add_argument("--out", default=None, help="output directory for CSV tables")
    common.add_argument("--overwrite", action="store_true",
                        help="replace existing output files")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scales", parents=[common],
                       help="characteristic lengths, periods, and the adiabaticity ratio")
    p.set_defaults(handler=cmd_scales)

    p = sub.add_parser("bo-curve", parents=[common],
                       help="adiabatic potential curves along the trap axis")
    p.add_argument("--z-min-um", type=float, default=10.0)
    p.add_argument("--z-max-um", type=float, default=30.0)
    p.add_argument("--points", type=int, default=201)
    p.add_argument("--placement", choices=("symmetric", "atom2-fixed"),
                   default="symmetric")
    p.set_defaults(handler=cmd_bo_curve)

    p = sub.add_parser("phonons", parents=[common],
                       help="phonon branches over a range of trap separations")
    p.add_argument("--sep-min-um", type=float, default=10.0)
    p.add_argument("--sep-max-um", type=float, default=24.0)
    p.add_argument("--points", type=int, default=141)
    p.set_defaults(handler=cmd_phonons)

    p = sub.add_parser("critical", parents=[common],
                       help="stability threshold separation per state pair")
    p.add_argument("--pairs", nargs="+", default=None,
                   metavar="PAIR", help="state pairs like 30S-30S, 25S-25S, rr, rg, gg")
    p.set_defaults(handler=cmd_critical)

    p = sub.add_parser("density", parents=[common],
                       help="two-atom ground-state density on an axial grid")
    p.add_argument("--separations-um", type=float, nargs="+",
                   default=[12.0, 16.0, 24.0], metavar="SEP")
    p.add_argument("--n-max", type=int, default=30)
    p.add_argument("--points", type=int, default=161)
    p.set_defaults(handler=cmd_density)

    p = sub.add_parser("gauge", parents=[common],
                       help="gauge connection tables and loop phases")
    p.add_argument("--max-n", type=int, default=1,
                   help="largest quantum number per Cartesian axis in the mode set")
    p.add_argument("--side-um", type=float, default=1.0,
                   help="side of the square loop traced by atom 1")
    p.set_defaults(handler=cmd_gauge)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except ConfigError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except (AccuracyError, NotBracketedError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ACCURACY
    except (InstabilityError, SingularGeometryError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INSTABILITY


if __name__ == "__main__":
    sys.exit(main())
