"""Command-line interface: synthesize fields, extract coefficients by any of
the three routes, compare the routes, compute far-field patterns, and run the
half-wave dipole validation.

Exit codes: 0 success / within tolerance, 1 input error, 2 tolerance
exceeded. Data goes to the named output files or stdout; warnings and
diagnostics go to stderr only.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import dipole as dipole_mod
from .extraction import (ROUTE_RADIAL, ROUTE_TAN_E, ROUTE_TAN_H, equivalence_report,
                         extract_radial, extract_tangential_e, extract_tangential_h)
from .fileio import (ROUTE_REQUIRED_COLUMNS, FormatError, read_coefficients,
                     read_field_file, write_coefficients, write_field_file,
                     write_pattern_csv)
from .harmonics import make_grid
from .multipole import SPEED_OF_LIGHT, duality, far_field, mode_slot, modes_upto, synthesize

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_TOLERANCE = 2


class InputError(Exception):
    """User-facing input problem; maps to exit code 1."""


def _pattern_directions(n_theta: int, n_phi: int):
    """Inclusive theta in [0, pi], periodic phi in [0, 2 pi); computed so the
    same angles reappear bit-identically when the counts are refined."""
    if n_theta < 2 or n_phi < 1:
        raise InputError("need n-theta >= 2 and n-phi >= 1")
    theta = (np.arange(n_theta) * np.pi) / (n_theta - 1)
    phi = (np.arange(n_phi) * (2.0 * np.pi)) / n_phi
    tt = np.repeat(theta, n_phi)
    pp = np.tile(phi, n_theta)
    return np.column_stack([tt, pp])


def cmd_synth(args) -> int:
    coeffs, frequency = read_coefficients(args.coeff_file)
    if args.radius <= 0.0:
        raise InputError(f"radius must be > 0, got {args.radius}")
    grid_l_max = args.grid_lmax if args.grid_lmax is not None else coeffs.l_max
    if grid_l_max < coeffs.l_max:
        raise InputError(
            f"grid exactness {grid_l_max} is below the coefficient l_max {coeffs.l_max}")
    grid = make_grid(grid_l_max, args.radius)
    e, h = synthesize(coeffs, args.radius, grid)
    write_field_file(args.out, e, h, frequency)
    return EXIT_OK


_ROUTE_FUNCS = {
    "radial": lambda data, l_max: extract_radial(data.samples("E"), data.samples("H"), l_max),
    "tan-e": lambda data, l_max: extract_tangential_e(data.samples("E"), l_max),
    "tan-h": lambda data, l_max: extract_tangential_h(data.samples("H"), l_max),
}


def _checked_field_data(path, required):
    data = read_field_file(path)
    missing = data.missing(required)
    if missing:
        raise InputError(
            f"{path}: required components absent: {', '.join(missing)} "
            f"(this route reads {', '.join(required)})")
    return data


def cmd_extract(args) -> int:
    required = ROUTE_REQUIRED_COLUMNS[args.route]
    data = _checked_field_data(args.field_file, required)
    l_max = args.lmax if args.lmax is not None else data.grid.l_max
    coeffs = _ROUTE_FUNCS[args.route](data, l_max)
    write_coefficients(args.out, coeffs, data.frequency_hz)
    return EXIT_OK


def cmd_equiv(args) -> int:
    data = _checked_field_data(args.field_file, list(ROUTE_REQUIRED_COLUMNS["radial"])
                               + list(ROUTE_REQUIRED_COLUMNS["tan-e"])
                               + list(ROUTE_REQUIRED_COLUMNS["tan-h"]))
    l_max = args.lmax if args.lmax is not None else data.grid.l_max
    result = equivalence_report(data.samples("E"), data.samples("H"), l_max)
    routes = ((ROUTE_RADIAL, result.radial), (ROUTE_TAN_E, result.tangential_e),
              (ROUTE_TAN_H, result.tangential_h))
    print("l m route aE_re aE_im aM_re aM_im")
    for mode in modes_upto(l_max):
        slot = mode_slot(mode.l, mode.m)
        for name, report in routes:
            ae = report.coeffs.a_e[slot]
            am = report.coeffs.a_m[slot]
            print(f"{mode.l} {mode.m} {name} "
                  f"{ae.real:.12e} {ae.imag:.12e} {am.real:.12e} {am.imag:.12e}")
    for pair, dev in sorted(result.pairwise_deviation.items()):
        print(f"deviation {pair[0]} vs {pair[1]}: {dev:.6e}")
    flagged = sorted(set(result.radial.flagged_degrees)
                     | set(result.tangential_e.flagged_degrees)
                     | set(result.tangential_h.flagged_degrees))
    if flagged:
        print(f"ill-conditioned degrees (noise amplification > 1e3): {flagged}",
              file=sys.stderr)
    print(f"max pairwise deviation: {result.max_pairwise_deviation:.6e}")
    return EXIT_OK if result.max_pairwise_deviation <= args.tol else EXIT_TOLERANCE


def cmd_farfield(args) -> int:
    coeffs, _ = read_coefficients(args.coeff_file)
    directions = _pattern_directions(args.n_theta, args.n_phi)
    pattern = far_field(coeffs, directions)
    write_pattern_csv(args.out, directions[:, 0], directions[:, 1],
                      pattern.e_theta, pattern.e_phi, normalize=args.normalize)
    return EXIT_OK


def cmd_dipole(args) -> int:
    if args.current <= 0.0:
        raise InputError(f"current must be > 0, got {args.current}")
    if args.freq <= 0.0:
        raise InputError(f"frequency must be > 0, got {args.freq}")
    spec = dipole_mod.DipoleSpec(args.current, SPEED_OF_LIGHT / args.freq)

    grid = make_grid(args.grid_lmax, spec.source_radius)
    source = dipole_mod.radial_source_on_sphere(spec, grid)
    write_field_file(f"{args.out_prefix}_radial_source.csv", source, None, args.freq)

    result = dipole_mod.validate_roundtrip(spec, grid_l_max=args.grid_lmax,
                                           n_theta=args.n_theta)
    phi = np.zeros_like(result.theta)
    direct = far_field(result.coeffs_direct,
                       np.column_stack([result.theta, phi]))
    recovered = far_field(result.coeffs_recovered,
                          np.column_stack([result.theta, phi]))
    write_pattern_csv(f"{args.out_prefix}_farfield_direct.csv", result.theta, phi,
                      direct.e_theta, direct.e_phi, normalize=True)
    write_pattern_csv(f"{args.out_prefix}_farfield_from_radial.csv", result.theta, phi,
                      recovered.e_theta, recovered.e_phi, normalize=True)
    dual_pattern = far_field(duality(result.coeffs_direct),
                             np.column_stack([result.theta, phi]))
    write_pattern_csv(f"{args.out_prefix}_farfield_dual.csv", result.theta, phi,
                      dual_pattern.e_theta, dual_pattern.e_phi, normalize=True)

    dual = dipole_mod.magnetic_dipole_variant(spec, grid_l_max=args.grid_lmax,
                                              n_theta=args.n_theta)
    print(f"roundtrip_rms_deviation={result.rms_deviation:.6e}")
    print(f"e_phi_negligible={'true' if result.e_phi_negligible else 'false'}")
    print(f"dual_radial_h_mismatch={dual.radial_h_mismatch:.6e}")
    print(f"dual_pattern_swap_mismatch={dual.pattern_swap_mismatch:.6e}")
    return EXIT_OK if result.rms_deviation <= args.tol else EXIT_TOLERANCE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spheremodes",
        description="Multipole fields on spheres: synthesis, three-route "
                    "coefficient extraction, far fields, dipole validation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="synthesize (E, H) on a sphere from a coefficient file")
    p.add_argument("coeff_file")
    p.add_argument("--radius", type=float, required=True, help="sphere radius in meters")
    p.add_argument("--grid-lmax", type=int, default=None,
                   help="grid exactness degree (default: coefficient l_max)")
    p.add_argument("--out", required=True, help="output field CSV")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("extract", help="recover coefficients from a field file")
    p.add_argument("field_file")
    p.add_argument("--route", choices=sorted(ROUTE_REQUIRED_COLUMNS), required=True)
    p.add_argument("--lmax", type=int, default=None,
                   help="truncation degree (default: the file's grid l_max)")
    p.add_argument("--out", required=True, help="output coefficient JSON")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("equiv", help="run all three routes and compare them")
    p.add_argument("field_file")
    p.add_argument("--lmax", type=int, default=None)
    p.add_argument("--tol", type=float, default=1e-8,
                   help="max allowed pairwise deviation (default 1e-8)")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("farfield", help="far-field pattern CSV from a coefficient file")
    p.add_argument("coeff_file")
    p.add_argument("--n-theta", type=int, default=181)
    p.add_argument("--n-phi", type=int, default=36)
    p.add_argument("--normalize", action="store_true", help="peak-normalize magnitudes")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_farfield)

    p = sub.add_parser("dipole", help="half-wave dipole validation run")
    p.add_argument("--current", type=float, default=1.0, help="current amplitude (A)")
    p.add_argument("--freq", type=float, default=SPEED_OF_LIGHT, help="frequency (Hz)")
    p.add_argument("--grid-lmax", type=int, default=8)
    p.add_argument("--n-theta", type=int, default=181)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(func=cmd_dipole)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, FormatError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
