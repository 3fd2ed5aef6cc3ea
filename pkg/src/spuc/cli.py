"""Command line: ``spuc match | rainbow | ratio``.

Exit codes: 0 success, 2 configuration error, 3 no phase-matched solution,
4 output I/O error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import tables
from .config import ConfigError, load_run, parse_range
from .dispersion import DomainError
from .phasematch import Process, solve, vector_residual
from .radiometry import UndefinedRatioError, mode_sum_cross_section, scan_rainbow

EXIT_OK, EXIT_CONFIG, EXIT_NO_SOLUTION, EXIT_IO = 0, 2, 3, 4


def _deg(x):
    return "trapped" if x is None else f"{math.degrees(x):.6f}"


def coverage(setup, process, pump, signal, step_deg=1.0):
    """Fraction of azimuths (grid of ``step_deg``) with at least one untrapped solution."""
    phis = np.arange(0.0, 360.0, step_deg)
    lit = sum(any(not s.trapped for s in solve(setup, process, pump, signal, math.radians(p)))
              for p in phis)
    return lit / len(phis)


def cmd_match(cfg, out=None):
    out = out or sys.stdout
    setup, proc = cfg.setup, cfg.process
    phi = math.radians(cfg.phi_deg)
    sols = solve(setup, proc, cfg.pump_um, cfg.signal_um, phi)
    print(f"{proc.value}: pump {cfg.pump_um} um, signal {cfg.signal_um} um, "
          f"phi {cfg.phi_deg} deg, cut {math.degrees(setup.cut_angle):g} deg", file=out)
    for i, s in enumerate(sols, 1):
        v = s.vacuum_mode
        print(f"  solution {i}: theta_int {_deg(s.signal.direction.theta)} deg, "
              f"theta_ext {_deg(s.external_signal_angle)} deg", file=out)
        print(f"    vacuum mode {v.wavelength:.6f} um ({v.polarization.name.lower()}), "
              f"theta {_deg(v.direction.theta)} deg, phi {_deg(v.direction.phi)} deg", file=out)
        print(f"    |k1-k2-k3| {vector_residual(setup, s):.3e} rad/um, "
              f"dk_z {s.mismatch:.3e} rad/um", file=out)
    if not sols:
        print("  no phase-matched solution", file=out)
    cov = coverage(setup, proc, cfg.pump_um, cfg.signal_um)
    print(f"  azimuth coverage at {cfg.signal_um} um (1 deg grid): {cov:.4f}", file=out)
    return EXIT_OK if sols else EXIT_NO_SOLUTION


def cmd_rainbow(cfg, workers=1, out=None, err=None):
    out, err = out or sys.stdout, err or sys.stderr
    table = scan_rainbow(cfg.setup, cfg.process, cfg.pump_um, cfg.wavelengths(),
                         cfg.azimuths(), cfg.pump_intensity, workers=workers)
    text = tables.to_csv(table) if cfg.format == "csv" else tables.to_json(table)
    report = out
    if cfg.out:
        try:
            with open(cfg.out, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {cfg.out}: {exc.strerror}", file=err)
            return EXIT_IO
    else:
        out.write(text)
        report = err
    print(f"{'lambda_um':>10} {'coverage':>9} {'theta_ext_min':>14} {'theta_ext_max':>14} "
          f"{'peak_phi_deg':>13}", file=report)
    for s in table.summary():
        fmt = lambda x: "-" if x is None else f"{x:.4f}"  # noqa: E731
        print(f"{s.lambda_um:>10.4f} {s.coverage:>9.4f} {fmt(s.theta_ext_min):>14} "
              f"{fmt(s.theta_ext_max):>14} {fmt(s.peak_phi_deg):>13}", file=report)
    return EXIT_OK


def ratio_tables(cfg):
    """Ratio vs wavelength at phi = 180 deg and vs azimuth at 0.6 um.

    Returns two lists of (coordinate, ratio-or-None) pairs.
    """
    def one(lam, phi_deg):
        up = mode_sum_cross_section(cfg.setup, Process.SPUC, cfg.spuc_pump_um, lam,
                                    math.radians(phi_deg), cfg.pump_intensity)
        down = mode_sum_cross_section(cfg.setup, Process.SPDC, cfg.spdc_pump_um, lam,
                                      math.radians(phi_deg), cfg.pump_intensity)
        if up.dark or down.dark:
            return None
        return up.value / down.value

    def safe(lam, phi_deg):
        try:
            return one(lam, phi_deg)
        except (DomainError, UndefinedRatioError):
            return None

    by_lambda = [(lam, safe(lam, 180.0)) for lam in cfg.wavelengths()]
    by_phi = [(phi, safe(0.6, phi)) for phi in cfg.azimuths()]
    return by_lambda, by_phi


def cmd_ratio(cfg, out=None):
    out = out or sys.stdout
    by_lambda, by_phi = ratio_tables(cfg)
    if cfg.format == "json":
        json.dump({"spuc_pump_um": cfg.spuc_pump_um, "spdc_pump_um": cfg.spdc_pump_um,
                   "phi_deg": 180.0, "by_lambda": by_lambda,
                   "lambda_um": 0.6, "by_phi": by_phi}, out, indent=1)
        out.write("\n")
        return EXIT_OK
    cell = lambda r: "dark" if r is None else f"{r:.6f}"  # noqa: E731
    print(f"# SPUC ({cfg.spuc_pump_um} um) / SPDC ({cfg.spdc_pump_um} um), phi = 180 deg", file=out)
    print(f"{'lambda_um':>10} {'ratio':>10}", file=out)
    for lam, r in by_lambda:
        print(f"{lam:>10.4f} {cell(r):>10}", file=out)
    print("# lambda = 0.6 um", file=out)
    print(f"{'phi_deg':>10} {'ratio':>10}", file=out)
    for phi, r in by_phi:
        print(f"{phi:>10.2f} {cell(r):>10}", file=out)
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="crystal/run file (default: packaged BBO, 37 deg cut)")
    common.add_argument("--process", choices=["spdc", "spuc"])
    common.add_argument("--pump-um", type=float)
    common.add_argument("--pump-intensity", type=float)
    common.add_argument("--signal-um", type=float)
    common.add_argument("--phi-deg", type=float)
    common.add_argument("--lambda-range", metavar="MIN:MAX:STEP")
    common.add_argument("--phi-range", metavar="MIN:MAX:STEP")
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--spdc-pump-um", type=float)
    common.add_argument("--spuc-pump-um", type=float)

    p = argparse.ArgumentParser(prog="spuc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("match", parents=[common], help="solve one phase-matching point")
    r = sub.add_parser("rainbow", parents=[common], help="scan a wavelength/azimuth grid")
    r.add_argument("--workers", type=int, default=1)
    sub.add_parser("ratio", parents=[common], help="SPUC/SPDC cross-section ratio tables")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_run(
            args.config,
            process=Process(args.process) if args.process else None,
            pump_um=args.pump_um,
            pump_intensity=args.pump_intensity,
            signal_um=args.signal_um,
            phi_deg=args.phi_deg,
            lambda_grid=parse_range(args.lambda_range, "lambda-range") if args.lambda_range else None,
            phi_grid=parse_range(args.phi_range, "phi-range") if args.phi_range else None,
            format=args.format,
            out=args.out,
            spdc_pump_um=args.spdc_pump_um,
            spuc_pump_um=args.spuc_pump_um,
        )
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "match":
            return cmd_match(cfg)
        if args.command == "rainbow":
            return cmd_rainbow(cfg, workers=args.workers)
        return cmd_ratio(cfg)
    except DomainError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
