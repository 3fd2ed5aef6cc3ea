"""Acceptance gate: one pass/fail line per criterion, tolerances pinned here."""
import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from oracles import brute_roots, spdc_vector_gap, spuc_vector_gap
from spuc import CrystalSetup, BBO, solve_spdc_cone, solve_spuc_arc, spuc_spdc_ratio
from spuc.cli import coverage, main
from spuc.coupledmode import (
    CouplingConstants,
    ModePairState,
    linearized_gain,
    ode_oracle,
    phase_averaged_change,
    sinc,
)
from spuc.radiometry import integrate_over_mismatch

pytestmark = pytest.mark.acceptance

VISIBLE = (0.6, 0.7, 0.8)
IDENTITY_TOL = 1e-12
ODE_TOL = 1e-2
PERTURBATIVE = 1e-3
RICHARDSON = (12.0, 20.0)
ROOT_TOL = 1e-4
BRUTE_STEP = 1e-5
QUAD_TOL = 0.01
RATIO_BAND = (0.25, 0.75)
EXIT_TARGET, EXIT_TOL = 50.0, 5.0


def record(n, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {n:>2}: {detail}")
    return ok


def test_c01_down_conversion_cone_ordering(bbo37):
    t0 = time.perf_counter()
    ext = [solve_spdc_cone(bbo37, 0.351, lam, 0.0)[0].external_signal_angle for lam in VISIBLE]
    cov = [coverage(bbo37, "spdc", 0.351, lam) for lam in VISIBLE]
    dt = time.perf_counter() - t0
    deg = [math.degrees(e) for e in ext]
    ok = deg[0] < deg[1] < deg[2] and cov == [1.0, 1.0, 1.0] and dt < 1.0
    assert record(1, ok, f"cone exit angles {deg[0]:.3f} < {deg[1]:.3f} < {deg[2]:.3f} deg, "
                         f"coverage {cov}, {dt:.2f} s (< 1 s)")


def test_c02_up_conversion_arcs_incomplete(bbo37):
    t0 = time.perf_counter()
    cov = [coverage(bbo37, "spuc", 0.845, lam) for lam in VISIBLE]
    back = [len(solve_spuc_arc(bbo37, 0.845, lam, math.pi)) > 0 for lam in VISIBLE]
    dt = time.perf_counter() - t0
    ok = all(0 < c < 1 for c in cov) and all(back) and dt < 5.0
    assert record(2, ok, f"arc coverage {cov} (need strictly inside (0, 1)), "
                         f"solutions at 180 deg {back}, {dt:.2f} s (< 5 s)")


def test_c03_up_conversion_exit_angle(bbo37):
    best = None
    for lam in np.round(np.arange(0.55, 0.7001, 0.01), 6):
        for s in solve_spuc_arc(bbo37, 0.845, lam, math.pi):
            if s.external_signal_angle is None:
                continue
            ext = math.degrees(s.external_signal_angle)
            if best is None or abs(ext - EXIT_TARGET) < abs(best[1] - EXIT_TARGET):
                best = (lam, ext)
    ok = best is not None and abs(best[1] - EXIT_TARGET) <= EXIT_TOL
    assert record(3, ok, f"at 180 deg, {best[0]:.2f} um exits at {best[1]:.3f} deg "
                         f"(target {EXIT_TARGET} +- {EXIT_TOL})")


def test_c04_up_conversion_angles_exceed_cones(bbo37):
    pairs = []
    for lam in np.round(np.arange(0.6, 0.8001, 0.05), 6):
        cone = math.degrees(solve_spdc_cone(bbo37, 0.351, lam, math.pi)[0].external_signal_angle)
        arcs = [s.external_signal_angle for s in solve_spuc_arc(bbo37, 0.845, lam, math.pi)]
        pairs.append((lam, cone, [None if a is None else math.degrees(a) for a in arcs]))
    ok = all(arcs and all(a is not None and a > cone for a in arcs) for _, cone, arcs in pairs)
    worst = min(min(a for a in arcs) - cone for _, cone, arcs in pairs)
    assert record(4, ok, f"{len(pairs)} wavelengths 0.6-0.8 um, smallest margin {worst:.2f} deg")


def test_c05_intensity_ratio(bbo37):
    r = spuc_spdc_ratio(bbo37, 0.6, math.pi)
    ok = RATIO_BAND[0] <= r <= RATIO_BAND[1]
    assert record(5, ok, f"up/down cross-section ratio {r:.4f} at 0.6 um, 180 deg "
                         f"(band {RATIO_BAND})")


def _random_states(rng, n, max_gain):
    length = rng.uniform(0.5, 5.0, n)
    i2 = rng.uniform(0.1, 10.0, n)
    g = rng.uniform(1e-6, max_gain, n)
    bmax = np.sqrt(g / (i2 * length**2))
    q = rng.uniform(0.2, 5.0, n)
    b1 = bmax * np.minimum(1.0, q)
    b3 = bmax * np.minimum(1.0, 1.0 / q)
    d = rng.uniform(-30.0, 30.0, n) / length
    i1, i3 = rng.uniform(0, 2, n), rng.uniform(0, 2, n)
    return (ModePairState(np.sqrt(i1) + 0j, np.sqrt(i3) + 0j, i2, d, length),
            CouplingConstants(b1, b3))


def test_c06_exchange_identity():
    rng = np.random.default_rng(20261016)
    t0 = time.perf_counter()
    state, c = _random_states(rng, 100_000, 1.0)
    r = linearized_gain(state, c)
    dt = time.perf_counter() - t0
    b1, b3 = c.beta1, c.beta3
    scale = np.abs(b1 * r.delta_i1) + np.abs(b3 * r.delta_i3)
    stated = np.max(np.abs(b1 * r.delta_i1 + b3 * r.delta_i3) / scale)
    swapped = np.max(np.abs(b3 * r.delta_i1 + b1 * r.delta_i3)
                     / (np.abs(b3 * r.delta_i1) + np.abs(b1 * r.delta_i3)))
    ACCEPTANCE_LINES.append(f"[INFO] criterion  6: b3*dI1 + b1*dI3 = 0 holds to {swapped:.1e} "
                            f"relative on the same states")
    ok = stated < IDENTITY_TOL and dt < 1.0
    assert record(6, ok, f"b1*dI1 + b3*dI3 = 0: worst relative {stated:.3e} "
                         f"(tol {IDENTITY_TOL}) over 1e5 states, {dt:.2f} s")


def test_c07_closed_form_matches_ode():
    rng = np.random.default_rng(7)
    state, c = _random_states(rng, 100, PERTURBATIVE)
    r = linearized_gain(state, c)
    n1, n3 = phase_averaged_change(state, c, steps=2000)
    err = np.maximum(np.abs(r.delta_i1 - n1) / np.abs(n1), np.abs(r.delta_i3 - n3) / np.abs(n3))

    probe = ModePairState(0.6 + 0.2j, 0.3 - 0.5j, 1.0, 4.0, 1.0)
    pc = CouplingConstants(2.0, 1.5)
    ys = [ode_oracle(probe, pc, steps=n)[1] for n in (16, 32, 64)]
    ratio = abs(ys[0] - ys[1]) / abs(ys[1] - ys[2])
    ok = err.max() < ODE_TOL and RICHARDSON[0] <= ratio <= RICHARDSON[1]
    assert record(7, ok, f"worst relative error {err.max():.2e} over 100 states (tol {ODE_TOL}), "
                         f"step-halving ratio {ratio:.2f} (in {RICHARDSON})")


BENCHMARKS = [
    ("spdc", 37, 0.351, 0.60, 0.0), ("spdc", 37, 0.351, 0.80, 2.5),
    ("spdc", 37, 0.442, 0.60, math.pi), ("spdc", 37, 0.351, 0.702, 1.0),
    ("spuc", 37, 0.845, 0.60, math.pi), ("spuc", 37, 0.845, 0.70, 0.0),
    ("spuc", 37, 0.845, 0.80, 1.2), ("spuc", 30, 0.845, 0.60, math.pi),
    ("spuc", 30, 0.845, 0.60, 0.0), ("spuc", 30, 0.845, 0.70, 2.0),
]


def test_c08_root_completeness():
    mismatched, worst = [], 0.0
    for proc, cut, pump, lam, phi in BENCHMARKS:
        setup = CrystalSetup(math.radians(cut), 1000.0, BBO)
        if proc == "spdc":
            got = [s.signal.direction.theta for s in solve_spdc_cone(setup, pump, lam, phi)]
            ref = brute_roots(spdc_vector_gap, setup, pump, lam, phi, step=BRUTE_STEP)
        else:
            got = [s.signal.direction.theta for s in solve_spuc_arc(setup, pump, lam, phi)]
            ref = brute_roots(spuc_vector_gap, setup, pump, lam, phi, step=BRUTE_STEP)
        if len(got) != len(ref):
            mismatched.append((proc, cut, lam, phi))
            continue
        worst = max([worst] + [abs(a - b) for a, b in zip(got, ref)])
    ok = not mismatched and worst < ROOT_TOL
    assert record(8, ok, f"{len(BENCHMARKS)} cases, count mismatches {mismatched or 'none'}, "
                         f"worst root offset {worst:.1e} rad (tol {ROOT_TOL})")


def test_c09_quadrature_sanity():
    length = 1000.0
    val = integrate_over_mismatch(lambda d: sinc(0.5 * d * length) ** 2, length)
    exact = 2 * math.pi / length
    rel = abs(val / exact - 1)
    assert record(9, rel < QUAD_TOL, f"truncated sinc^2 integral off 2 pi / l by {rel:.3%} "
                                     f"(tol {QUAD_TOL:.0%})")


def test_c10_rainbow_determinism(tmp_path):
    args = ["rainbow", "--process", "spuc", "--pump-um", "0.845",
            "--lambda-range", "0.55:0.8:0.05", "--phi-range", "0:355:5"]
    same = []
    for fmt in ("csv", "json"):
        outs = []
        for i, workers in enumerate((1, 1, 4)):
            p = tmp_path / f"run{i}.{fmt}"
            assert main(args + ["--format", fmt, "--workers", str(workers), "--out", str(p)]) == 0
            outs.append(p.read_bytes())
        same.append(outs[0] == outs[1] == outs[2])
    assert record(10, all(same), f"csv/json byte-identical across runs and 1 vs 4 workers: {same}")
