"""Zeropoint-seeded rainbow cross sections.

Every vacuum mode carries the zeropoint intensity zeta * hbar * w / 2.  For an
observed signal wavelength and azimuth, the visible excess I3(l) - I3(0) is
summed over the family of vacuum-mode directions around each matched triple.
The family is parameterised by the longitudinal mismatch D, with measure

    dN = sin(theta_v) |d theta_v / d D| dD

i.e. vacuum modes counted per unit solid angle, per unit azimuth.  The
Jacobian is taken by central finite differences along the family.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

import numpy as np
import scipy.constants as const
from scipy.integrate import simpson

from .coupledmode import CouplingConstants, ModePairState, linearized_gain, parametric_gain
from .dispersion import DomainError, n_extraordinary, n_ordinary
from .phasematch import (
    CrystalSetup,
    PhaseMatchSolution,
    Process,
    idler_wavelength,
    solve,
    sum_wavelength,
    vacuum_family,
)
from .tables import RainbowRow, RainbowTable

# h c in eV um
HC_EV_UM = const.h * const.c / const.e * 1e6

HALF_WIDTH = 100.0
POINTS = 2001
FD_STEP = 1e-7
BRANCH_SAMPLES = 4001

SPDC_PUMP_UM = 0.442
SPUC_PUMP_UM = 0.845


class UndefinedRatioError(ValueError):
    """Raised when a ratio is requested at a point where one process is dark."""


@dataclass(frozen=True)
class ZPFSpectrum:
    """Zeropoint intensity per mode, zeta * hbar * w / 2, in eV."""

    zeta: float = 1.0

    def seed(self, wavelength):
        return self.zeta * 0.5 * HC_EV_UM / np.asarray(wavelength, dtype=float)


@dataclass(frozen=True)
class CrossSection:
    value: float
    dark: bool
    contributions: tuple = ()
    solutions: tuple = field(default=(), compare=False)


def integrate_over_mismatch(integrand, length, half_width=HALF_WIDTH, points=POINTS):
    """Composite Simpson rule for ``integrand(D)`` on |D| <= half_width / length."""
    if points < 3:
        raise DomainError(f"need at least 3 quadrature points, got {points}")
    w = half_width / length
    d = np.linspace(-w, w, points)
    return float(simpson(integrand(d), x=d))


def couplings(setup: CrystalSetup, process, pump, signal, kappa=1.0, beta_model="uniform"):
    """(beta_vacuum, beta_signal) for the coupled pair.

    ``uniform`` uses kappa * coupling for every mode.  ``dispersive`` scales
    each mode by 1 / (n lambda[um]) as for field-amplitude equations.
    """
    base = kappa * setup.coupling
    if beta_model == "uniform":
        return CouplingConstants(base, base)
    if beta_model != "dispersive":
        raise ValueError(f"unknown beta model {beta_model!r}")
    if Process(process) is Process.SPDC:
        vac = idler_wavelength(pump, signal)
        n_vac = float(n_ordinary(setup.model, vac))
    else:
        vac = sum_wavelength(pump, signal)
        n_vac = float(n_extraordinary(setup.model, vac, setup.cut_angle))
    n_sig = float(n_ordinary(setup.model, signal))
    return CouplingConstants(base / (n_vac * vac), base / (n_sig * signal))


def _excess(setup, process, pump, signal, delta, pump_intensity, zpf, c):
    if Process(process) is Process.SPDC:
        vac = idler_wavelength(pump, signal)
        gain = parametric_gain
    else:
        vac = sum_wavelength(pump, signal)
        gain = linearized_gain
    state = ModePairState(np.sqrt(zpf.seed(vac)) + 0j, np.sqrt(zpf.seed(signal)) + 0j,
                          pump_intensity, delta, setup.length)
    return gain(state, c).delta_i3


def _branch(fam, theta0, width):
    """Monotone stretch of D(theta_v) around theta0 covering |D| <= width."""
    s0 = (fam(theta0 + FD_STEP) - fam(theta0 - FD_STEP)) / (2 * FD_STEP)
    reach = 3.0 * width / max(abs(s0), 1e-12)
    lo = max(theta0 - reach, 0.0)
    hi = min(theta0 + reach, 0.5 * np.pi - 1e-9)
    theta = np.linspace(lo, hi, BRANCH_SAMPLES)
    theta[np.argmin(np.abs(theta - theta0))] = theta0
    delta = fam(theta)
    i0 = int(np.argmin(np.abs(theta - theta0)))
    sign = np.sign(s0)
    step_ok = np.isfinite(delta[1:]) & np.isfinite(delta[:-1]) & (np.sign(np.diff(delta)) == sign)
    a = i0
    while a > 0 and step_ok[a - 1]:
        a -= 1
    b = i0
    while b < len(step_ok) and step_ok[b]:
        b += 1
    theta, delta = theta[a:b + 1], delta[a:b + 1]
    if sign < 0:
        theta, delta = theta[::-1], delta[::-1]
    return theta, delta


def _root_contribution(setup, process, pump, signal, phi, sol, pump_intensity, zpf, c,
                       half_width, points):
    def fam(t):
        return vacuum_family(setup, process, pump, signal, phi, t)[0]

    theta0 = sol.vacuum_mode.direction.theta
    width = half_width / setup.length
    b_theta, b_delta = _branch(fam, theta0, width)
    if len(b_theta) < 2:
        return 0.0

    def integrand(d):
        out = np.zeros_like(d)
        inside = (d >= b_delta[0]) & (d <= b_delta[-1])
        di = d[inside]
        t = np.interp(di, b_delta, b_theta)
        for _ in range(3):
            slope = (fam(t + FD_STEP) - fam(t - FD_STEP)) / (2 * FD_STEP)
            t = t - (fam(t) - di) / slope
        slope = (fam(t + FD_STEP) - fam(t - FD_STEP)) / (2 * FD_STEP)
        jac = np.sin(t) / np.abs(slope)
        out[inside] = _excess(setup, process, pump, signal, di, pump_intensity, zpf, c) * jac
        return out

    return integrate_over_mismatch(integrand, setup.length, half_width, points)


def mode_sum_cross_section(setup: CrystalSetup, process, pump: float, signal: float, phi: float,
                           pump_intensity: float = 1.0, zpf: ZPFSpectrum = ZPFSpectrum(),
                           kappa: float = 1.0, beta_model: str = "uniform",
                           half_width: float = HALF_WIDTH, points: int = POINTS,
                           solutions=None) -> CrossSection:
    """Visible excess summed over the vacuum modes coupled at (signal, phi).

    With no matched triple at this azimuth the point is dark and the value 0.
    """
    process = Process(process)
    sols = solve(setup, process, pump, signal, phi) if solutions is None else solutions
    if not sols:
        return CrossSection(0.0, True)
    c = couplings(setup, process, pump, signal, kappa, beta_model)
    parts = tuple(_root_contribution(setup, process, pump, signal, phi, s, pump_intensity,
                                     zpf, c, half_width, points) for s in sols)
    return CrossSection(float(sum(parts)), False, parts, tuple(sols))


def spuc_spdc_ratio(setup: CrystalSetup, signal: float, phi: float,
                    spuc_pump: float = SPUC_PUMP_UM, spdc_pump: float = SPDC_PUMP_UM,
                    pump_intensity: float = 1.0, **kw) -> float:
    """Up- over down-conversion cross section, both lasers at equal intensity."""
    up = mode_sum_cross_section(setup, Process.SPUC, spuc_pump, signal, phi, pump_intensity, **kw)
    down = mode_sum_cross_section(setup, Process.SPDC, spdc_pump, signal, phi, pump_intensity, **kw)
    if up.dark or down.dark:
        which = "up" if up.dark else "down"
        raise UndefinedRatioError(
            f"{which}-conversion is dark at {signal} um, phi={math.degrees(phi):.6g} deg")
    return up.value / down.value


def _scan_point(setup, process, pump, pump_intensity, kw, point):
    lam, phi_deg = point
    phi = math.radians(phi_deg)
    name = process.value
    try:
        sols = solve(setup, process, pump, lam, phi)
    except DomainError:
        return [RainbowRow(name, lam, phi_deg, None, None, 0.0, "invalid")]
    if not sols:
        return [RainbowRow(name, lam, phi_deg, None, None, 0.0, "dark")]
    xs = mode_sum_cross_section(setup, process, pump, lam, phi, pump_intensity,
                                solutions=sols, **kw)
    rows = []
    for s, value in zip(sols, xs.contributions):
        theta_int = math.degrees(s.signal.direction.theta)
        if s.trapped:
            rows.append(RainbowRow(name, lam, phi_deg, theta_int, None, 0.0, "trapped"))
        else:
            rows.append(RainbowRow(name, lam, phi_deg, theta_int,
                                   math.degrees(s.external_signal_angle), value, "matched"))
    return rows


def scan_rainbow(setup: CrystalSetup, process, pump: float, wavelengths, phis_deg,
                 pump_intensity: float = 1.0, workers: int = 1, **kw) -> RainbowTable:
    """Solve and integrate on a (wavelength, azimuth) grid.

    Azimuths are in degrees.  Points are independent; with ``workers > 1``
    they are farmed out to processes, and the sorted table is identical to a
    serial run.
    """
    process = Process(process)
    wavelengths = [float(x) for x in wavelengths]
    phis_deg = [float(x) for x in phis_deg]
    if not wavelengths or not phis_deg:
        raise DomainError("scan grids must be non-empty")
    points = [(lam, phi) for lam in wavelengths for phi in phis_deg]
    work = partial(_scan_point, setup, process, pump, pump_intensity, kw)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            chunks = list(ex.map(work, points, chunksize=max(1, len(points) // (4 * workers))))
    else:
        chunks = [work(p) for p in points]
    return RainbowTable(tuple(r for chunk in chunks for r in chunk))
