"""Type-I vector phase matching for down and up conversion.

Mode roles follow the frequency ordering w1 = w2 + w3:

* mode 1 is the highest frequency and extraordinary,
* modes 2 and 3 are ordinary, mode 3 being the observed (visible) signal.

In down conversion the laser drives mode 1 and mode 2 is a vacuum mode; in up
conversion the laser drives mode 2 and mode 1 is the vacuum mode.  The laser
is always normally incident (along +z).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .dispersion import (
    DispersionModel,
    Direction,
    DomainError,
    n_extraordinary,
    n_ordinary,
    wavevector_magnitude,
)

TWO_PI = 2.0 * np.pi

SCAN_MAX = np.radians(89.0)
SCAN_STEP = np.radians(0.1)
RESIDUAL_TOL = 1e-10


class Process(str, enum.Enum):
    SPDC = "spdc"
    SPUC = "spuc"


class Polarization(str, enum.Enum):
    ORDINARY = "o"
    EXTRAORDINARY = "e"


@dataclass(frozen=True)
class CrystalSetup:
    """Crystal cut, depth and dispersion.

    ``cut_angle`` is the angle (rad) between the optic axis and the inward
    surface normal; the axis lies in the ``phi = 0`` meridian.  ``length`` is
    the crystal depth in um.  ``coupling`` is the nonlinear coupling scale in
    arbitrary units (1/um per unit amplitude).
    """

    cut_angle: float
    length: float
    model: DispersionModel
    coupling: float = 1e-8

    def __post_init__(self):
        if not 0 < self.cut_angle < np.pi / 2:
            raise DomainError(f"cut angle must lie in (0, pi/2), got {self.cut_angle}")
        if not self.length > 0:
            raise DomainError(f"crystal length must be positive, got {self.length}")
        if not self.coupling >= 0:
            raise DomainError(f"coupling must be non-negative, got {self.coupling}")

    def axis(self) -> np.ndarray:
        return np.array([np.sin(self.cut_angle), 0.0, np.cos(self.cut_angle)])


@dataclass(frozen=True)
class ModeSpec:
    wavelength: float
    polarization: Polarization
    direction: Direction

    def index(self, setup: CrystalSetup):
        if self.polarization is Polarization.ORDINARY:
            return n_ordinary(setup.model, self.wavelength)
        psi = optic_axis_angle(setup, self.direction)
        return n_extraordinary(setup.model, self.wavelength, psi)

    def wavevector(self, setup: CrystalSetup) -> np.ndarray:
        k = wavevector_magnitude(self.index(setup), self.wavelength)
        return k * self.direction.unit_vector()


@dataclass(frozen=True)
class PhaseMatchSolution:
    """One matched mode triple.

    ``external_signal_angle`` is ``None`` when the signal is trapped by total
    internal reflection at the exit face.
    """

    process: Process
    pump: ModeSpec
    vacuum_mode: ModeSpec
    signal: ModeSpec
    mismatch: float
    external_signal_angle: float | None
    residual: float = field(default=0.0, compare=False)

    @property
    def trapped(self) -> bool:
        return self.external_signal_angle is None

    def triple(self) -> tuple[ModeSpec, ModeSpec, ModeSpec]:
        """Modes ordered as (mode 1, mode 2, mode 3)."""
        if self.process is Process.SPDC:
            return self.pump, self.vacuum_mode, self.signal
        return self.vacuum_mode, self.pump, self.signal


def optic_axis_angle(setup: CrystalSetup, d: Direction):
    """Angle between direction ``d`` and the optic axis."""
    return _axis_angle(setup.cut_angle, d.theta, d.phi)


def _axis_angle(cut, theta, phi):
    c = np.cos(cut) * np.cos(theta) + np.sin(cut) * np.sin(theta) * np.cos(phi)
    return np.arccos(np.clip(c, -1.0, 1.0))


def idler_wavelength(pump: float, signal: float) -> float:
    """Difference-frequency wavelength, 1/l2 = 1/l1 - 1/l3."""
    if not signal > pump:
        raise DomainError(f"signal {signal} um must be longer than pump {pump} um")
    return 1.0 / (1.0 / pump - 1.0 / signal)


def sum_wavelength(pump: float, signal: float) -> float:
    """Sum-frequency wavelength, 1/l1 = 1/l2 + 1/l3."""
    return 1.0 / (1.0 / pump + 1.0 / signal)


def refract_exit(internal: Direction, n_internal: float) -> float | None:
    """External polar angle after the planar exit face, or None if trapped."""
    s = n_internal * math.sin(internal.theta)
    if s > 1.0:
        return None
    return math.asin(s)


def longitudinal_mismatch(setup: CrystalSetup, triple) -> float:
    """k1z - k2z - k3z for modes ordered (1, 2, 3)."""
    kz = []
    for mode in triple:
        k = wavevector_magnitude(mode.index(setup), mode.wavelength)
        kz.append(float(k) * math.cos(mode.direction.theta))
    return kz[0] - kz[1] - kz[2]


def find_roots(f, lo: float, hi: float, step: float, tol: float = RESIDUAL_TOL):
    """All roots of ``f`` on (lo, hi], located by a fixed-step bracket scan.

    ``f`` must accept arrays.  Each sign change is refined with Brent's method
    and kept only if the refined residual is below ``tol``.
    """
    n = max(int(round((hi - lo) / step)), 1)
    x = np.linspace(lo, hi, n + 1)
    with np.errstate(invalid="ignore"):
        y = f(x)
    ok = np.isfinite(y[:-1]) & np.isfinite(y[1:])
    exact = ok & (y[1:] == 0.0)
    change = ok & (y[:-1] != 0.0) & (y[:-1] * y[1:] < 0)
    roots = []
    for i in np.nonzero(exact | change)[0]:
        a, b = x[i], x[i + 1]
        if exact[i]:
            roots.append(float(b))
            continue
        r = brentq(lambda t: float(f(t)), a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps)
        if abs(float(f(r))) < tol:
            roots.append(float(r))
    return roots


# ---------------------------------------------------------------- down conversion

def _spdc_parts(setup, pump, signal):
    model = setup.model
    idler = idler_wavelength(pump, signal)
    for lam in (pump, signal, idler):
        model.check(lam)
    k1 = float(wavevector_magnitude(n_extraordinary(model, pump, setup.cut_angle), pump))
    k2 = float(wavevector_magnitude(n_ordinary(model, idler), idler))
    k3 = float(wavevector_magnitude(n_ordinary(model, signal), signal))
    return idler, k1, k2, k3


def spdc_residual(setup, pump, signal, theta):
    """Normalised index mismatch |k1 - k3| / |k2| - 1 at signal angle theta."""
    _, k1, k2, k3 = _spdc_parts(setup, pump, signal)
    return np.sqrt(k1 * k1 + k3 * k3 - 2 * k1 * k3 * np.cos(theta)) / k2 - 1.0


def solve_spdc_cone(setup: CrystalSetup, pump: float, signal: float, phi: float):
    """Matched signal directions for a normally incident extraordinary pump."""
    idler, k1, k2, k3 = _spdc_parts(setup, pump, signal)

    def f(theta):
        return np.sqrt(k1 * k1 + k3 * k3 - 2 * k1 * k3 * np.cos(theta)) / k2 - 1.0

    out = []
    for theta in find_roots(f, 0.0, SCAN_MAX, SCAN_STEP):
        k3v = k3 * Direction(theta, phi).unit_vector()
        k2v = np.array([0.0, 0.0, k1]) - k3v
        out.append(_build(setup, Process.SPDC,
                          pump=ModeSpec(pump, Polarization.EXTRAORDINARY, Direction(0.0, 0.0)),
                          vacuum=ModeSpec(idler, Polarization.ORDINARY, _direction_of(k2v)),
                          signal=ModeSpec(signal, Polarization.ORDINARY, Direction(theta, phi % TWO_PI)),
                          residual=float(f(theta))))
    return out


# ---------------------------------------------------------------- up conversion

def _spuc_parts(setup, pump, signal):
    model = setup.model
    uv = sum_wavelength(pump, signal)
    for lam in (pump, signal, uv):
        model.check(lam)
    k2 = float(wavevector_magnitude(n_ordinary(model, pump), pump))
    k3 = float(wavevector_magnitude(n_ordinary(model, signal), signal))
    return uv, k2, k3


def _spuc_f(setup, uv, k2, k3, phi):
    no2 = setup.model.ordinary.n_squared(uv)
    ne2 = setup.model.extraordinary.n_squared(uv)
    k0 = TWO_PI / uv
    cut = setup.cut_angle

    def f(theta):
        t = k3 * np.sin(theta)
        z = k2 + k3 * np.cos(theta)
        mag = np.hypot(t, z)
        theta1 = np.arctan2(t, z)
        c2 = np.square(np.cos(_axis_angle(cut, theta1, phi)))
        k1 = k0 / np.sqrt(c2 / no2 + (1.0 - c2) / ne2)
        return mag / k1 - 1.0

    return f


def spuc_residual(setup, pump, signal, theta, phi):
    """Normalised index mismatch |k2 + k3| / |k1(direction)| - 1."""
    uv, k2, k3 = _spuc_parts(setup, pump, signal)
    return _spuc_f(setup, uv, k2, k3, phi)(theta)


def solve_spuc_arc(setup: CrystalSetup, pump: float, signal: float, phi: float):
    """Matched signal directions for a normally incident ordinary infrared pump.

    The vacuum ultraviolet mode is extraordinary and its index is evaluated
    along its own direction, the direction of k2 + k3.
    """
    uv, k2, k3 = _spuc_parts(setup, pump, signal)
    f = _spuc_f(setup, uv, k2, k3, phi)
    out = []
    for theta in find_roots(f, 0.0, SCAN_MAX, SCAN_STEP):
        k1v = np.array([0.0, 0.0, k2]) + k3 * Direction(theta, phi).unit_vector()
        out.append(_build(setup, Process.SPUC,
                          pump=ModeSpec(pump, Polarization.ORDINARY, Direction(0.0, 0.0)),
                          vacuum=ModeSpec(uv, Polarization.EXTRAORDINARY, _direction_of(k1v)),
                          signal=ModeSpec(signal, Polarization.ORDINARY, Direction(theta, phi % TWO_PI)),
                          residual=float(f(theta))))
    return out


def solve(setup: CrystalSetup, process, pump: float, signal: float, phi: float):
    if Process(process) is Process.SPDC:
        return solve_spdc_cone(setup, pump, signal, phi)
    return solve_spuc_arc(setup, pump, signal, phi)


def vector_residual(setup: CrystalSetup, solution: PhaseMatchSolution) -> float:
    """|k1 - k2 - k3| in rad/um, each wave vector built from its own mode."""
    k1, k2, k3 = (m.wavevector(setup) for m in solution.triple())
    return float(np.linalg.norm(k1 - k2 - k3))


def _direction_of(v) -> Direction:
    t = math.hypot(v[0], v[1])
    phi = math.atan2(v[1], v[0]) % TWO_PI if t > 0 else 0.0
    return Direction(math.atan2(t, v[2]), phi)


def _build(setup, process, pump, vacuum, signal, residual):
    sol = PhaseMatchSolution(process, pump, vacuum, signal, 0.0, None, residual)
    mismatch = longitudinal_mismatch(setup, sol.triple())
    external = refract_exit(signal.direction, float(signal.index(setup)))
    return PhaseMatchSolution(process, pump, vacuum, signal, mismatch, external, residual)


# ---------------------------------------------------------------- mode families

def vacuum_family(setup: CrystalSetup, process, pump: float, signal: float, phi: float, theta_v):
    """Longitudinal mismatch along the family of vacuum-mode directions.

    The vacuum mode keeps the signal's azimuth (up conversion) or the opposite
    azimuth (down conversion) and has polar angle ``theta_v``.  Transverse
    matching fixes the signal direction.  Returns ``(mismatch, theta_signal)``
    as arrays; entries where no signal direction closes the triangle are NaN.
    """
    theta_v = np.asarray(theta_v, dtype=float)
    model = setup.model
    if Process(process) is Process.SPDC:
        _, k1, k2, k3 = _spdc_parts(setup, pump, signal)
        t = k2 * np.sin(theta_v)
        with np.errstate(invalid="ignore"):
            theta3 = np.arcsin(t / k3)
        delta = k1 - k2 * np.cos(theta_v) - k3 * np.cos(theta3)
    else:
        uv, k2, k3 = _spuc_parts(setup, pump, signal)
        psi = _axis_angle(setup.cut_angle, theta_v, phi)
        k1 = wavevector_magnitude(n_extraordinary(model, uv, psi), uv)
        t = k1 * np.sin(theta_v)
        with np.errstate(invalid="ignore"):
            theta3 = np.arcsin(t / k3)
        delta = k1 * np.cos(theta_v) - k2 - k3 * np.cos(theta3)
    return delta, theta3
