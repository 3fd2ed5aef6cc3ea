"""Linearised coupled-amplitude equations for a mode pair driven by a laser.

Two couplings are covered.

Frequency exchange (up conversion).  The laser is mode 2 and modes 1 and 3
obey

    dA1/dz = i b1 A2  exp(+i D z) A3
    dA3/dz = i b3 A2* exp(-i D z) A1

Parametric amplification (down conversion).  The laser is mode 1 and the pair
is (idler, signal); in the functions below the idler takes the ``a1`` slot:

    dA_idler/dz  = i b_idler  A_laser exp(+i D z) A_signal*
    dA_signal/dz = i b_signal A_laser exp(+i D z) A_idler*

The laser amplitude is held constant (no depletion) and taken real positive.
Closed forms are for phase-averaged intensities: seeds with independent random
phases, which is what zeropoint-field modes are.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dispersion import DomainError

SERIES_CUTOFF = 1e-4


@dataclass(frozen=True)
class CouplingConstants:
    beta1: float
    beta3: float


@dataclass(frozen=True)
class ModePairState:
    """Initial amplitudes of a coupled pair plus the laser and crystal.

    Fields may be numpy arrays for batch evaluation.
    """

    a1: complex
    a3: complex
    pump_intensity: float
    mismatch: float
    length: float

    @property
    def i1(self):
        return np.abs(self.a1) ** 2

    @property
    def i3(self):
        return np.abs(self.a3) ** 2


@dataclass(frozen=True)
class GainResult:
    delta_i1: float
    delta_i3: float
    effective_mismatch: float


def sinc(x):
    """sin(x)/x with a series branch near zero."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < SERIES_CUTOFF
    safe = np.where(small, 1.0, x)
    x2 = x * x
    out = np.where(small, 1.0 - x2 / 6.0 + x2 * x2 / 120.0, np.sin(safe) / safe)
    return out[()] if out.ndim == 0 else out


def effective_mismatch(mismatch, beta1, beta3, pump_intensity):
    """sqrt(D^2 + b1 I2 b3)."""
    return np.sqrt(np.square(mismatch) + beta1 * pump_intensity * beta3)


def linearized_gain(state: ModePairState, c: CouplingConstants) -> GainResult:
    """Phase-averaged intensity changes for the frequency-exchange pair.

    dI1 = b1 I2 l^2 (b1 I3 - b3 I1) sinc^2(D' l / 2)
    dI3 = b3 I2 l^2 (b3 I1 - b1 I3) sinc^2(D' l / 2)

    Energy flows toward the mode with the smaller I/b, and
    b3 dI1 + b1 dI3 = 0 identically.
    """
    b1, b3 = c.beta1, c.beta3
    dprime = effective_mismatch(state.mismatch, b1, b3, state.pump_intensity)
    common = state.pump_intensity * state.length**2 * sinc(0.5 * dprime * state.length) ** 2
    i1, i3 = state.i1, state.i3
    return GainResult(
        delta_i1=b1 * common * (b1 * i3 - b3 * i1),
        delta_i3=b3 * common * (b3 * i1 - b1 * i3),
        effective_mismatch=dprime,
    )


def _gain_factor(q, length):
    # sinc^2 of sqrt(q) l / 2, continued to sinh^2 for q < 0
    q = np.asarray(q, dtype=float)
    x = 0.5 * np.sqrt(np.abs(q)) * length
    real = sinc(x) ** 2
    small = x < SERIES_CUTOFF
    xs = np.where(small, 1.0, x)
    hyper = np.where(small, 1.0 + x * x / 3.0, (np.sinh(xs) / xs) ** 2)
    out = np.where(q >= 0, real, hyper)
    return out[()] if out.ndim == 0 else out


def parametric_gain(state: ModePairState, c: CouplingConstants) -> GainResult:
    """Phase-averaged intensity changes for the parametric pair.

    ``a1``/``beta1`` belong to the idler and ``a3``/``beta3`` to the signal;
    ``pump_intensity`` is the laser intensity.

    dI_idler  = b1 I_p l^2 (b1 I_signal + b3 I_idler) G
    dI_signal = b3 I_p l^2 (b3 I_idler + b1 I_signal) G

    with G = sinc^2(D'' l / 2) and D''^2 = D^2 - b1 I_p b3 (sinh^2 once
    D''^2 < 0).  Both modes grow, and b3 dI_idler = b1 dI_signal.
    """
    b1, b3 = c.beta1, c.beta3
    q = np.square(state.mismatch) - b1 * state.pump_intensity * b3
    common = state.pump_intensity * state.length**2 * _gain_factor(q, state.length)
    i1, i3 = state.i1, state.i3
    return GainResult(
        delta_i1=b1 * common * (b1 * i3 + b3 * i1),
        delta_i3=b3 * common * (b3 * i1 + b1 * i3),
        effective_mismatch=np.sqrt(np.abs(q)),
    )


def _rk4(rhs, y0, length, steps):
    if steps < 2:
        raise DomainError(f"need at least 2 integration steps, got {steps}")
    h = length / steps
    y = [np.asarray(v, dtype=complex) for v in y0]
    for i in range(steps):
        z = i * h
        k1 = rhs(z, y)
        k2 = rhs(z + h / 2, [a + h / 2 * b for a, b in zip(y, k1)])
        k3 = rhs(z + h / 2, [a + h / 2 * b for a, b in zip(y, k2)])
        k4 = rhs(z + h, [a + h * b for a, b in zip(y, k3)])
        y = [a + h / 6 * (p + 2 * q + 2 * r + s) for a, p, q, r, s in zip(y, k1, k2, k3, k4)]
    return y


def ode_oracle(state: ModePairState, c: CouplingConstants, steps: int = 10_000):
    """Integrate the exchange equations with fixed-step classical RK4.

    Returns the final amplitudes ``(A1, A3)``.
    """
    a2 = np.sqrt(state.pump_intensity)
    b1, b3, d = c.beta1, c.beta3, state.mismatch

    def rhs(z, y):
        ph = np.exp(1j * d * z)
        return [1j * b1 * a2 * ph * y[1], 1j * b3 * a2 * np.conj(ph) * y[0]]

    a1, a3 = _rk4(rhs, (state.a1, state.a3), state.length, steps)
    return a1, a3


def parametric_ode_oracle(state: ModePairState, c: CouplingConstants, steps: int = 10_000):
    """RK4 integration of the parametric pair; returns ``(A_idler, A_signal)``."""
    ap = np.sqrt(state.pump_intensity)
    b1, b3, d = c.beta1, c.beta3, state.mismatch

    def rhs(z, y):
        ph = np.exp(1j * d * z)
        return [1j * b1 * ap * ph * np.conj(y[1]), 1j * b3 * ap * ph * np.conj(y[0])]

    a1, a3 = _rk4(rhs, (state.a1, state.a3), state.length, steps)
    return a1, a3


def phase_averaged_change(state: ModePairState, c: CouplingConstants,
                          steps: int = 10_000, oracle=ode_oracle):
    """Intensity changes averaged over independent uniform seed phases.

    The propagation map is real-linear, so the average is the sum of the
    responses to each seed alone; cross terms vanish.
    """
    r1, r3 = np.sqrt(state.i1), np.sqrt(state.i3)
    zero = np.zeros_like(r1)
    only1 = ModePairState(r1 + 0j, zero + 0j, state.pump_intensity, state.mismatch, state.length)
    only3 = ModePairState(zero + 0j, r3 + 0j, state.pump_intensity, state.mismatch, state.length)
    a1a, a3a = oracle(only1, c, steps)
    a1b, a3b = oracle(only3, c, steps)
    d1 = np.abs(a1a) ** 2 + np.abs(a1b) ** 2 - state.i1
    d3 = np.abs(a3a) ** 2 + np.abs(a3b) ** 2 - state.i3
    return d1, d3
