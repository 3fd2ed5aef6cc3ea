"""Independent brute-force references used by the tests.

Residuals here are built from explicit 3-vectors and dot products, not from
the solver's law-of-cosines / normalised-index forms.
"""
import numpy as np

from spuc import n_extraordinary, n_ordinary

FINE_STEP = 1e-5


def _unit(theta, phi):
    return np.stack([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi),
                     np.cos(theta) * np.ones_like(phi)], axis=-1)


def spdc_vector_gap(setup, pump, signal, theta, phi):
    """|k1 - k3| - |k2| with k1 along z."""
    idler = 1.0 / (1.0 / pump - 1.0 / signal)
    m = setup.model
    k1 = 2 * np.pi * n_extraordinary(m, pump, setup.cut_angle) / pump
    k2 = 2 * np.pi * n_ordinary(m, idler) / idler
    k3 = 2 * np.pi * n_ordinary(m, signal) / signal
    v = np.array([0.0, 0.0, k1]) - k3 * _unit(np.asarray(theta), np.full_like(theta, phi))
    return np.linalg.norm(v, axis=-1) - k2


def spuc_vector_gap(setup, pump, signal, theta, phi):
    """|k2 + k3| - |k1| with k1 along k2 + k3 and its index from that direction."""
    uv = 1.0 / (1.0 / pump + 1.0 / signal)
    m = setup.model
    k2 = 2 * np.pi * n_ordinary(m, pump) / pump
    k3 = 2 * np.pi * n_ordinary(m, signal) / signal
    v = np.array([0.0, 0.0, k2]) + k3 * _unit(np.asarray(theta), np.full_like(theta, phi))
    mag = np.linalg.norm(v, axis=-1)
    axis = np.array([np.sin(setup.cut_angle), 0.0, np.cos(setup.cut_angle)])
    psi = np.arccos(np.clip(v @ axis / mag, -1, 1))
    return mag - 2 * np.pi * n_extraordinary(m, uv, psi) / uv


def brute_roots(gap, setup, pump, signal, phi, step=FINE_STEP, top=np.radians(89.0)):
    theta = np.arange(step, top, step)
    g = gap(setup, pump, signal, theta, phi)
    idx = np.nonzero(np.sign(g[:-1]) != np.sign(g[1:]))[0]
    return [0.5 * (theta[i] + theta[i + 1]) for i in idx]
