"""Refractive indices of a uniaxial crystal.

Principal indices follow the four-term Sellmeier form

    n^2(lambda) = b0 + b1 / (lambda^2 - b2) - b3 * lambda^2      (lambda in um)

and the extraordinary index at an arbitrary propagation direction comes from
the index ellipsoid

    1/n^2 = cos^2(psi) / n_o^2 + sin^2(psi) / n_e^2

with psi the angle between the wave vector and the optic axis.  Walk-off is
not modelled; only wave-vector geometry matters downstream.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DomainError(ValueError):
    """Raised when an input lies outside the region where a model is defined."""


@dataclass(frozen=True)
class SellmeierSet:
    b0: float
    b1: float
    b2: float
    b3: float

    def n_squared(self, wavelength):
        lam2 = np.square(wavelength)
        return self.b0 + self.b1 / (lam2 - self.b2) - self.b3 * lam2


@dataclass(frozen=True)
class Direction:
    """Propagation direction inside the crystal.

    ``theta`` is the polar angle from the inward surface normal (z axis) and
    ``phi`` the azimuth, with the optic-axis meridian at ``phi = 0``.
    Both in radians.
    """

    theta: float
    phi: float = 0.0

    def unit_vector(self) -> np.ndarray:
        st = np.sin(self.theta)
        return np.array([st * np.cos(self.phi), st * np.sin(self.phi), np.cos(self.theta)])


@dataclass(frozen=True)
class DispersionModel:
    ordinary: SellmeierSet
    extraordinary: SellmeierSet
    window: tuple[float, float] = (0.22, 3.0)
    name: str = ""

    def __post_init__(self):
        lo, hi = self.window
        if not 0 < lo < hi:
            raise DomainError(f"bad validity window {self.window}")
        for label, s in (("ordinary", self.ordinary), ("extraordinary", self.extraordinary)):
            if s.b2 >= lo * lo:
                raise DomainError(f"{label} Sellmeier pole lies inside the window {self.window}")

    def check(self, wavelength):
        lo, hi = self.window
        lam = np.asarray(wavelength)
        if np.any(~np.isfinite(lam)) or np.any(lam < lo) or np.any(lam > hi):
            raise DomainError(
                f"wavelength {wavelength} um outside validity window [{lo}, {hi}] um"
            )


# Widely used BBO set (lambda in um).
BBO = DispersionModel(
    ordinary=SellmeierSet(2.7405, 0.0184, 0.0179, 0.0155),
    extraordinary=SellmeierSet(2.3730, 0.0128, 0.0156, 0.0044),
    window=(0.22, 3.0),
    name="BBO",
)


def n_ordinary(model: DispersionModel, wavelength):
    """Ordinary index at vacuum wavelength ``wavelength`` (um)."""
    model.check(wavelength)
    return np.sqrt(model.ordinary.n_squared(wavelength))


def n_extraordinary_principal(model: DispersionModel, wavelength):
    model.check(wavelength)
    return np.sqrt(model.extraordinary.n_squared(wavelength))


def n_extraordinary(model: DispersionModel, wavelength, psi):
    """Extraordinary index for a wave vector at angle ``psi`` to the optic axis.

    ``psi = 0`` gives the ordinary index and ``psi = pi/2`` the principal
    extraordinary index.  Vectorises over ``wavelength`` and ``psi``.
    """
    model.check(wavelength)
    no2 = model.ordinary.n_squared(wavelength)
    ne2 = model.extraordinary.n_squared(wavelength)
    c2 = np.square(np.cos(psi))
    inv = c2 / no2 + (1.0 - c2) / ne2
    return 1.0 / np.sqrt(inv)


def wavevector_magnitude(n, wavelength):
    """k = 2 pi n / lambda in rad/um."""
    lam = np.asarray(wavelength)
    if np.any(lam <= 0):
        raise DomainError(f"wavelength must be positive, got {wavelength}")
    return 2.0 * np.pi * np.asarray(n) / lam
