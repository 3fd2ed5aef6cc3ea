"""Down-conversion rainbow from a BBO crystal pumped at 351 nm.

The extraordinary pump enters along the surface normal.  Each visible
wavelength comes out on a cone around the pump; redder light on wider cones.
"""
# %%
import math

import numpy as np

from spuc import BBO, CrystalSetup, scan_rainbow, solve_spdc_cone

setup = CrystalSetup(cut_angle=math.radians(37), length=1000.0, model=BBO)

# %% one point in detail
(sol,) = solve_spdc_cone(setup, 0.351, 0.6, 0.0)
print("signal inside :", math.degrees(sol.signal.direction.theta))
print("signal outside:", math.degrees(sol.external_signal_angle))
print("idler         :", sol.vacuum_mode.wavelength, "um at",
      math.degrees(sol.vacuum_mode.direction.theta), "deg")

# %% cone half-angle against wavelength
for lam in np.arange(0.55, 0.86, 0.05):
    s = solve_spdc_cone(setup, 0.351, lam, 0.0)
    ext = s[0].external_signal_angle if s else None
    print(f"{lam:.2f} um  {'no cone' if ext is None else f'{math.degrees(ext):6.3f} deg'}")

# %% the three classic rings, full azimuth scan
table = scan_rainbow(setup, "spdc", 0.351, [0.6, 0.7, 0.8], range(0, 360, 10))
for s in table.summary():
    print(f"{s.lambda_um} um: coverage {s.coverage:.2f}, exit angle {s.theta_ext_min:.3f} deg")
