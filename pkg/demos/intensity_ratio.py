"""How bright is the up-converted rainbow next to the down-converted one?

Both cross sections sum the above-zeropoint gain over the vacuum modes that
couple into one outgoing direction.  Lasers: 442 nm for down conversion and
845 nm for up conversion, at equal intensity.  Units are arbitrary, so only
the ratio means anything.
"""
# %%
import math

import numpy as np

from spuc import BBO, CrystalSetup, mode_sum_cross_section, spuc_spdc_ratio

setup = CrystalSetup(math.radians(37), 1000.0, BBO)

# %% ratio along the back meridian
for lam in np.round(np.arange(0.55, 0.81, 0.05), 2):
    print(f"{lam:.2f} um  {spuc_spdc_ratio(setup, lam, math.pi):.3f}")

# %% azimuth profile of the up-converted light at 600 nm
up = [mode_sum_cross_section(setup, "spuc", 0.845, 0.6, math.radians(p)).value
      for p in range(0, 181, 15)]
peak = max(up)
for p, v in zip(range(0, 181, 15), up):
    print(f"{p:4d} deg  {'#' * int(40 * v / peak)}")
