"""Up-conversion arcs with an 845 nm ordinary laser.

A visible signal photon can borrow energy from the laser and leave as an
ultraviolet sum-frequency photon.  Run backwards, the same triple means the
zeropoint UV mode feeds the visible channel: light appears on off-centre
loops, far wider than the down-conversion cones.  At a 30 deg cut the loops
break open into arcs on the far side of the optic axis.
"""
# %%
import math

from spuc import BBO, CrystalSetup, scan_rainbow, solve_spuc_arc

cut37 = CrystalSetup(math.radians(37), 1000.0, BBO)
cut30 = CrystalSetup(math.radians(30), 1000.0, BBO)

# %% exit angles on both sides of the axis meridian
for phi in (0, 90, 180):
    for s in solve_spuc_arc(cut37, 0.845, 0.6, math.radians(phi)):
        print(f"phi {phi:3d}: inside {math.degrees(s.signal.direction.theta):6.2f}, "
              f"outside {math.degrees(s.external_signal_angle):6.2f} deg")

# %% arc extent for the lower cut
table = scan_rainbow(cut30, "spuc", 0.845, [0.6, 0.7, 0.8], range(0, 360, 5))
for s in table.summary():
    print(f"{s.lambda_um} um: lit over {100 * s.coverage:.0f}% of azimuths, "
          f"exit {s.theta_ext_min:.1f}-{s.theta_ext_max:.1f} deg")

# the 600 nm arc is a short stretch around the back meridian; the rest is dark
lit = sorted({r.phi_deg for r in table.select(lambda_um=0.6, flag="matched")})
print("0.6 um lit at", lit, "deg")
