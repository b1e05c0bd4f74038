"""
Reading off pointwise Holder exponents
======================================

The oscillation of f over shrinking one-sided windows follows a power
law osc ~ C eps^h at well-behaved points.  A least-squares line through
log(osc) against log(eps) recovers h.  For pure power cusps this is
exact; for the Weierstrass function the fit wobbles around the known
exponent ln(2)/ln(3) = 0.6309...
"""

import math

from fracvel import (Direction, EpsilonSchedule, estimate_holder_exponent,
                     make_power_cusp, make_weierstrass)

print("power cusps (exact power laws):")
for beta in (0.3, 0.5, 0.7, 0.9):
    f = make_power_cusp(0.0, beta, 1.0, 0.0)
    est = estimate_holder_exponent(f, 0.0, Direction.FORWARD)
    print(f"  true {beta:.1f}  fitted {est.exponent:.12f}  r2 {est.r_squared:.6f}")

# The Weierstrass fit needs shallower scales: at depth the oscillation
# sampling cap starts to bite and would bias the slope.
fit_schedule = EpsilonSchedule(2.0 ** -6, 0.5, 15)
w = make_weierstrass(0.5, 3, 24)
target = math.log(2.0) / math.log(3.0)
print(f"\nweierstrass, target exponent {target:.6f}:")
for m in w.marks:
    est = estimate_holder_exponent(w, m.x, Direction.FORWARD, fit_schedule)
    flag = " (low confidence)" if est.low_confidence else ""
    print(f"  x={m.x:.6f}  fitted {est.exponent:.6f}  r2 {est.r_squared:.4f}{flag}")

# A smooth function fits a slope of 1 with the oscillation of its
# derivative absorbed into the constant.
smooth = make_power_cusp(0.0, 0.5, 1.0, 0.0)
est = estimate_holder_exponent(smooth, 1.0, Direction.FORWARD)
print(f"\nsmooth point of the cusp: fitted {est.exponent:.6f}")
