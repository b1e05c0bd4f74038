"""
Estimating a fractional velocity at a cusp
==========================================

The square-root cusp sign(x)|x|^0.5 has one-sided velocities exactly 1
at the origin when probed at the matching order 0.5.  Away from the
cusp the function is smooth, so the order-0.5 velocity is 0.
"""

import numpy as np

from fracvel import Direction, estimate_velocity, make_power_cusp

g = make_power_cusp(0.0, 0.5, 1.0, 0.0)

# At the cusp the variation is constant in eps, so the limit is exact.
for d in (Direction.FORWARD, Direction.BACKWARD):
    rep = estimate_velocity(g, 0.0, 0.5, d)
    print(f"{d.value:8s} at 0:    status={rep.limit.status.value:11s}"
          f" value={rep.limit.value:.6f} residual={rep.limit.residual:.2e}")

# Off the cusp the variation decays like eps^0.5; a slightly wider
# tolerance lets the window register that decay as convergence.
rep = estimate_velocity(g, 0.5, 0.5, Direction.FORWARD, tol=1e-5)
print(f"forward  at 0.5:  status={rep.limit.status.value:11s}"
      f" value={rep.limit.value:.2e}")

# The report also carries the two side conditions: the growth constant
# of the oscillation (C1) and the tail spread of the variation (C2).
rep = estimate_velocity(g, 0.0, 0.5, Direction.FORWARD)
print(f"\nC1 constant  = {rep.c1_constant:.6f}")
print(f"C2 oscillation = {rep.c2_oscillation:.6f}")

# The last few variation values show what the classifier looked at.
print("variation tail:", np.round(rep.limit.tail_values, 8))
