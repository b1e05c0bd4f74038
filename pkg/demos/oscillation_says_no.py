"""
When the limit does not exist
=============================

sqrt(x) sin(1/x) is the standard counterexample: at the critical order
0.5 the forward variation keeps swinging between -1 and 1 forever, so
there is no velocity to report.  The estimator refuses to pick a value
and instead reports the tail spread, which approaches 2 (the full swing
of the sine).
"""

from fracvel import Direction, estimate_velocity, make_chirp

chirp = make_chirp(0.5, 0.0)

rep = estimate_velocity(chirp, 0.0, 0.5, Direction.FORWARD)
print("at the critical order 0.5:")
print("  status        ", rep.limit.status.value)
print("  tail spread   ", round(rep.c2_oscillation, 4), "(full swing = 2)")

# Below the critical order the prefactor eps^(0.5-0.25) crushes the
# swing and the limit exists and equals zero.
rep = estimate_velocity(chirp, 0.0, 0.25, Direction.FORWARD, tol=0.02)
print("at the smaller order 0.25:")
print("  status        ", rep.limit.status.value)
print("  value         ", f"{rep.limit.value:.2e}")

# From the left the function is identically zero, so every order works.
rep = estimate_velocity(chirp, 0.0, 0.5, Direction.BACKWARD)
print("backward at 0.5:", rep.limit.status.value, rep.limit.value)
