"""
A quick tour of the built-in test functions
===========================================

Every function in the registry carries its domain and a few marked
points where the local regularity is known in closed form.  The marks
are what the test suite and the demos calibrate against.
"""

import numpy as np

from fracvel import default_zoo

for f in default_zoo():
    lo, hi = f.domain
    print(f"{f.id}   domain ({lo:g}, {hi:g})")
    for m in f.marks:
        print(f"    x = {m.x:<10.6g} exponent = {m.holder_exponent!s:<10}"
              f" velocity(+/-) = {m.velocity_plus!s} / {m.velocity_minus!s}")

# Evaluation is vectorized; a grid comes back as an array.
cusp = default_zoo()[0]
xs = np.linspace(-1.0, 1.0, 5)
print("\ncusp sampled on a coarse grid:")
print(np.round(cusp(xs), 6))

# Scalars come back as plain floats, convenient at the REPL.
print("cusp(0.25) =", cusp(0.25))
