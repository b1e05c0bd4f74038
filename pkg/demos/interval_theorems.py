"""
Fractional interval theorems, checked numerically
=================================================

Classical interval theorems survive at fractional orders in weakened
forms.  These verifiers scan a grid, find a witness, and report what
they saw.  The notes string always records how the conclusion was
reached.
"""

import numpy as np

from fracvel import (make_polynomial, make_power_cusp, verify_mean_value,
                     verify_rolle, verify_weak_darboux, EpsilonSchedule)

shallow = EpsilonSchedule(2.0 ** -4, 0.5, 24)

# Rolle: equal endpoints force a point where the one-sided velocities
# split sign. For a cusp hump the split is extreme: -1 against +1.
hump = lambda t: -np.abs(np.asarray(t, dtype=float) - 0.5) ** 0.5
v = verify_rolle(hump, 0.0, 1.0, 0.5)
print("rolle on the cusp hump:")
print("  holds   ", v.holds)
print("  witness ", v.witness)

# Mean value: at fractional orders the mean-value point can sit at an
# endpoint, and for x^0.5 on [0, 1] it does: c = a.
cusp = make_power_cusp(0.0, 0.5, 1.0, 0.0)
v = verify_mean_value(cusp, 0.0, 1.0, 0.5)
print("\nmean value for the cusp on [0, 1]:")
print("  holds   ", v.holds)
print("  witness ", v.witness)
print("  notes   ", v.notes)

# Weak Darboux at order 1 is the classical intermediate value property
# of the derivative, checked against a target slope.
parabola = make_polynomial((0.0, 0.0, 1.0))
v = verify_weak_darboux(parabola, 0.0, 1.0, 1.0, 101, shallow, target=1.0)
print("\nweak darboux for x^2, target slope 1:")
print("  holds   ", v.holds)
print("  witness ", v.witness)
