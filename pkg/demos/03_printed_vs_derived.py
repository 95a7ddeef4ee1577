"""Printed versus composed coefficient systems for the quadratic operators.

Composing the transform q = ((A-1) + (1-B) p)/((A+1) - (1+B) p) with each
operator gives a denominator with (D + 1) where the printed systems carry
(D - 1).  The printed version cannot satisfy Re psi(1, 0) > 0.
"""

from janowski_lab import Parameters
from janowski_lab.operators import OperatorKind, coeff_system, derived_coeff_system


def psi_at_one(c):
    # on r = i rho the parts are a + b s - c r^2 + d r; r = 1, s = 0
    e, f, g, h = c.denominator_coeffs()
    return (c.a - c.c + c.d) / (e - g + h)


P = Parameters(0.3, -0.4, 0.5, -0.2, 0.8, 0.7, 2, 0.5)
for kind in (OperatorKind.SQUARE_PLUS_DERIV, OperatorKind.MIXED_QUADRATIC,
             OperatorKind.CONVEX_COMBO):
    printed, derived = coeff_system(kind, P), derived_coeff_system(kind, P)
    print(f"{kind.value:8s} printed psi(1,0) = {psi_at_one(printed):+.4f}   "
          f"composed psi(1,0) = {psi_at_one(derived):+.4f}")
print("(D - E)/(D - E - 2) =", (P.D - P.E) / (P.D - P.E - 2))
# sqderiv starts at alpha p^2, so its composed value is not pinned to 1
