"""When there is no closed-form density: numeric inversion and its limits.

Run: python3 demos/04_numeric_inversion.py
"""
import numpy as np
from scipy.special import kv

from dbarg import (ExpPoly, PolyProduct, inversion_feasibility, invert_mellin_numeric,
                   solve_mellin, weight_eval)
from dbarg.errors import InfeasibleInversionError

# psi = (x+1)(x+2): F^ is a product of gammas, F(x) = x^(3/2) K_1(2 sqrt x).
sol = solve_mellin(PolyProduct.from_roots([-1.0, -2.0]))
x = np.array([0.1, 1.0, 10.0])
print("gamma product:", weight_eval(sol, x))
print("bessel form:  ", x ** 1.5 * kv(1, 2 * np.sqrt(x)))

# psi = exp(odd polynomial): the transform decays on vertical lines only for
# degree 1 modulo 4; for degree 3 it grows and the inverse integral diverges.
for coeffs in ((0.0, 1.0), (0.0, 0.0, 0.0, 1.0), (0.0, 1.0, 0.0, 0.0, 0.0, 1.0)):
    s = solve_mellin(ExpPoly(coeffs))
    print(f"exp poly {coeffs}: {inversion_feasibility(s).value}", end="")
    try:
        v, diag = invert_mellin_numeric(s, 1.0)
        print(f", F(1) = {v:.10f} (t_max {diag.t_max:.1f})")
    except InfeasibleInversionError as exc:
        print(f", refused: {exc}")
