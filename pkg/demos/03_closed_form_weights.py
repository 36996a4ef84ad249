"""Closed-form weights from the Mellin functional equation F^(rho+1) = psi(rho) F^(rho).

Run: python3 demos/03_closed_form_weights.py
"""
import math

import numpy as np

from dbarg import (Affine, QBracket, QLinear, QParen, hat_eval, positivity_scan, solve_mellin,
                   weight_eval)
from dbarg.verify import moment_check

cases = {"x": Affine(0.0), "q^-x, q=0.5": QLinear.exponential(1.0, 0.5),
         "[x], q=1.2": QBracket(1.2), "(x), q=1.5": QParen(1.5)}
for name, psi in cases.items():
    sol = solve_mellin(psi)
    # e^-x underflows past x ~ 745, so scan up to 500 rather than the default 1e3
    fmin, xmin = positivity_scan(sol, np.geomspace(1e-6, 500, 401))
    rep = moment_check(sol, None, (0, 6))
    worst = max(e.rel_err for e in rep.entries)
    print(f"{name:<12} {sol.hat_form.value:<12} F(1)={float(weight_eval(sol, 1.0)):.6f} "
          f"min F={fmin:.2e}  moments 0..6 worst rel err {worst:.1e}")

# 1 + 2^x has no density: its weight is a set of point masses on 2^k.
sol = solve_mellin(QLinear.shifted_exponential(1.0, 2.0))
xs, ws = sol.atoms
print("\natoms of 1 + 2^x:")
for x, w in zip(xs[:6], ws[:6]):
    print(f"  x={x:<6g} mass={w:.6e}")
for rho in (2.0, 3.5):
    print(f"  sum w x^(rho-1) at rho={rho}: {math.fsum(ws * xs ** (rho - 1)):.12f}"
          f"  F^(rho) = {float(hat_eval(sol, rho)):.12f}")

# The transform is analytic: the recursion holds off the real axis too.
sol = solve_mellin(QBracket(1.2))
rho = np.array([1.3 + 2j, 4.0 - 1j])
print("\n|F^(rho+1) - [rho] F^(rho)| =",
      np.abs(hat_eval(sol, rho + 1) - sol.psi(rho) * hat_eval(sol, rho)))
