"""A full verification report, as the CLI produces it.

Run: python3 demos/05_verification.py
"""
from dbarg import QBracket, solve_mellin
from dbarg.verify import (VerificationReport, algebra_residuals, build_truncated_rep,
                          moment_check, recursion_check, weight_ode_residual)

psi = QBracket(1.2)
sol = solve_mellin(psi)
report = VerificationReport()
report.extend(algebra_residuals(build_truncated_rep(psi, dim=30)))
report.extend(recursion_check(sol, [0.7 + 1j, 2.5, 5.9 - 3j]))
report.extend(moment_check(sol, None, (0, 10), rtol=1e-5))
print(report.table())
print("\nboundary residuals (the truncation edge, excluded above):",
      report.info["boundary_residuals"])
print("weight ODE residual at x=1:", weight_ode_residual(sol, 1.0))
print("all passed:", report.passed)
