"""Coherent states as eigenvectors of a, and the kernel G that sums their overlaps.

Run: python3 demos/02_coherent_states.py
"""
import math

import numpy as np

from dbarg import (Affine, QBracket, QLinear, coherent_coefficients, exp_q, kernel_G,
                   kernel_residual, norm_squared)
from dbarg.verify import build_truncated_rep

# For psi(x) = x the amplitudes are z^n / sqrt(n!) and G is the exponential.
z = 0.6 + 0.3j
st = coherent_coefficients(Affine(0.0), None, z)
print("classical amplitudes agree:",
      np.allclose(st.amplitudes, [z ** n / math.sqrt(math.factorial(n)) for n in st.indices]))
print("G(1.7) =", kernel_G(Affine(0.0), 1.7).real, " e^1.7 =", math.exp(1.7))

# The q-bracket kernel is the bracket q-exponential.
q = 1.2
print("q-bracket G(2) =", kernel_G(QBracket(q), 2.0).real, " exp_q =", exp_q(2.0, q, "bracket"))

# Check a|z> = z|z> on a truncated matrix for a full-line spectrum.
psi = QLinear.exponential(1.0, 0.5)
st = coherent_coefficients(psi, None, 0.8)
lo, hi = st.truncation
rep = build_truncated_rep(psi, dim=hi - lo + 1, offset=lo)
v = st.amplitudes
print("full line: |a v - z v| on the interior =",
      float(np.max(np.abs((rep.a @ v - 0.8 * v)[:-1]))))

# Norms diverge at the edge of the domain.
for r2 in (0.5, 0.9, 0.99):
    print(f"<z|z> for 1 - 2^-x at |z|^2={r2}:",
          norm_squared(QLinear(lambda_minus=-1.0, const=1.0, q=2.0), None, r2).value)
print("kernel equation residual, [x] at u=3:", kernel_residual(QBracket(q), 3.0, 200))
