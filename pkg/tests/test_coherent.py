import math

import numpy as np
import pytest

from dbarg import (Affine, PolyProduct, QBracket, QLinear, QParen, classify, coherent_coefficients,
                   exp_q, generalized_factorial, kernel_G, kernel_residual, norm_squared)
from dbarg.errors import NonConvergenceError, OutOfDomainError, UnsupportedError
from dbarg.psi import reflect


def test_vacuum():
    cs = coherent_coefficients(Affine(0.0), None, 0.0)
    d = cs.as_dict()
    assert d[0] == 1 and all(v == 0 for k, v in d.items() if k)


def test_classical_amplitudes():
    cs = coherent_coefficients(Affine(0.0), None, 1.0)
    for n, c in zip(cs.indices, cs.amplitudes):
        assert c == pytest.approx(1 / math.sqrt(math.factorial(n)), rel=1e-13)
    assert cs.tail_bound <= 1e-15 * 3


def test_full_line_amplitudes():
    q = 0.5
    cs = coherent_coefficients(QLinear.exponential(1.0, q), None, 1.0)
    d = cs.as_dict()
    for n in range(-6, 7):
        # psi(n)! = q^(-n(n+1)/2) on both branches
        assert d[n] == pytest.approx(q ** (n * (n + 1) / 4), rel=1e-13)
    assert min(d) < -6 and max(d) > 6


def test_shifted_ground_state():
    # ground state at label 2
    psi = Affine(-2.0)
    cs = coherent_coefficients(psi, None, 0.7)
    assert cs.indices[0] == 2
    assert cs.amplitudes[1] == pytest.approx(0.7 / math.sqrt(psi(3)))


def test_eigenvector_property():
    for psi, z in [(QBracket(1.2), 1.5 + 0.5j), (QLinear.exponential(1.0, 0.5), 0.8j),
                   (QLinear.shifted_exponential(1.0, 2.0), 1.3), (QParen(1.5), 2.0)]:
        cs = coherent_coefficients(psi, None, z)
        amp = dict(zip(cs.indices.tolist(), cs.amplitudes))
        lo, hi = cs.truncation
        for n in range(lo, hi):
            # a|n+1> = sqrt(psi(n+1)) |n>
            lhs = math.sqrt(psi(n + 1)) * amp[n + 1]
            assert abs(lhs - z * amp[n]) <= 1e-12 * max(1.0, abs(z * amp[n]))


def test_out_of_domain():
    with pytest.raises(OutOfDomainError):
        coherent_coefficients(QLinear.shifted_exponential(1.0, 2.0), None, 0.5)
    with pytest.raises(OutOfDomainError):
        coherent_coefficients(PolyProduct((0.0, 5.0, -1.0)), None, 0.5)


def test_adagger_side_unsupported():
    with pytest.raises((UnsupportedError, OutOfDomainError)):
        coherent_coefficients(reflect(Affine(0.0)), None, 0.5)


def test_norms():
    r = norm_squared(Affine(0.0), None, 1.0)
    assert r.converged and r.value == pytest.approx(math.e, rel=1e-14)
    assert norm_squared(QBracket(1.2), None, 0.0).value == 1.0
    bad = norm_squared(QLinear.shifted_exponential(1.0, 2.0), None, 0.5)
    assert not bad.converged


def test_norm_monotone():
    vals = [norm_squared(QBracket(1.2), None, r2).value for r2 in np.linspace(0, 5, 11)]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_kernel_values():
    assert kernel_G(Affine(0.0), 1.0) == pytest.approx(math.e, rel=1e-15)
    assert kernel_G(QBracket(1.2), 0.0) == 1.0
    brute = math.fsum(1 / generalized_factorial(QBracket(1.2), n) for n in range(80))
    assert kernel_G(QBracket(1.2), 1.0).real == pytest.approx(brute, rel=1e-14)
    assert kernel_G(QBracket(1.2), 1.0).real == pytest.approx(exp_q(1.0, 1.2), rel=1e-14)


def test_kernel_is_overlap():
    psi = QBracket(1.2)
    z, zeta = 0.6 + 0.3j, 1.1 - 0.4j
    a = coherent_coefficients(psi, None, z)
    b = coherent_coefficients(psi, None, zeta)
    n = min(len(a.indices), len(b.indices))
    overlap = np.sum(np.conj(a.amplitudes[:n]) * b.amplitudes[:n])
    assert overlap == pytest.approx(kernel_G(psi, np.conj(z) * zeta), rel=1e-13)


def test_kernel_diverges_outside():
    with pytest.raises(NonConvergenceError):
        kernel_G(QLinear(lambda_minus=-1.0, const=1.0, q=2.0), 1.5)


def test_kernel_residuals():
    assert kernel_residual(Affine(0.0), 1.0, 30) <= 1e-12
    assert kernel_residual(QBracket(1.2), 2.0, 40) <= 1e-10
    assert kernel_residual(QBracket(1.2), 1e-8, 5) <= 1e-30
    spec = classify(QLinear.exponential(1.0, 0.5))
    assert kernel_residual(QLinear.exponential(1.0, 0.5), 1.0, 30, spec=spec) <= 1e-12
