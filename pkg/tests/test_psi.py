import math

import numpy as np
import pytest

from dbarg import (Affine, ExpPoly, PolyProduct, QBracket, QLinear, QParen, asymptote,
                   evaluate, find_lattice_zeros, q_bracket, q_paren, reflect, shift_psi)
from dbarg.errors import InvalidParameterError, UnsupportedError


def test_evaluate_examples():
    assert evaluate(Affine(0.5), 2) == 2.5
    assert evaluate(QLinear.qosc(1.0, 1.2), 3) == pytest.approx(q_bracket(3, 1.2), rel=1e-12)
    assert evaluate(QBracket(1.2), 0) == 0


def test_qosc_maps():
    x = np.linspace(-10, 10, 81)
    np.testing.assert_allclose(QLinear.qosc(1.0, 1.2)(x), q_bracket(x, 1.2), rtol=1e-12, atol=1e-14)
    q = 1.5
    np.testing.assert_allclose(QLinear.qosc_unit(1 / (q - 1), q)(x), q_paren(x, q),
                               rtol=1e-12, atol=1e-13)


def test_overflow_is_extended_real():
    with np.errstate(over="ignore"):
        assert ExpPoly((0.0, 0.0, 0.0, 1.0))(100.0) == math.inf


@pytest.mark.parametrize("make", [
    lambda: QLinear(lambda_plus=1.0, q=1.0),
    lambda: QLinear(lambda_plus=1.0, q=-2.0),
    lambda: ExpPoly((0.0, 1.0, 1.0)),
    lambda: ExpPoly((0.0, -1.0)),
    lambda: QParen(0.5),
    lambda: Affine(0.0, mu=1.0),
])
def test_invariants(make):
    with pytest.raises(InvalidParameterError):
        make()


def test_qlinear_q_one_message():
    with pytest.raises(InvalidParameterError, match="q ≠ 1 required"):
        QLinear(lambda_plus=1.0, q=1.0)


def test_bracket_normalizes_q():
    assert QBracket(1 / 1.2).q == pytest.approx(1.2)


def test_lattice_zeros():
    assert find_lattice_zeros(Affine(0.0), -5, 5).zeros == [0]
    assert find_lattice_zeros(QLinear.shifted_exponential(1.0, 2.0), -20, 20).zeros == []
    poly = PolyProduct((0.0, 5.0, -1.0))
    assert find_lattice_zeros(poly, -2, 8).zeros == [0, 5]
    assert find_lattice_zeros(poly, -2, 8, zero_tol=5e-11).zeros == [0, 5]


def test_lattice_zero_flag():
    r = find_lattice_zeros(Affine(0.5), -3, 3)
    assert r.zeros == [] and r.sign_change_off_lattice
    r = find_lattice_zeros(lambda x: np.asarray(x) - 2.0, -3, 3)
    assert r.zeros == [2] and not r.sign_change_off_lattice


def test_asymptotes():
    lg = QLinear.exponential(1.0, 0.5)
    assert asymptote(lg, "+inf") == math.inf and asymptote(lg, "-inf") == 0
    assert asymptote(QLinear.shifted_exponential(1.0, 2.0), -1) == 1
    assert asymptote(Affine(2.0), +1) == math.inf
    assert asymptote(Affine(2.0), -1) == -math.inf
    assert asymptote(QParen(1.5), -1) == pytest.approx(-2.0)


def test_shift_and_reflect():
    x = np.linspace(-3, 3, 13)
    for psi in [Affine(0.3), QLinear(0.2, 1.0, 0.5, q=1.7), PolyProduct((1.0, 2.0, 3.0)),
                QBracket(1.2), ExpPoly((0.1, 0.2))]:
        np.testing.assert_allclose(shift_psi(psi, 2)(x), psi(x + 2), rtol=1e-12)
    for psi in [Affine(0.3), QParen(1.5), PolyProduct((1.0, 2.0, 3.0))]:
        np.testing.assert_allclose(reflect(psi, 1.0)(x), psi(-x + 1.0), rtol=1e-12)
    with pytest.raises(UnsupportedError):
        reflect(ExpPoly((0.0, 1.0)))
