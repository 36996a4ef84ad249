import math

import pytest

from dbarg import (Affine, ExpPoly, Ladder, PolyProduct, QBracket, QLinear, QParen,
                   SpectrumKind, classify, classify_all, coherent_domain, reflect)
from dbarg.errors import DegenerateDomainError


def test_examples():
    s = classify(QBracket(1.2))
    assert (s.kind, s.nu_minus) == (SpectrumKind.LOWER_BOUNDED, 0)
    assert classify(QLinear.exponential(1.0, 0.5)).kind is SpectrumKind.FULL_LINE
    s = classify(PolyProduct((0.0, 5.0, -1.0)))
    assert (s.kind, s.nu_minus, s.nu_plus) == (SpectrumKind.FINITE_WINDOW, 0, 4)


def test_domains():
    d = coherent_domain(QBracket(1.2))
    assert (d.ladder, d.inner_r2, d.outer_r2, d.closed_inner) == (Ladder.A, 0, math.inf, True)
    d = coherent_domain(QLinear.shifted_exponential(1.0, 2.0))
    assert (d.ladder, d.inner_r2, d.outer_r2) == (Ladder.A, 1.0, math.inf)
    assert not d.contains(1.0) and d.contains(1.1)
    d = coherent_domain(QLinear.exponential(1.0, 0.5))
    assert (d.ladder, d.inner_r2, d.outer_r2, d.closed_inner) == (Ladder.A, 0, math.inf, False)
    assert not d.contains(0) and d.contains(1e-9)
    assert coherent_domain(PolyProduct((0.0, 5.0, -1.0))).ladder is Ladder.NONE


def test_disk_for_bounded_psi():
    # psi = 1 - 2^-x: ground state at 0, psi(+inf) = 1
    psi = QLinear(lambda_minus=-1.0, const=1.0, q=2.0)
    s = classify(psi)
    assert s.kind is SpectrumKind.LOWER_BOUNDED
    d = coherent_domain(psi, s)
    assert (d.inner_r2, d.outer_r2) == (0.0, 1.0)


def test_upper_bounded_and_duality():
    psi = reflect(Affine(0.0))          # psi(x) = -x
    s = classify(psi)
    assert (s.kind, s.nu_plus) == (SpectrumKind.UPPER_BOUNDED, -1)
    assert coherent_domain(psi, s).ladder is Ladder.ADAGGER
    back = reflect(psi, -1.0)           # x -> psi(-x - 1) = x + 1
    assert classify(back).kind is SpectrumKind.LOWER_BOUNDED


def test_adagger_full_line():
    d = coherent_domain(QLinear.exponential(1.0, 2.0))   # decreasing 2^-x
    assert (d.ladder, d.inner_r2, d.outer_r2) == (Ladder.ADAGGER, 0.0, math.inf)


def test_degenerate():
    with pytest.raises(DegenerateDomainError):
        coherent_domain(QLinear(lambda_minus=1.0, lambda_plus=1.0, q=2.0))


def test_no_unitary_rep():
    assert classify(Affine(0.5)).kind is SpectrumKind.NO_UNITARY_REP
    d = coherent_domain(Affine(0.5))
    assert d.empty


def test_mu_honored():
    s = classify(Affine(0.0, mu=0.5))
    assert s.kind is SpectrumKind.NO_UNITARY_REP
    s = classify(Affine(-0.5, mu=0.5))
    assert (s.kind, s.nu_minus) == (SpectrumKind.LOWER_BOUNDED, 0)


def test_many_windows():
    # signs: + below 0, - on (0,3), + on (3,6), - on (6,9), + above 9
    psi = PolyProduct.from_roots([0, 3, 6, 9])
    kinds = [(s.kind, s.nu_minus, s.nu_plus) for s in classify_all(psi)]
    assert kinds == [(SpectrumKind.LOWER_BOUNDED, 9, None),
                     (SpectrumKind.UPPER_BOUNDED, None, -1),
                     (SpectrumKind.FINITE_WINDOW, 3, 5)]
    assert classify(psi).kind is SpectrumKind.LOWER_BOUNDED


@pytest.mark.parametrize("psi", [Affine(0.0), Affine(3.0), QBracket(1.2), QParen(1.5),
                                 QLinear.exponential(1.0, 0.5), ExpPoly((0.0, 1.0)),
                                 PolyProduct((0.0, 5.0, -1.0)), Affine(0.5)])
def test_total(psi):
    assert classify(psi).kind in set(SpectrumKind)
