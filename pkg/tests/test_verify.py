import json
import math

import numpy as np
import pytest

from dbarg import (Affine, ExpPoly, PolyProduct, QBracket, QLinear, QParen, classify,
                   solve_mellin)
from dbarg.errors import DomainError, QuadratureError, UnsupportedError
from dbarg.psi import reflect
from dbarg.quadrature import QuadratureConfig, integrate_log_line
from dbarg.verify import (VerificationReport, algebra_residuals, build_truncated_rep, dumps,
                          moment_check, recursion_check, resolution_identity_check,
                          weight_ode_residual)


def test_quadrature_gaussian():
    r = integrate_log_line(lambda u: -u * u / 2)
    assert r.value == pytest.approx(math.sqrt(2 * math.pi), rel=1e-12)


def test_quadrature_cap():
    cfg = QuadratureConfig(max_panels=5, rtol=1e-15)
    with pytest.raises(QuadratureError):
        integrate_log_line(lambda u: -np.abs(u) + np.log(2 + np.sin(40 * u)), cfg)


def test_truncated_matrices():
    rep = build_truncated_rep(Affine(0.0), dim=3)
    assert np.allclose(np.diag(rep.a, 1), [1, math.sqrt(2)])
    rep = build_truncated_rep(QBracket(1.2), dim=3)
    assert np.allclose(np.diag(rep.a, 1), np.sqrt([1, 1.2 + 1 / 1.2]))
    rep = build_truncated_rep(QLinear.exponential(1.0, 0.5), dim=5, offset=-2)
    assert np.allclose(np.diag(rep.N), [-2, -1, 0, 1, 2])
    assert np.allclose(np.diag(rep.a, 1), np.sqrt(2.0 ** np.array([-1, 0, 1, 2])))
    assert np.array_equal(rep.adag, rep.a.conj().T)


def test_negative_psi():
    with pytest.raises(DomainError):
        build_truncated_rep(PolyProduct((0.0, 5.0, -1.0)), dim=10, offset=0)


@pytest.mark.parametrize("psi,dim", [(Affine(0.0), 10), (QBracket(1.2), 20),
                                     (QLinear.shifted_exponential(1.0, 2.0), 30),
                                     (QLinear.exponential(1.0, 0.5), 200)])
def test_algebra(psi, dim):
    r = algebra_residuals(build_truncated_rep(psi, dim=dim))
    assert r.passed
    assert r.info["boundary_residuals"]["aa+-psi(N+1)"] > 0.1


def test_algebra_edges():
    r = algebra_residuals(build_truncated_rep(QLinear.shifted_exponential(1.0, 2.0), dim=30))
    assert r.info["open_edges"] == {"low": True, "high": True}
    assert r.info["boundary_residuals"]["a+a-psi(N)"] > 1e-6
    win = algebra_residuals(build_truncated_rep(PolyProduct((0.0, 5.0, -1.0)), dim=5))
    assert win.info["open_edges"] == {"low": False, "high": False}
    assert max(win.info["boundary_residuals"].values()) < 1e-14


def test_moments_and_identity():
    sol = solve_mellin(Affine(0.0))
    assert moment_check(sol, Affine(0.0), (0, 12)).passed
    assert resolution_identity_check(sol, None, 0, 1) == 0.0
    assert resolution_identity_check(sol, None, 3, 3) == pytest.approx(1, abs=1e-8)
    # identity element = moment / psi(n)!
    m = moment_check(sol, None, [3]).entries[0].computed
    assert resolution_identity_check(sol, None, 3, 3) == pytest.approx(m / 6, rel=1e-8)


def test_log_gaussian_moments():
    sol = solve_mellin(QLinear.exponential(1.0, 0.5))
    rep = moment_check(sol, None, (-5, 5))
    assert rep.passed
    for e in rep.entries:
        n = int(e.name[7:-1])
        want = 0.5 ** (-n * (n + 1) / 2)
        assert e.target == pytest.approx(want, rel=1e-14)


def test_negative_moments_need_full_line():
    with pytest.raises(DomainError):
        moment_check(solve_mellin(QBracket(1.2)), None, (-1, 0))


def test_bracket_identity_element():
    sol = solve_mellin(QBracket(1.2))
    assert resolution_identity_check(sol, None, 5, 5) == pytest.approx(1, abs=1e-5)


def test_atomic_moments():
    assert moment_check(solve_mellin(QLinear.shifted_exponential(1.0, 2.0)), None, (0, 6),
                        rtol=1e-12).passed


def test_shifted_spectrum_identity():
    sol = solve_mellin(Affine(-2.0))          # ground state at label 2
    assert resolution_identity_check(sol, None, 4, 4) == pytest.approx(1, rel=1e-8)


def test_duality():
    up = reflect(QBracket(1.2))              # x -> [-x]: upper bounded at -1
    spec = classify(up)
    assert (spec.kind.value, spec.nu_plus) == ("UpperBounded", -1)
    low = reflect(up)
    sol = solve_mellin(low)
    for n in range(1, 7):
        want = math.prod(up(-k) for k in range(1, n + 1))
        got = moment_check(sol, low, [n], rtol=1e-5).entries[0].computed
        assert got == pytest.approx(want, rel=1e-5)


def test_ode_residuals():
    assert weight_ode_residual(solve_mellin(QParen(1.5)), 0.3) <= 1e-10
    assert weight_ode_residual(solve_mellin(QBracket(1.2)), 1.0) <= 1e-8
    assert weight_ode_residual(solve_mellin(QParen(1.5)), 1e-9) <= 1e-12
    assert weight_ode_residual(solve_mellin(Affine(0.0)), 2.0) <= 1e-15
    with pytest.raises(UnsupportedError):
        weight_ode_residual(solve_mellin(ExpPoly((0.0, 1.0))), 1.0)


def test_recursion_report():
    sol = solve_mellin(QParen(1.5))
    rho = np.linspace(0.5, 6, 23) + 0.5j
    assert recursion_check(sol, rho).passed


def test_report_json_deterministic():
    sol = solve_mellin(QBracket(1.2))
    a = moment_check(sol, None, (0, 3)).to_json()
    b = moment_check(sol, None, (0, 3)).to_json()
    assert a == b
    data = json.loads(a)
    assert [c["name"] for c in data["checks"]] == [f"moment[{n}]" for n in range(4)]
    assert dumps({"x": math.inf, "y": 0.1}) == '{\n  "x": "inf",\n  "y": 0.10000000000000001\n}'


def test_report_table():
    rep = moment_check(solve_mellin(Affine(0.0)), None, (0, 2))
    assert isinstance(rep, VerificationReport)
    assert rep.table().count("PASS") == 3
