"""q-numbers, generalized factorials, q-exponentials and Bernoulli polynomials.

Everything here is a pure function of its arguments. Array arguments are
accepted wherever the formula is elementwise.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable

import numpy as np

from .errors import InvalidParameterError, NonConvergenceError, ZeroFactorError

MAX_SERIES_TERMS = 1_000_000


def _check_q(q: float) -> float:
    q = float(q)
    if not q > 0 or q == 1.0 or not math.isfinite(q):
        raise InvalidParameterError(f"q > 0 and q != 1 required, got q={q!r}")
    return q


def q_bracket(x, q: float):
    """Symmetric q-number [x] = (q^x - q^-x)/(q - 1/q).

    Written as sinh(x ln q)/sinh(ln q), which is invariant under q -> 1/q and
    stays accurate as q -> 1.
    """
    lq = math.log(_check_q(q))
    return np.asarray(np.sinh(np.multiply(x, lq)) / math.sinh(lq))[()]


def q_paren(x, q: float):
    """Asymmetric q-number (x) = (q^x - 1)/(q - 1), defined for q > 1."""
    q = _check_q(q)
    if q < 1:
        raise InvalidParameterError(f"q > 1 required for (x)_q, got q={q!r}")
    lq = math.log(q)
    return np.asarray(np.expm1(np.multiply(x, lq)) / math.expm1(lq))[()]


def generalized_factorial(psi: Callable[[float], float], n: int) -> float:
    """psi(n)! with psi(0)! = 1.

    For n >= 1 this is psi(1)...psi(n). For n < 0 the product
    psi(n+1)...psi(0) is returned, so that psi(-1)! = psi(0); with this
    convention the moments of the weight are psi(n)! for n >= 0 and
    1/psi(n)! for n < 0 (see :func:`moment_target`).
    """
    n = int(n)
    if n == 0:
        return 1.0
    ks = range(1, n + 1) if n > 0 else range(n + 1, 1)
    factors = [float(np.real(psi(k))) for k in ks]
    if any(f == 0.0 for f in factors):
        raise ZeroFactorError(f"psi(k) = 0 for some k in the range of psi({n})!")
    with np.errstate(over="ignore"):
        return float(np.prod(factors))


def moment_target(psi: Callable[[float], float], n: int) -> float:
    """Required value of the (n)-th moment F^(n+1) of the weight."""
    g = generalized_factorial(psi, n)
    return g if n >= 0 else 1.0 / g


def _sum_series(next_term: Callable[[int, complex], complex], tol: float, max_terms: int):
    total = 1.0
    term = 1.0
    small = 0
    for n in range(1, max_terms + 1):
        term = next_term(n, term)
        total += term
        if abs(term) < tol * (1.0 + abs(total)):
            small += 1
            if small >= 3:
                return total
        else:
            small = 0
    raise NonConvergenceError(f"series did not converge within {max_terms} terms")


def exp_q(x, q: float, variant: str = "bracket", tol: float = 1e-16,
          max_terms: int = MAX_SERIES_TERMS):
    """q-exponential sum_n x^n / [n]!  (variant='bracket') or x^n / (n)!  ('paren').

    The bracket variant is symmetric in q <-> 1/q and is evaluated with
    q >= 1; the paren variant needs q > 1. Both series are entire for q > 1.
    The sum stops once three consecutive terms fall below tol*(1+|sum|).
    """
    q = _check_q(q)
    if variant == "bracket":
        q = max(q, 1.0 / q)
        qnum = q_bracket
    elif variant == "paren":
        if q < 1:
            raise InvalidParameterError("paren q-exponential requires q > 1")
        qnum = q_paren
    else:
        raise InvalidParameterError(f"unknown variant {variant!r}")

    def one(xv):
        return _sum_series(lambda n, t: t * xv / qnum(n, q), tol, max_terms)

    if np.ndim(x) == 0:
        return one(x.item() if isinstance(x, np.generic) else x)
    arr = np.asarray(x)
    return np.array([one(v) for v in arr.ravel()]).reshape(arr.shape)


def log_exp_q_paren_product(y, q: float):
    """log Exp_q(y) (paren variant) for y >= 0 via the Euler product.

    Exp_q(y) = prod_{k>=1} (1 + (q-1) y q^-k). Used where the series would
    overflow.
    """
    q = float(q)
    y = np.asarray(y, dtype=float)
    if np.any(y < 0):
        raise InvalidParameterError("product form needs y >= 0")
    lq = math.log(q)
    ymax = float(np.max(y)) if y.size else 0.0
    kmax = 2 + int(math.ceil((math.log(max((q - 1) * ymax, 1.0)) + 40.0) / lq))
    k = np.arange(1, kmax + 1)
    z = (q - 1) * y[..., None] * np.exp(-k * lq)
    return np.sum(np.log1p(z), axis=-1)[()]


@lru_cache(maxsize=None)
def _bernoulli_numbers(m: int) -> tuple:
    """B_0..B_m as exact fractions (B_1 = -1/2)."""
    b = [Fraction(1)]
    for k in range(1, m + 1):
        b.append(-sum(comb(k + 1, j) * b[j] for j in range(k)) / (k + 1))
    return tuple(b)


def bernoulli_poly(m: int, rho):
    """Bernoulli polynomial B_m(rho) for real or complex rho (B_1(x) = x - 1/2)."""
    m = int(m)
    if m < 0:
        raise InvalidParameterError("m >= 0 required")
    # scipy.special.bernoulli is only good to ~1e-13; exact rationals are cheap
    bn = _bernoulli_numbers(m)
    coeffs = [float(comb(m, k) * bn[k]) for k in range(m + 1)]
    # coeffs[k] multiplies rho^(m-k): Horner from the highest power
    rho = np.asarray(rho)
    acc = np.zeros_like(rho, dtype=np.result_type(rho, float))
    for c in coeffs:
        acc = acc * rho + c
    return acc[()]


POCHHAMMER_KINDS = ("q_minus_one", "one_minus_q_inv_sq")


def q_pochhammer_factor(n: int, q: float, kind: str = "q_minus_one") -> float:
    """Finite products appearing in the closed-form weights.

    kind='q_minus_one':          (q-1)(q^2-1)...(q^n-1)
    kind='one_minus_q_inv_sq':   (1-q^-2)(1-q^-4)...(1-q^-2n)
    """
    n = int(n)
    if n < 0:
        raise InvalidParameterError("n >= 0 required")
    q = float(q)
    k = np.arange(1, n + 1, dtype=float)
    if kind == "q_minus_one":
        factors = q ** k - 1.0
    elif kind == "one_minus_q_inv_sq":
        factors = 1.0 - q ** (-2.0 * k)
    else:
        raise InvalidParameterError(f"kind must be one of {POCHHAMMER_KINDS}")
    if np.any(factors == 0):
        raise ZeroFactorError(f"vanishing factor in q-Pochhammer product at q={q}")
    return float(np.prod(factors))


def log_q_pochhammer_table(n_max: int, q: float, kind: str = "q_minus_one") -> np.ndarray:
    """log|product| for n = 0..n_max, vectorized version of q_pochhammer_factor."""
    k = np.arange(1, n_max + 1, dtype=float)
    lq = math.log(q)
    if kind == "q_minus_one":
        logs = np.log(np.abs(np.expm1(k * lq)))
    elif kind == "one_minus_q_inv_sq":
        logs = np.log(np.abs(-np.expm1(-2.0 * k * lq)))
    else:
        raise InvalidParameterError(f"kind must be one of {POCHHAMMER_KINDS}")
    return np.concatenate([[0.0], np.cumsum(logs)])
