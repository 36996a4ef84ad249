"""Structure functions psi of deformed oscillator algebras.

Each built-in family is a frozen dataclass that evaluates psi on real or
complex arguments, reports its real zeros exactly, and knows its limits at
+-infinity. ``mu`` is the representation label (decimal part of the N
spectrum); it is carried along but never enters ``__call__``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np
from numpy.polynomial import Polynomial

from .errors import InvalidParameterError, UnsupportedError

ZERO_TOL = 1e-10


@dataclass(frozen=True)
class PsiSpec:
    mu: float = field(default=0.0, kw_only=True)

    def __post_init__(self):
        if not 0.0 <= self.mu < 1.0:
            raise InvalidParameterError(f"mu must lie in [0, 1), got {self.mu!r}")

    @property
    def family(self) -> str:
        return type(self).__name__

    def __call__(self, x):
        raise NotImplementedError

    def real_zeros(self) -> np.ndarray:
        """Sorted real zeros of psi (all of them)."""
        raise NotImplementedError

    def limit(self, direction: int) -> float:
        """lim psi(x) as x -> direction * infinity (direction is +1 or -1)."""
        raise NotImplementedError

    def params(self) -> dict:
        d = {k: v for k, v in self.__dict__.items() if k != "mu"}
        d["mu"] = self.mu
        return d


def _out(v):
    return np.asarray(v)[()]


@dataclass(frozen=True)
class Affine(PsiSpec):
    """Usual oscillator, psi(x) = x + sigma."""
    sigma: float = 0.0

    def __call__(self, x):
        return _out(np.add(x, self.sigma))

    def real_zeros(self):
        return np.array([-float(self.sigma)])

    def limit(self, direction):
        return math.copysign(math.inf, direction)


@dataclass(frozen=True)
class QLinear(PsiSpec):
    """psi(x) = lambda_minus q^-x + lambda_plus q^x + const."""
    lambda_minus: float = 0.0
    lambda_plus: float = 0.0
    const: float = 0.0
    q: float = 2.0

    def __post_init__(self):
        super().__post_init__()
        if not self.q > 0 or self.q == 1.0:
            raise InvalidParameterError("q ≠ 1 required and q > 0")
        if self.lambda_minus == 0 and self.lambda_plus == 0 and self.const == 0:
            raise InvalidParameterError("psi must not vanish identically")

    @classmethod
    def qosc(cls, sigma: float, q: float, **kw) -> "QLinear":
        """q-oscillator aa+ - q a+a = q^-N."""
        d = q - 1.0 / q
        return cls(lambda_minus=-1.0 / d, lambda_plus=sigma / d, const=0.0, q=q, **kw)

    @classmethod
    def qosc_unit(cls, sigma: float, q: float, **kw) -> "QLinear":
        """q-oscillator aa+ - q a+a = 1."""
        return cls(lambda_minus=0.0, lambda_plus=sigma, const=1.0 / (1.0 - q), q=q, **kw)

    @classmethod
    def exponential(cls, lam: float, q: float, **kw) -> "QLinear":
        """psi(x) = lam q^-x."""
        return cls(lambda_minus=lam, q=q, **kw)

    @classmethod
    def shifted_exponential(cls, a: float, q: float, **kw) -> "QLinear":
        """psi(x) = a + q^x."""
        return cls(lambda_plus=1.0, const=a, q=q, **kw)

    def canonical(self) -> tuple[float, float, float, float]:
        """(up, down, const, Q) with Q > 1 and psi(x) = up Q^x + down Q^-x + const."""
        if self.q > 1:
            return self.lambda_plus, self.lambda_minus, self.const, self.q
        return self.lambda_minus, self.lambda_plus, self.const, 1.0 / self.q

    def __call__(self, x):
        lq = math.log(self.q)
        x = np.asarray(x)
        out = np.full(x.shape, self.const, dtype=np.result_type(x, float))
        with np.errstate(over="ignore"):
            if self.lambda_minus:
                out = out + self.lambda_minus * np.exp(-x * lq)
            if self.lambda_plus:
                out = out + self.lambda_plus * np.exp(x * lq)
        return out[()]

    def real_zeros(self):
        # with t = q^x: lambda_plus t^2 + const t + lambda_minus = 0, t > 0
        if self.lambda_plus == 0:
            ts = [] if self.const == 0 else [-self.lambda_minus / self.const]
        else:
            ts = np.roots([self.lambda_plus, self.const, self.lambda_minus])
            ts = [t.real for t in ts if abs(t.imag) <= 1e-12 * max(1.0, abs(t))]
        lq = math.log(self.q)
        return np.array(sorted(math.log(t) / lq for t in ts if t > 0))

    def limit(self, direction):
        up, down, c, _ = self.canonical()
        lead = up if direction > 0 else down
        if lead != 0:
            return math.copysign(math.inf, lead)
        return float(c)


@dataclass(frozen=True)
class ExpPoly(PsiSpec):
    """psi(x) = exp(a_0 + a_1 x + ... + a_{2p+1} x^{2p+1}) with a_{2p+1} > 0."""
    coeffs: tuple = (0.0, 1.0)

    def __post_init__(self):
        super().__post_init__()
        c = tuple(float(a) for a in self.coeffs)
        while len(c) > 1 and c[-1] == 0.0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)
        if len(c) % 2 != 0 or c[-1] <= 0:
            raise InvalidParameterError(
                "exponent must have odd degree 2p+1 with positive leading coefficient")

    @property
    def p(self) -> int:
        return (len(self.coeffs) - 2) // 2

    def exponent(self, x):
        return _out(np.polynomial.polynomial.polyval(np.asarray(x), self.coeffs))

    def __call__(self, x):
        with np.errstate(over="ignore"):
            return _out(np.exp(self.exponent(x)))

    def real_zeros(self):
        return np.array([])

    def limit(self, direction):
        return math.inf if direction > 0 else 0.0


@dataclass(frozen=True)
class QBracket(PsiSpec):
    """psi(x) = [x] = (q^x - q^-x)/(q - 1/q); q is normalized to q > 1."""
    q: float = 2.0

    def __post_init__(self):
        super().__post_init__()
        if not self.q > 0 or self.q == 1.0:
            raise InvalidParameterError("q ≠ 1 required and q > 0")
        if self.q < 1:
            object.__setattr__(self, "q", 1.0 / self.q)

    def __call__(self, x):
        lq = math.log(self.q)
        with np.errstate(over="ignore"):
            return _out(np.sinh(np.multiply(x, lq)) / math.sinh(lq))

    def as_qlinear(self) -> QLinear:
        d = self.q - 1.0 / self.q
        return QLinear(lambda_minus=-1.0 / d, lambda_plus=1.0 / d, q=self.q, mu=self.mu)

    def real_zeros(self):
        return np.array([0.0])

    def limit(self, direction):
        return math.copysign(math.inf, direction)


@dataclass(frozen=True)
class QParen(PsiSpec):
    """psi(x) = (x) = (q^x - 1)/(q - 1) with q > 1."""
    q: float = 2.0

    def __post_init__(self):
        super().__post_init__()
        if not self.q > 1:
            raise InvalidParameterError("q > 1 required for the (x)_q family")

    def __call__(self, x):
        lq = math.log(self.q)
        with np.errstate(over="ignore"):
            return _out(np.expm1(np.multiply(x, lq)) / math.expm1(lq))

    def as_qlinear(self) -> QLinear:
        s = 1.0 / (self.q - 1.0)
        return QLinear(lambda_plus=s, const=-s, q=self.q, mu=self.mu)

    def real_zeros(self):
        return np.array([0.0])

    def limit(self, direction):
        return math.inf if direction > 0 else -1.0 / (self.q - 1.0)


@dataclass(frozen=True)
class PolyProduct(PsiSpec):
    """Polynomial psi with real coefficients, lowest degree first."""
    coeffs: tuple = (0.0, 1.0)

    def __post_init__(self):
        super().__post_init__()
        c = tuple(float(a) for a in self.coeffs)
        while len(c) > 1 and c[-1] == 0.0:
            c = c[:-1]
        if c == (0.0,):
            raise InvalidParameterError("psi must not vanish identically")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_roots(cls, roots, scale: float = 1.0, **kw) -> "PolyProduct":
        poly = Polynomial.fromroots(roots) * scale
        return cls(coeffs=tuple(np.real(poly.coef)), **kw)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return _out(np.polynomial.polynomial.polyval(np.asarray(x), self.coeffs))

    def roots(self) -> np.ndarray:
        return Polynomial(self.coeffs).roots()

    def real_zeros(self):
        r = self.roots()
        scale = max(1.0, float(np.max(np.abs(r)))) if r.size else 1.0
        real = np.real(r[np.abs(np.imag(r)) <= 1e-9 * scale])
        return np.sort(real)

    def limit(self, direction):
        lead = self.coeffs[-1]
        if self.degree == 0:
            return lead
        sign = lead * (direction ** self.degree)
        return math.copysign(math.inf, sign)


BUILTIN_FAMILIES = (Affine, QLinear, ExpPoly, QBracket, QParen, PolyProduct)


def evaluate(psi: PsiSpec, x):
    """psi(x); overflow yields +-inf rather than an exception."""
    return psi(x)


def asymptote(psi: PsiSpec, direction) -> float:
    """Extended-real limit of psi at +inf (direction > 0) or -inf."""
    if isinstance(direction, str):
        direction = -1 if direction.strip().startswith("-") else 1
    return psi.limit(1 if direction > 0 else -1)


class LatticeZeros(NamedTuple):
    zeros: list
    sign_change_off_lattice: bool


def find_lattice_zeros(psi, n_min: int, n_max: int, zero_tol: float = ZERO_TOL) -> LatticeZeros:
    """Integers n in [n_min, n_max] with psi(mu + n) = 0.

    For built-in families the candidates come from the exact real zeros; a
    plain callable is scanned with |psi| <= zero_tol. The flag reports a sign
    change between consecutive lattice points that carries no lattice zero.
    """
    if n_min > n_max:
        raise InvalidParameterError("n_min <= n_max required")
    mu = getattr(psi, "mu", 0.0)
    ns = np.arange(n_min, n_max + 1)
    vals = np.real(np.asarray(psi(mu + ns), dtype=complex))
    if isinstance(psi, PsiSpec):
        zeros = set()
        for r in psi.real_zeros():
            n = int(round(r - mu))
            if n_min <= n <= n_max and (abs(psi(mu + n)) <= zero_tol
                                        or abs(mu + n - r) <= 1e-9 * (1 + abs(r))):
                zeros.add(n)
    else:
        zeros = {int(n) for n, v in zip(ns, vals) if abs(v) <= zero_tol}
    is_zero = np.array([n in zeros for n in ns])
    s = np.sign(vals)
    flip = (s[:-1] * s[1:] < 0) & ~is_zero[:-1] & ~is_zero[1:]
    return LatticeZeros(sorted(zeros), bool(np.any(flip)))


def shift_psi(psi: PsiSpec, k: float) -> PsiSpec:
    """The family member x -> psi(x + k)."""
    if isinstance(psi, Affine):
        return replace(psi, sigma=psi.sigma + k)
    if isinstance(psi, (QBracket, QParen)):
        psi = psi.as_qlinear()
    if isinstance(psi, QLinear):
        return replace(psi, lambda_minus=psi.lambda_minus * psi.q ** (-k),
                       lambda_plus=psi.lambda_plus * psi.q ** k)
    if isinstance(psi, (PolyProduct, ExpPoly)):
        composed = Polynomial(psi.coeffs)(Polynomial([k, 1.0]))
        return replace(psi, coeffs=tuple(composed.coef))
    raise UnsupportedError(f"cannot shift {type(psi).__name__}")


def reflect(psi: PsiSpec, shift: float = 0.0) -> PsiSpec:
    """The family member x -> psi(-x + shift), exchanging the roles of a and a+."""
    if isinstance(psi, Affine):
        return PolyProduct(coeffs=(psi.sigma + shift, -1.0), mu=psi.mu)
    if isinstance(psi, (QBracket, QParen)):
        psi = psi.as_qlinear()
    if isinstance(psi, QLinear):
        return replace(psi, lambda_minus=psi.lambda_plus * psi.q ** shift,
                       lambda_plus=psi.lambda_minus * psi.q ** (-shift))
    if isinstance(psi, PolyProduct):
        composed = Polynomial(psi.coeffs)(Polynomial([shift, -1.0]))
        return replace(psi, coeffs=tuple(composed.coef))
    raise UnsupportedError(
        f"{type(psi).__name__} is not closed under reflection")
