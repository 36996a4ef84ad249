"""Irreducible representations from the lattice zeros of psi, and coherent domains."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .errors import DegenerateDomainError, UnsupportedError
from .psi import ZERO_TOL, PsiSpec, asymptote

SCAN_WINDOW = (-10_000, 10_000)


class SpectrumKind(str, Enum):
    FULL_LINE = "FullLine"
    LOWER_BOUNDED = "LowerBounded"
    UPPER_BOUNDED = "UpperBounded"
    FINITE_WINDOW = "FiniteWindow"
    NO_UNITARY_REP = "NoUnitaryRep"


@dataclass(frozen=True)
class SpectrumDescriptor:
    """Sp N = mu + {nu_minus, ..., nu_plus}; a missing bound means unbounded."""
    kind: SpectrumKind
    mu: float = 0.0
    nu_minus: Optional[int] = None
    nu_plus: Optional[int] = None

    @property
    def lowest(self) -> float:
        return -math.inf if self.nu_minus is None else self.nu_minus

    @property
    def highest(self) -> float:
        return math.inf if self.nu_plus is None else self.nu_plus

    def contains(self, n: int) -> bool:
        if self.kind is SpectrumKind.NO_UNITARY_REP:
            return False
        return self.lowest <= n <= self.highest

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "mu": self.mu,
                "nu_minus": self.nu_minus, "nu_plus": self.nu_plus}


class Ladder(str, Enum):
    A = "A"
    ADAGGER = "ADagger"
    NONE = "None"


@dataclass(frozen=True)
class CoherentDomain:
    """Annulus inner_r2 < |z|^2 < outer_r2 where eigenvectors of `ladder` exist.

    ``closed_inner`` marks the Fock cases where z = 0 (the vacuum) belongs to
    the domain.
    """
    ladder: Ladder
    inner_r2: float
    outer_r2: float
    closed_inner: bool = False

    @property
    def empty(self) -> bool:
        return self.ladder is Ladder.NONE

    def contains(self, z: complex) -> bool:
        if self.empty:
            return False
        r2 = abs(z) ** 2
        if r2 >= self.outer_r2:
            return False
        return r2 > self.inner_r2 or (self.closed_inner and r2 == self.inner_r2)

    def to_dict(self) -> dict:
        return {"ladder": self.ladder.value, "inner_r2": self.inner_r2,
                "outer_r2": self.outer_r2, "closed_inner": self.closed_inner}


class _Lattice:
    """Sign information of psi(mu + n) over all integers n."""

    def __init__(self, psi: PsiSpec, zero_tol: float, window):
        self.psi = psi
        self.mu = psi.mu
        self.zero_tol = zero_tol
        roots = psi.real_zeros()
        zeros = set()
        for r in roots:
            n = int(round(r - self.mu))
            if abs(psi(self.mu + n)) <= zero_tol or abs(self.mu + n - r) <= 1e-9 * (1 + abs(r)):
                zeros.add(n)
        self.zeros = sorted(zeros)
        if roots.size:
            # psi keeps one sign on each side beyond the extreme real zeros
            self.lo = int(math.floor(roots[0] - self.mu)) - 1
            self.hi = int(math.ceil(roots[-1] - self.mu)) + 1
        else:
            self.lo = self.hi = 0
        if self.lo < window[0] or self.hi > window[1]:
            raise UnsupportedError("real zeros of psi fall outside the scan window")

    def value(self, n: int) -> float:
        return float(np.real(self.psi(self.mu + n)))

    def positive(self, a: float, b: float) -> bool:
        """psi(mu + n) > 0 for every integer n in [a, b] (bounds may be infinite)."""
        if a > b:
            return True
        if a == -math.inf and self.value(self.lo) <= 0:
            return False
        if b == math.inf and self.value(self.hi) <= 0:
            return False
        lo = max(a, self.lo)
        hi = min(b, self.hi)
        if lo > hi:
            # [a, b] lies entirely in one tail, where the sign is constant
            probe = self.lo if b < self.lo else self.hi
            return self.value(probe) > 0
        return all(self.value(n) > 0 for n in range(int(lo), int(hi) + 1))


def classify_all(psi: PsiSpec, window=SCAN_WINDOW, zero_tol: float = ZERO_TOL) -> list:
    """Every representation on a basis of N-eigenvectors supported by psi."""
    lat = _Lattice(psi, zero_tol, window)
    mu = psi.mu
    if not lat.zeros:
        if lat.positive(-math.inf, math.inf):
            return [SpectrumDescriptor(SpectrumKind.FULL_LINE, mu)]
        return []
    found = []
    top = lat.zeros[-1]
    if lat.positive(top + 1, math.inf):
        found.append(SpectrumDescriptor(SpectrumKind.LOWER_BOUNDED, mu, nu_minus=top))
    bottom = lat.zeros[0]
    if lat.positive(-math.inf, bottom - 1):
        found.append(SpectrumDescriptor(SpectrumKind.UPPER_BOUNDED, mu, nu_plus=bottom - 1))
    for lo, hi in zip(lat.zeros[:-1], lat.zeros[1:]):
        if lat.positive(lo + 1, hi - 1):
            found.append(SpectrumDescriptor(SpectrumKind.FINITE_WINDOW, mu,
                                            nu_minus=lo, nu_plus=hi - 1))
    return found


def classify(psi: PsiSpec, window=SCAN_WINDOW, zero_tol: float = ZERO_TOL) -> SpectrumDescriptor:
    """Representation carried by psi.

    When psi supports several (it can, with many positive intervals) the
    Fock-type ones are preferred, lower-bounded first, then the lowest
    finite window.
    """
    reps = classify_all(psi, window, zero_tol)
    if not reps:
        return SpectrumDescriptor(SpectrumKind.NO_UNITARY_REP, psi.mu)
    return reps[0]


def coherent_domain(psi: PsiSpec, spec: Optional[SpectrumDescriptor] = None) -> CoherentDomain:
    if spec is None:
        spec = classify(psi)
    kind = spec.kind
    up = asymptote(psi, +1)
    down = asymptote(psi, -1)
    if kind in (SpectrumKind.FINITE_WINDOW, SpectrumKind.NO_UNITARY_REP):
        return CoherentDomain(Ladder.NONE, 0.0, 0.0)
    if kind is SpectrumKind.LOWER_BOUNDED:
        return CoherentDomain(Ladder.A, 0.0, up, closed_inner=True)
    if kind is SpectrumKind.UPPER_BOUNDED:
        return CoherentDomain(Ladder.ADAGGER, 0.0, down, closed_inner=True)
    if up > down:
        return CoherentDomain(Ladder.A, down, up)
    if up < down:
        return CoherentDomain(Ladder.ADAGGER, up, down)
    raise DegenerateDomainError("psi(+inf) = psi(-inf): the coherent-state annulus is empty")
