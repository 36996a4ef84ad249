"""Coherent states |z>, their norms, and the overlap kernel G.

Series are indexed by the exponent e of z (or u). For a lower-bounded
spectrum with nu_- >= 0 the lowest state is re-indexed to e = 0, so psi is
read as e -> psi(mu + nu_- + e). Otherwise e is the basis label n itself
and the negative branch (FullLine, or nu_- < 0) uses psi(n)! = psi(n+1)...psi(0).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .classify import Ladder, SpectrumDescriptor, SpectrumKind, classify, coherent_domain
from .errors import NonConvergenceError, OutOfDomainError, UnsupportedError
from .psi import PsiSpec

DIVERGENCE_RUN = 50
MAX_TERMS = 1_000_000


@dataclass(frozen=True)
class CoherentState:
    indices: np.ndarray
    amplitudes: np.ndarray
    z: complex
    truncation: tuple
    tail_bound: float

    def as_dict(self) -> dict:
        return dict(zip(self.indices.tolist(), self.amplitudes.tolist()))


class NormResult(NamedTuple):
    value: float
    converged: bool
    n_terms: int
    tail_bound: float


class _Layout(NamedTuple):
    base: int            # basis label of exponent 0
    e_min: float         # lowest exponent (-inf for FullLine)
    up_limit: float      # psi(+inf)
    down_limit: float    # psi(-inf)


def _layout(psi: PsiSpec, spec: SpectrumDescriptor) -> _Layout:
    dom = coherent_domain(psi, spec)
    if dom.ladder is Ladder.NONE:
        raise OutOfDomainError(f"no coherent states for a {spec.kind.value} spectrum")
    if dom.ladder is Ladder.ADAGGER:
        raise UnsupportedError("eigenvectors of a+: apply psi.reflect() and use the a side")
    if spec.kind is SpectrumKind.FULL_LINE:
        base, e_min = 0, -math.inf
    elif spec.nu_minus >= 0:
        base, e_min = spec.nu_minus, 0
    else:
        base, e_min = 0, spec.nu_minus
    return _Layout(base, e_min, psi.limit(+1), psi.limit(-1))


class _Series(NamedTuple):
    exponents: np.ndarray
    terms: np.ndarray
    tail_bound: float
    converged: bool


def _sum_two_sided(psi, layout: _Layout, w: complex, root: bool, tol: float,
                   max_terms: int = MAX_TERMS) -> _Series:
    """Terms w^e/psi(e)! (or their square roots) over the exponent range.

    Convergence is judged on the magnitudes m_e = |term|^(2 if root else 1),
    which form a series with ratio R/psi(e) upward and psi(e)/R downward.
    """
    mu = psi.mu
    f = lambda e: float(np.real(psi(mu + layout.base + e)))  # noqa: E731
    p = 2 if root else 1
    R = abs(w) ** p
    g = math.sqrt if root else (lambda v: v)

    exps, terms = [0], [complex(1.0)]
    total = 1.0
    tail = 0.0
    converged = True

    # upward branch
    t, m, rising = complex(1.0), 1.0, 0
    e = 0
    up_done = False
    while e < max_terms:
        fe = f(e + 1)
        if fe <= 0:
            raise UnsupportedError(f"psi <= 0 at basis label {layout.base + e + 1}")
        r_sup = max(R / fe, R / layout.up_limit if layout.up_limit > 0 else math.inf)
        if r_sup < 1 and m * r_sup / (1 - r_sup) <= tol * total:
            tail += m * r_sup / (1 - r_sup)
            up_done = True
            break
        e += 1
        t = t * w / g(fe)
        m_new = abs(t) ** p
        rising = rising + 1 if m_new > m else 0
        m = m_new
        exps.append(e)
        terms.append(t)
        total += m
        if rising >= DIVERGENCE_RUN or not math.isfinite(total):
            break
    converged &= up_done

    # downward branch
    if layout.e_min < 0:
        if w == 0:
            return _Series(np.array(exps), np.array(terms), math.inf, False)
        t, m, rising = complex(1.0), 1.0, 0
        e = 0
        down_done = False
        while -e < max_terms:
            if e == layout.e_min:
                down_done = True
                break
            fe = f(e)
            nxt = f(e - 1) if e - 1 > layout.e_min else 0.0
            r_sup = max(max(nxt, 0.0) / R, layout.down_limit / R if layout.e_min == -math.inf else 0.0)
            if r_sup < 1 and layout.e_min == -math.inf:
                bound = m * (fe / R) / (1 - r_sup) if fe / R < 1 else math.inf
                if bound <= tol * total:
                    tail += bound
                    down_done = True
                    break
            e -= 1
            t = t * g(fe) / w
            m_new = abs(t) ** p
            rising = rising + 1 if m_new > m else 0
            m = m_new
            exps.append(e)
            terms.append(t)
            total += m
            if rising >= DIVERGENCE_RUN or not math.isfinite(total):
                break
        converged &= down_done

    order = np.argsort(exps)
    return _Series(np.array(exps)[order], np.array(terms)[order], tail, converged)


def coherent_coefficients(psi: PsiSpec, spec: Optional[SpectrumDescriptor], z: complex,
                          tol: float = 1e-15) -> CoherentState:
    """Amplitudes <n|z> of the eigenvector of a with eigenvalue z.

    Normalized by <base|z> = 1 (base = 0, or nu_- for nu_- >= 0); the state is
    not scaled to unit norm. ``tail_bound`` bounds the dropped norm^2
    relative to the kept part, i.e. the truncation stops when the bound is
    below tol times the accumulated norm^2.
    """
    spec = spec or classify(psi)
    dom = coherent_domain(psi, spec)
    if not dom.contains(z):
        raise OutOfDomainError(
            f"|z|^2 = {abs(z) ** 2:g} outside ({dom.inner_r2:g}, {dom.outer_r2:g})")
    layout = _layout(psi, spec)
    s = _sum_two_sided(psi, layout, complex(z), root=True, tol=tol)
    if not s.converged:
        raise NonConvergenceError("coherent-state series did not converge")
    idx = s.exponents + layout.base
    return CoherentState(idx, s.terms, complex(z), (int(idx[0]), int(idx[-1])), s.tail_bound)


def norm_squared(psi: PsiSpec, spec: Optional[SpectrumDescriptor], r2: float,
                 tol: float = 1e-15) -> NormResult:
    """<z|z> for |z|^2 = r2; divergence is reported through ``converged``."""
    spec = spec or classify(psi)
    layout = _layout(psi, spec)
    if r2 < 0:
        raise ValueError("r2 >= 0 required")
    s = _sum_two_sided(psi, layout, float(r2), root=False, tol=tol)
    value = float(np.sum(np.real(s.terms)))
    if not s.converged and s.tail_bound == math.inf:
        value = math.inf
    return NormResult(value, s.converged, len(s.terms), s.tail_bound)


def kernel_series(psi: PsiSpec, u: complex, tol: float = 1e-16,
                  spec: Optional[SpectrumDescriptor] = None):
    """(exponents, terms u^e g_e) of G(u) after truncation."""
    spec = spec or classify(psi)
    layout = _layout(psi, spec)
    s = _sum_two_sided(psi, layout, complex(u), root=False, tol=tol)
    if not s.converged:
        raise NonConvergenceError(f"kernel series diverges at u = {u}")
    return s.exponents, s.terms


def kernel_G(psi: PsiSpec, u: complex, tol: float = 1e-16,
             spec: Optional[SpectrumDescriptor] = None) -> complex:
    """Reproducing kernel G(u) = sum_e u^e / psi(e)!  (u = conj(z) zeta)."""
    _, terms = kernel_series(psi, u, tol, spec)
    return complex(math.fsum(np.real(terms)) + 1j * math.fsum(np.imag(terms)))


def kernel_residual(psi: PsiSpec, u: float, n_terms: int,
                    spec: Optional[SpectrumDescriptor] = None) -> float:
    """|u G(u) - psi(u d/du) G_N(u)| with G_N the series cut at |e| <= n_terms.

    psi(u d/du) multiplies the coefficient of u^e by psi(e); the converged G
    on the left makes the residual the truncation error of the right side.
    """
    spec = spec or classify(psi)
    layout = _layout(psi, spec)
    G = kernel_G(psi, u, tol=1e-17, spec=spec)
    e_lo = int(max(layout.e_min, -n_terms))
    mu = psi.mu
    f = lambda e: float(np.real(psi(mu + layout.base + e)))  # noqa: E731
    coef = {0: 1.0}
    for e in range(1, n_terms + 1):
        coef[e] = coef[e - 1] / f(e)
    for e in range(0, e_lo, -1):
        coef[e - 1] = coef[e] * f(e)
    acc = [f(e) * c * u ** e for e, c in coef.items()]
    return abs(u * G - math.fsum(np.real(acc)) - 1j * math.fsum(np.imag(acc)))
