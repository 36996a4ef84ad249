"""Bargmann weights from the Mellin functional equation F^(rho+1) = psi(rho) F^(rho).

``solve_mellin`` picks a closed-form F^ for each built-in family, normalized
so that F^(1) = 1, and attaches the weight it is the Mellin transform of:
a closed-form density, an atomic measure, or a density sampled by numeric
inverse Mellin transform along a vertical contour.

A family scaled by a constant, psi = s psi0, is reduced to psi0 through
F^(rho) = s^(rho-1) F0^(rho) and F(x) = F0(x/s)/s.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq
from scipy.special import gammaln, logsumexp, loggamma

from .classify import Ladder, SpectrumKind, classify, coherent_domain
from .errors import (DomainError, InfeasibleInversionError, InvalidParameterError,
                     NoClosedFormError, NoCoherentStatesError, UnsupportedError)
from .psi import Affine, ExpPoly, PolyProduct, PsiSpec, QBracket, QLinear, QParen, shift_psi
from .qspecial import bernoulli_poly, log_exp_q_paren_product, log_q_pochhammer_table

log = logging.getLogger(__name__)

DEFAULT_CONTOUR = 1.5
TAIL_RATIO = 1e-12
SADDLE_BOUND = 400.0
MAX_LOG_CANCELLATION = math.log(1e6)


class HatForm(str, Enum):
    GAMMA = "Gamma"
    LOG_GAUSSIAN = "LogGaussian"
    BERNOULLI_EXP = "BernoulliExp"
    ATOMIC_PRODUCT = "AtomicProduct"
    BRACKET = "BracketForm"
    PAREN = "ParenForm"
    GAMMA_PRODUCT = "GammaProduct"


class WeightKind(str, Enum):
    DENSITY = "Density"
    ATOMIC = "AtomicMeasure"
    NUMERIC = "NumericDensity"
    UNAVAILABLE = "Unavailable"


class Feasibility(str, Enum):
    DECAYING = "Decaying"
    DIVERGING = "Diverging"
    INCONCLUSIVE = "Inconclusive"


def _c(rho):
    return np.asarray(rho, dtype=complex)


# --------------------------------------------------------------------------
# closed forms for the unscaled psi0; every log_hat vanishes at rho = 1


class _Gamma:
    kind = HatForm.GAMMA

    def __init__(self, sigma: float):
        if sigma <= -1:
            raise NoClosedFormError("Gamma weight needs sigma > -1")
        self.sigma = float(sigma)
        self.abscissa = -self.sigma
        self.normalization = math.gamma(1.0 + self.sigma)

    def params(self):
        return {"sigma": self.sigma}

    def log_hat(self, rho):
        return loggamma(_c(rho) + self.sigma) - gammaln(1.0 + self.sigma)

    def log_weight(self, y):
        y = np.asarray(y, dtype=float)
        return self.sigma * np.log(y) - y - gammaln(1.0 + self.sigma)

    def dlog_weight(self, y):
        return self.sigma / np.asarray(y, dtype=float) - 1.0


class _LogGaussian:
    """psi0(x) = q^-x with 0 < q < 1."""
    kind = HatForm.LOG_GAUSSIAN
    abscissa = -math.inf

    def __init__(self, q: float):
        self.q = float(q)
        self.lq = math.log(self.q)
        # the log-Gaussian below integrates to this constant times F^
        self.normalization = math.sqrt(-2.0 * math.pi * self.lq) * self.q ** (-0.125)

    def params(self):
        return {"q": self.q}

    def log_hat(self, rho):
        rho = _c(rho)
        return -0.5 * (rho * rho - rho) * self.lq

    def log_weight(self, y):
        u = np.log(np.asarray(y, dtype=float))
        return u * u / (2.0 * self.lq) - 0.5 * u - math.log(self.normalization)


class _BernoulliExp:
    """psi0(x) = exp(sum a_n x^n)."""
    kind = HatForm.BERNOULLI_EXP
    abscissa = -math.inf

    def __init__(self, coeffs):
        self.coeffs = tuple(float(a) for a in coeffs)
        self.p = (len(self.coeffs) - 2) // 2
        self._shift = sum(a / (n + 1) * float(bernoulli_poly(n + 1, 1.0))
                          for n, a in enumerate(self.coeffs))
        self.normalization = math.exp(-self._shift) if self._shift > -700 else math.inf

    def params(self):
        return {"coeffs": list(self.coeffs), "p": self.p}

    def log_hat(self, rho):
        rho = _c(rho)
        acc = np.zeros_like(rho)
        for n, a in enumerate(self.coeffs):
            if a:
                acc = acc + a / (n + 1) * bernoulli_poly(n + 1, rho)
        return acc - self._shift


class _AtomicProduct:
    """psi0(x) = a + q^x, q > 1: F^ is an entire function, F a sum of point masses."""
    kind = HatForm.ATOMIC_PRODUCT
    abscissa = -math.inf

    def __init__(self, a: float, q: float):
        if a <= 0 or q <= 1:
            raise InvalidParameterError("atomic weight needs a > 0 and q > 1")
        self.a, self.q = float(a), float(q)
        self.la, self.lq = math.log(self.a), math.log(self.q)
        self._log_hat1 = self._log_product(np.array([1.0 + 0j]))[0]
        xs, ws = self._atoms()
        self.atoms = (xs, ws)
        self.normalization = float(np.exp(self._log_hat1.real))

    def params(self):
        return {"a": self.a, "q": self.q}

    def _log_product(self, rho):
        """log of a^rho prod_{p>=0} (1 + q^(rho-p-1)/a), unnormalized."""
        top = max(0.0, float(np.max(rho.real)))
        P = int(math.ceil(top + (42.0 + max(0.0, -self.la)) / self.lq)) + 5
        p = np.arange(P)
        z = np.exp((rho[:, None] - p - 1.0) * self.lq - self.la)
        return rho * self.la + np.sum(np.log1p(z), axis=1)

    def log_hat(self, rho):
        rho = _c(rho)
        flat = rho.reshape(-1)
        return (self._log_product(flat) - self._log_hat1).reshape(rho.shape)

    def _atoms(self):
        # expansion a^rho (1 + sum_n a^-n q^(n rho) / prod_k (q^k - 1)) read as
        # sum_n w_n x_n^(rho-1): x_n = a q^n, w_n proportional to a^-n q^n / prod
        n_max = 8
        while True:
            lp = log_q_pochhammer_table(n_max, self.q, "q_minus_one")
            n = np.arange(n_max + 1)
            lw = -n * self.la + n * self.lq - lp
            if lw[-1] < lw.max() - 80 and lw[-1] < lw[-2]:
                break
            n_max *= 2
        keep = lw > lw.max() - 80
        lw, n = lw[keep], n[keep]
        w = np.exp(lw - logsumexp(lw))
        return self.a * self.q ** n.astype(float), w


class _Bracket:
    """psi0(x) = [x] with q > 1."""
    kind = HatForm.BRACKET
    abscissa = 0.0

    def __init__(self, q: float):
        self.q = float(q)
        self.lq = math.log(self.q)
        self.s = self.q - 1.0 / self.q
        self.ls = math.log(self.s)
        self._log_f1 = float(np.real(self.log_fhat(np.array([1.0]))[0]))
        # F^(1) = 1 fixes phi = (q - 1/q)/f^(1)
        self.normalization = self.s * math.exp(-self._log_f1)

    def params(self):
        return {"q": self.q, "phi": self.normalization}

    def log_fhat(self, rho):
        """log of sum_n q^(-2 n rho)/((1-q^-2)...(1-q^-2n)) = -log (q^-2rho; q^-2)_inf."""
        rho = _c(rho)
        flat = rho.reshape(-1)
        K = int(math.ceil(42.0 / (2.0 * self.lq))) + 3
        k = np.arange(K)
        z = np.exp(-2.0 * self.lq * (flat[:, None] + k))
        return (-np.sum(np.log1p(-z), axis=1)).reshape(rho.shape)

    def log_hat(self, rho):
        rho = _c(rho)
        return (math.log(self.normalization) + 0.5 * rho * (rho - 1.0) * self.lq
                - rho * self.ls + self.log_fhat(rho))

    def log_weight(self, y):
        y = np.atleast_1d(np.asarray(y, dtype=float))
        u = np.log(y)
        L = self.lq
        v = self.ls + u
        n_peak = max(0.0, float(np.max((-2.0 * v - L) / (4.0 * L))))
        N = int(math.ceil(n_peak + math.sqrt(60.0 / (2.0 * L)))) + 5
        n = np.arange(N + 1)
        lp = log_q_pochhammer_table(N, self.q, "one_minus_q_inv_sq")
        terms = -n * (2 * n + 1) * L - 2.0 * n * v[:, None] - lp
        series = logsumexp(terms, axis=1)
        gauss = -(v + 0.5 * L) ** 2 / (2.0 * L)
        const = self.ls - 0.5 * math.log(2.0 * math.pi * L) - self._log_f1
        return gauss + series + const


class _Paren:
    """psi0(x) = (x) with q > 1; F(x) = ((q-1)/ln q) / Exp_q(q x)."""
    kind = HatForm.PAREN
    abscissa = 0.0

    def __init__(self, q: float):
        self.q = float(q)
        self.lq = math.log(self.q)
        self.normalization = (self.q - 1.0) / self.lq
        k = np.arange(1, int(45.0 / self.lq) + 5)
        self._log_rr = float(np.sum(np.log1p(-np.exp(-k * self.lq))))

    def params(self):
        return {"q": self.q}

    def _log_T(self, rho):
        """log of pi (q^(rho-1); 1/q)_inf / sin(pi rho), regular at integers rho >= 1."""
        L = self.lq
        m = np.rint(rho.real)
        K = int(math.ceil(max(0.0, float(np.max(rho.real))) + 45.0 / L)) + 3
        k = np.arange(K)
        fac = -np.expm1((1.0 - rho[:, None] + k) * -L)
        special = m >= 1
        rows = np.nonzero(special)[0]
        fac[rows, (m[rows] - 1).astype(int)] = 1.0
        logT = np.sum(np.log(fac), axis=1)
        d = rho - m
        small = np.abs(d) < 1e-8
        d_safe = np.where(small, 1.0, d)
        ratio = np.where(small, L * (1.0 + 0.5 * d * L), np.expm1(d * L) / d_safe) / np.sinc(d)
        sign = np.where(((m + 1) % 2) == 0, 0.0, 1j * math.pi)
        reg = np.log(ratio.astype(complex)) + sign
        with np.errstate(divide="ignore", invalid="ignore"):
            plain = np.log(math.pi / np.sin(math.pi * rho))
        return logT + np.where(special, reg, plain)

    def log_hat(self, rho):
        rho = _c(rho)
        flat = rho.reshape(-1)
        out = (math.log(self.normalization) - flat * math.log(self.q - 1.0)
               + self._log_T(flat) - self._log_rr)
        return out.reshape(rho.shape)

    def log_weight(self, y):
        y = np.asarray(y, dtype=float)
        return math.log(self.normalization) - log_exp_q_paren_product(self.q * y, self.q)


class _GammaProduct:
    """Polynomial psi0(x) = prod (x - r_i): F^ = prod Gamma(rho - r_i)/Gamma(1 - r_i)."""
    kind = HatForm.GAMMA_PRODUCT

    def __init__(self, roots):
        self.roots = np.asarray(roots, dtype=complex)
        bad = [r for r in self.roots
               if abs(r.imag) < 1e-12 and r.real >= 1 and abs(r.real - round(r.real)) < 1e-12]
        if bad:
            raise NoClosedFormError("polynomial has a root at a positive integer")
        self.abscissa = float(np.max(self.roots.real)) if self.roots.size else -math.inf
        self._log_norm = complex(np.sum(loggamma(1.0 - self.roots)))
        self.normalization = float(np.real(np.exp(self._log_norm)))

    def params(self):
        return {"roots": [[float(r.real), float(r.imag)] for r in self.roots]}

    def log_hat(self, rho):
        rho = _c(rho)
        acc = np.zeros_like(rho)
        for r in self.roots:
            acc = acc + loggamma(rho - r)
        return acc - self._log_norm


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class MellinSolution:
    """F^ together with the weight it transforms, for a given psi.

    ``psi`` is the function actually solved (re-indexed so the lowest state is
    0 when nu_- > 0; ``index_offset`` records the shift). ``scale`` s reduces
    psi to psi0 = psi/s on which ``form`` is written.
    """
    psi: PsiSpec
    form: object
    weight_kind: WeightKind
    scale: float = 1.0
    index_offset: int = 0
    spectrum_kind: SpectrumKind = SpectrumKind.LOWER_BOUNDED
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def hat_form(self) -> HatForm:
        return self.form.kind

    @property
    def normalization(self) -> float:
        return self.form.normalization

    @property
    def abscissa(self) -> float:
        return self.form.abscissa

    @property
    def samples(self):
        """(x, F) grid of a numeric density, computed on first use."""
        if self.weight_kind is not WeightKind.NUMERIC:
            return None
        if "samples" not in self._cache:
            self._cache["samples"] = _sample_numeric(self)
        return self._cache["samples"]

    @property
    def atoms(self):
        if self.weight_kind is not WeightKind.ATOMIC:
            return None
        xs, ws = self.form.atoms
        return self.scale * xs, ws

    def describe(self) -> dict:
        return {"hat_form": self.hat_form.value, "weight_kind": self.weight_kind.value,
                "params": self.form.params(), "scale": self.scale,
                "normalization": self.normalization, "index_offset": self.index_offset,
                "abscissa": self.abscissa}


def solve_mellin(psi: PsiSpec) -> MellinSolution:
    """Normalized solution of F^(rho+1) = psi(rho) F^(rho), F^(1) = 1, and its weight.

    A nonzero mu is folded into psi, x -> psi(x + mu), so the solution is
    indexed by the integer part of the basis label.
    """
    psi = _fold_mu(psi)
    spec = classify(psi)
    dom = coherent_domain(psi, spec)
    if dom.ladder is Ladder.NONE:
        raise NoCoherentStatesError(
            f"{spec.kind.value} spectrum: no coherent states, no Bargmann representation")
    if dom.ladder is Ladder.ADAGGER:
        raise UnsupportedError("coherent states of a+ only; solve for psi.reflect() instead")
    offset = 0
    if spec.kind is SpectrumKind.LOWER_BOUNDED and spec.nu_minus > 0:
        offset = spec.nu_minus
        psi = shift_psi(psi, offset)

    kind = WeightKind.DENSITY
    scale = 1.0
    if isinstance(psi, Affine):
        form = _Gamma(psi.sigma)
    elif isinstance(psi, QBracket):
        form = _Bracket(psi.q)
    elif isinstance(psi, QParen):
        form = _Paren(psi.q)
    elif isinstance(psi, QLinear):
        form, scale = _dispatch_qlinear(psi)
        if form.kind is HatForm.ATOMIC_PRODUCT:
            kind = WeightKind.ATOMIC
    elif isinstance(psi, ExpPoly):
        form = _BernoulliExp(psi.coeffs)
        kind = WeightKind.NUMERIC if form.p % 2 == 0 else WeightKind.UNAVAILABLE
    elif isinstance(psi, PolyProduct):
        lead = psi.coeffs[-1]
        if lead <= 0:
            raise NoClosedFormError("polynomial psi needs a positive leading coefficient")
        form = _GammaProduct(psi.roots())
        scale = lead
        kind = WeightKind.NUMERIC
    else:
        raise NoClosedFormError(f"no Mellin solution for {type(psi).__name__}")

    return MellinSolution(psi, form, kind, scale, offset, spec.kind)


def _fold_mu(psi: PsiSpec) -> PsiSpec:
    return replace(shift_psi(psi, psi.mu), mu=0.0) if psi.mu else psi


def _dispatch_qlinear(psi: QLinear):
    up, down, c, Q = psi.canonical()
    tol = 1e-12 * max(abs(up), abs(down), abs(c))
    if up > 0 and down == 0 and c == 0:
        return _LogGaussian(1.0 / Q), up
    if up > 0 and down == 0 and c > 0:
        return _AtomicProduct(c / up, Q), up
    if up > 0 and c == 0 and abs(down + up) <= tol:
        return _Bracket(Q), up * (Q - 1.0 / Q)
    if up > 0 and down == 0 and abs(c + up) <= tol:
        return _Paren(Q), up * (Q - 1.0)
    raise NoClosedFormError(
        "no closed-form Mellin solution for this combination of q^x, q^-x and a constant")


# --------------------------------------------------------------------------
# evaluation


def log_hat_eval(sol: MellinSolution, rho):
    """log F^(rho) on the principal branch of each factor."""
    rho = _c(rho)
    if np.any(rho.real <= sol.abscissa):
        raise DomainError(f"Re(rho) must exceed {sol.abscissa}")
    return (rho - 1.0) * math.log(sol.scale) + sol.form.log_hat(rho)


def hat_eval(sol: MellinSolution, rho):
    """F^(rho), normalized to F^(1) = 1."""
    out = np.exp(log_hat_eval(sol, rho))
    if not np.iscomplexobj(rho):
        out = out.real
    return out[()]


def atomic_mellin(sol: MellinSolution, rho):
    """sum_k w_k x_k^(rho-1) over the atoms (an independent route to F^)."""
    xs, ws = sol.atoms
    rho = _c(rho)
    return np.sum(ws * np.exp(np.multiply.outer(rho - 1.0, np.log(xs))), axis=-1)[()]


def log_weight_eval(sol: MellinSolution, x):
    """log F(x) for closed-form densities."""
    if sol.weight_kind is not WeightKind.DENSITY:
        raise UnsupportedError("log-weight only for closed-form densities")
    x = np.asarray(x, dtype=float)
    return (sol.form.log_weight(x / sol.scale) - math.log(sol.scale)).reshape(x.shape)[()]


def weight_eval(sol: MellinSolution, x=None):
    """F(x); for an atomic measure the (support, masses) pair is returned instead."""
    if sol.weight_kind is WeightKind.ATOMIC:
        return sol.atoms
    if sol.weight_kind is WeightKind.UNAVAILABLE:
        raise InfeasibleInversionError("inverse Mellin infeasible: Diverging")
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("x > 0 required")
    if sol.weight_kind is WeightKind.DENSITY:
        return np.exp(log_weight_eval(sol, x))[()]
    xs, fs = sol.samples
    u = np.log(x)
    inside = (u >= math.log(xs[0])) & (u <= math.log(xs[-1]))
    out = np.empty(x.shape)
    if np.all(fs > 0):
        # log F is far smoother than F on a log grid
        out[inside] = np.exp(CubicSpline(np.log(xs), np.log(fs))(u[inside]))
    else:
        out[inside] = CubicSpline(np.log(xs), fs)(u[inside])
    if np.any(~inside):
        out[~inside], _ = invert_mellin_numeric(sol, x[~inside])
    return out[()]


# --------------------------------------------------------------------------
# numeric inversion


class InversionDiagnostics(NamedTuple):
    contour_re: float
    t_max: float
    n_points: int
    tail_ratio: float      # |F^(c + i t_max)| / |F^(c)|
    oscillation: float     # periods of x^(-it) over [0, t_max], worst x
    log_cancellation: float = 0.0  # log max_t |F^(c+it)| / F^(c)


def default_contour(sol: MellinSolution) -> float:
    if math.isfinite(sol.abscissa):
        return max(DEFAULT_CONTOUR, sol.abscissa + 1.0)
    return DEFAULT_CONTOUR


def inversion_feasibility(sol: MellinSolution, contour_re: Optional[float] = None,
                          t_probe=None) -> Feasibility:
    """Whether |F^(c + it)| decays along the probes.

    The verdict is read off the last quarter of the probe sequence, which
    must be monotone; anything else is reported as inconclusive.
    """
    c = default_contour(sol) if contour_re is None else contour_re
    t = np.geomspace(1.0, 200.0, 64) if t_probe is None else np.sort(np.asarray(t_probe, float))
    lmag = np.real(log_hat_eval(sol, c + 1j * t))
    tail = np.diff(lmag[-(len(lmag) // 4 + 1):])
    if np.all(tail < 0) and lmag[-1] < lmag[0]:
        return Feasibility.DECAYING
    if np.all(tail > 0) and lmag[-1] > lmag[0]:
        return Feasibility.DIVERGING
    return Feasibility.INCONCLUSIVE


def _adaptive_t_max(sol, c, ratio=TAIL_RATIO, cap=1e4):
    l0 = float(np.real(log_hat_eval(sol, c)))
    target = math.log(ratio)
    t = 2.0
    while t < cap:
        if float(np.real(log_hat_eval(sol, c + 1j * t))) - l0 < target:
            return t
        t *= 1.25
    raise InfeasibleInversionError("|F^(c+it)| does not fall below the tail ratio")


def invert_mellin_numeric(sol: MellinSolution, x, contour_re: Optional[float] = None,
                          t_max: Optional[float] = None, n_points: Optional[int] = None,
                          strict: bool = True):
    """F(x) = (1/2 pi) int F^(c+it) x^(-c-it) dt by the trapezoid rule on [-t_max, t_max].

    F is real, so only t >= 0 is evaluated. Returns (value, diagnostics).
    With ``strict`` a contour on which |F^| rises more than a factor 1e6
    above F^(c) is refused; otherwise the growth is only reported in
    ``diagnostics.log_cancellation``.
    """
    c = default_contour(sol) if contour_re is None else float(contour_re)
    if c <= sol.abscissa:
        raise DomainError(f"contour Re(rho) = {c} must exceed {sol.abscissa}")
    verdict = inversion_feasibility(sol, c)
    if verdict is Feasibility.DIVERGING:
        raise InfeasibleInversionError("inverse Mellin infeasible: Diverging")
    if t_max is None:
        t_max = _adaptive_t_max(sol, c)
    if n_points is None:
        n_points = 2 * int(math.ceil(t_max / 0.05)) + 1
    n_half = (int(n_points) - 1) // 2
    t = np.linspace(0.0, t_max, n_half + 1)
    h = t[1] - t[0]
    lh = log_hat_eval(sol, c + 1j * t)
    wts = np.full(t.shape, h / math.pi)
    wts[0] *= 0.5
    wts[-1] *= 0.5
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty(x_arr.shape)
    lx = np.log(x_arr)
    # for a positive weight |F^(c+it)| <= F^(c); growth above it is lost to cancellation
    cancel = float(np.max(lh.real) - lh[0].real)
    if cancel > MAX_LOG_CANCELLATION:
        msg = f"|F^| grows by e^{cancel:.1f} along Re(rho) = {c:g}; the sum cancels"
        if strict:
            raise InfeasibleInversionError(msg)
        log.debug(msg)
    for i0 in range(0, lx.size, 256):
        blk = lx[i0:i0 + 256]
        phase = lh[None, :] - np.multiply.outer(blk, c + 1j * t)
        peak = np.max(phase.real, axis=1)
        with np.errstate(over="ignore", invalid="ignore"):
            out[i0:i0 + 256] = np.exp(peak) * (np.real(np.exp(phase - peak[:, None])) @ wts)
    tail = float(np.exp(np.real(lh[-1] - lh[0])))
    osc = float(t_max * np.max(np.abs(lx)) / (2 * math.pi)) if lx.size else 0.0
    diag = InversionDiagnostics(c, float(t_max), 2 * n_half + 1, tail, osc, cancel)
    value = out.reshape(np.shape(x)) if np.ndim(x) else float(out[0])
    return value, diag


def _dlog_hat(sol, r: float, h: float = 1e-5) -> float:
    return float(np.real(log_hat_eval(sol, r + h) - log_hat_eval(sol, r - h))) / (2 * h)


def saddle_contour(sol: MellinSolution, x: float, lo: float = -SADDLE_BOUND, hi: float = SADDLE_BOUND) -> float:
    """Contour Re(rho) = c where x^(-rho) F^(rho) is stationary on the real axis.

    On that line the trapezoid error is small relative to F(x) itself, not
    just relative to F^(c) x^-c.
    """
    lo = max(lo, sol.abscissa + 0.25) if math.isfinite(sol.abscissa) else lo
    target = math.log(x)
    g = lambda r: _dlog_hat(sol, r) - target  # noqa: E731
    if g(lo) >= 0:
        return lo
    if g(hi) <= 0:
        return hi
    return brentq(g, lo, hi, xtol=1e-6)


def _sample_numeric(sol: MellinSolution, n: int = 801):
    """Log grid covering the bulk of x^(c-1) F(x), each point inverted on its saddle contour."""
    c = default_contour(sol)
    mean = _dlog_hat(sol, c)
    var = max((_dlog_hat(sol, c + 1e-3) - _dlog_hat(sol, c - 1e-3)) / 2e-3, 1e-4)
    # wide enough for moments of order about +-12 as well as the bulk
    half = max(12.0 * math.sqrt(var) + 12.0 * var, 6.0)
    # keep to x whose saddle lies inside the search bracket
    u_lo = mean - half
    if not math.isfinite(sol.abscissa):
        u_lo = max(u_lo, _dlog_hat(sol, -SADDLE_BOUND))
    u_hi = min(mean + half, _dlog_hat(sol, SADDLE_BOUND))
    xs = np.exp(np.linspace(u_lo, u_hi, n))
    fs = np.empty(n)
    good = np.empty(n, dtype=bool)
    for i, xv in enumerate(xs):
        fs[i], d = invert_mellin_numeric(sol, xv, contour_re=saddle_contour(sol, xv),
                                       strict=False)
        # |F^| far above F(x) on the contour: the trapezoid sum cancels away the digits
        good[i] = (math.isfinite(fs[i]) and abs(fs[i]) > 1e-280
                   and d.log_cancellation < MAX_LOG_CANCELLATION)
    # longest run of trustworthy samples
    runs, start = [], None
    for i, g in enumerate(np.append(good, False)):
        if g and start is None:
            start = i
        elif not g and start is not None:
            runs.append((i - start, start, i))
            start = None
    centre = n // 2
    hit = [(a, b) for _, a, b in runs if a <= centre < b and b - a >= 8]
    if not hit:
        raise InfeasibleInversionError(
            "numeric inversion cancels catastrophically in the bulk of the weight")
    a, b = hit[0]
    return xs[a:b], fs[a:b]


def positivity_scan(sol: MellinSolution, x_grid=None):
    """(min F, argmin) over a log grid; atomic masses are checked directly instead."""
    if sol.weight_kind is WeightKind.ATOMIC:
        raise UnsupportedError("atomic measure: inspect the masses directly")
    if x_grid is None:
        x_grid = np.geomspace(1e-6, 1e3, 501)
    x_grid = np.asarray(x_grid, dtype=float)
    vals = np.atleast_1d(weight_eval(sol, x_grid))
    i = int(np.argmin(vals))
    return float(vals[i]), float(x_grid[i])
