"""Checks tying the pieces together: moments, resolution of identity,
the functional equation of the weight, and the algebra on truncated matrices.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .classify import SpectrumDescriptor, SpectrumKind, classify
from .errors import DomainError, InfeasibleInversionError, UnsupportedError
from .psi import Affine, PsiSpec, QBracket, QLinear, QParen, shift_psi
from .quadrature import QuadratureConfig, integrate_log_line
from .qspecial import moment_target
from .weight import MellinSolution, _fold_mu, WeightKind, log_weight_eval, weight_eval

ALGEBRA_TOL = 1e-12


# --------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class CheckEntry:
    name: str
    target: float
    computed: float
    abs_err: float
    rel_err: float
    passed: bool
    tol: float

    @classmethod
    def compare(cls, name: str, target: float, computed: float, tol: float,
                relative: bool = True) -> "CheckEntry":
        abs_err = abs(computed - target)
        rel_err = abs_err / abs(target) if target != 0 else abs_err
        err = rel_err if relative else abs_err
        return cls(name, float(target), float(computed), float(abs_err), float(rel_err),
                   bool(err <= tol), float(tol))


@dataclass
class VerificationReport:
    entries: list = field(default_factory=list)
    config: dict = field(default_factory=dict)
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def first_failure(self) -> Optional[CheckEntry]:
        return next((e for e in self.entries if not e.passed), None)

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.entries.extend(other.entries)
        self.info.update(other.info)
        return self

    def to_dict(self) -> dict:
        return {"config": self.config,
                "passed": self.passed,
                "checks": [{"name": e.name, "target": e.target, "computed": e.computed,
                            "abs_err": e.abs_err, "rel_err": e.rel_err, "tol": e.tol,
                            "pass": e.passed} for e in self.entries],
                "info": self.info}

    def to_json(self) -> str:
        return dumps(self.to_dict())

    def table(self) -> str:
        rows = [f"{'check':<28} {'target':>24} {'computed':>24} {'rel err':>10}  ok"]
        for e in self.entries:
            rows.append(f"{e.name:<28} {e.target:>24.16g} {e.computed:>24.16g} "
                        f"{e.rel_err:>10.2e}  {'PASS' if e.passed else 'FAIL'}")
        return "\n".join(rows)


def _fmt_float(v: float) -> str:
    if math.isnan(v):
        return '"nan"'
    if math.isinf(v):
        return '"inf"' if v > 0 else '"-inf"'
    return format(v, ".17g")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with a fixed float format (17 significant digits) and key order as given."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{_str(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        return "[\n" + ",\n".join(pad + dumps(v, indent, _level + 1) for v in seq) + "\n" + end + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, complex):
        return dumps([obj.real, obj.imag], indent, _level)
    return _str(str(obj.value if hasattr(obj, "value") else obj))


def _str(s: str) -> str:
    import json
    return json.dumps(s, ensure_ascii=False)


# --------------------------------------------------------------------------
# truncated representation


@dataclass(frozen=True)
class TruncatedRep:
    dim: int
    offset: int
    a: np.ndarray
    adag: np.ndarray
    N: np.ndarray
    psi: PsiSpec
    open_low: bool    # the window does not start at a state annihilated by a
    open_high: bool   # the state above the window is not excluded by psi

    @property
    def labels(self) -> np.ndarray:
        return self.psi.mu + self.offset + np.arange(self.dim)


def default_offset(spec: SpectrumDescriptor, dim: int) -> int:
    if spec.kind in (SpectrumKind.LOWER_BOUNDED, SpectrumKind.FINITE_WINDOW):
        return spec.nu_minus
    if spec.kind is SpectrumKind.UPPER_BOUNDED:
        return spec.nu_plus - dim + 1
    return -(dim // 2)


def build_truncated_rep(psi: PsiSpec, spec: Optional[SpectrumDescriptor] = None,
                        dim: int = 10, offset: Optional[int] = None) -> TruncatedRep:
    """a |n> = sqrt(psi(mu+n)) |n-1> on the labels offset .. offset+dim-1."""
    if dim < 1:
        raise ValueError("dim >= 1 required")
    spec = spec or classify(psi)
    if offset is None:
        offset = default_offset(spec, dim)
    mu = psi.mu
    n = offset + np.arange(dim)
    vals = np.real(np.asarray(psi(mu + n), dtype=complex))
    if np.any(vals[1:] < 0):
        bad = int(n[1:][np.argmax(vals[1:] < 0)])
        raise DomainError(f"negative psi at label {bad}: no real matrix element")
    a = np.zeros((dim, dim), dtype=complex)
    idx = np.arange(1, dim)
    a[idx - 1, idx] = np.sqrt(vals[1:])
    N = np.diag((mu + n).astype(complex))
    below = float(np.real(psi(mu + offset)))
    above = float(np.real(psi(mu + offset + dim)))
    return TruncatedRep(dim, int(offset), a, a.conj().T, N, psi,
                        open_low=below != 0.0, open_high=above != 0.0)


def algebra_residuals(rep: TruncatedRep, tol: float = ALGEBRA_TOL) -> VerificationReport:
    """Max-norm residuals of the defining relations away from open edges.

    Residuals are divided by max(1, max |psi| on the window), so the test is
    on relative round-off when psi is large.
    """
    if rep.dim < 3:
        raise ValueError("dim >= 3 required")
    a, ad, N = rep.a, rep.adag, rep.N
    labels = np.diag(N)
    psiN = np.diag(np.asarray(rep.psi(labels), dtype=complex))
    psiN1 = np.diag(np.asarray(rep.psi(labels + 1), dtype=complex))
    scale = max(1.0, float(np.max(np.abs(psiN))), float(np.max(np.abs(psiN1))))
    lo = 1 if rep.open_low else 0
    hi = rep.dim - 1 if rep.open_high else rep.dim
    inner = slice(lo, hi)
    relations = {
        "[a,N]-a": a @ N - N @ a - a,
        "[a+,N]+a+": ad @ N - N @ ad + ad,
        "a+a-psi(N)": ad @ a - psiN,
        "aa+-psi(N+1)": a @ ad - psiN1,
    }
    rep_out = VerificationReport(config={"dim": rep.dim, "offset": rep.offset})
    boundary = {}
    for name, R in relations.items():
        interior = float(np.max(np.abs(R[inner, inner]))) / scale
        rep_out.entries.append(CheckEntry(f"algebra {name}", 0.0, interior, interior,
                                          interior, interior <= tol, tol))
        boundary[name] = float(np.max(np.abs(R))) / scale
    rep_out.info["boundary_residuals"] = boundary
    rep_out.info["open_edges"] = {"low": rep.open_low, "high": rep.open_high}
    rep_out.info["hermitian"] = bool(np.array_equal(rep.adag, rep.a.conj().T))
    return rep_out


# --------------------------------------------------------------------------
# moments and the resolution of identity


def _solved_psi(sol: MellinSolution, psi: Optional[PsiSpec]) -> PsiSpec:
    if psi is None:
        return sol.psi
    psi = _fold_mu(psi)
    return shift_psi(psi, sol.index_offset) if sol.index_offset else psi


def _moment(sol: MellinSolution, n: int, quad: QuadratureConfig) -> float:
    """int F(x) x^n dx, or the atomic sum."""
    kind = sol.weight_kind
    if kind is WeightKind.ATOMIC:
        xs, ws = sol.atoms
        return math.fsum(ws * xs ** n)
    if kind is WeightKind.UNAVAILABLE:
        raise InfeasibleInversionError("inverse Mellin infeasible: Diverging")
    if kind is WeightKind.DENSITY:
        def log_g(u):
            return log_weight_eval(sol, np.exp(u)) + (n + 1) * u
    else:
        xs = sol.samples[0]
        u_lo, u_hi = math.log(xs[0]), math.log(xs[-1])

        def log_g(u):
            u = np.asarray(u, dtype=float)
            out = np.full(u.shape, -np.inf, dtype=complex)
            m = (u >= u_lo) & (u <= u_hi)
            if np.any(m):
                with np.errstate(divide="ignore"):
                    out[m] = np.log(np.asarray(weight_eval(sol, np.exp(u[m])), dtype=complex)) \
                        + (n + 1) * u[m]
            return out
    return integrate_log_line(log_g, quad).value


def _as_orders(n_range) -> list:
    if isinstance(n_range, tuple) and len(n_range) == 2:
        return list(range(n_range[0], n_range[1] + 1))
    return list(n_range)


def moment_check(sol: MellinSolution, psi: Optional[PsiSpec] = None,
                 n_range: Iterable[int] | tuple = (0, 6),
                 quad: Optional[QuadratureConfig] = None,
                 rtol: float = 1e-8) -> VerificationReport:
    """Moments of the weight against psi(n)! (n >= 0) and 1/psi(n)! (n < 0).

    A pair (lo, hi) is an inclusive range. Negative orders need a full-line
    spectrum.
    """
    quad = quad or QuadratureConfig()
    target_psi = _solved_psi(sol, psi)
    report = VerificationReport(config={"hat_form": sol.hat_form.value})
    for n in _as_orders(n_range):
        if n < 0 and sol.spectrum_kind is not SpectrumKind.FULL_LINE:
            raise DomainError("negative moments are only defined for a full-line spectrum")
        target = moment_target(target_psi, n)
        report.entries.append(CheckEntry.compare(f"moment[{n}]", target,
                                                 _moment(sol, n, quad), rtol))
    return report


def resolution_identity_check(sol: MellinSolution, psi: Optional[PsiSpec] = None,
                              m: int = 0, n: int = 0,
                              quad: Optional[QuadratureConfig] = None) -> float:
    """<m| int F(|z|^2) |z><z| d^2z/pi |n>, which should equal delta_mn.

    The angular integral kills m != n; for m = n the radial integral is the
    n-th moment, divided by the squared norm factor of <n|z>.
    """
    if m != n:
        return 0.0
    quad = quad or QuadratureConfig()
    k = n - sol.index_offset
    # below the lowest state the factorial hits psi = 0 and raises
    target = moment_target(_solved_psi(sol, psi), k)
    return _moment(sol, k, quad) / target


# --------------------------------------------------------------------------
# functional equation of the weight


def weight_ode_residual(sol: MellinSolution, x) -> float:
    """|x F(x) - psi(-x d/dx) F(x)|.

    For exponential psi the operator acts by dilation, q^(-k x d/dx) F(x) =
    F(q^-k x); for affine psi it is sigma F - x F'.
    """
    if sol.weight_kind is not WeightKind.DENSITY:
        raise UnsupportedError(f"no termwise action of psi(-x d/dx) on a {sol.weight_kind.value}")
    x = np.asarray(x, dtype=float)
    F = lambda y: weight_eval(sol, y)  # noqa: E731
    psi = sol.psi
    if isinstance(psi, Affine):
        y = x / sol.scale
        action = F(x) * (psi.sigma - y * sol.form.dlog_weight(y))
    else:
        if isinstance(psi, (QBracket, QParen)):
            psi = psi.as_qlinear()
        if not isinstance(psi, QLinear):
            raise UnsupportedError(f"no termwise action for {type(psi).__name__}")
        up, down, c, Q = psi.canonical()
        action = c * F(x)
        if up:
            action = action + up * F(x / Q)
        if down:
            action = action + down * F(x * Q)
    res = np.abs(x * F(x) - action)
    return res[()] if np.ndim(res) else float(res)


def recursion_check(sol: MellinSolution, rho, tol: float = 1e-10) -> VerificationReport:
    """|F^(rho+1) - psi(rho) F^(rho)| / |F^(rho+1)| on the given points."""
    from .weight import hat_eval
    rho = np.atleast_1d(np.asarray(rho, dtype=complex))
    lhs = hat_eval(sol, rho + 1)
    rhs = np.asarray(sol.psi(rho)) * hat_eval(sol, rho)
    rel = np.abs(lhs - rhs) / np.abs(lhs)
    worst = float(np.max(rel))
    report = VerificationReport()
    report.entries.append(CheckEntry("recursion", 0.0, worst, worst, worst, worst <= tol, tol))
    one = complex(hat_eval(sol, np.array([1.0 + 0j]))[0])
    dev = abs(one - 1.0)
    report.entries.append(CheckEntry("normalization", 1.0, one.real, dev, dev, dev <= 1e-14, 1e-14))
    return report
