"""Command-line front end: ``dbarg <command> [options]``.

Settings are merged from built-in defaults, a flat ``key = value`` file
(``--config``), ``DBARG_<KEY>`` environment variables and command-line
flags, later sources winning. The exit code is 0 when every check in the
report passes, 1 when one fails (its name is printed to stderr) and 2 on
invalid input or a computation error.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import math
import os
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import __version__
from .classify import Ladder, SpectrumKind, classify, classify_all, coherent_domain
from .coherent import kernel_G, kernel_residual
from .errors import DbargError, InvalidParameterError
from .psi import Affine, ExpPoly, PolyProduct, QBracket, QLinear, QParen
from .verify import (CheckEntry, VerificationReport, algebra_residuals, build_truncated_rep,
                     moment_check, recursion_check, resolution_identity_check,
                     weight_ode_residual)
from .weight import (WeightKind, inversion_feasibility,
                     solve_mellin, weight_eval)

COMMANDS = ("classify", "domain", "weight", "verify", "kernel", "export")
FAMILIES = ("affine", "qlinear", "explog", "exppoly", "qbracket", "qparen", "poly")


class ConfigError(DbargError, ValueError):
    pass


@dataclass
class RunConfig:
    command: str = "classify"
    family: str = "affine"
    q: Optional[float] = None
    sigma: float = 0.0
    lambda_minus: float = 0.0
    lambda_plus: float = 0.0
    const: float = 0.0
    coeffs: tuple = ()
    a: Optional[float] = None
    mu: float = 0.0
    dim: int = 30
    tol: Optional[float] = None
    out: Optional[str] = None
    csv: Optional[str] = None
    x_min: float = 1e-6
    x_max: float = 1e3
    n_points: int = 501
    n_min: Optional[int] = None
    n_max: int = 8
    u_min: Optional[float] = None
    u_max: Optional[float] = None

    def validate(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise ConfigError(f"command must be one of {', '.join(COMMANDS)}")
        if self.family not in FAMILIES:
            raise ConfigError(f"family must be one of {', '.join(FAMILIES)}")
        if not 0 <= self.mu < 1:
            raise ConfigError("mu must lie in [0, 1)")
        if self.dim < 3:
            raise ConfigError("dim >= 3 required")
        if self.n_points < 2:
            raise ConfigError("n_points >= 2 required")
        if not 0 < self.x_min < self.x_max:
            raise ConfigError("0 < x_min < x_max required")
        build_psi(self)   # family invariants
        return self

    def echo(self) -> dict:
        return {k: (list(v) if isinstance(v, tuple) else v)
                for k, v in dataclasses.asdict(self).items()}


_FIELDS = {f.name: f for f in dataclasses.fields(RunConfig)}
_ALIASES = {"coefficients": "coeffs", "lambda-minus": "lambda_minus",
            "lambda-plus": "lambda_plus", "c": "const"}
_INT_KEYS = {"dim", "n_points", "n_min", "n_max"}
_FLOAT_KEYS = {"q", "sigma", "lambda_minus", "lambda_plus", "const", "a", "mu", "tol",
               "x_min", "x_max", "u_min", "u_max"}


def _coerce(key: str, raw: str):
    raw = raw.strip()
    if key == "coeffs":
        body = raw.strip("[]()")
        return tuple(float(t) for t in body.replace(",", " ").split()) if body else ()
    if key in _INT_KEYS:
        return int(raw)
    if key in _FLOAT_KEYS:
        return float(raw)
    return raw.lower() if key in ("command", "family") else raw


def _canonical_key(key: str) -> str:
    key = key.strip().lower()
    key = _ALIASES.get(key, key).replace("-", "_")
    return key


def read_config_file(path: str) -> dict:
    """Flat key = value lines; '#' starts a comment, [section] headers are ignored."""
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from exc
    for lineno, line in enumerate(lines, 1):
        text = line.split("#", 1)[0].strip()
        if not text or (text.startswith("[") and text.endswith("]")):
            continue
        if "=" not in text:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, raw = text.split("=", 1)
        key = _canonical_key(key)
        if key not in _FIELDS:
            raise ConfigError(f"{path}:{lineno}: unknown key '{key.strip()}'")
        try:
            values[key] = _coerce(key, raw)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for '{key}': {raw.strip()}") from exc
    return values


def read_env(environ=None) -> dict:
    environ = os.environ if environ is None else environ
    values = {}
    for name, raw in environ.items():
        if not name.startswith("DBARG_"):
            continue
        key = _canonical_key(name[len("DBARG_"):])
        if key not in _FIELDS:
            raise ConfigError(f"unknown environment override {name}")
        try:
            values[key] = _coerce(key, raw)
        except ValueError as exc:
            raise ConfigError(f"bad value in {name}: {raw}") from exc
    return values


def parse_config(path: Optional[str] = None, flags: Optional[dict] = None,
                 environ=None) -> RunConfig:
    merged = {}
    if path:
        merged.update(read_config_file(path))
    merged.update(read_env(environ))
    for key, val in (flags or {}).items():
        key = _canonical_key(key)
        if key not in _FIELDS:
            raise ConfigError(f"unknown key '{key}'")
        if val is not None:
            merged[key] = _coerce(key, val) if isinstance(val, str) and key != "out" \
                and key != "csv" else val
    try:
        return RunConfig(**merged).validate()
    except InvalidParameterError as exc:
        raise ConfigError(f"invalid {merged.get('family', 'affine')} parameters: {exc}") from exc


def build_psi(cfg: RunConfig):
    fam, mu = cfg.family, cfg.mu
    if fam == "affine":
        return Affine(cfg.sigma, mu=mu)
    if fam in ("qlinear", "qbracket", "qparen") and cfg.q is None:
        raise ConfigError(f"family {fam} needs q")
    if fam == "qlinear":
        if cfg.a is not None:
            return QLinear(lambda_plus=1.0, const=cfg.a, q=cfg.q, mu=mu)
        return QLinear(cfg.lambda_minus, cfg.lambda_plus, cfg.const, cfg.q, mu=mu)
    if fam == "qbracket":
        return QBracket(cfg.q, mu=mu)
    if fam == "qparen":
        return QParen(cfg.q, mu=mu)
    if not cfg.coeffs:
        raise ConfigError(f"family {fam} needs coeffs")
    if fam in ("explog", "exppoly"):
        return ExpPoly(cfg.coeffs, mu=mu)
    return PolyProduct(cfg.coeffs, mu=mu)


# --------------------------------------------------------------------------
# commands


def describe_domain(dom) -> str:
    if dom.ladder is Ladder.NONE:
        return "empty: no coherent states"
    inner, outer = dom.inner_r2, dom.outer_r2
    if inner == 0 and outer == math.inf:
        return "whole plane" if dom.closed_inner else "punctured plane"
    if inner == 0:
        return f"disk |z|^2 < {outer:.17g}"
    if outer == math.inf:
        return f"annulus |z|^2 > {inner:.17g}"
    return f"annulus {inner:.17g} < |z|^2 < {outer:.17g}"


def _spectrum_report(psi) -> VerificationReport:
    spec = classify(psi)
    dom = coherent_domain(psi, spec)
    rep = VerificationReport()
    rep.info["spectrum"] = spec.to_dict()
    rep.info["all_representations"] = [s.to_dict() for s in classify_all(psi)]
    rep.info["domain"] = dict(dom.to_dict(), description=describe_domain(dom))
    return rep


def _weight_report(cfg, psi, sol=None) -> tuple:
    sol = sol or solve_mellin(psi)
    rep = VerificationReport()
    rep.info["solution"] = sol.describe()
    rep.extend(recursion_check(sol, _recursion_points()))
    if sol.weight_kind is WeightKind.UNAVAILABLE:
        verdict = inversion_feasibility(sol)
        rep.info["feasibility"] = verdict.value
        rep.entries.append(CheckEntry(f"inverse Mellin infeasible: {verdict.value}",
                                      0.0, 1.0, 1.0, 1.0, False, 0.0))
        return rep, sol, None
    if sol.weight_kind is WeightKind.ATOMIC:
        xs, ws = sol.atoms
        rep.info["n_atoms"] = len(xs)
        rep.entries.append(CheckEntry.compare("atomic mass", 1.0, math.fsum(ws), 1e-12))
        return rep, sol, ("x_k", "w_k", xs, ws)
    rep.info["feasibility"] = inversion_feasibility(sol).value
    xs = np.geomspace(cfg.x_min, cfg.x_max, cfg.n_points)
    fs = np.asarray(weight_eval(sol, xs))
    i = int(np.argmin(fs))
    rep.info["positivity"] = {"min": float(fs[i]), "argmin": float(xs[i])}
    return rep, sol, ("x", "F", xs, fs)


def _recursion_points(n: int = 100, seed: int = 0):
    rng = np.random.default_rng(seed)
    return rng.uniform(0.5, 6.0, n) + 1j * rng.uniform(-3.0, 3.0, n)


def _verify_report(cfg, psi) -> VerificationReport:
    tol = cfg.tol if cfg.tol is not None else 1e-8
    rep = _spectrum_report(psi)
    spec = classify(psi)
    if spec.kind is not SpectrumKind.NO_UNITARY_REP:
        dim = cfg.dim
        if spec.kind is SpectrumKind.FINITE_WINDOW:
            dim = min(dim, spec.nu_plus - spec.nu_minus + 1)
        if dim >= 3:
            rep.extend(algebra_residuals(build_truncated_rep(psi, spec, dim)))
    if rep.info["domain"]["ladder"] != Ladder.A.value:
        return rep
    wrep, sol, _ = _weight_report(cfg, psi)
    rep.extend(wrep)
    if sol.weight_kind is WeightKind.UNAVAILABLE:
        return rep
    n_lo = cfg.n_min if cfg.n_min is not None else (
        -cfg.n_max if sol.spectrum_kind is SpectrumKind.FULL_LINE else 0)
    rep.extend(moment_check(sol, None, (n_lo, cfg.n_max), rtol=tol))
    for n in range(0, min(cfg.n_max, 8) + 1):
        val = resolution_identity_check(sol, None, n + sol.index_offset, n + sol.index_offset)
        rep.entries.append(CheckEntry.compare(f"identity[{n + sol.index_offset}]", 1.0, val, tol))
    if sol.weight_kind is WeightKind.DENSITY:
        for x in (0.5, 1.0, 5.0):
            try:
                r = weight_ode_residual(sol, x)
            except DbargError:
                break
            rep.entries.append(CheckEntry(f"weight ode x={x:g}", 0.0, r, r, r, r <= 1e-8, 1e-8))
    return rep


def _kernel_report(cfg, psi):
    spec = classify(psi)
    dom = coherent_domain(psi, spec)
    if dom.ladder is not Ladder.A:
        raise InvalidParameterError(f"no kernel: {describe_domain(dom)}")
    lo = cfg.u_min if cfg.u_min is not None else (
        dom.inner_r2 * 1.05 if dom.inner_r2 > 0 else 0.0)
    hi = cfg.u_max if cfg.u_max is not None else (
        0.95 * dom.outer_r2 if math.isfinite(dom.outer_r2) else max(5.0, 2.0 * lo))
    u = np.linspace(lo, hi, cfg.n_points)
    if spec.kind is SpectrumKind.FULL_LINE:
        u = u[u > dom.inner_r2]
    G = np.array([kernel_G(psi, complex(v), spec=spec) for v in u])
    rep = VerificationReport()
    rep.info["domain"] = dict(dom.to_dict(), description=describe_domain(dom))
    tol = cfg.tol if cfg.tol is not None else 1e-10
    for v, g in zip(u[[0, len(u) // 2, -1]], G[[0, len(u) // 2, -1]]):
        if v <= 0:
            continue
        r = kernel_residual(psi, float(v), 400, spec=spec) / max(1.0, abs(v * g))
        rep.entries.append(CheckEntry(f"kernel equation u={v:.6g}", 0.0, r, r, r, r <= tol, tol))
    return rep, ("u", "Re G", "Im G", u, G)


def _write_csv(path: str, columns) -> None:
    *names, = [c for c in columns if isinstance(c, str)]
    data = [c for c in columns if not isinstance(c, str)]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if len(names) == 3 and len(data) == 2:
            w.writerow(names)
            for u, g in zip(*data):
                w.writerow([format(float(u), ".17g"), format(g.real, ".17g"),
                            format(g.imag, ".17g")])
            return
        w.writerow(names)
        for row in zip(*data):
            w.writerow([format(float(v), ".17g") for v in row])


def run(cfg: RunConfig) -> int:
    psi = build_psi(cfg)
    cmd = cfg.command
    columns = None
    if cmd in ("classify", "domain"):
        rep = _spectrum_report(psi)
    elif cmd in ("weight", "export"):
        rep, _, columns = _weight_report(cfg, psi)
        if cmd == "export" and not cfg.csv:
            raise ConfigError("export needs --csv")
    elif cmd == "verify":
        rep = _verify_report(cfg, psi)
    else:
        rep, columns = _kernel_report(cfg, psi)
    rep.config = cfg.echo()
    rep.config.pop("out", None)
    rep.config.pop("csv", None)
    text = rep.to_json() + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if cfg.csv and columns is not None:
        _write_csv(cfg.csv, columns)
    bad = rep.first_failure()
    if bad is not None:
        print(f"FAIL: {bad.name}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dbarg",
                                description="Bargmann representations of deformed oscillators")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", help="flat key = value file")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--q", type=float)
    p.add_argument("--sigma", type=float)
    p.add_argument("--lambda-minus", type=float)
    p.add_argument("--lambda-plus", type=float)
    p.add_argument("--const", type=float)
    p.add_argument("--coeffs", help="comma-separated coefficients, lowest degree first")
    p.add_argument("--a", type=float, help="shorthand for qlinear psi = a + q^x")
    p.add_argument("--mu", type=float)
    p.add_argument("--dim", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--out", help="JSON report path (default: stdout)")
    p.add_argument("--csv", help="CSV data path")
    p.add_argument("--x-min", type=float)
    p.add_argument("--x-max", type=float)
    p.add_argument("--n-points", type=int)
    p.add_argument("--n-min", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--u-min", type=float)
    p.add_argument("--u-max", type=float)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    flags = {k: v for k, v in vars(args).items() if k != "config"}
    try:
        cfg = parse_config(args.config, flags)
        return run(cfg)
    except (DbargError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
