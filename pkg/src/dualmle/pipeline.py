"""End-to-end runs: critical points, ML-degree reports and the benchmark table."""

from __future__ import annotations

import json
import platform
import time
from dataclasses import dataclass, field

from .groebner import ResourceBudget, ResourceLimitExceeded, default_budget, using_budget
from .likelihood import (
    DataVector,
    LikelihoodProblem,
    b_names_for,
    dual_likelihood_value,
    lagrange_counts,
    likelihood_ideal,
    likelihood_value,
    ml_degree,
    product_invariant_residual,
    recover_primal,
    select_mle,
)
from .modelfile import ModelFile
from .solver import CriticalPoint, CriticalPointSet, eliminants, solve_points
from .varieties import Model
from .zoo import STRETCH_SUITE, TABLE_SUITE, zoo_entry

__all__ = ["REPORT_VERSION", "RunReport", "critical_points", "run_ml_degree", "run_critical_points", "bench"]

REPORT_VERSION = 1


def _formulation(model: Model, method):
    if method in (None, "auto"):
        return "dual" if model.role == "dual" else "conormal"
    return method


def _split(model, formulation, coords, u: DataVector):
    """(b with bs, p with ps) from one solution of the chosen ideal."""
    n = len(u)
    if formulation in ("dual", "lagrange"):
        b = list(coords[:n])
        p = recover_primal(b, u)
    elif formulation == "standard":
        p = list(coords[:n])
        p = p + [sum(p)]
        b = [complex(float(u[i])) / p[i] for i in range(n)]
    else:  # conormal: (p0..pn, b0..bn) with ps = 1
        p = list(coords[:n]) + [sum(coords[:n])]
        b = list(coords[n : 2 * n])
    return b + [complex(-float(u.u_plus))], p


def _is_real(zs, tol=1e-8):
    return all(abs(z.imag) <= tol * max(1.0, abs(z.real)) for z in zs)


def critical_points(model: Model, data: DataVector, formulation="auto", seed=0,
                    exact_eliminants=True, budget=None) -> CriticalPointSet:
    """Solve the likelihood equations for ``data`` and pair primal/dual points."""
    formulation = _formulation(model, formulation)
    LikelihoodProblem(model, data, formulation)
    I = likelihood_ideal(model, data, formulation, budget)
    sols = solve_points(I, seed=seed)
    pts = []
    for s in sols:
        b, p = _split(model, formulation, s.coords, data)
        real = _is_real(b) and _is_real(p)
        pr = [z.real for z in p] if real else p
        br = [z.real for z in b] if real else b
        positive = real and all(x > 0 for x in pr[:-1])
        try:
            lp = likelihood_value(pr, data)
            lb = dual_likelihood_value(br, data)
            inv = product_invariant_residual(pr, br, data)
        except ZeroDivisionError:
            lp = lb = inv = float("nan")
        pts.append(CriticalPoint(tuple(br), tuple(pr), lp, lb, real, positive, s.residual, inv))
    out = CriticalPointSet(I.vars, pts, sols.count, {}, sols.max_residual)
    if exact_eliminants:
        names = [v for v in I.vars.names if not v.startswith("lambda")]
        out.eliminants = eliminants(I, names)
    if formulation == "lagrange":
        _, out.discarded = lagrange_counts(model, data, budget)
    return out


# -- reports ------------------------------------------------------------------


def _num(z, digits=12):
    if isinstance(z, complex):
        if abs(z.imag) <= 1e-12 * max(1.0, abs(z.real)):
            return round(z.real, digits)
        return [round(z.real, digits), round(z.imag, digits)]
    return round(float(z), digits)


@dataclass
class RunReport:
    model: str
    formulation: str
    seed: int | None
    data: list
    ml_degree: int | None = None
    certified: bool | None = None
    wall_time: float = 0.0
    eliminants: dict = field(default_factory=dict)
    points: list = field(default_factory=list)
    mle: dict | None = None
    discarded: int | None = None
    stats: dict = field(default_factory=dict)
    status: str = "ok"

    def as_dict(self):
        return {
            "format_version": REPORT_VERSION,
            "model": self.model,
            "formulation": self.formulation,
            "seed": self.seed,
            "data": self.data,
            "ml_degree": self.ml_degree,
            "certified": self.certified,
            "status": self.status,
            "eliminants": self.eliminants,
            "points": self.points,
            "mle": self.mle,
            "discarded": self.discarded,
            "wall_time": round(self.wall_time, 3),
            "stats": self.stats,
        }

    def to_text(self) -> str:
        return json.dumps(self.as_dict(), indent=2) + "\n"


def _stats(budget):
    b = budget or default_budget()
    return {
        "python": platform.python_version(),
        "max_basis": b.max_basis,
        "max_coeff_bits": b.max_coeff_bits,
        "max_seconds": b.max_seconds,
    }


def run_ml_degree(mf: ModelFile, method="auto", seed=0, draws=2, budget=None) -> RunReport:
    model = mf.to_model()
    formulation = _formulation(model, method)
    t0 = time.perf_counter()
    res = ml_degree(model, formulation, seed=seed, draws=draws, budget=budget)
    rep = RunReport(mf.id, formulation, seed, [u.as_strings() for u, _, _ in res.draws],
                    res.degree, res.certified, time.perf_counter() - t0)
    rep.stats = _stats(budget)
    rep.stats["draw_degrees"] = [d for _, d, _ in res.draws]
    rep.stats["draw_seconds"] = [round(t, 3) for _, _, t in res.draws]
    return rep


def run_critical_points(mf: ModelFile, data: DataVector, method="auto", seed=0,
                        exact_eliminants=False, budget=None) -> RunReport:
    model = mf.to_model()
    formulation = _formulation(model, method)
    t0 = time.perf_counter()
    cps = critical_points(model, data, formulation, seed, exact_eliminants=True, budget=budget)
    n = len(data)
    bnames = b_names_for(model.variables.names) + ["bs"]
    pnames = ["p" + v[1:] if model.role == "dual" else v for v in model.variables.names] + ["ps"]
    scale = float(data.u_plus)
    points = []
    for cp in cps:
        points.append({
            "p": dict(zip(pnames, (_num(z) for z in cp.p))),
            "b": dict(zip(bnames, (_num(z) for z in cp.b))),
            # same dual point rescaled so that bs = -1
            "b_unit": dict(zip(bnames, (_num(z / scale) for z in cp.b))),
            "real": cp.real,
            "positive": cp.positive,
            "loglik_p": _num(cp.loglik_p),
            "loglik_b": _num(cp.loglik_b),
            "residual": float(f"{cp.residual:.3e}"),
            "invariant_residual": float(f"{cp.invariant_residual:.3e}"),
        })
    rep = RunReport(mf.id, formulation, seed, [data.as_strings()], cps.count, None, 0.0)
    rep.points = points
    if exact_eliminants:
        rep.eliminants = {v: f.format() for v, f in cps.eliminants.items()}
    else:
        rep.eliminants = {v: f"degree {f.total_degree()}" for v, f in cps.eliminants.items()}
    if data.is_positive():
        try:
            p, ll = select_mle([cp.p[:n] for cp in cps if cp.positive], data)
            rep.mle = {"p": dict(zip(pnames[:n], (_num(x) for x in p))), "loglik": _num(ll)}
        except ValueError as exc:
            rep.mle = {"error": str(exc)}
    rep.discarded = cps.discarded if formulation == "lagrange" else None
    rep.wall_time = time.perf_counter() - t0
    rep.stats = _stats(budget)
    rep.stats["max_residual"] = float(f"{cps.max_residual:.3e}")
    return rep


# -- benchmark ------------------------------------------------------------------


SUITES = {"table31": TABLE_SUITE}


@dataclass
class BenchRow:
    model: str
    ml_degree: int | None
    expected: int | None
    seconds: float
    status: str

    def as_dict(self):
        return {"model": self.model, "ml_degree": self.ml_degree, "expected": self.expected,
                "seconds": round(self.seconds, 2), "status": self.status}


def bench(suite="table31", budget_seconds=300.0, include_stretch=False, seed=0, progress=None):
    """Dual-method ML degrees over a suite; a model over budget is recorded, not fatal."""
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; available: {', '.join(SUITES)}")
    names = list(SUITES[suite]) + (list(STRETCH_SUITE) if include_stretch else [])
    rows = []
    for name in names:
        mf = zoo_entry(name)
        base = default_budget()
        b = ResourceBudget(base.max_basis, base.max_coeff_bits, None).with_wall_clock(budget_seconds)
        t0 = time.perf_counter()
        try:
            with using_budget(b):
                res = ml_degree(mf.to_model(), "dual", seed=seed, draws=2, budget=b)
            deg, status = res.degree, "ok"
            if mf.expected_ml_degree is not None and deg != mf.expected_ml_degree:
                status = "mismatch"
        except ResourceLimitExceeded as exc:
            deg, status = None, f"timeout ({exc.resource})"
        row = BenchRow(name, deg, mf.expected_ml_degree, time.perf_counter() - t0, status)
        rows.append(row)
        if progress:
            progress(row)
    return rows


def format_bench(rows) -> str:
    lines = [f"{'model':<8}{'ML degree':>10}{'expected':>10}{'seconds':>10}  status"]
    for r in rows:
        deg = "-" if r.ml_degree is None else str(r.ml_degree)
        exp = "-" if r.expected is None else str(r.expected)
        lines.append(f"{r.model:<8}{deg:>10}{exp:>10}{r.seconds:>10.2f}  {r.status}")
    return "\n".join(lines) + "\n"
