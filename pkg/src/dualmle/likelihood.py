"""Likelihood equations: standard (on X'), conormal, dual, and Lagrange forms."""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field

from gmpy2 import mpq

from .groebner import (
    Ideal,
    NotZeroDimensional,
    degree_zero_dim,
    saturate,
    saturate_by_ideal,
)
from .polynomial import MonomialOrder, Polynomial, VariableSet, to_rational
from .varieties import Model, conormal_ideal, embed_prime, jacobian, minors

__all__ = [
    "DataVector",
    "LikelihoodProblem",
    "LagrangeSystem",
    "NongenericData",
    "GenericityFailure",
    "MLDegreeResult",
    "standard_likelihood_ideal",
    "conormal_mle_ideal",
    "dual_likelihood_ideal",
    "lagrange_dual_system",
    "lagrange_ideal",
    "lagrange_counts",
    "likelihood_ideal",
    "ml_degree",
    "recover_primal",
    "likelihood_value",
    "dual_likelihood_value",
    "product_invariant_residual",
    "select_mle",
    "ml_duality_product_check",
    "b_names_for",
    "FORMULATIONS",
]

FORMULATIONS = ("standard", "conormal", "dual", "lagrange")


class NongenericData(ValueError):
    """The data vector hit the exceptional locus (e.g. non-zero-dimensional result)."""


class GenericityFailure(RuntimeError):
    """Two independent random data draws gave different counts."""


class DataVector:
    """Observation vector u with nonzero entries and nonzero sum."""

    __slots__ = ("u", "u_plus")

    def __init__(self, values):
        u = tuple(to_rational(v) for v in values)
        if not u:
            raise ValueError("data vector is empty")
        if any(x == 0 for x in u):
            raise ValueError(f"data entries must be nonzero, got {[str(x) for x in u]}")
        s = sum(u, mpq(0))
        if s == 0:
            raise ValueError("data must have a nonzero sum u_+")
        self.u = u
        self.u_plus = s

    @classmethod
    def parse(cls, text: str) -> DataVector:
        return cls([t for t in text.replace(" ", "").split(",") if t])

    @classmethod
    def random(cls, size, rng, low=1, high=1000) -> DataVector:
        return cls([rng.randint(low, high) for _ in range(size)])

    def __len__(self):
        return len(self.u)

    def __iter__(self):
        return iter(self.u)

    def __getitem__(self, i):
        return self.u[i]

    def __eq__(self, other):
        return isinstance(other, DataVector) and self.u == other.u

    def __hash__(self):
        return hash(self.u)

    def __repr__(self):
        return f"DataVector([{', '.join(_q(x) for x in self.u)}])"

    def is_positive(self) -> bool:
        return all(x > 0 for x in self.u)

    def as_strings(self):
        return [_q(x) for x in self.u]


def _q(x):
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def b_names_for(qnames):
    out = []
    for n in qnames:
        stem = n[1:] if len(n) > 1 else n
        out.append("b" + stem)
    return out


def p_names_for(qnames):
    return ["p" + (n[1:] if len(n) > 1 else n) for n in qnames]


@dataclass
class LikelihoodProblem:
    model: Model
    data: DataVector
    formulation: str = "auto"

    def __post_init__(self):
        if self.formulation == "auto":
            self.formulation = "dual" if self.model.role == "dual" else "conormal"
        if self.formulation not in FORMULATIONS:
            raise ValueError(f"unknown formulation {self.formulation!r}")
        need = "dual" if self.formulation in ("dual", "lagrange") else "primal"
        if self.model.role != need:
            raise ValueError(
                f"formulation {self.formulation!r} needs a {need} model, got role={self.model.role}"
            )
        if len(self.data) != len(self.model.variables):
            raise ValueError(
                f"data has {len(self.data)} entries but the model has {len(self.model.variables)} coordinates"
            )

    @property
    def chart(self):
        return {"ps": mpq(1), "bs": -self.data.u_plus}

    def ideal(self, budget=None) -> Ideal:
        return likelihood_ideal(self.model, self.data, self.formulation, budget)


# -- shared helpers ---------------------------------------------------------


def _chart_dual_gens(Xstar: Model, bvars: VariableSet, bs_value):
    """Generators g(b + bs) and Jac(X*)|_(b+bs) with bs fixed to a constant."""
    qnames = Xstar.variables.names
    mapping = {q: Polynomial.variable(bvars, b) + bs_value for q, b in zip(qnames, bvars.names)}
    gens = [g.substitute(mapping, bvars) for g in Xstar.generators]
    J = [[e.substitute(mapping, bvars) for e in row] for row in jacobian(Xstar).entries]
    return gens, J


def _saturate_coordinates(I: Ideal, variables, budget):
    # sequential saturation by each coordinate equals saturation by their product
    for name in variables:
        I = saturate(I, Polynomial.variable(I.vars, name), budget)
        if I.is_unit():
            break
    return I


def _dehomogenize(I: Ideal, name: str, value) -> Ideal:
    target = VariableSet([n for n in I.vars.names if n != name])
    return Ideal([g.substitute({name: value}, target) for g in I.generators], target)


def _clean(I: Ideal, coords, sing: Ideal, chart, budget, homogeneous=False) -> Ideal:
    """Saturate a homogeneous ideal by its coordinates and by ``sing``, then apply the chart.

    ``chart`` is ``(variable, value)``. The singular-locus saturation runs in the
    chart with linear algebra when that is already zero-dimensional, and
    homogeneously otherwise; both agree because dehomogenizing commutes with
    saturation once the chart variable has been saturated away.
    """
    name, value = chart
    I = _saturate_coordinates(I, coords, budget)
    if I.is_unit():
        return I if homogeneous else _dehomogenize(I, name, value)
    if not homogeneous:
        A = _dehomogenize(I, name, value)
        if A.is_zero_dimensional():
            return saturate_by_ideal(A, _dehomogenize(sing, name, value), budget, method="linear-algebra")
    H = saturate_by_ideal(I, sing, budget, method="homogeneous")
    return H if homogeneous else _dehomogenize(H, name, value)


# -- formulations ------------------------------------------------------------


def dual_likelihood_ideal(Xstar, u: DataVector, budget=None, homogeneous=False) -> Ideal:
    """Ideal over b0..bn whose zeros are the dual critical points (chart bs = -u_+).

    With ``homogeneous=True`` the chart is not applied and the ideal lives
    over (b0..bn, bs); it is used for the projective cross-check.
    """
    if not isinstance(Xstar, Model):
        Xstar = Model(Xstar.vars, Xstar.generators, role="dual")
    c = Xstar.codim
    bnames = b_names_for(Xstar.variables.names)
    bvars = VariableSet(bnames + ["bs"])
    bs = Polynomial.variable(bvars, "bs")
    gens, J = _chart_dual_gens(Xstar, bvars, bs)
    b = [Polynomial.variable(bvars, n) for n in bnames]
    top = [Polynomial.constant(bvars, ui) for ui in u]
    # the bs column is dropped: by Euler's relation it is minus the sum of the others
    rows = [top] + [[J[k][j] * b[j] for j in range(len(b))] for k in range(len(J))]
    I = Ideal(gens, bvars) + minors(rows, c + 1)
    return _clean(I, bnames + ["bs"], minors(J, c), ("bs", -u.u_plus), budget, homogeneous)


def standard_likelihood_ideal(X: Model, u: DataVector, budget=None, homogeneous=False) -> Ideal:
    """Critical equations of l'_u on X' in the chart ps = 1, over p0..pn."""
    c = X.codim
    pnames = list(X.variables.names)
    Xp = embed_prime(X, "ps")
    vs = Xp.variables
    p = [Polynomial.variable(vs, n) for n in pnames + ["ps"]]
    Jp = jacobian(Xp).entries
    grad = [Polynomial.constant(vs, ui) for ui in u] + [Polynomial.constant(vs, -u.u_plus)]
    rows = [grad] + [[r[j] * p[j] for j in range(len(p))] for r in Jp]
    I = Ideal(list(Xp.generators), vs) + minors(rows, c + 2)
    return _clean(I, pnames + ["ps"], minors(Jp, c + 1), ("ps", mpq(1)), budget, homogeneous)


_conormal_cache = {}


def _conormal_prime(X: Model, budget=None):
    key = (X.variables, frozenset(g.normalized() for g in X.generators))
    hit = _conormal_cache.get(key)
    if hit is None:
        Xp = embed_prime(X, "ps")
        bnames = b_names_for(X.variables.names) + ["bs"]
        hit = conormal_ideal(Xp, bnames, budget)
        _conormal_cache[key] = hit
    return hit


def conormal_mle_ideal(X: Model, u: DataVector, budget=None) -> Ideal:
    """N_{X'} plus u_i ps bs + u_+ p_i b_i, in the charts ps = 1, bs = -u_+.

    Lives over (p0..pn, b0..bn). No coordinate saturation is needed.
    """
    N = _conormal_prime(X, budget)
    pnames = list(X.variables.names)
    bnames = b_names_for(pnames)
    hv = N.ideal.vars
    ps, bs = Polynomial.variable(hv, "ps"), Polynomial.variable(hv, "bs")
    rel = [
        ps * bs * u[i] + Polynomial.variable(hv, pn) * Polynomial.variable(hv, bn) * u.u_plus
        for i, (pn, bn) in enumerate(zip(pnames, bnames))
    ]
    # the bihomogeneous basis dehomogenizes to a much tamer generating set
    # than running Buchberger on the charted generators directly
    H = Ideal(list(N.ideal.generators) + rel, hv).groebner(budget=budget)
    vs = VariableSet(pnames + bnames)
    chart = {"ps": mpq(1), "bs": -u.u_plus}
    return Ideal([g.substitute(chart, vs) for g in H.elements], vs)


@dataclass
class LagrangeSystem:
    equations: list
    variables: VariableSet
    b_vars: list
    multiplier_vars: list
    jacobian: list  # c x (n+1) evaluated Jacobian of the chosen generators
    data: DataVector

    @property
    def shape(self):
        return len(self.equations), len(self.variables)


def lagrange_dual_system(Xstar_partial, u: DataVector, codim=None) -> LagrangeSystem:
    """Square system [1, l1..lc] [grad l'_u(b); Jac(g)] diag(b) = 0 with g(b + bs) = 0.

    ``Xstar_partial`` is a dual Model (or list of generators) whose c
    generators cut out X* up to components inside coordinate hyperplanes.
    """
    if isinstance(Xstar_partial, Model):
        gens_q = list(Xstar_partial.generators)
        qvars = Xstar_partial.variables
    else:
        gens_q = list(Xstar_partial)
        qvars = gens_q[0].vars
    c = len(gens_q)
    if codim is not None and codim != c:
        import warnings

        warnings.warn(f"Lagrange system uses {c} generators but codim(X*) = {codim}")
    bnames = b_names_for(qvars.names)
    lnames = [f"lambda{i}" for i in range(1, c + 1)]
    vs = VariableSet(bnames + lnames)
    tmp = Model(qvars, gens_q, role="dual", codim=c)
    gens, J = _chart_dual_gens(tmp, vs, -u.u_plus)
    b = [Polynomial.variable(vs, n) for n in bnames]
    lam = [Polynomial.variable(vs, n) for n in lnames]
    eqs = list(gens)
    for j in range(len(b)):
        e = Polynomial.constant(vs, u[j])
        for i in range(c):
            e = e + lam[i] * J[i][j] * b[j]
        eqs.append(e)
    return LagrangeSystem(eqs, vs, bnames, lnames, J, u)


def _lagrange_gens(Xstar_partial):
    if isinstance(Xstar_partial, Model):
        return list(Xstar_partial.generators), Xstar_partial.variables
    gens = list(Xstar_partial)
    return gens, gens[0].vars


def _lagrange_chart_ideal(Xstar_partial, u: DataVector, budget=None):
    """Chart ideal of the Lagrange system (bs = -u_+, lambda0 = 1) and its Jacobian.

    The Groebner basis is computed on a weighted-homogeneous version with a
    free multiplier lambda0 and a free bs, then the charts are applied to it.
    Weights: 1 on (b, bs), D - d_i + 1 on lambda_i and D + 1 on lambda0, where
    D is the largest generator degree.
    """
    gens_q, qvars = _lagrange_gens(Xstar_partial)
    c = len(gens_q)
    degs = [g.total_degree() for g in gens_q]
    D = max(degs)
    bnames = b_names_for(qvars.names)
    lnames = [f"lambda{i}" for i in range(1, c + 1)]
    hv = VariableSet(bnames + ["bs"] + lnames + ["lambda0"])
    tmp = Model(qvars, gens_q, role="dual", codim=c)
    gens, J = _chart_dual_gens(tmp, hv, Polynomial.variable(hv, "bs"))
    b = [Polynomial.variable(hv, n) for n in bnames]
    lam = [Polynomial.variable(hv, n) for n in lnames]
    lam0 = Polynomial.variable(hv, "lambda0")
    eqs = list(gens)
    for j in range(len(b)):
        e = lam0 * u[j]
        for i in range(c):
            e = e + lam[i] * J[i][j] * b[j]
        eqs.append(e)
    weights = [1] * (len(bnames) + 1) + [D - d + 1 for d in degs] + [D + 1]
    order = MonomialOrder.weighted(weights)
    G = Ideal(eqs, hv).groebner(order, budget)
    vs = VariableSet(bnames + lnames)
    chart = {"bs": -u.u_plus, "lambda0": mpq(1)}
    A = Ideal([g.substitute(chart, vs) for g in G.elements], vs)
    Jc = [[e.substitute(chart, vs) for e in row] for row in J]
    return A, Jc


def lagrange_ideal(Xstar_partial, u: DataVector, budget=None, discard_singular=True):
    """Ideal of the Lagrange system; optionally saturated by the c-minors of Jac(g)."""
    A, Jc = _lagrange_chart_ideal(Xstar_partial, u, budget)
    if discard_singular and not A.is_unit():
        A = saturate_by_ideal(A, minors(Jc, len(Jc)), budget)
    return A


def lagrange_counts(Xstar_partial, u: DataVector, budget=None):
    """``(admissible, discarded)`` solution counts of the Lagrange system.

    Discarded solutions are those where every c-minor of the evaluated
    Jacobian vanishes (singular points of the chosen generators).
    """
    A, Jc = _lagrange_chart_ideal(Xstar_partial, u, budget)
    if A.is_unit():
        return 0, 0
    try:
        total = degree_zero_dim(A)
    except NotZeroDimensional:
        total = None
    S = saturate_by_ideal(A, minors(Jc, len(Jc)), budget)
    kept = 0 if S.is_unit() else degree_zero_dim(S)
    return kept, (None if total is None else total - kept)


def likelihood_ideal(model: Model, u: DataVector, formulation: str, budget=None) -> Ideal:
    if formulation == "dual":
        return dual_likelihood_ideal(model, u, budget)
    if formulation == "standard":
        return standard_likelihood_ideal(model, u, budget)
    if formulation == "conormal":
        return conormal_mle_ideal(model, u, budget)
    if formulation == "lagrange":
        return lagrange_ideal(model, u, budget)
    raise ValueError(f"unknown formulation {formulation!r}")


# -- ML degree -------------------------------------------------------------


@dataclass
class MLDegreeResult:
    degree: int
    formulation: str
    seed: int | None
    draws: list = field(default_factory=list)  # (DataVector, degree, seconds)
    projective_check: int | None = None

    @property
    def certified(self) -> bool:
        return len({d for _, d, _ in self.draws}) == 1 and len(self.draws) >= 2


def _count(model, u, formulation, budget):
    I = likelihood_ideal(model, u, formulation, budget)
    if I.is_unit():
        return 0
    try:
        return degree_zero_dim(I)
    except NotZeroDimensional as exc:
        raise NongenericData(f"likelihood ideal is not zero-dimensional for u={u}: {exc}") from exc


def ml_degree(problem_or_model, formulation="auto", seed=0, draws=2, budget=None,
              low=1, high=1000, data=None, projective_check=False, redraws=3) -> MLDegreeResult:
    """ML degree from ``draws`` independent random data vectors that must agree.

    A random draw whose ideal is not zero-dimensional is replaced by a fresh
    one (at most ``redraws`` times); supplied data is never replaced.
    """
    if isinstance(problem_or_model, LikelihoodProblem):
        model = problem_or_model.model
        formulation = problem_or_model.formulation
        data = [problem_or_model.data] if data is None else data
    else:
        model = problem_or_model
        if formulation == "auto":
            formulation = "dual" if model.role == "dual" else "conormal"
    LikelihoodProblem(model, DataVector([1] * len(model.variables)), formulation)
    rng = random.Random(seed)
    given = list(data or [])
    results = []
    spare = redraws
    k = 0
    while len(results) < max(draws, len(given)):
        supplied = k < len(given)
        u = given[k] if supplied else DataVector.random(len(model.variables), rng, low, high)
        t0 = time.perf_counter()
        try:
            d = _count(model, u, formulation, budget)
        except NongenericData:
            if supplied or spare == 0:
                raise
            spare -= 1
            continue
        results.append((u, d, time.perf_counter() - t0))
        k += 1
    degrees = {d for _, d, _ in results}
    if len(degrees) != 1:
        raise GenericityFailure(
            "genericity failure, increase coefficient range: "
            + ", ".join(f"u={u} -> {d}" for u, d, _ in results)
        )
    out = MLDegreeResult(results[0][1], formulation, seed, results)
    if projective_check and formulation == "dual":
        out.projective_check = projective_degree(model, results[0][0], rng, budget)
    return out


def projective_degree(Xstar: Model, u: DataVector, rng=None, budget=None) -> int:
    """Degree of the homogeneous dual likelihood ideal in a random affine chart."""
    rng = rng or random.Random(0)
    I = dual_likelihood_ideal(Xstar, u, budget, homogeneous=True)
    ell = sum(Polynomial.variable(I.vars, n) * rng.randint(1, 997) for n in I.vars.names)
    J = Ideal(list(I.generators) + [ell - 1], I.vars)
    return degree_zero_dim(J)


# -- points and likelihood values ------------------------------------------


def recover_primal(b, u: DataVector):
    """Critical point p of l_u on X from a dual critical point b: p_i = u_i / b_i.

    Returns (p_0..p_n, p_s) with p_s = p_0 + ... + p_n.
    """
    b = list(b)[: len(u)]
    if any(x == 0 for x in b):
        raise ZeroDivisionError("dual point has a zero coordinate")
    exact = all(isinstance(x, (int, type(mpq()))) for x in b)
    if exact:
        p = [u[i] / to_rational(b[i]) for i in range(len(u))]
    else:
        p = [complex(float(u[i])) / complex(b[i]) for i in range(len(u))]
    return p + [sum(p)]


def _logabs(x):
    if isinstance(x, complex):
        return math.log(abs(x))
    return math.log(abs(float(x))) if not isinstance(x, type(mpq())) else _mpq_logabs(x)


def _mpq_logabs(x):
    x = abs(x)
    return math.log(int(x.numerator)) - math.log(int(x.denominator))


def likelihood_value(p, u: DataVector) -> float:
    """log |l'_u(p)| = sum u_i log|p_i| - u_+ log|p_s|; ``p`` includes p_s last.

    If only n+1 coordinates are given, p_s is taken as their sum, which
    makes this log l_u(p).
    """
    p = list(p)
    if len(p) == len(u):
        p = p + [sum(p)]
    if any(x == 0 for x in p):
        raise ZeroDivisionError("likelihood undefined at a zero coordinate")
    return sum(float(ui) * _logabs(pi) for ui, pi in zip(u, p)) - float(u.u_plus) * _logabs(p[-1])


def dual_likelihood_value(b, u: DataVector) -> float:
    """log |l'_u(b)| with b = (b_0..b_n, b_s)."""
    b = list(b)
    if len(b) == len(u):
        b = b + [-u.u_plus]
    if any(x == 0 for x in b):
        raise ZeroDivisionError("dual likelihood undefined at a zero coordinate")
    return sum(float(ui) * _logabs(bi) for ui, bi in zip(u, b)) - float(u.u_plus) * _logabs(b[-1])


def product_invariant_residual(p, b, u: DataVector) -> float:
    """|log l'_u(p) + log l'_u(b) - log(prod u_i^u_i (-u_+)^-u_+)| in magnitudes."""
    target = sum(float(ui) * _mpq_logabs(ui) for ui in u) - float(u.u_plus) * _mpq_logabs(u.u_plus)
    return abs(likelihood_value(p, u) + dual_likelihood_value(b, u) - target)


def select_mle(points, u: DataVector, tol=1e-9):
    """Positive real critical point of greatest likelihood.

    ``points`` holds p-vectors (with or without p_s). Returns
    ``(p normalized to sum 1, log-likelihood)``; raises ValueError when no
    positive critical point exists.
    """
    best = None
    for p in points:
        p = list(p)[: len(u)]
        vals = []
        ok = True
        for x in p:
            if isinstance(x, complex):
                if abs(x.imag) > tol * max(1.0, abs(x.real)):
                    ok = False
                    break
                x = x.real
            vals.append(x)
        if not ok or not all(float(x) > 0 for x in vals):
            continue
        s = sum(vals)
        vals = [x / s for x in vals]
        ll = likelihood_value(vals, u)
        if best is None or ll > best[1]:
            best = (vals, ll)
    if best is None:
        raise ValueError("no positive critical point")
    return best


def ml_duality_product_check(P, Q, table, tol=1e-8):
    """Check the rank-duality pairing of matrix-model critical points.

    ``P`` and ``Q`` are lists of m x n matrices (nested lists) of critical
    points on the paired rank models for the data ``table`` (m x n). Points
    are normalized to sum one; a pairing must exist whose coordinate-wise
    products equal u_i+ u_+j u_ij / u_++^3 and whose dual (b) products equal
    u_ij u_++ / (u_i+ u_+j). Returns ``(ok, message)``.
    """
    if len(P) != len(Q):
        return False, f"cardinality mismatch: {len(P)} vs {len(Q)}"
    u = [[float(x) for x in row] for row in table]
    m, n = len(u), len(u[0])
    upp = sum(map(sum, u))
    ri = [sum(row) for row in u]
    cj = [sum(u[i][j] for i in range(m)) for j in range(n)]
    want_p = [[ri[i] * cj[j] * u[i][j] / upp**3 for j in range(n)] for i in range(m)]
    want_b = [[u[i][j] * upp / (ri[i] * cj[j]) for j in range(n)] for i in range(m)]

    def norm(M):
        s = sum(sum(row) for row in M)
        return [[x / s for x in row] for row in M]

    def dual(M):
        # b_ij = (u_ij / u_++) / p_ij with b_s = -1
        return [[(u[i][j] / upp) / M[i][j] for j in range(n)] for i in range(m)]

    Pn = [norm(M) for M in P]
    Qn = [norm(M) for M in Q]
    unused = list(range(len(Qn)))
    for a, M in enumerate(Pn):
        match = None
        for k in unused:
            N = Qn[k]
            bp, bq = dual(M), dual(N)
            ok = all(
                abs(M[i][j] * N[i][j] - want_p[i][j]) <= tol * max(1.0, abs(want_p[i][j]))
                and abs(bp[i][j] * bq[i][j] - want_b[i][j]) <= tol * max(1.0, abs(want_b[i][j]))
                for i in range(m)
                for j in range(n)
            )
            if ok:
                match = k
                break
        if match is None:
            return False, f"no partner for point {a}"
        unused.remove(match)
    return True, "ok"
