"""Jacobians, minors, conormal and dual varieties of projective models."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .groebner import Ideal, codimension, eliminate, saturate_by_ideal
from .polynomial import DEGREVLEX, Polynomial, VariableSet

__all__ = [
    "Model",
    "JacobianMatrix",
    "ConormalIdeal",
    "jacobian",
    "minors",
    "determinant",
    "embed_prime",
    "conormal_ideal",
    "dual_variety",
    "dual_prime_from_dual",
    "minimal_generators",
]


class Model:
    """A projective variety given by homogeneous generators over named coordinates.

    ``role`` is ``"primal"`` for a statistical model X and ``"dual"`` for a
    dual variety X*. Irreducibility is trusted, not certified.
    """

    def __init__(self, variables, generators, role="primal", name=None, codim=None):
        if not isinstance(variables, VariableSet):
            variables = VariableSet(variables)
        gens = [g if isinstance(g, Polynomial) else Polynomial.parse(g, variables) for g in generators]
        for g in gens:
            if g.vars != variables:
                raise ValueError("generator over a different variable set")
            homog, _ = g.is_homogeneous()
            if not homog:
                raise ValueError(f"model generators must be homogeneous: {g}")
        if role not in ("primal", "dual"):
            raise ValueError(f"role must be 'primal' or 'dual', got {role!r}")
        self.variables = variables
        self.ideal = Ideal(gens, variables)
        if not self.ideal.generators:
            raise ValueError("a model needs at least one nonzero generator")
        self.role = role
        self.name = name
        self._codim = codim

    @property
    def generators(self):
        return self.ideal.generators

    @property
    def ambient_dim(self) -> int:
        return len(self.variables) - 1

    @property
    def codim(self) -> int:
        if self._codim is None:
            if self.ideal.is_unit():
                raise ValueError("model ideal is the unit ideal")
            self._codim = codimension(self.ideal, self.ambient_dim)
        return self._codim

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators)
        return f"Model({self.name or ''!s}{': ' if self.name else ''}<{gens}> in P^{self.ambient_dim}, role={self.role})"


@dataclass
class JacobianMatrix:
    entries: list
    row_sources: list = field(default_factory=list)

    @property
    def shape(self):
        return (len(self.entries), len(self.entries[0]) if self.entries else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self):
        return [list(r) for r in self.entries]


@dataclass
class ConormalIdeal:
    ideal: Ideal
    model: Model
    primal_vars: VariableSet
    dual_vars: VariableSet


def jacobian(M, variables=None) -> JacobianMatrix:
    """Exact matrix of partials of the generators of ``M`` (a Model or list of polys)."""
    gens = list(M.generators) if isinstance(M, Model) else list(M)
    vs = variables or (M.variables if isinstance(M, Model) else gens[0].vars)
    names = vs.names if isinstance(vs, VariableSet) else vs
    return JacobianMatrix([[g.diff(v) for v in names] for g in gens], gens)


def determinant(A, rows=None, cols=None, _memo=None) -> Polynomial:
    """Determinant of the submatrix ``A[rows][cols]`` by memoized Laplace expansion."""
    rows = tuple(range(len(A))) if rows is None else tuple(rows)
    cols = tuple(range(len(A[0]))) if cols is None else tuple(cols)
    memo = {} if _memo is None else _memo
    return _det(A, rows, cols, memo)


def _det(A, rows, cols, memo):
    key = (rows, cols)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if len(rows) == 1:
        val = A[rows[0]][cols[0]]
        memo[key] = val
        return val
    # expand along the row with the fewest nonzero entries
    best = min(rows, key=lambda r: sum(1 for c in cols if A[r][c]))
    rest = tuple(r for r in rows if r != best)
    zero = A[rows[0]][cols[0]] * 0
    total = zero
    for pos, c in enumerate(cols):
        a = A[best][c]
        if not a:
            continue
        sub = _det(A, rest, cols[:pos] + cols[pos + 1 :], memo)
        if not sub:
            continue
        sign = -1 if (rows.index(best) + pos) % 2 else 1
        total = total + a * sub * sign
    memo[key] = total
    return total


def minors(A, r: int) -> Ideal:
    """Ideal of all ``r x r`` minors of a polynomial matrix (nonzero, deduplicated)."""
    if isinstance(A, JacobianMatrix):
        A = A.entries
    k = len(A)
    m = len(A[0]) if k else 0
    if r < 1 or r > min(k, m):
        raise ValueError(f"minor size {r} out of range for a {k}x{m} matrix")
    variables = next(e.vars for row in A for e in row)
    memo = {}
    out = []
    for rows in itertools.combinations(range(k), r):
        for cols in itertools.combinations(range(m), r):
            d = _det(A, rows, cols, memo)
            if d:
                out.append(d)
    return Ideal(out, variables)


def embed_prime(X: Model, sum_var: str = "ps") -> Model:
    """X' in P^{n+1}: the generators of X plus ``ps - (p0 + ... + pn)``."""
    if sum_var in X.variables:
        raise ValueError(f"variable {sum_var!r} already used by the model")
    vs = X.variables.extend([sum_var])
    gens = [g.to_vars(vs) for g in X.generators]
    ps = Polynomial.variable(vs, sum_var)
    H = ps - sum(Polynomial.variable(vs, n) for n in X.variables.names)
    c = X._codim
    return Model(vs, gens + [H], role=X.role, name=(X.name or "X") + "'", codim=None if c is None else c + 1)


def _dual_names(names, prefix):
    out = []
    for n in names:
        stem = n[1:] if len(n) > 1 and n[0].isalpha() else n
        out.append(prefix + stem)
    return out


def conormal_ideal(X: Model, dual_names=None, budget=None) -> ConormalIdeal:
    """Ideal of the conormal variety N_X over (primal block, dual block).

    Generators of X and the (c+1)-minors of [dual row; Jac(X)], saturated by
    the c-minors of Jac(X).
    """
    pnames = X.variables.names
    if dual_names is None:
        prefix = "q" if X.role == "primal" else "p"
        dual_names = _dual_names(pnames, prefix)
        if set(dual_names) & set(pnames):
            dual_names = [f"{prefix}_{n}" for n in pnames]
    vs = VariableSet(tuple(pnames) + tuple(dual_names))
    c = X.codim
    gens = [g.to_vars(vs) for g in X.generators]
    J = [[e.to_vars(vs) for e in row] for row in jacobian(X).entries]
    dual_row = [Polynomial.variable(vs, n) for n in dual_names]
    raw = Ideal(gens, vs) + minors([dual_row] + J, c + 1)
    sing = minors(J, c)
    N = saturate_by_ideal(raw, sing, budget)
    return ConormalIdeal(N, X, X.variables, VariableSet(dual_names))


def minimal_generators(I: Ideal) -> list[Polynomial]:
    """Drop generators of a homogeneous ideal that lie in the span of lower-degree ones."""
    gens = sorted(I.generators, key=lambda g: (g.total_degree(), len(g), g.format()))
    kept = []
    for g in gens:
        if kept and Ideal(kept, I.vars).contains(g):
            continue
        kept.append(g)
    return [g.primitive(DEGREVLEX) for g in kept]


def dual_variety(X: Model, dual_names=None, budget=None) -> Model:
    """X* as the projection of N_X onto the dual coordinates."""
    N = conormal_ideal(X, dual_names, budget)
    E = eliminate(N.ideal, list(X.variables.names), budget)
    gens = minimal_generators(E)
    role = "dual" if X.role == "primal" else "primal"
    return Model(N.dual_vars, gens, role=role, name=(X.name + "*") if X.name else None)


def dual_prime_from_dual(Xstar: Model, b_names=None, sum_var="bs") -> Model:
    """X'* over (b0..bn, bs): each generator with q_i -> b_i + bs."""
    qnames = Xstar.variables.names
    if b_names is None:
        b_names = _dual_names(qnames, "b")
    vs = VariableSet(tuple(b_names) + (sum_var,))
    bs = Polynomial.variable(vs, sum_var)
    mapping = {q: Polynomial.variable(vs, b) + bs for q, b in zip(qnames, b_names)}
    gens = [g.substitute(mapping, vs) for g in Xstar.generators]
    c = Xstar._codim
    return Model(vs, gens, role=Xstar.role, name=(Xstar.name or "X*") + "'", codim=c)
