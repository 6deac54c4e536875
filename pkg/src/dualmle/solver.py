"""Zero-dimensional solving: multiplication matrices, eliminants, real roots, points."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np
from gmpy2 import mpq

from . import _linalg
from .groebner import Ideal, NotZeroDimensional, multiplication_matrix as _mult, quotient_basis
from .polynomial import DEGREVLEX, Polynomial, VariableSet, to_rational

__all__ = [
    "MultiplicationOperator",
    "IsolatedRoot",
    "SolutionPoint",
    "CriticalPoint",
    "CriticalPointSet",
    "CountReport",
    "MultipleRootError",
    "SeparationError",
    "CertificationError",
    "multiplication_matrix",
    "eliminant",
    "eliminants",
    "squarefree_part",
    "sturm_sequence",
    "count_real_roots",
    "isolate_real_roots",
    "solve_points",
    "certify_count",
]


class MultipleRootError(ValueError):
    """The ideal has a repeated solution (data is not generic)."""


class SeparationError(RuntimeError):
    """No random linear form separated the solutions within the retry budget."""


class CertificationError(AssertionError):
    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details or {}


# -- multiplication operators -------------------------------------------------


@dataclass
class MultiplicationOperator:
    variable: str
    matrix: list  # D x D lists of mpq
    basis: tuple  # standard monomials (exponent tuples)

    @property
    def size(self):
        return len(self.matrix)

    def to_numpy(self):
        return np.array([[float(x) for x in row] for row in self.matrix], dtype=float)

    def trace(self):
        return sum((self.matrix[i][i] for i in range(self.size)), mpq(0))


def _qb(I: Ideal):
    qb = quotient_basis(I)
    if len(qb) == 0:
        raise NotZeroDimensional("the ideal has no solutions (unit ideal)")
    return qb


def multiplication_matrix(I: Ideal, v) -> MultiplicationOperator:
    """Matrix of multiplication by ``v`` (a variable name or polynomial) on R/I."""
    qb = _qb(I)
    f = Polynomial.variable(I.vars, v) if isinstance(v, str) else v
    name = v if isinstance(v, str) else f.format()
    return MultiplicationOperator(name, _mult(qb, f), qb.standard_monomials)


# -- univariate helpers (coefficient lists, lowest degree first) ---------------


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _to_coeffs(f: Polynomial):
    if len(f.variables_used()) > 1:
        raise ValueError("expected a univariate polynomial")
    deg = f.total_degree()
    out = [mpq(0)] * (max(deg, 0) + 1)
    for e, c in f.terms.items():
        out[sum(e)] = c
    return _trim(out)


def _from_coeffs(coeffs, name):
    vs = VariableSet([name])
    return Polynomial(vs, {(k,): c for k, c in enumerate(coeffs) if c})


def _divmod(a, b):
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [mpq(0)] * max(len(a) - len(b) + 1, 1)
    r = list(a)
    lb = b[-1]
    while len(r) >= len(b) and r:
        k = len(r) - len(b)
        c = r[-1] / lb
        q[k] = c
        for i, bi in enumerate(b):
            r[i + k] -= c * bi
        r = _trim(r)
    return _trim(q), r


def _gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    if not a:
        return a
    lc = a[-1]
    return [x / lc for x in a]


def _deriv(a):
    return _trim([a[k] * k for k in range(1, len(a))])


def _eval(a, x):
    acc = mpq(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _sign(x):
    return (x > 0) - (x < 0)


def squarefree_part(f):
    """``f / gcd(f, f')`` for a univariate Polynomial or coefficient list."""
    as_poly = isinstance(f, Polynomial)
    a = _to_coeffs(f) if as_poly else _trim([to_rational(x) for x in f])
    if len(a) <= 1:
        out = a
    else:
        g = _gcd(a, _deriv(a))
        out, _ = _divmod(a, g)
    if as_poly:
        name = f.vars.names[0]
        return _from_coeffs(out, name).primitive(DEGREVLEX) if out else _from_coeffs(out, name)
    return out


def sturm_sequence(a):
    seq = [_trim(a), _deriv(a)]
    while seq[-1]:
        _, r = _divmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-x for x in r])
    return [s for s in seq if s]


def _variations(seq, x):
    signs = [_sign(_eval(s, x)) for s in seq]
    signs = [s for s in signs if s]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _root_bound(a):
    lead = abs(a[-1])
    return 1 + max((abs(c) / lead for c in a[:-1]), default=mpq(0))


def count_real_roots(f) -> int:
    """Number of distinct real roots."""
    a = _to_coeffs(f) if isinstance(f, Polynomial) else _trim([to_rational(x) for x in f])
    if len(a) <= 1:
        return 0
    seq = sturm_sequence(a)
    B = _root_bound(a)
    return _variations(seq, -B) - _variations(seq, B)


@dataclass(frozen=True)
class IsolatedRoot:
    lo: mpq
    hi: mpq

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return float((self.lo + self.hi) / 2)

    def __contains__(self, x):
        return self.lo <= to_rational(x) <= self.hi


def _split_point(a, lo, hi):
    # avoid landing exactly on a root: exact roots make the sign count ambiguous
    for num, den in ((1, 2), (3, 7), (4, 7), (5, 11), (6, 11), (7, 17), (10, 17)):
        m = lo + (hi - lo) * num / den
        if _eval(a, m) != 0:
            return m
    raise ArithmeticError("could not find a non-root split point")


def isolate_real_roots(f, width="1/1000000") -> list[IsolatedRoot]:
    """Disjoint rational intervals, one per distinct real root, narrower than ``width``.

    The polynomial is first replaced by its squarefree part; counting uses a
    Sturm sequence and intervals are refined by bisection.
    """
    width = to_rational(width)
    if width <= 0:
        raise ValueError("width must be positive")
    a = squarefree_part(_to_coeffs(f) if isinstance(f, Polynomial) else [to_rational(x) for x in f])
    if len(a) <= 1:
        return []
    seq = sturm_sequence(a)
    B = _root_bound(a)
    out = []
    stack = [(-B, B, _variations(seq, -B), _variations(seq, B))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1 and hi - lo < width:
            out.append(IsolatedRoot(lo, hi))
            continue
        if n == 1:
            # plain bisection on the sign change is cheaper than Sturm counts
            slo = _sign(_eval(a, lo))
            while hi - lo >= width:
                m = _split_point(a, lo, hi)
                if _sign(_eval(a, m)) == slo:
                    lo = m
                else:
                    hi = m
            out.append(IsolatedRoot(lo, hi))
            continue
        m = _split_point(a, lo, hi)
        vm = _variations(seq, m)
        stack.append((lo, m, vlo, vm))
        stack.append((m, hi, vm, vhi))
    out.sort(key=lambda r: r.lo)
    return out


# -- eliminants ------------------------------------------------------------------


def eliminant(I: Ideal, v: str) -> Polynomial:
    """Characteristic polynomial of multiplication by ``v``, integer content-normalized.

    Returned over a single variable named ``v`` with positive leading coefficient.
    """
    M = multiplication_matrix(I, v)
    cp = list(reversed(_linalg.charpoly(M.matrix)))
    return _from_coeffs(cp, v).primitive(DEGREVLEX)


def eliminants(I: Ideal, names=None) -> dict:
    return {v: eliminant(I, v) for v in (names or I.vars.names)}


# -- numeric points ----------------------------------------------------------------


@dataclass
class SolutionPoint:
    coords: tuple  # complex, in the ideal's variable order
    residual: float

    def is_real(self, tol=1e-8) -> bool:
        return all(abs(z.imag) <= tol * max(1.0, abs(z.real)) for z in self.coords)

    def real(self):
        return tuple(z.real for z in self.coords)


@dataclass
class CriticalPoint:
    b: tuple  # b0..bn, bs
    p: tuple  # p0..pn, ps
    loglik_p: float
    loglik_b: float
    real: bool
    positive: bool
    residual: float
    invariant_residual: float = float("nan")


@dataclass
class CriticalPointSet:
    variables: VariableSet
    points: list
    count: int
    eliminants: dict = field(default_factory=dict)
    max_residual: float = 0.0
    discarded: int = 0

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def _np(M):
    return np.array([[float(x) for x in row] for row in M], dtype=float)


def _relative_residual(gens, z):
    """max |g(z)| / sum |c| prod max(1, |z_i|)^k over the generators.

    Coordinates below one count as one in the scale, so a value near zero
    is judged against unit size rather than against itself.
    """
    mags = [max(1.0, abs(zi)) for zi in z]
    worst = 0.0
    for g in gens:
        val = 0j
        scale = 0.0
        for e, c in g.terms.items():
            t = complex(float(c))
            m = abs(t)
            for zi, mi, k in zip(z, mags, e):
                if k:
                    t *= zi**k
                    m *= mi**k
            val += t
            scale += m
        if scale:
            worst = max(worst, abs(val) / scale)
    return worst


def _polish(gens, z, steps=4):
    """Gauss-Newton on all generators; keeps the iterate only if it helps."""
    grads = [[g.diff(n) for n in g.vars.names] for g in gens]
    best = np.array(z, dtype=complex)
    best_r = _relative_residual(gens, best)
    cur = best.copy()
    for _ in range(steps):
        F = np.array([complex(g.evaluate(list(cur))) for g in gens])
        Jm = np.array([[complex(d.evaluate(list(cur))) for d in row] for row in grads])
        try:
            step, *_ = np.linalg.lstsq(Jm, -F, rcond=None)
        except np.linalg.LinAlgError:
            break
        cur = cur + step
        r = _relative_residual(gens, cur)
        if r < best_r:
            best, best_r = cur.copy(), r
        if best_r < 1e-15:
            break
    return best, best_r


def solve_points(I: Ideal, seed=0, retries=5, polish=True) -> CriticalPointSet:
    """All solutions of a zero-dimensional radical ideal, numerically.

    A random integer linear form is made into a multiplication matrix; the
    eigenvectors of its transpose are evaluation vectors at the solutions,
    and each coordinate is read off by a Rayleigh quotient with the
    corresponding variable's matrix. If the eigenvectors are ill-conditioned
    each coordinate is snapped to the nearest root of its own eliminant.
    """
    qb = _qb(I)
    D = len(qb)
    names = I.vars.names
    exact = {v: _mult(qb, Polynomial.variable(I.vars, v)) for v in names}
    mats = {v: _np(exact[v]) for v in names}
    gens = list(qb.gb.elements)
    rng = random.Random(seed)
    for attempt in range(retries):
        weights = [rng.randint(-50, 50) or 1 for _ in names]
        ML = sum(w * mats[v] for w, v in zip(weights, names))
        vals, vecs = np.linalg.eig(ML.T)
        scale = max(1.0, float(np.max(np.abs(vals)))) if D else 1.0
        gaps = [abs(vals[i] - vals[j]) for i in range(D) for j in range(i + 1, D)]
        if not gaps or min(gaps) > 1e-7 * scale:
            break
    else:
        # persistent coincidences across random forms mean a repeated solution
        raise MultipleRootError("multiple root detected (nongeneric data), resample the data")
    pts = []
    cond = np.linalg.cond(vecs) if D > 1 else 1.0
    roots = None
    if cond > 1e10:
        roots = {v: np.roots([float(c) for c in _linalg.charpoly(exact[v])]) for v in names}
    for k in range(D):
        w = vecs[:, k]
        nrm = np.vdot(w, w)
        z = [complex(np.vdot(w, mats[v].T @ w) / nrm) for v in names]
        if roots is not None:
            z = [complex(roots[v][np.argmin(np.abs(roots[v] - zi))]) if len(roots[v]) else zi for v, zi in zip(names, z)]
        if polish:
            zz, r = _polish(gens, z)
            z = [complex(x) for x in zz]
        else:
            r = _relative_residual(gens, z)
        pts.append(SolutionPoint(tuple(z), r))
    # stable order: real points first, then by coordinates
    pts.sort(key=lambda s: (not s.is_real(), [round(c.real, 10) for c in s.coords], [round(c.imag, 10) for c in s.coords]))
    return CriticalPointSet(I.vars, pts, D, {}, max((p.residual for p in pts), default=0.0))


@dataclass
class CountReport:
    count: int
    degree: int
    squarefree: dict
    max_residual: float
    ok: bool
    messages: list = field(default_factory=list)


def certify_count(points: CriticalPointSet, I: Ideal, tol=1e-8, raise_on_failure=False) -> CountReport:
    """Check #points against the ideal degree, squarefreeness of eliminants, residuals."""
    degree = len(_qb(I))
    elims = points.eliminants or eliminants(I)
    sq = {}
    msgs = []
    for v, f in elims.items():
        a = _to_coeffs(f)
        sq[v] = len(_gcd(a, _deriv(a))) <= 1
        if not sq[v]:
            msgs.append(f"eliminant of {v} is not squarefree")
    if len(points.points) != degree:
        msgs.append(f"point count {len(points.points)} != degree {degree}")
    maxr = max((p.residual for p in points.points), default=0.0)
    if maxr > tol:
        msgs.append(f"max residual {maxr:.3g} exceeds {tol:g}")
    ok = not msgs
    rep = CountReport(len(points.points), degree, sq, maxr, ok, msgs)
    if raise_on_failure and not ok:
        raise CertificationError("; ".join(msgs), {"report": rep})
    return rep
