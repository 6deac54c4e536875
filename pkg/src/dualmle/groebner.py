"""Buchberger's algorithm and ideal operations over the rationals.

The engine works on an internal representation where a monomial is one
integer: the order digits of its exponent vector packed into fixed-width
fields. Digits are linear in the exponents, so multiplying monomials is
integer addition and comparing them is integer comparison.
"""

from __future__ import annotations

import contextlib
import heapq
import itertools
import logging
import os
import time
from dataclasses import dataclass, field

from gmpy2 import mpq

from . import _linalg
from .polynomial import DEGREVLEX, MonomialOrder, Polynomial, VariableSet

log = logging.getLogger(__name__)

__all__ = [
    "ResourceBudget",
    "ResourceLimitExceeded",
    "default_budget",
    "set_default_budget",
    "using_budget",
    "NotZeroDimensional",
    "Ideal",
    "GroebnerBasis",
    "QuotientBasis",
    "buchberger",
    "normal_form",
    "is_groebner_basis",
    "ideal_sum",
    "ideal_product",
    "intersect",
    "saturate",
    "saturate_by_ideal",
    "SATURATION_METHODS",
    "is_homogeneous_ideal",
    "multiplication_matrix",
    "eliminate",
    "dimension",
    "codimension",
    "quotient_basis",
    "degree_zero_dim",
]

_DIGIT_BITS = 24
_EXP_BITS = 16


class ResourceLimitExceeded(RuntimeError):
    """A Groebner computation exceeded its configured budget."""

    def __init__(self, resource, limit, observed):
        super().__init__(f"resource limit exceeded: {resource} > {limit} (observed {observed})")
        self.resource = resource
        self.limit = limit
        self.observed = observed


class NotZeroDimensional(ValueError):
    pass


@dataclass
class ResourceBudget:
    """Caps for a single Groebner basis computation.

    ``None`` disables a cap. Defaults can be set through the environment
    variables ``DUALMLE_MAX_BASIS``, ``DUALMLE_MAX_COEFF_BITS`` and
    ``DUALMLE_MAX_SECONDS``.
    """

    max_basis: int | None = 20000
    max_coeff_bits: int | None = 200000
    max_seconds: float | None = None
    until: float | None = None  # absolute time.monotonic() deadline shared by all computations

    @classmethod
    def from_env(cls, environ=None) -> ResourceBudget:
        env = os.environ if environ is None else environ
        b = cls()
        for attr, var, conv in (
            ("max_basis", "DUALMLE_MAX_BASIS", int),
            ("max_coeff_bits", "DUALMLE_MAX_COEFF_BITS", int),
            ("max_seconds", "DUALMLE_MAX_SECONDS", float),
        ):
            raw = env.get(var)
            if raw is not None and raw != "":
                setattr(b, attr, None if raw.lower() == "none" else conv(raw))
        return b

    def deadline(self):
        d = None if self.max_seconds is None else time.monotonic() + self.max_seconds
        if self.until is not None:
            d = self.until if d is None else min(d, self.until)
        return d

    def with_wall_clock(self, seconds) -> ResourceBudget:
        """Copy whose computations all stop ``seconds`` from now."""
        return ResourceBudget(self.max_basis, self.max_coeff_bits, self.max_seconds, time.monotonic() + seconds)


_default_budget = None


def default_budget() -> ResourceBudget:
    global _default_budget
    if _default_budget is None:
        _default_budget = ResourceBudget.from_env()
    return _default_budget


def set_default_budget(budget: ResourceBudget | None):
    global _default_budget
    _default_budget = budget


@contextlib.contextmanager
def using_budget(budget: ResourceBudget):
    """Temporarily make ``budget`` the default for every computation."""
    global _default_budget
    old = _default_budget
    _default_budget = budget
    try:
        yield budget
    finally:
        _default_budget = old


# -- packed monomial codec -------------------------------------------------


class _Codec:
    """Packs exponent vectors of ``n`` variables for one monomial order.

    A packed key is ``base + sum(e_i * weight_i)``; differences of keys are
    used as multiplication shifts and are never decoded.
    """

    def __init__(self, n, order: MonomialOrder):
        self.n = n
        self.order = order
        zero = order.digits((0,) * n)
        self.ndigits = len(zero)
        w = _DIGIT_BITS
        off = 1 << (w - 1)
        self.offset = off
        self.shifts = [w * (self.ndigits - 1 - j) for j in range(self.ndigits)]
        self.base = sum((d + off) << s for d, s in zip(zero, self.shifts))
        self.weights = []
        for i in range(n):
            e = [0] * n
            e[i] = 1
            d = order.digits(e)
            self.weights.append(sum(di << s for di, s in zip(d, self.shifts)))
        fw = _EXP_BITS + 1
        self.div_weights = [1 << (i * fw) for i in range(n)]
        self.guard = sum(1 << (i * fw + _EXP_BITS) for i in range(n))
        self._decode = {}
        self.grading = tuple(order.weights) if order.weights else None

    def encode(self, exp) -> int:
        k = self.base
        for w, e in zip(self.weights, exp):
            if e:
                k += w * e
        return k

    def decode(self, key) -> tuple:
        exp = self._decode.get(key)
        if exp is None:
            exp = self._decode_digits(key)
            self._decode[key] = exp
        return exp

    def _decode_digits(self, key):
        mask = (1 << _DIGIT_BITS) - 1
        off = self.offset
        digits = [((key >> s) & mask) - off for s in self.shifts]
        order = self.order
        if order.kind == "lex":
            return tuple(digits)
        if order.kind == "degrevlex":
            if order.weights:
                rest = [-d for d in reversed(digits[1:])]
                w = order.weights
                e0 = (digits[0] - sum(wi * ei for wi, ei in zip(w[1:], rest))) // w[0]
                return (e0,) + tuple(rest)
            return _drl_undigits(digits, self.n)
        k = order.block_size
        return _drl_undigits(digits[:k], k) + _drl_undigits(digits[k:], self.n - k)

    def degree(self, exp) -> int:
        """Sugar degree: weighted when the order carries weights."""
        if self.grading is None:
            return sum(exp)
        return sum(w * e for w, e in zip(self.grading, exp))

    def pack_div(self, exp) -> int:
        d = 0
        for w, e in zip(self.div_weights, exp):
            if e:
                d += w * e
        return d


def _drl_undigits(digits, n):
    if n == 0:
        return ()
    # digits = (s_n, s_{n-1}, ..., s_1) with s_j = e_0 + ... + e_{j-1}
    partial = list(reversed(digits))  # s_1..s_n
    exp = [partial[0]]
    for j in range(1, n):
        exp.append(partial[j] - partial[j - 1])
    return tuple(exp)


# -- internal polynomial records -------------------------------------------


class _Rec:
    __slots__ = ("lead", "exp", "div", "deg", "tail", "sugar", "nterms")

    def __init__(self, lead, exp, div, tail, sugar, deg=None):
        self.lead = lead
        self.exp = exp
        self.div = div
        self.deg = sum(exp) if deg is None else deg
        self.tail = tail
        self.sugar = sugar
        self.nterms = len(tail) + 1


def _make_rec(terms, codec, sugar):
    """Monic record from a nonzero dict ``{key: coeff}``."""
    lead = max(terms)
    lc = terms[lead]
    inv = 1 / lc
    tail = sorted(((k, c * inv) for k, c in terms.items() if k != lead), reverse=True)
    exp = codec.decode(lead)
    return _Rec(lead, exp, codec.pack_div(exp), tail, sugar, codec.degree(exp))


def _rec_dict(rec):
    d = dict(rec.tail)
    d[rec.lead] = mpq(1)
    return d


class _Stats:
    def __init__(self):
        self.pairs = 0
        self.reductions = 0
        self.zero_reductions = 0
        self.max_basis = 0


def _reduce(h, sugar, reducers, codec, full=True, checker=None):
    """Reduce ``h`` (dict, consumed) by monic records; returns (remainder, sugar)."""
    if not h:
        return h, sugar
    guard = codec.guard
    decode = codec.decode
    pack_div = codec.pack_div
    heap = [-k for k in h]
    heapq.heapify(heap)
    push = heapq.heappush
    pop = heapq.heappop
    rem = {}
    steps = 0
    while heap:
        k = -pop(heap)
        c = h.pop(k, None)
        if c is None:
            continue
        exp = decode(k)
        d = pack_div(exp) | guard
        red = None
        for r in reducers:
            if ((d - r.div) & guard) == guard:
                red = r
                break
        if red is None:
            rem[k] = c
            if not full:
                rem.update(h)
                return rem, sugar
            continue
        shift = k - red.lead
        s = red.sugar + codec.degree(exp) - red.deg
        if s > sugar:
            sugar = s
        for gk, gc in red.tail:
            nk = gk + shift
            v = h.get(nk)
            if v is None:
                h[nk] = -c * gc
                push(heap, -nk)
            else:
                v -= c * gc
                if v:
                    h[nk] = v
                else:
                    del h[nk]
        steps += 1
        if checker is not None and not steps & 255:
            checker()
    return rem, sugar


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


class _Engine:
    def __init__(self, codec, budget):
        self.codec = codec
        self.budget = budget or default_budget()
        self.deadline = self.budget.deadline()
        self.stats = _Stats()

    def check_time(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise ResourceLimitExceeded("max_seconds", self.budget.max_seconds, "deadline passed")

    def check_rec(self, rec, nbasis):
        b = self.budget
        if b.max_basis is not None and nbasis > b.max_basis:
            raise ResourceLimitExceeded("max_basis", b.max_basis, nbasis)
        if b.max_coeff_bits is not None:
            bits = 0
            for _, c in rec.tail:
                nb = max(c.numerator.bit_length(), c.denominator.bit_length())
                if nb > bits:
                    bits = nb
            if bits > b.max_coeff_bits:
                raise ResourceLimitExceeded("max_coeff_bits", b.max_coeff_bits, bits)
        self.check_time()

    def groebner(self, polys):
        """Reduced GB of a list of dicts. Returns list of records sorted by lead."""
        codec = self.codec
        recs = []
        active = []
        pairs = []
        # inputs enter the queue with their own sugar and are reduced lazily
        inputs = []
        for idx, p in enumerate(polys):
            if p:
                sugar = max(codec.degree(codec.decode(k)) for k in p)
                inputs.append((sugar, max(p), -1, idx))
        queue = list(inputs)
        heapq.heapify(queue)
        tick = 0
        while queue or pairs:
            if queue and (not pairs or queue[0] <= pairs[0]):
                item = heapq.heappop(queue)
                h = dict(polys[item[3]])
                sugar = item[0]
            else:
                item = heapq.heappop(pairs)
                sugar, _, i, j, _lcm_exp = item
                h = self._spoly(recs[i], recs[j])
                self.stats.pairs += 1
            reducers = [recs[a] for a in active]
            h, sugar = _reduce(h, sugar, reducers, codec, True, self.check_time)
            self.stats.reductions += 1
            tick += 1
            if not h:
                self.stats.zero_reductions += 1
                if not tick & 63:
                    self.check_time()
                continue
            rec = _make_rec(h, codec, sugar)
            if rec.deg == 0:
                # unit ideal
                return [_Rec(codec.base, (0,) * codec.n, 0, [], 0)]
            recs.append(rec)
            hi = len(recs) - 1
            self.check_rec(rec, len(active) + 1)
            active, pairs = self._update(recs, active, pairs, hi)
            self.stats.max_basis = max(self.stats.max_basis, len(active))
        return self._interreduce([recs[a] for a in active])

    def _spoly(self, f, g):
        lcm = _lcm(f.exp, g.exp)
        kl = self.codec.encode(lcm)
        sf = kl - f.lead
        sg = kl - g.lead
        h = {}
        for k, c in f.tail:
            h[k + sf] = c
        for k, c in g.tail:
            nk = k + sg
            v = h.get(nk)
            if v is None:
                h[nk] = -c
            else:
                v -= c
                if v:
                    h[nk] = v
                else:
                    del h[nk]
        return h

    def _update(self, recs, active, pairs, hi):
        codec = self.codec
        guard = codec.guard
        h = recs[hi]
        hexp = h.exp
        hdiv = h.div

        def divides(adiv, bdiv):
            return (((bdiv | guard) - adiv) & guard) == guard

        cand = []
        for g in active:
            lcm = _lcm(recs[g].exp, hexp)
            cand.append((g, lcm, codec.pack_div(lcm)))
        kept = []
        for idx, (g, lcm, ldiv) in enumerate(cand):
            gexp = recs[g].exp
            disjoint = all(not (a and b) for a, b in zip(gexp, hexp))
            if disjoint:
                kept.append((g, lcm, ldiv, True))
                continue
            redundant = False
            for g2, lcm2, ldiv2 in cand[idx + 1 :]:
                if divides(ldiv2, ldiv):
                    redundant = True
                    break
            if not redundant:
                for g2, lcm2, ldiv2, _ in kept:
                    if divides(ldiv2, ldiv):
                        redundant = True
                        break
            if not redundant:
                kept.append((g, lcm, ldiv, False))
        new_pairs = []
        for item in pairs:
            sugar, kl, i, j, lcm = item
            ldiv = codec.pack_div(lcm)
            if divides(hdiv, ldiv):
                if _lcm(recs[i].exp, hexp) != lcm and _lcm(recs[j].exp, hexp) != lcm:
                    continue
            new_pairs.append(item)
        for g, lcm, ldiv, disjoint in kept:
            if disjoint:
                continue
            f = recs[g]
            dl = codec.degree(lcm)
            sugar = max(f.sugar + dl - f.deg, h.sugar + dl - h.deg)
            new_pairs.append((sugar, codec.encode(lcm), g, hi, lcm))
        heapq.heapify(new_pairs)
        new_active = [g for g in active if not divides(hdiv, recs[g].div)]
        new_active.append(hi)
        return new_active, new_pairs

    def _interreduce(self, basis):
        basis = sorted(basis, key=lambda r: r.lead)
        out = []
        for i, r in enumerate(basis):
            others = basis[:i] + basis[i + 1 :]
            tail = dict(r.tail)
            tail, _ = _reduce(tail, r.sugar, others, self.codec, True, self.check_time)
            out.append(_Rec(r.lead, r.exp, r.div, sorted(tail.items(), reverse=True), r.sugar, r.deg))
        return out


# -- conversions -------------------------------------------------------------


def _to_dict(p: Polynomial, codec):
    enc = codec.encode
    return {enc(e): c for e, c in p.terms.items()}


def _from_rec(rec, codec, variables):
    terms = {codec.decode(rec.lead): mpq(1)}
    for k, c in rec.tail:
        terms[codec.decode(k)] = c
    return Polynomial._raw(variables, terms)


def _from_dict(d, codec, variables):
    return Polynomial._raw(variables, {codec.decode(k): c for k, c in d.items()})


# -- public types ----------------------------------------------------------


class GroebnerBasis:
    """A reduced Groebner basis for one monomial order."""

    def __init__(self, variables, elements, order, reduced=True, stats=None):
        self.vars = variables
        self.elements = tuple(elements)
        self.order = order
        self.reduced = reduced
        self.stats = stats
        self._codec = None
        self._recs = None

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"GroebnerBasis({[str(g) for g in self.elements]}, order={self.order!r})"

    @property
    def codec(self):
        if self._codec is None:
            self._codec = _Codec(len(self.vars), self.order)
        return self._codec

    @property
    def records(self):
        if self._recs is None:
            codec = self.codec
            self._recs = [_make_rec(_to_dict(g, codec), codec, g.total_degree()) for g in self.elements]
        return self._recs

    def leading_monomials(self):
        return [r.exp for r in self.records]

    def is_unit(self) -> bool:
        return any(r.deg == 0 for r in self.records)

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def polys(self):
        return list(self.elements)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Fully reduced remainder of ``f`` modulo ``G``."""
    if f.vars != G.vars:
        raise ValueError("variable-set mismatch between polynomial and basis")
    codec = G.codec
    rem, _ = _reduce(_to_dict(f, codec), 0, G.records, codec, True)
    return _from_dict(rem, codec, G.vars)


def is_groebner_basis(G: GroebnerBasis) -> bool:
    """Check that every S-polynomial reduces to zero (Buchberger criterion)."""
    recs = G.records
    eng = _Engine(G.codec, ResourceBudget(None, None, None))
    for i, j in itertools.combinations(range(len(recs)), 2):
        h = eng._spoly(recs[i], recs[j])
        rem, _ = _reduce(h, 0, recs, G.codec, True)
        if rem:
            return False
    return True


class Ideal:
    """Ideal given by generators, with cached Groebner bases per order."""

    def __init__(self, generators, variables: VariableSet | None = None):
        gens = list(generators)
        if variables is None:
            if not gens:
                raise ValueError("need a VariableSet for an ideal with no generators")
            variables = gens[0].vars
        seen = set()
        clean = []
        for g in gens:
            if not isinstance(g, Polynomial):
                g = Polynomial.constant(variables, g)
            if g.vars != variables:
                raise ValueError("variable-set mismatch among generators")
            if g.is_zero():
                continue
            key = g.normalized()
            if key in seen:
                continue
            seen.add(key)
            clean.append(g)
        self.vars = variables
        self.generators = tuple(clean)
        self._gb = {}

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]})"

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def groebner(self, order: MonomialOrder = DEGREVLEX, budget=None) -> GroebnerBasis:
        gb = self._gb.get(order)
        if gb is None:
            gb = buchberger(self, order, budget)
            self._gb[order] = gb
        return gb

    def _set_gb(self, gb):
        self._gb[gb.order] = gb

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self.groebner()).is_zero()

    def __contains__(self, f):
        return self.contains(f)

    def reduce(self, f, order=DEGREVLEX):
        return normal_form(f, self.groebner(order))

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def is_zero(self) -> bool:
        return not self.generators

    def __add__(self, other):
        return ideal_sum(self, other)

    def __mul__(self, other):
        return ideal_product(self, other)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.vars != other.vars:
            return False
        return set(self.groebner().elements) == set(other.groebner().elements)

    __hash__ = None

    def issubset(self, other) -> bool:
        G = other.groebner()
        return all(normal_form(g, G).is_zero() for g in self.generators)

    def saturate(self, f, budget=None, method="auto"):
        return saturate(self, f, budget, method)

    def saturate_by_ideal(self, J, budget=None, method="auto"):
        return saturate_by_ideal(self, J, budget, method)

    def is_homogeneous(self) -> bool:
        return is_homogeneous_ideal(self)

    def eliminate(self, front_vars, budget=None):
        return eliminate(self, front_vars, budget)

    def dimension(self):
        return dimension(self)

    def codimension(self, ambient=None):
        return codimension(self, ambient)

    def quotient_basis(self, order=DEGREVLEX):
        return quotient_basis(self, order)

    def degree(self, order=DEGREVLEX):
        return degree_zero_dim(self, order)

    def is_zero_dimensional(self) -> bool:
        try:
            quotient_basis(self)
        except NotZeroDimensional:
            return False
        return True

    def to_vars(self, variables):
        return Ideal([g.to_vars(variables) for g in self.generators], variables)

    def substitute(self, mapping, target=None):
        target = target or self.vars
        return Ideal([g.substitute(mapping, target) for g in self.generators], target)


def buchberger(I: Ideal, order: MonomialOrder = DEGREVLEX, budget=None) -> GroebnerBasis:
    """Reduced Groebner basis of ``I`` (sugar selection, Gebauer-Moeller criteria)."""
    variables = I.vars
    codec = _Codec(len(variables), order)
    eng = _Engine(codec, budget)
    polys = [_to_dict(g, codec) for g in I.generators]
    if not polys:
        return GroebnerBasis(variables, [], order, True, eng.stats)
    recs = eng.groebner(polys)
    elements = [_from_rec(r, codec, variables) for r in recs]
    gb = GroebnerBasis(variables, elements, order, True, eng.stats)
    gb._codec = codec
    gb._recs = recs
    log.debug(
        "GB: %d elements, %d pairs, %d zero reductions",
        len(elements), eng.stats.pairs, eng.stats.zero_reductions,
    )
    return gb


# -- ideal arithmetic --------------------------------------------------------


def _same_vars(I, J):
    if I.vars != J.vars:
        raise ValueError(f"variable-set mismatch: {I.vars.names} vs {J.vars.names}")


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same_vars(I, J)
    return Ideal(list(I.generators) + list(J.generators), I.vars)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _same_vars(I, J)
    return Ideal([f * g for f in I.generators for g in J.generators], I.vars)


def _eliminate_front(gens, variables, front_names, budget, keep_vars):
    """GB of ``gens`` over ``front + variables`` in block order; keep front-free part."""
    ext = VariableSet(tuple(front_names) + tuple(n for n in variables.names if n not in front_names))
    order = MonomialOrder.block(len(front_names))
    I = Ideal([g.to_vars(ext) for g in gens], ext)
    gb = I.groebner(order, budget)
    k = len(front_names)
    kept = [g for g in gb.elements if not any(i < k for i in g.support())]
    sub = VariableSet(ext.names[k:])
    out = Ideal([g.to_vars(sub) for g in kept], sub)
    # the front-free part of a reduced block-order GB is a reduced degrevlex GB
    out._set_gb(GroebnerBasis(sub, [g.to_vars(sub) for g in kept], DEGREVLEX, True))
    if keep_vars != sub:
        out = Ideal([g.to_vars(keep_vars) for g in out.generators], keep_vars)
    return out


def is_homogeneous_ideal(I: Ideal) -> bool:
    return all(g.is_homogeneous()[0] for g in I.generators)


def _monomial_support(f):
    """Variable indices of ``f`` if it is a single term, else None."""
    if len(f.terms) != 1:
        return None
    (exp,) = f.terms
    return [i for i, e in enumerate(exp) if e]


def _bayer(I: Ideal, var: str, budget) -> Ideal:
    """``I : var^oo`` for homogeneous ``I``: degrevlex with ``var`` last, strip its powers."""
    names = [n for n in I.vars.names if n != var] + [var]
    V = VariableSet(names)
    gb = Ideal([g.to_vars(V) for g in I.generators], V).groebner(DEGREVLEX, budget)
    k = len(names) - 1
    out = []
    for g in gb.elements:
        m = min(e[k] for e in g.terms)
        out.append(Polynomial._raw(V, {e[:k] + (e[k] - m,): c for e, c in g.terms.items()}).to_vars(I.vars))
    return Ideal(out, I.vars)


def _sat_homogeneous(I: Ideal, f: Polynomial, budget) -> Ideal:
    """``I : f^oo`` for homogeneous ``I`` and ``f`` through a new variable ``y = f``.

    With ``y`` weighted by ``deg f`` the ideal ``I + <y - f>`` is homogeneous,
    so Bayer's argument applies to ``y`` in weighted degrevlex with ``y`` last.
    """
    d = f.total_degree()
    y = I.vars.fresh_name("y")
    V = I.vars.extend([y])
    n = len(I.vars)
    order = MonomialOrder.weighted([1] * n + [d])
    yp = Polynomial.variable(V, y)
    gens = [g.to_vars(V) for g in I.generators] + [yp - f.to_vars(V)]
    gb = Ideal(gens, V).groebner(order, budget)
    out = []
    for g in gb.elements:
        m = min(e[n] for e in g.terms)
        h = Polynomial._raw(V, {e[:n] + (e[n] - m,): c for e, c in g.terms.items()})
        out.append(h.substitute({y: f}, I.vars))
    return Ideal(out, I.vars)


def _sat_rabinowitsch(I: Ideal, f: Polynomial, budget) -> Ideal:
    t = I.vars.fresh_name("t")
    ext = VariableSet((t,) + I.vars.names)
    tp = Polynomial.variable(ext, t)
    gens = [g.to_vars(ext) for g in I.generators] + [tp * f.to_vars(ext) - 1]
    return _eliminate_front(gens, ext, (t,), budget, I.vars)


SATURATION_METHODS = ("auto", "rabinowitsch", "homogeneous", "linear-algebra")


def _pick_method(I, polys, method):
    if method not in SATURATION_METHODS:
        raise ValueError(f"unknown saturation method {method!r}")
    if method != "auto":
        return method
    if is_homogeneous_ideal(I) and all(p.is_homogeneous()[0] for p in polys):
        return "homogeneous"
    if I.is_zero_dimensional():
        return "linear-algebra"
    return "rabinowitsch"


def saturate(I: Ideal, f: Polynomial, budget=None, method="auto") -> Ideal:
    """``I : f^oo``.

    ``method`` is ``"rabinowitsch"`` (eliminate ``t`` from ``I + <t*f - 1>``),
    ``"homogeneous"`` (Bayer-style, needs homogeneous input),
    ``"linear-algebra"`` (zero-dimensional ``I``) or ``"auto"``.
    """
    if f.vars != I.vars:
        raise ValueError("variable-set mismatch")
    if f.is_zero():
        raise ValueError("cannot saturate by zero")
    if f.is_constant() or not I.generators:
        return I
    method = _pick_method(I, [f], method)
    if method == "rabinowitsch":
        return _sat_rabinowitsch(I, f, budget)
    if method == "linear-algebra":
        return _sat_linear_algebra(I, [f])
    if not (is_homogeneous_ideal(I) and f.is_homogeneous()[0]):
        raise ValueError("homogeneous saturation needs homogeneous input")
    support = _monomial_support(f)
    if support is not None:
        out = I
        for i in support:
            out = _bayer(out, I.vars.names[i], budget)
        return out
    return _sat_homogeneous(I, f, budget)


def multiplication_matrix(qb, f: Polynomial):
    """Matrix of multiplication by ``f`` on ``R/I`` in the basis ``qb``.

    Column ``j`` holds the coordinates of ``NF(f * m_j)``.
    """
    D = len(qb)
    M = [[mpq(0)] * D for _ in range(D)]
    gb = qb.gb
    for j, mono in enumerate(qb.polys()):
        r = gb.reduce(f * mono)
        for e, c in r.terms.items():
            M[qb.index(e)][j] = c
    return M


def _sat_linear_algebra(I: Ideal, polys) -> Ideal:
    """``I : <polys>^oo`` for zero-dimensional ``I`` from generalized kernels.

    A class in ``R/I`` lies in the saturation exactly when a power of every
    ``h`` kills it, i.e. it sits in the generalized kernel of each
    multiplication matrix.
    """
    qb = quotient_basis(I)
    D = len(qb)
    if D == 0:
        return I
    constraints = []
    for h in polys:
        K = _linalg.generalized_kernel(multiplication_matrix(qb, h))
        if not K:
            return I
        # vectors orthogonal to the kernel cut it out
        if len(K) < D:
            constraints.extend(_linalg.nullspace(K, D))
    if not constraints:
        return Ideal([Polynomial.constant(I.vars, 1)], I.vars)
    common = _linalg.nullspace(constraints, D)
    if not common:
        return I
    mons = qb.standard_monomials
    extra = [Polynomial._raw(I.vars, {m: c for m, c in zip(mons, v) if c}) for v in common]
    return Ideal(list(I.generators) + extra, I.vars)


def intersect(I: Ideal, K: Ideal, budget=None) -> Ideal:
    """``I ∩ K`` as the ``t``-free part of ``t*I + (1-t)*K``."""
    _same_vars(I, K)
    if not I.generators:
        return I
    if not K.generators:
        return K
    if I.is_unit():
        return K
    if K.is_unit():
        return I
    t = I.vars.fresh_name("t")
    ext = VariableSet((t,) + I.vars.names)
    tp = Polynomial.variable(ext, t)
    gens = [tp * g.to_vars(ext) for g in I.generators]
    gens += [(1 - tp) * g.to_vars(ext) for g in K.generators]
    return _eliminate_front(gens, ext, (t,), budget, I.vars)


def saturate_by_ideal(I: Ideal, J: Ideal, budget=None, method="auto") -> Ideal:
    """``I : J^oo`` as the intersection of the saturations by each generator of ``J``."""
    _same_vars(I, J)
    if not J.generators:
        raise ValueError("cannot saturate by the zero ideal")
    if any(g.is_constant() for g in J.generators) or not I.generators:
        return I
    method = _pick_method(I, J.generators, method)
    if method == "linear-algebra":
        return _sat_linear_algebra(I, J.generators)
    parts = []
    for g in sorted(J.generators, key=lambda p: (p.total_degree(), len(p))):
        S = saturate(I, g, budget, method)
        if _same_ideal(S, I):
            # one factor already leaves I unchanged, so the intersection is I
            return I
        parts.append(S)
    out = parts[0]
    for S in parts[1:]:
        if out.issubset(S):
            continue
        if S.issubset(out):
            out = S
            continue
        out = intersect(out, S, budget)
    return out


def _same_ideal(A, B):
    return A.issubset(B) and B.issubset(A)


def eliminate(I: Ideal, front_vars, budget=None) -> Ideal:
    """``I`` intersected with the subring without ``front_vars``.

    The result lives over the remaining variables (original order kept).
    """
    front = [v if isinstance(v, str) else I.vars.names[v] for v in front_vars]
    for v in front:
        I.vars.index(v)
    rest = VariableSet([n for n in I.vars.names if n not in front])
    if not front:
        return I
    return _eliminate_front(list(I.generators), I.vars, tuple(front), budget, rest)


# -- dimension and degree ----------------------------------------------------


def dimension(I: Ideal) -> int:
    """Krull dimension of ``R/I`` from the leading-term ideal (-1 for the unit ideal)."""
    gb = I.groebner()
    n = len(I.vars)
    if gb.is_unit():
        return -1
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in gb.leading_monomials()]
    for size in range(n, -1, -1):
        for S in itertools.combinations(range(n), size):
            s = set(S)
            if all(not sup <= s for sup in supports):
                return size
    return 0


def codimension(I: Ideal, ambient: int | None = None) -> int:
    """Codimension in ``P^ambient`` of a homogeneous ideal (default ambient = nvars - 1)."""
    n = len(I.vars)
    if ambient is None:
        ambient = n - 1
    proj_dim = dimension(I) - 1
    return ambient - proj_dim


class QuotientBasis:
    """Standard monomials of a zero-dimensional ideal."""

    def __init__(self, variables, monomials, gb):
        self.vars = variables
        self.standard_monomials = tuple(monomials)
        self.gb = gb
        self._index = {m: i for i, m in enumerate(self.standard_monomials)}

    def __len__(self):
        return len(self.standard_monomials)

    def __iter__(self):
        return iter(self.standard_monomials)

    def index(self, m):
        return self._index[m]

    def polys(self):
        return [Polynomial._raw(self.vars, {m: mpq(1)}) for m in self.standard_monomials]


def quotient_basis(I: Ideal, order: MonomialOrder = DEGREVLEX) -> QuotientBasis:
    gb = I.groebner(order)
    n = len(I.vars)
    if gb.is_unit():
        return QuotientBasis(I.vars, [], gb)
    leads = gb.leading_monomials()
    bound = [None] * n
    for m in leads:
        nz = [i for i, e in enumerate(m) if e]
        if len(nz) == 1:
            i = nz[0]
            if bound[i] is None or m[i] < bound[i]:
                bound[i] = m[i]
    if any(b is None for b in bound):
        raise NotZeroDimensional(
            f"ideal is not zero-dimensional (no pure power for "
            f"{[I.vars.names[i] for i, b in enumerate(bound) if b is None]})"
        )

    def standard(m):
        return not any(all(a <= b for a, b in zip(lm, m)) for lm in leads)

    out = []
    # depth-first walk of the staircase; order ideals are closed under division
    stack = [(0,) * n]
    seen = {stack[0]}
    while stack:
        m = stack.pop()
        if not standard(m):
            continue
        out.append(m)
        for i in range(n):
            m2 = m[:i] + (m[i] + 1,) + m[i + 1 :]
            if m2[i] < bound[i] and m2 not in seen:
                seen.add(m2)
                stack.append(m2)
    out.sort(key=order.key)
    return QuotientBasis(I.vars, out, gb)


def degree_zero_dim(I: Ideal, order: MonomialOrder = DEGREVLEX) -> int:
    """Vector-space dimension of ``R/I`` for zero-dimensional ``I``."""
    return len(quotient_basis(I, order))
