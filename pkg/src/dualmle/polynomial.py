"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq, mpz

__all__ = [
    "VariableSet",
    "MonomialOrder",
    "Polynomial",
    "to_rational",
    "parse_polynomial",
    "LEX",
    "DEGREVLEX",
]

_IDENT = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")


def to_rational(value) -> mpq:
    """Coerce ints, Fractions, gmpy2 numbers and ``"a/b"`` strings to ``mpq``."""
    if isinstance(value, type(mpq())):
        return value
    if isinstance(value, (int, type(mpz()))):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        s = value.strip()
        if not re.fullmatch(r"[+-]?\d+(/\d+)?", s):
            raise ValueError(f"not a rational literal: {value!r}")
        return mpq(s)
    if isinstance(value, Rational):
        return mpq(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


class VariableSet:
    """Ordered, immutable tuple of distinct variable names."""

    __slots__ = ("names", "_index", "_hash")

    def __init__(self, names):
        names = tuple(str(n) for n in names)
        for n in names:
            if not _IDENT.match(n):
                raise ValueError(f"invalid variable name {n!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}
        self._hash = hash(names)

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        return isinstance(other, VariableSet) and self.names == other.names

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"VariableSet({list(self.names)!r})"

    def index(self, name) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def gens(self) -> list[Polynomial]:
        return [Polynomial.variable(self, n) for n in self.names]

    def __getitem__(self, name) -> Polynomial:
        return Polynomial.variable(self, name)

    def extend(self, names) -> VariableSet:
        return VariableSet(self.names + tuple(names))

    def fresh_name(self, stem="t") -> str:
        name, k = stem, 0
        while name in self._index:
            k += 1
            name = f"{stem}{k}"
        return name


class MonomialOrder:
    """A monomial order: ``lex``, ``degrevlex`` or ``block(k)``.

    ``block(k)`` compares the first ``k`` variables by degrevlex and breaks
    ties with degrevlex on the rest, so it eliminates the front block.
    ``degrevlex`` accepts positive integer ``weights`` for a weighted grading.
    """

    __slots__ = ("kind", "block_size", "weights")

    def __init__(self, kind="degrevlex", block_size=0, weights=None):
        if kind not in ("lex", "degrevlex", "block"):
            raise ValueError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.block_size = int(block_size) if kind == "block" else 0
        if weights is not None:
            if kind != "degrevlex":
                raise ValueError("weights are only supported for degrevlex")
            weights = tuple(int(w) for w in weights)
            if any(w <= 0 for w in weights):
                raise ValueError("weights must be positive")
            if all(w == 1 for w in weights):
                weights = None
        self.weights = weights

    @classmethod
    def block(cls, k) -> MonomialOrder:
        return cls("block", k)

    @classmethod
    def weighted(cls, weights) -> MonomialOrder:
        return cls("degrevlex", weights=weights)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.block_size == other.block_size
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.kind, self.block_size, self.weights))

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder.block({self.block_size})"
        if self.weights:
            return f"MonomialOrder.weighted({list(self.weights)})"
        return f"MonomialOrder({self.kind!r})"

    def digits(self, exp) -> tuple:
        """Digit vector whose lexicographic order is this order.

        Digits are linear in the exponent vector, which lets the engine pack
        them into one integer where monomial multiplication is addition.
        """
        if self.kind == "lex":
            return tuple(exp)
        if self.kind == "degrevlex":
            if self.weights:
                if len(self.weights) != len(exp):
                    raise ValueError("weight vector length differs from number of variables")
                wdeg = sum(w * e for w, e in zip(self.weights, exp))
                return (wdeg,) + tuple(-e for e in reversed(exp[1:]))
            return _drl_digits(exp)
        k = self.block_size
        return _drl_digits(exp[:k]) + _drl_digits(exp[k:])

    def key(self, exp):
        return self.digits(exp)


def _drl_digits(exp):
    # degrevlex == lex on (deg, e0+..+e_{n-2}, e0+..+e_{n-3}, ..., e0)
    partial = []
    s = 0
    for e in exp:
        s += e
        partial.append(s)
    if not partial:
        return ()
    return (partial[-1],) + tuple(reversed(partial[:-1]))


LEX = MonomialOrder("lex")
DEGREVLEX = MonomialOrder("degrevlex")


class Polynomial:
    """Immutable sparse polynomial: a map from exponent tuples to nonzero ``mpq``."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables: VariableSet, terms=None):
        self.vars = variables
        n = len(variables)
        clean = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != n:
                    raise ValueError(f"monomial {exp} has wrong length for {n} variables")
                if any(e < 0 for e in exp):
                    raise ValueError(f"negative exponent in {exp}")
                c = to_rational(c)
                if c:
                    clean[exp] = clean.get(exp, 0) + c
                    if not clean[exp]:
                        del clean[exp]
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, variables, terms):
        # trusted constructor: terms already canonical
        p = object.__new__(cls)
        p.vars = variables
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, variables, c) -> Polynomial:
        c = to_rational(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def variable(cls, variables, name) -> Polynomial:
        i = variables.index(name)
        exp = [0] * len(variables)
        exp[i] = 1
        return cls._raw(variables, {tuple(exp): mpq(1)})

    @classmethod
    def parse(cls, text, variables) -> Polynomial:
        return parse_polynomial(text, variables)

    # -- basic protocol -------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.vars == other.vars and self.terms == other.terms
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self.format()!r}, {list(self.vars.names)!r})"

    def __str__(self):
        return self.format()

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.vars != self.vars:
                raise ValueError(
                    f"variable-set mismatch: {self.vars.names} vs {other.vars.names}"
                )
            return other
        return Polynomial.constant(self.vars, to_rational(other))

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for exp, c in small.items():
            v = out.get(exp)
            if v is None:
                out[exp] = c
            else:
                v += c
                if v:
                    out[exp] = v
                else:
                    del out[exp]
        return Polynomial._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                c = to_rational(other)
            except TypeError:
                return NotImplemented
            if not c:
                return Polynomial._raw(self.vars, {})
            return Polynomial._raw(self.vars, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial._raw(self.vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = to_rational(other)
        if not c:
            raise ZeroDivisionError("polynomial division by zero")
        return self * (1 / c)

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- structure ------------------------------------------------------

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        """Return ``(True, d)`` if every term has degree ``d``, else ``(False, None)``.

        The zero polynomial counts as homogeneous of every degree and is
        reported with degree ``-1``.
        """
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True, -1
        if len(degs) == 1:
            return True, degs.pop()
        return False, None

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> mpq:
        return self.terms.get((0,) * len(self.vars), mpq(0))

    def support(self) -> set:
        """Indices of variables that occur in some term."""
        return {i for e in self.terms for i, a in enumerate(e) if a}

    def variables_used(self) -> list[str]:
        return [self.vars.names[i] for i in sorted(self.support())]

    def sorted_terms(self, order: MonomialOrder = DEGREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder = DEGREVLEX):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=order.key)
        return exp, self.terms[exp]

    def leading_monomial(self, order=DEGREVLEX):
        return self.leading_term(order)[0]

    def leading_coefficient(self, order=DEGREVLEX):
        return self.leading_term(order)[1]

    def monic(self, order=DEGREVLEX) -> Polynomial:
        if not self.terms:
            return self
        return self * (1 / self.leading_coefficient(order))

    def content(self) -> mpq:
        """Positive rational ``c`` with ``self / c`` having coprime integer coefficients."""
        from math import gcd, lcm

        if not self.terms:
            return mpq(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, int(c.numerator))
            den = lcm(den, int(c.denominator))
        return mpq(num, den)

    def primitive(self, order=DEGREVLEX) -> Polynomial:
        """Integer-coefficient associate with positive leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_coefficient(order) < 0:
            c = -c
        return self * (1 / c)

    def normalized(self):
        """Sign- and scale-free canonical associate (used for de-duplication)."""
        return self.primitive(DEGREVLEX)

    # -- calculus and substitution --------------------------------------

    def diff(self, var) -> Polynomial:
        i = self.vars.index(var) if isinstance(var, str) else int(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                e2 = e[:i] + (k - 1,) + e[i + 1 :]
                out[e2] = c * k
        return Polynomial._raw(self.vars, out)

    partial_derivative = diff

    def gradient(self) -> list[Polynomial]:
        return [self.diff(i) for i in range(len(self.vars))]

    def evaluate(self, point):
        """Evaluate at a full point (one value per variable).

        Rational input gives an exact ``mpq``; floats or complex numbers give
        a complex float.
        """
        point = list(point)
        if len(point) != len(self.vars):
            raise ValueError(
                f"point has {len(point)} coordinates, expected {len(self.vars)}"
            )
        exact = all(isinstance(x, (int, Fraction, str, type(mpq()), type(mpz()))) for x in point)
        if exact:
            xs = [to_rational(x) for x in point]
            total = mpq(0)
        else:
            xs = [complex(x) for x in point]
            total = 0j
        for e, c in self.terms.items():
            t = c if exact else complex(float(c))
            for x, k in zip(xs, e):
                if k:
                    t = t * x**k
            total += t
        return total

    __call__ = evaluate

    def substitute(self, mapping, target: VariableSet | None = None) -> Polynomial:
        """Compose with ``{name: Polynomial-or-number}``.

        Variables missing from ``mapping`` are sent to the same-named variable
        of ``target`` (default: own variable set). All images must live over
        ``target``.
        """
        target = target or self.vars
        for name in mapping:
            if name not in self.vars:
                raise KeyError(f"unknown variable {name!r} in substitution")
        images = []
        for name in self.vars.names:
            if name in mapping:
                img = mapping[name]
                if isinstance(img, Polynomial):
                    if img.vars != target:
                        raise ValueError("substitution image over a different variable set")
                else:
                    img = Polynomial.constant(target, img)
            else:
                img = Polynomial.variable(target, name)
            images.append(img)
        return self._compose(images, target)

    def _compose(self, images, target):
        powers = [{0: Polynomial.constant(target, 1)} for _ in images]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                best = max(j for j in cache if j < k)
                p = cache[best]
                for j in range(best + 1, k + 1):
                    p = p * images[i]
                    cache[j] = p
            return cache[k]

        acc = {}
        for e, c in self.terms.items():
            t = Polynomial.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            for e2, c2 in t.terms.items():
                v = acc.get(e2, 0) + c2
                if v:
                    acc[e2] = v
                else:
                    acc.pop(e2, None)
        return Polynomial._raw(target, acc)

    def to_vars(self, target: VariableSet) -> Polynomial:
        """Re-express over ``target``, which must contain every used variable."""
        if target == self.vars:
            return self
        used = self.support()
        idx = [target.index(self.vars.names[i]) if i in used else None for i in range(len(self.vars))]
        n = len(target)
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * n
            for i, k in enumerate(e):
                if k:
                    e2[idx[i]] = k
            out[tuple(e2)] = c
        return Polynomial._raw(target, out)

    # -- text -----------------------------------------------------------

    def format(self, order: MonomialOrder = DEGREVLEX) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms(order):
            mono = "*".join(
                name if k == 1 else f"{name}^{k}"
                for name, k in zip(self.vars.names, exp)
                if k
            )
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = _fmt_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_fmt_rational(a)}*{mono}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)


def _fmt_rational(c) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


# -- parser ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([a-zA-Z][a-zA-Z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"unexpected character {text[pos:pos + 1]!r} at {pos} in {text!r}")
        num, ident, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif ident is not None:
            out.append(("var", ident))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text, variables):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = variables

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        tok = self.take()
        if tok != ("op", op):
            raise ValueError(f"expected {op!r} in {self.text!r}")

    def parse(self):
        if not self.toks:
            raise ValueError("empty polynomial")
        p = self.expr()
        if self.i != len(self.toks):
            raise ValueError(f"trailing input in {self.text!r}")
        return p

    def expr(self):
        kind, val = self.peek()
        sign = 1
        if (kind, val) in (("op", "-"), ("op", "+")):
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term() * sign
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "+"):
                self.take()
                acc = acc + self.term()
            elif (kind, val) == ("op", "-"):
                self.take()
                acc = acc - self.term()
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                acc = acc * self.factor()
            elif (kind, val) == ("op", "/"):
                self.take()
                d = self.factor()
                if not d.is_constant() or d.is_zero():
                    raise ValueError(f"can only divide by nonzero constants in {self.text!r}")
                acc = acc / d.constant_term()
            elif kind in ("num", "var") or (kind, val) == ("op", "("):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ValueError(f"exponent must be a non-negative integer in {self.text!r}")
            base = base**val
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return Polynomial.constant(self.vars, val)
        if kind == "var":
            if val not in self.vars:
                raise ValueError(f"unknown variable {val!r} in {self.text!r}")
            return Polynomial.variable(self.vars, val)
        if (kind, val) == ("op", "("):
            p = self.expr()
            self.expect(")")
            return p
        if (kind, val) == ("op", "-"):
            return -self.factor()
        raise ValueError(f"unexpected token {val!r} in {self.text!r}")


def parse_polynomial(text: str, variables) -> Polynomial:
    """Parse ``2*p0*p1 - 3/4 p2^2`` style text over ``variables``."""
    if not isinstance(variables, VariableSet):
        variables = VariableSet(variables)
    return _Parser(text, variables).parse()
