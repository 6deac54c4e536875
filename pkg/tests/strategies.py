"""Hypothesis strategies shared by the property suites."""

from fractions import Fraction

from hypothesis import strategies as st

from dualmle.groebner import Ideal
from dualmle.polynomial import Polynomial, VariableSet

NAMES = ("x", "y", "z", "w", "v", "s")

coefficients = st.fractions(min_value=-9, max_value=9, max_denominator=5).filter(lambda c: c != 0)


def variable_sets(min_size=1, max_size=6):
    return st.integers(min_size, max_size).map(lambda k: VariableSet(NAMES[:k]))


@st.composite
def polynomials(draw, variables, max_degree=4, max_terms=5):
    n = len(variables)
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        deg = draw(st.integers(0, max_degree))
        exp = [0] * n
        for _ in range(deg):
            exp[draw(st.integers(0, n - 1))] += 1
        terms[tuple(exp)] = draw(coefficients)
    return Polynomial(variables, terms)


@st.composite
def homogeneous_polynomials(draw, variables, degree, max_terms=4):
    n = len(variables)
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        exp = [0] * n
        for _ in range(degree):
            exp[draw(st.integers(0, n - 1))] += 1
        terms[tuple(exp)] = draw(coefficients)
    f = Polynomial(variables, terms)
    if f.is_zero():
        f = Polynomial.variable(variables, variables.names[0]) ** degree
    return f


@st.composite
def small_ideals(draw, n_vars=(2, 3), n_gens=(1, 3), max_degree=2):
    V = VariableSet(NAMES[: draw(st.integers(*n_vars))])
    gens = []
    for _ in range(draw(st.integers(*n_gens))):
        f = draw(polynomials(V, max_degree=max_degree, max_terms=3))
        if not f.is_zero():
            gens.append(f)
    if not gens:
        gens = [Polynomial.variable(V, V.names[0])]
    return Ideal(gens, V)


@st.composite
def zero_dim_ideals(draw, max_vars=3):
    """Ideals x_i^{d_i} + (lower terms in later variables) with a finite staircase.

    Each generator has a pure-power leading term under every order that
    ranks x_i^{d_i} above the tail, so the ideal is zero-dimensional with
    degree prod d_i.
    """
    k = draw(st.integers(1, max_vars))
    V = VariableSet(NAMES[:k])
    gens = []
    for i in range(k):
        d = draw(st.integers(1, 3))
        lead = Polynomial.variable(V, V.names[i]) ** d
        tail = Polynomial(V, {})
        for _ in range(draw(st.integers(0, 2))):
            exp = [0] * k
            # tail only in variables after x_i and of degree < d: triangular shape
            for _ in range(draw(st.integers(0, d - 1))):
                j = draw(st.integers(i, k - 1))
                exp[j] += 1
            if exp[i] >= d:
                continue
            tail = tail + Polynomial(V, {tuple(exp): draw(coefficients)})
        gens.append(lead + tail)
    return Ideal(gens, V)


def rational_points(n):
    return st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=n, max_size=n)


def as_fraction(x):
    return Fraction(int(x.numerator), int(x.denominator))


@st.composite
def point_ideals(draw, max_points=5):
    """Radical zero-dimensional ideals with known points.

    ``<prod (x - a_i), y - L(x), z - M(x)>`` with distinct a_i and Lagrange
    interpolants L, M through the chosen y and z values. Returns the ideal
    and the exact point list.
    """
    k = draw(st.integers(1, max_points))
    xs = draw(st.lists(st.integers(-6, 6), min_size=k, max_size=k, unique=True))
    ys = draw(st.lists(st.integers(-6, 6), min_size=k, max_size=k))
    zs = draw(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=k, max_size=k))
    V = VariableSet(["x", "y", "z"])
    x = Polynomial.variable(V, "x")

    def interpolant(values):
        total = Polynomial(V, {})
        for i, xi in enumerate(xs):
            term = Polynomial.constant(V, values[i])
            for j, xj in enumerate(xs):
                if j != i:
                    term = term * (x - xj) * Fraction(1, xi - xj)
            total = total + term
        return total

    vanish = Polynomial.constant(V, 1)
    for xi in xs:
        vanish = vanish * (x - xi)
    I = Ideal([vanish, Polynomial.variable(V, "y") - interpolant(ys),
               Polynomial.variable(V, "z") - interpolant(zs)], V)
    return I, [(Fraction(a), Fraction(b), Fraction(c)) for a, b, c in zip(xs, ys, zs)]
