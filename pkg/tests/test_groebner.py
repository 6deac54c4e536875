import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from dualmle.groebner import (
    Ideal,
    NotZeroDimensional,
    ResourceBudget,
    ResourceLimitExceeded,
    buchberger,
    codimension,
    degree_zero_dim,
    dimension,
    eliminate,
    ideal_product,
    ideal_sum,
    intersect,
    is_groebner_basis,
    normal_form,
    quotient_basis,
    saturate,
    saturate_by_ideal,
)
from dualmle.polynomial import DEGREVLEX, LEX, Polynomial, VariableSet
from strategies import polynomials, small_ideals, zero_dim_ideals


def ideal(texts, names):
    V = VariableSet(names)
    return Ideal([Polynomial.parse(t, V) for t in texts], V)


def poly(text, I):
    return Polynomial.parse(text, I.vars)


def gb_strings(G):
    return sorted(g.format() for g in G)


def sympy_gb(I, order):
    syms = sympy.symbols(I.vars.names)
    exprs = [sympy.sympify(g.format().replace("^", "**"), locals=dict(zip(I.vars.names, syms)))
             for g in I.generators]
    G = sympy.groebner(exprs, *syms, order=order)
    V = I.vars
    return {Polynomial.parse(str(sympy.expand(g)).replace("**", "^"), V).monic(
        DEGREVLEX if order == "grevlex" else LEX) for g in G.exprs}


# -- normal form ---------------------------------------------------------------


def test_normal_form_examples():
    I = ideal(["x*y - 1"], ["x", "y"])
    G = buchberger(I, LEX)
    assert normal_form(poly("x^2*y", I), G) == poly("x", I)
    assert normal_form(I.generators[0], G).is_zero()
    J = ideal(["x", "y"], ["x", "y"])
    one = Polynomial.constant(J.vars, 1)
    assert normal_form(one, buchberger(J)) == one


# -- buchberger ------------------------------------------------------------------


def test_buchberger_examples():
    conic = ideal(["q0*q2 - q1^2"], ["q0", "q1", "q2"])
    # reduced bases are monic: q1^2 leads under degrevlex
    assert gb_strings(buchberger(conic)) == ["q1^2 - q0*q2"]
    cubic = ideal(["q2^2 - q1*q3", "q1*q2 - q0*q3", "q1^2 - q0*q2"], ["q0", "q1", "q2", "q3"])
    G = buchberger(cubic)
    assert set(G.elements) == {g.monic() for g in cubic.generators}
    lin = ideal(["x - y", "x + y"], ["x", "y"])
    assert gb_strings(buchberger(lin, LEX)) == ["x", "y"]


@pytest.mark.parametrize("order", ["grevlex", "lex"])
@pytest.mark.parametrize(
    "texts,names",
    [
        (["x^2 + 2*x*y^2", "x*y + 2*y^3 - 1"], ["x", "y"]),
        (["x - z^2", "y - z^3"], ["x", "y", "z"]),
        (["x^3 - 2*x*y", "x^2*y + x - 2*y^2"], ["x", "y"]),
        (["q0*q2 - q1^2", "q1*q3 - q2^2", "q0*q3 - q1*q2"], ["q0", "q1", "q2", "q3"]),
        (["x^2 + y^2 + z^2 - 1", "x*y*z - 1/2", "x + y - z"], ["x", "y", "z"]),
    ],
)
def test_buchberger_matches_sympy(texts, names, order):
    I = ideal(texts, names)
    ours = buchberger(I, DEGREVLEX if order == "grevlex" else LEX)
    assert set(ours.elements) == sympy_gb(I, order)


def test_buchberger_is_deterministic():
    I = ideal(["x^2 + y*z", "y^2 - x*z + 1", "z^3 - x"], ["x", "y", "z"])
    assert buchberger(I).elements == buchberger(Ideal(I.generators, I.vars)).elements


def test_resource_limit_is_explicit():
    I = ideal(["x^3 + y^2*z - 7", "y^3 - x*z^2 + 3", "z^3 - x*y + 1"], ["x", "y", "z"])
    with pytest.raises(ResourceLimitExceeded):
        buchberger(I, LEX, budget=ResourceBudget(max_basis=2, max_coeff_bits=None, max_seconds=None))


# -- sum, product ------------------------------------------------------------------


def test_sum_and_product():
    I = ideal(["x"], ["x", "y", "z"])
    assert ideal_sum(I, Ideal([], I.vars)).generators == I.generators
    assert ideal_product(I, Ideal([poly("y", I)])).generators == (poly("x*y", I),)
    J = ideal(["x", "y"], ["x", "y", "z"])
    prod = ideal_product(J, Ideal([poly("z", J)]))
    assert set(prod.generators) == {poly("x*z", J), poly("y*z", J)}
    with pytest.raises(ValueError):
        ideal_sum(I, ideal(["x"], ["x"]))


# -- saturation and elimination ---------------------------------------------------------


@pytest.mark.parametrize("method", ["rabinowitsch", "homogeneous", "auto"])
def test_saturate_examples(method):
    I = ideal(["x*y"], ["x", "y"])
    assert saturate(I, poly("x", I), method=method) == ideal(["y"], ["x", "y"])
    J = ideal(["x^2"], ["x", "y"])
    assert saturate(J, poly("x", J), method=method).is_unit()


def test_saturate_rejects_zero():
    I = ideal(["x*y"], ["x", "y"])
    with pytest.raises(ValueError):
        saturate(I, Polynomial(I.vars, {}))


def test_saturate_by_non_monomial_homogeneous():
    # <x*(x - y)> : (x - y)^oo = <x>
    I = ideal(["x^2 - x*y"], ["x", "y"])
    f = poly("x - y", I)
    for method in ("rabinowitsch", "homogeneous"):
        assert saturate(I, f, method=method) == ideal(["x"], ["x", "y"])


def test_linear_algebra_saturation_zero_dim():
    # two points (0,0) and (1,1) plus an embedded double point at the origin
    I = ideal(["x^2 - x*y", "y^2 - x*y", "x^2*y - x*y"], ["x", "y"])
    # sanity: not radical at the origin
    f = poly("x", I)
    la = saturate(I, f, method="linear-algebra")
    rb = saturate(I, f, method="rabinowitsch")
    assert la == rb
    assert la == ideal(["x - 1", "y - 1"], ["x", "y"])


def test_saturate_by_ideal_examples():
    I = ideal(["x*y", "x*z"], ["x", "y", "z"])
    J = ideal(["y", "z"], ["x", "y", "z"])
    assert saturate_by_ideal(I, J) == ideal(["x"], ["x", "y", "z"])
    assert saturate_by_ideal(I, Ideal([Polynomial.constant(I.vars, 1)])) == I
    K = ideal(["x^2*y"], ["x", "y"])
    assert saturate_by_ideal(K, ideal(["x"], ["x", "y"])) == ideal(["y"], ["x", "y"])


def test_intersect():
    I = ideal(["x"], ["x", "y"])
    J = ideal(["y"], ["x", "y"])
    assert intersect(I, J) == ideal(["x*y"], ["x", "y"])


def test_eliminate_examples():
    I = ideal(["x - y^2"], ["x", "y"])
    E = eliminate(I, ["x"])
    assert E.vars.names == ("y",) and E.is_zero()
    R = ideal(["t*x - 1", "t*y"], ["t", "x", "y"])
    assert eliminate(R, ["t"]) == ideal(["y"], ["x", "y"])


def test_conic_conormal_eliminates_to_dual():
    # N_X of the conic: generators of X, 2-minors of [q; grad], saturated by grad
    V = VariableSet(["p0", "p1", "p2", "q0", "q1", "q2"])
    P = lambda t: Polynomial.parse(t, V)
    f = P("4*p0*p2 - p1^2")
    grad = [f.diff(v) for v in ("p0", "p1", "p2")]
    q = [P("q0"), P("q1"), P("q2")]
    minors2 = [q[i] * grad[j] - q[j] * grad[i] for i in range(3) for j in range(i + 1, 3)]
    raw = Ideal([f] + minors2, V)
    N = saturate_by_ideal(raw, Ideal(grad, V))
    E = eliminate(N, ["p0", "p1", "p2"])
    assert E == ideal(["q0*q2 - q1^2"], ["q0", "q1", "q2"])


# -- dimension and degree ---------------------------------------------------------


def test_dimension_and_codimension():
    conic = ideal(["q0*q2 - q1^2"], ["q0", "q1", "q2"])
    assert dimension(conic) == 2 and codimension(conic) == 1
    cubic = ideal(["q2^2 - q1*q3", "q1*q2 - q0*q3", "q1^2 - q0*q2"], ["q0", "q1", "q2", "q3"])
    assert codimension(cubic) == 2
    pt = ideal(["q0", "q1", "q2"], ["q0", "q1", "q2"])
    assert dimension(pt) == 0
    assert dimension(ideal(["1"], ["x"])) == -1


def test_quotient_basis():
    I = ideal(["x^2", "y^3"], ["x", "y"])
    assert len(quotient_basis(I)) == 6 == degree_zero_dim(I, LEX)
    with pytest.raises(NotZeroDimensional):
        quotient_basis(ideal(["x*y"], ["x", "y"]))


def test_ideal_equality_via_bases():
    assert ideal(["x + y", "x - y"], ["x", "y"]) == ideal(["x", "y"], ["x", "y"])
    assert ideal(["x"], ["x", "y"]) != ideal(["y"], ["x", "y"])


# -- properties ------------------------------------------------------------------------


@given(small_ideals(), st.sampled_from([DEGREVLEX, LEX]))
def test_groebner_self_checks(I, order):
    G = buchberger(I, order)
    assert is_groebner_basis(G)
    for g in I.generators:
        assert normal_form(g, G).is_zero()
    if not G.is_unit():
        for g in G:
            assert g.leading_coefficient(order) == 1


@given(st.data())
def test_normal_form_idempotent_and_membership(data):
    I = data.draw(small_ideals())
    f = data.draw(polynomials(I.vars, max_degree=3))
    G = buchberger(I)
    r = normal_form(f, G)
    assert normal_form(r, G) == r
    # f - r lies in the ideal, and no term of r is divisible by a leading monomial
    assert normal_form(f - r, G).is_zero()
    leads = G.leading_monomials()
    for e in r.terms:
        assert not any(all(a <= b for a, b in zip(lm, e)) for lm in leads)


@given(st.data())
def test_saturation_is_extensive_and_idempotent(data):
    I = data.draw(small_ideals(n_vars=(2, 3), n_gens=(1, 2), max_degree=2))
    f = data.draw(polynomials(I.vars, max_degree=1, max_terms=2))
    assume(not f.is_zero())
    S = saturate(I, f, method="rabinowitsch")
    assert I.issubset(S)
    assert saturate(S, f, method="rabinowitsch") == S


@given(st.data())
def test_saturate_by_ideal_is_intersection(data):
    I = data.draw(small_ideals(n_vars=(2, 3), n_gens=(1, 2), max_degree=2))
    g1 = data.draw(polynomials(I.vars, max_degree=1, max_terms=2))
    g2 = data.draw(polynomials(I.vars, max_degree=1, max_terms=2))
    assume(not g1.is_zero() and not g2.is_zero())
    J = Ideal([g1, g2], I.vars)
    lhs = saturate_by_ideal(I, J, method="rabinowitsch")
    rhs = intersect(saturate(I, g1, method="rabinowitsch"), saturate(I, g2, method="rabinowitsch"))
    assert lhs == rhs


@given(zero_dim_ideals())
def test_zero_dim_degree_is_order_independent(I):
    expected = 1
    for g in I.generators:
        expected *= g.total_degree()
    assert degree_zero_dim(I, DEGREVLEX) == degree_zero_dim(I, LEX) == expected


@given(st.data())
def test_eliminate_drops_front_variables(data):
    I = data.draw(small_ideals(n_vars=(2, 3), n_gens=(1, 3), max_degree=2))
    front = I.vars.names[:1]
    E = eliminate(I, front)
    assert front[0] not in E.vars.names
    lifted = Ideal([g.to_vars(I.vars) for g in E.generators], I.vars)
    assert lifted.issubset(I)
