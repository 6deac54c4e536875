from fractions import Fraction

import numpy as np
import pytest
from gmpy2 import mpq
from hypothesis import given

from dualmle.groebner import Ideal, NotZeroDimensional, degree_zero_dim
from dualmle.likelihood import DataVector, dual_likelihood_ideal
from dualmle.polynomial import Polynomial, VariableSet
from dualmle.solver import (
    CertificationError,
    MultipleRootError,
    certify_count,
    count_real_roots,
    eliminant,
    eliminants,
    isolate_real_roots,
    multiplication_matrix,
    solve_points,
    squarefree_part,
)
from dualmle.zoo import zoo_entry
from strategies import point_ideals, zero_dim_ideals
from closed_forms import conic_dual_point


def ideal(texts, names):
    V = VariableSet(names)
    return Ideal([Polynomial.parse(t, V) for t in texts], V)


def uni(text, name="x"):
    return Polynomial.parse(text, VariableSet([name]))


def matmul(A, B):
    n = len(A)
    return [[sum((A[i][k] * B[k][j] for k in range(n)), mpq(0)) for j in range(n)] for i in range(n)]


@pytest.fixture(scope="module")
def rc_ideal():
    return dual_likelihood_ideal(zoo_entry("rcmodel").to_model(), DataVector(["2/40", "13/40", "5/40", "20/40"]))


def test_companion_matrix():
    M = multiplication_matrix(ideal(["x^2 - 2"], ["x"]), "x")
    assert M.matrix == [[0, 2], [1, 0]]
    assert M.trace() == 0


def test_multiplication_matrix_needs_zero_dim():
    with pytest.raises(NotZeroDimensional):
        multiplication_matrix(ideal(["x*y"], ["x", "y"]), "x")


def test_rcmodel_b0_operator(rc_ideal):
    M = multiplication_matrix(rc_ideal, "b0")
    assert M.size == 3
    assert eliminant(rc_ideal, "b0").format() == "1680*b0^3 - 296*b0^2 - 58*b0 - 1"


def test_conic_dual_operator_is_the_closed_form():
    u = DataVector([1, 2, 3])
    I = dual_likelihood_ideal(zoo_entry("conic-dual").to_model(), u)
    M = multiplication_matrix(I, "b0")
    assert M.size == 1
    assert Fraction(int(M.matrix[0][0].numerator), int(M.matrix[0][0].denominator)) == conic_dual_point([1, 2, 3])[0] * 6


def test_eliminant_examples():
    I = ideal(["x - 3", "y + 1"], ["x", "y"])
    assert eliminant(I, "x").format() == "x - 3"
    assert eliminants(I)["y"].format() == "y + 1"


def test_isolate_real_roots():
    f = Polynomial.parse("100*p0^3 + 290*p0^2 + 74*p0 - 21", VariableSet(["p0"]))
    roots = isolate_real_roots(f)
    assert len(roots) == 3
    assert any(r.lo > Fraction(16, 100) and r.hi < Fraction(17, 100) for r in roots)
    assert isolate_real_roots(uni("x^2 + 1")) == []
    r = isolate_real_roots(uni("x^2 - 2"), width="1/100")
    assert len(r) == 2
    assert Fraction(-3, 2) <= r[0].lo and r[0].hi <= Fraction(-7, 5)
    assert Fraction(7, 5) <= r[1].lo and r[1].hi <= Fraction(3, 2)
    assert all(x.width < Fraction(1, 100) for x in r)


def test_isolation_of_non_squarefree_input():
    f = uni("(x - 1)^3*(x + 2)^2*(x^2 + 1)")
    assert count_real_roots(f) == 2
    assert squarefree_part(f).total_degree() == 4
    roots = isolate_real_roots(f)
    assert 1 in roots[1] and -2 in roots[0]


def test_isolated_intervals_are_disjoint():
    f = uni("(x - 1/3)*(x - 1/2)*(x - 2/3)*(x + 5)")
    roots = isolate_real_roots(f, width="1/1000")
    assert len(roots) == 4
    for a, b in zip(roots, roots[1:]):
        assert a.hi < b.lo


def test_solve_points_examples():
    pts = solve_points(ideal(["x^2 - 1", "y - x"], ["x", "y"]))
    got = sorted(tuple(round(c.real, 12) for c in p.coords) for p in pts)
    assert got == [(-1.0, -1.0), (1.0, 1.0)]
    assert pts.max_residual < 1e-12


def test_solve_points_rcmodel_table(rc_ideal):
    pts = solve_points(rc_ideal)
    assert pts.count == 3
    # b with bs = -1 (u_+ = 1 here); first row of the dual table
    rows = [tuple(c.real for c in p.coords) for p in pts]
    assert any(all(abs(a - b) < 1e-4 for a, b in zip(r, (-0.102964, 0.514232, 0.348325, 1.01064))) for r in rows)


def test_solve_points_detects_multiple_root():
    with pytest.raises(MultipleRootError):
        solve_points(ideal(["x^2"], ["x"]))


def test_solve_points_is_deterministic(rc_ideal):
    a = solve_points(rc_ideal, seed=4)
    b = solve_points(rc_ideal, seed=4)
    assert [p.coords for p in a] == [p.coords for p in b]


def test_certify_count(rc_ideal):
    rep = certify_count(solve_points(rc_ideal), rc_ideal)
    assert rep.ok and rep.count == rep.degree == 3
    assert all(rep.squarefree.values())
    I = ideal(["x^2"], ["x"])
    from dualmle.solver import CriticalPointSet

    fake = CriticalPointSet(I.vars, [], 2)
    bad = certify_count(fake, I)
    assert not bad.ok and not bad.squarefree["x"]
    with pytest.raises(CertificationError):
        certify_count(fake, I, raise_on_failure=True)


# -- properties ------------------------------------------------------------------


@given(zero_dim_ideals())
def test_multiplication_matrices_commute(I):
    mats = [multiplication_matrix(I, v).matrix for v in I.vars.names]
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            assert matmul(mats[i], mats[j]) == matmul(mats[j], mats[i])


@given(point_ideals())
def test_trace_matches_solution_sums(case):
    I, points = case
    assert degree_zero_dim(I) == len(points)
    sols = solve_points(I)
    for k, v in enumerate(I.vars.names):
        M = multiplication_matrix(I, v)
        exact = sum(p[k] for p in points)
        assert Fraction(int(M.trace().numerator), int(M.trace().denominator)) == exact
        numeric = sum(s.coords[k] for s in sols)
        assert abs(numeric - float(exact)) <= 1e-8 * max(1.0, abs(float(exact)))


@given(point_ideals())
def test_solved_points_match_construction(case):
    I, points = case
    sols = solve_points(I)
    got = sorted(tuple(round(c.real, 6) for c in s.coords) for s in sols)
    want = sorted(tuple(round(float(c), 6) for c in p) for p in points)
    assert np.allclose(got, want, atol=1e-6)
    assert all(s.residual < 1e-8 for s in sols)
    # the eliminant of x is squarefree with exactly the chosen roots
    f = eliminant(I, "x")
    assert f.total_degree() == len(points)
    assert count_real_roots(f) == len(points)
