"""Independent closed-form critical points used as test oracles."""

from fractions import Fraction


def conic_mle(u):
    """Critical point of the data u on 4*p0*p2 = p1^2, normalized to sum one.

    The matrix [[2p0, p1], [p1, 2p2]] / ps is the rank-one outer product of
    v = (2u0 + u1, u1 + 2u2) divided by 2 u_+^2.
    """
    u0, u1, u2 = (Fraction(x) for x in u)
    up = u0 + u1 + u2
    a, c = 2 * u0 + u1, u1 + 2 * u2
    return [a * a / (4 * up * up), a * c / (2 * up * up), c * c / (4 * up * up)]


def conic_dual_point(u):
    """b / (-b_s) for the conic dual critical point, b_s = -u_+."""
    u0, u1, u2 = (Fraction(x) for x in u)
    up = u0 + u1 + u2
    a, c = 2 * u0 + u1, u1 + 2 * u2
    return [4 * u0 * up / a**2, 4 * u1 * up / (2 * c * a), 4 * u2 * up / c**2]


def independence_mle(table):
    """Rank-one MLE p_ij = u_i+ u_+j / u_++^2 of a two-way table."""
    rows = [sum(map(Fraction, r)) for r in table]
    cols = [sum(Fraction(table[i][j]) for i in range(len(table))) for j in range(len(table[0]))]
    total = sum(rows)
    return [[rows[i] * cols[j] / total**2 for j in range(len(cols))] for i in range(len(rows))]


def full_model_mle(table):
    total = sum(Fraction(x) for r in table for x in r)
    return [[Fraction(x) / total for x in r] for r in table]
