"""Exact structural identities for a model and its primed constructions.

Each check returns ``(ok, detail)`` so the acceptance runner can print a line
per model. All comparisons are polynomial equalities, never numeric.
"""

from dualmle.likelihood import DataVector
from dualmle.polynomial import Polynomial
from dualmle.varieties import dual_prime_from_dual, embed_prime, jacobian


def jacobian_block_form(model):
    """Jac(X') = Jac(X) padded by a zero column, plus the row (-1, ..., -1, 1)."""
    Xp = embed_prime(model)
    J = jacobian(Xp).rows()
    JX = jacobian(model).rows()
    V = Xp.variables
    n1 = len(model.variables)
    zero = Polynomial(V, {})
    one = Polynomial.constant(V, 1)
    for i, row in enumerate(JX):
        if J[i][:n1] != [e.to_vars(V) for e in row] or J[i][n1] != zero:
            return False, f"row {i} differs from Jac(X) | 0"
    if J[-1] != [-one] * n1 + [one]:
        return False, f"hyperplane row is {[str(e) for e in J[-1]]}"
    return True, f"{len(J)}x{len(J[0])}"


def dual_jacobian_factorization(model):
    """Jac(X'*) = Jac(X*)|_(b+bs) times [identity | all-ones column]."""
    Xps = dual_prime_from_dual(model)
    B = Xps.variables
    bs = Polynomial.variable(B, B.names[-1])
    images = {q: Polynomial.variable(B, b) + bs for q, b in zip(model.variables.names, B.names)}
    evaluated = [[e.substitute(images, B) for e in row] for row in jacobian(model).rows()]
    n1 = len(model.variables)
    expected = []
    for row in evaluated:
        # right factor: column j < n1 picks entry j, the last column sums the row
        expected.append(row + [sum(row, Polynomial(B, {}))])
    if jacobian(Xps).rows() != expected:
        return False, "chain-rule factorization fails"
    return True, f"{len(expected)}x{n1 + 1}"


def cone_invariance(model):
    """Each generator of X'* is unchanged by b_i -> b_i - t, bs -> bs + t."""
    Xps = dual_prime_from_dual(model)
    B = Xps.variables
    T = B.extend([B.fresh_name("t")])
    t = Polynomial.variable(T, T.names[-1])
    shift = {b: Polynomial.variable(T, b) - t for b in B.names[:-1]}
    shift[B.names[-1]] = Polynomial.variable(T, B.names[-1]) + t
    for g in Xps.generators:
        if g.substitute(shift, T) != g.to_vars(T):
            return False, f"generator {g} moves along the cone direction"
    return True, f"{len(Xps.generators)} generator(s)"


def euler_column_sums(model, data=None):
    """Columns of [grad l'_u(b); Jac(X'*)] diag(b) sum to (0, d_1 g_1, ..., d_k g_k).

    The top row is (u_0, ..., u_n, -u_+), summing to zero; each generator row
    sums to deg(g) * g, which vanishes on X'*.
    """
    Xps = dual_prime_from_dual(model)
    B = Xps.variables
    u = data or DataVector(range(1, len(model.variables) + 1))
    top = list(u) + [-u.u_plus]
    if sum(top) != 0:
        return False, "data row does not sum to zero"
    bvars = [Polynomial.variable(B, b) for b in B.names]
    for g, row in zip(Xps.generators, jacobian(Xps).rows()):
        ok, d = g.is_homogeneous()
        total = sum((bv * e for bv, e in zip(bvars, row)), Polynomial(B, {}))
        if not ok or total != g * d:
            return False, f"Euler identity fails for {g}"
    return True, "top row sums to 0, rows sum to deg*g"


CHECKS = {
    "jacobian block form": jacobian_block_form,
    "dual jacobian factorization": dual_jacobian_factorization,
    "cone invariance": cone_invariance,
    "euler column sums": euler_column_sums,
}


def all_checks(model):
    return {name: fn(model) for name, fn in CHECKS.items()}

