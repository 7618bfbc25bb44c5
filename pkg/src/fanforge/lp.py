"""Exact rational linear programming.

A small two-phase simplex over Fraction with Bland's anticycling rule
(smallest-index entering column, smallest basic-variable tie break on the
ratio test).  Termination is guaranteed and every answer is exact, so
feasibility answers double as combinatorial certificates: a basic feasible
solution is supported on linearly independent columns, and an infeasible
system yields a Farkas vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import ONE, ZERO, Vec, vec

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"


@dataclass
class LPResult:
    status: str
    x: Vec | None = None          # primal solution over the original variables
    objective: Fraction | None = None
    dual: Vec | None = None       # y with y.A >= c on the original columns
    farkas: Vec | None = None     # when infeasible: y.A >= 0 and y.b < 0


def _pivot(T, rhs, basis, row, col):
    piv = T[row][col]
    inv = 1 / piv
    T[row] = [x * inv for x in T[row]]
    rhs[row] *= inv
    for i in range(len(T)):
        if i != row and T[i][col] != 0:
            f = T[i][col]
            T[i] = [a - f * b for a, b in zip(T[i], T[row])]
            rhs[i] -= f * rhs[row]
    basis[row] = col


def _reduced_costs(T, basis, cost):
    m = len(T)
    ncols = len(cost)
    rc = list(cost)
    for i in range(m):
        cb = cost[basis[i]]
        if cb != 0:
            for j in range(ncols):
                if T[i][j] != 0:
                    rc[j] -= cb * T[i][j]
    return rc


def _bland_loop(T, rhs, basis, cost, allowed):
    """Run simplex pivots (maximization) until optimal or unbounded."""
    while True:
        rc = _reduced_costs(T, basis, cost)
        enter = next((j for j in allowed if rc[j] > 0), None)
        if enter is None:
            return OPTIMAL
        leave = None
        best = None
        for i in range(len(T)):
            if T[i][enter] > 0:
                ratio = rhs[i] / T[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            return UNBOUNDED
        _pivot(T, rhs, basis, leave, enter)


def simplex_max(A: Sequence[Sequence], b: Sequence, c: Sequence) -> LPResult:
    """Maximize c.x subject to A x = b, x >= 0, all data rational.

    Returns the optimal basic solution together with the dual vector
    y = c_B B^{-1} (indexed like the rows of A), or a Farkas certificate
    when the system is infeasible.
    """
    m = len(A)
    n = len(c)
    rows = [[Fraction(x) for x in row] for row in A]
    rhs = [Fraction(v) for v in b]
    flipped = []
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]
            flipped.append(i)
    # artificial columns n..n+m-1 start as the identity basis and stay in the
    # tableau afterwards: the final columns under them are B^{-1}, which is
    # what dual extraction needs.
    T = [rows[i] + [ONE if k == i else ZERO for k in range(m)] for i in range(m)]
    basis = [n + i for i in range(m)]
    cost1 = [ZERO] * n + [Fraction(-1)] * m
    allowed = list(range(n + m))
    _bland_loop(T, rhs, basis, cost1, allowed)

    def dual_vector(cost):
        y = []
        for k in range(m):
            yk = sum((cost[basis[i]] * T[i][n + k] for i in range(m)), ZERO)
            y.append(-yk if k in flipped else yk)
        return tuple(y)

    phase1_obj = sum((-rhs[i] for i in range(m) if basis[i] >= n), ZERO)
    if phase1_obj < 0:
        # y = c_B B^{-1} of phase 1 satisfies y.A >= 0 and y.b = phase1_obj < 0
        return LPResult(INFEASIBLE, farkas=dual_vector(cost1))

    # drive zero-valued artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is not None:
                _pivot(T, rhs, basis, i, col)
            # else: redundant row; the inert artificial stays basic at 0

    cost2 = [Fraction(x) for x in c] + [ZERO] * m
    status = _bland_loop(T, rhs, basis, cost2, list(range(n)))
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [ZERO] * n
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = rhs[i]
    obj = sum((cost2[j] * x[j] for j in range(n)), ZERO)
    return LPResult(OPTIMAL, x=tuple(x), objective=obj, dual=dual_vector(cost2))


def solve_nonneg(columns: Sequence[Sequence], target: Sequence) -> Vec | None:
    """Exact nonnegative solution of sum_j x_j columns[j] = target.

    The answer is a basic feasible solution, so its support is automatically
    a linearly independent subset of the columns.  None when infeasible.
    """
    dim = len(target)
    A = [[Fraction(col[i]) for col in columns] for i in range(dim)]
    res = simplex_max(A, target, [ZERO] * len(columns))
    if res.status == INFEASIBLE:
        return None
    return res.x


def strict_feasible(
    strict: Sequence[Sequence],
    weak: Sequence[Sequence],
    eqs: Sequence[Sequence],
    dim: int,
) -> tuple[Vec | None, dict]:
    """Find x with <s,x> > 0, <w,x> >= 0, <e,x> = 0, or certify none exists.

    Maximizes a slack t subject to <s_i,x> >= t and t <= 1; the strict system
    is solvable iff the maximum is positive.  When it is 0, the returned
    certificate carries multipliers (y on strict, z on weak, mu on eqs) with
    y, z >= 0, sum(y) >= 1 and sum_i y_i s_i + sum_j z_j w_j + sum_k mu_k e_k = 0,
    which proves infeasibility of the strict system.
    """
    strict = [vec(s) for s in strict]
    weak = [vec(w) for w in weak]
    eqs = [vec(e) for e in eqs]
    if not strict:
        return vzero_witness(dim), {}
    ns, nw = len(strict), len(weak)
    # variables: u (dim), v (dim), t, slacks for strict rows, slacks for weak
    # rows, slack for the cap t <= 1
    nvars = 2 * dim + 1 + ns + nw + 1
    t_col = 2 * dim
    rows = []
    rhs = []
    for i, s in enumerate(strict):
        row = [ZERO] * nvars
        for d in range(dim):
            row[d] = s[d]
            row[dim + d] = -s[d]
        row[t_col] = Fraction(-1)
        row[t_col + 1 + i] = Fraction(-1)
        rows.append(row)
        rhs.append(ZERO)
    for j, w in enumerate(weak):
        row = [ZERO] * nvars
        for d in range(dim):
            row[d] = w[d]
            row[dim + d] = -w[d]
        row[t_col + 1 + ns + j] = Fraction(-1)
        rows.append(row)
        rhs.append(ZERO)
    for e in eqs:
        row = [ZERO] * nvars
        for d in range(dim):
            row[d] = e[d]
            row[dim + d] = -e[d]
        rows.append(row)
        rhs.append(ZERO)
    cap = [ZERO] * nvars
    cap[t_col] = ONE
    cap[-1] = ONE
    rows.append(cap)
    rhs.append(ONE)
    cost = [ZERO] * nvars
    cost[t_col] = ONE
    res = simplex_max(rows, rhs, cost)
    assert res.status == OPTIMAL, "the slack LP is always feasible and bounded"
    if res.objective > 0:
        x = tuple(res.x[d] - res.x[dim + d] for d in range(dim))
        return x, {}
    y = res.dual
    cert = {
        "strict": tuple(-y[i] for i in range(ns)),
        "weak": tuple(-y[ns + j] for j in range(nw)),
        "eqs": tuple(-y[ns + nw + k] for k in range(len(eqs))),
    }
    return None, cert


def vzero_witness(dim: int) -> Vec:
    return (ZERO,) * dim
