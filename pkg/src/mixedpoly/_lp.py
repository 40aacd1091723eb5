"""Small exact linear programs over the rationals (two-phase simplex, Bland's rule)."""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple


class Unbounded(Exception):
    pass


def _pivot(T: List[List[Fraction]], basis: List[int], r: int, c: int) -> None:
    pr = T[r]
    p = pr[c]
    if p != 1:
        T[r] = pr = [v / p for v in pr]
    for i, row in enumerate(T):
        if i != r and row[c] != 0:
            f = row[c]
            T[i] = [a - f * b for a, b in zip(row, pr)]
    basis[r] = c


def _run(T, basis, cost, allowed: int) -> None:
    """Minimise cost over the tableau; columns >= ``allowed`` never enter."""
    m = len(T)
    while True:
        # reduced costs: cost_j - sum_i cost_{basis_i} T[i][j]
        enter = None
        for j in range(allowed):
            rc = cost[j] - sum(cost[basis[i]] * T[i][j] for i in range(m))
            if rc < 0:
                enter = j
                break
        if enter is None:
            return
        leave, best = None, None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            raise Unbounded
        _pivot(T, basis, leave, enter)


def solve_lp(
    c: Sequence,
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
) -> Tuple[str, Optional[List[Fraction]]]:
    """Minimise c.x subject to A_eq x = b_eq, A_ub x <= b_ub, x >= 0, exactly.

    Returns (status, x) with status in {"optimal", "infeasible", "unbounded"}.
    """
    nv = len(c)
    rows = [([Fraction(v) for v in a], Fraction(b)) for a, b in zip(A_eq, b_eq)]
    n_slack = len(A_ub)
    full = []
    for a, b in rows:
        full.append((a + [Fraction(0)] * n_slack, b))
    for k, (a, b) in enumerate(zip(A_ub, b_ub)):
        s = [Fraction(0)] * n_slack
        s[k] = Fraction(1)
        full.append(([Fraction(v) for v in a] + s, Fraction(b)))
    width = nv + n_slack
    m = len(full)
    if m == 0:
        x = [Fraction(0)] * nv
        if any(Fraction(v) < 0 for v in c):
            return "unbounded", None
        return "optimal", x
    T = []
    for i, (a, b) in enumerate(full):
        if b < 0:
            a, b = [-v for v in a], -b
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        T.append(a + art + [b])
    basis = list(range(width, width + m))
    phase1 = [Fraction(0)] * width + [Fraction(1)] * m
    _run(T, basis, phase1, width + m)
    if sum(T[i][-1] for i in range(m) if basis[i] >= width) != 0:
        return "infeasible", None
    # drive remaining artificials out of the basis; drop redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= width:
            col = next((j for j in range(width) if T[i][j] != 0), None)
            if col is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, basis, i, col)
        i += 1
    T = [row[:width] + [row[-1]] for row in T]
    cost = [Fraction(v) for v in c] + [Fraction(0)] * n_slack
    try:
        _run(T, basis, cost, width)
    except Unbounded:
        return "unbounded", None
    x = [Fraction(0)] * width
    for i, b in enumerate(basis):
        x[b] = T[i][-1]
    return "optimal", x[:nv]


def is_feasible(A_eq=(), b_eq=(), A_ub=(), b_ub=(), nvars: int | None = None):
    """Feasibility of {x >= 0 : A_eq x = b_eq, A_ub x <= b_ub}; returns a point or None."""
    if nvars is None:
        nvars = len((list(A_eq) + list(A_ub))[0])
    status, x = solve_lp([0] * nvars, A_eq, b_eq, A_ub, b_ub)
    return x if status == "optimal" else None
