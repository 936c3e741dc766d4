"""Exact linear programming and linear algebra over exact scalars.

Dense two-phase tableau simplex with Bland's rule, so it terminates without
tolerances.  Works for ``Fraction`` and for Boltzmann field elements alike;
all sign decisions go through :func:`latticealg.scalars.sign`.
"""
from __future__ import annotations

from itertools import combinations
from typing import NamedTuple, Sequence

from .scalars import Scalar, exact, sign

__all__ = ["LPResult", "linprog_eq", "feasible_point", "rank", "solve", "basic_feasible_solutions"]


class LPResult(NamedTuple):
    status: str  # "optimal", "infeasible" or "unbounded"
    x: tuple | None = None
    value: Scalar | None = None


def _pivot(T: list[list], basis: list[int], i: int, j: int) -> None:
    row = T[i]
    p = row[j]
    T[i] = row = [v / p for v in row]
    for k, other in enumerate(T):
        if k != i:
            f = other[j]
            if f != 0:
                T[k] = [a - f * b for a, b in zip(other, row)]
    basis[i] = j


def _simplex(T: list[list], basis: list[int], cost: Sequence, allowed: int) -> str:
    """Minimise ``cost . x`` over the tableau in canonical form (Bland's rule)."""
    while True:
        entering = None
        for j in range(allowed):
            if j in basis:
                continue
            reduced = cost[j] - sum((cost[b] * T[i][j] for i, b in enumerate(basis) if cost[b] != 0), exact(0))
            if sign(reduced) < 0:
                entering = j
                break
        if entering is None:
            return "optimal"
        leave = None
        for i, row in enumerate(T):
            a = row[entering]
            if sign(a) > 0:
                ratio = row[-1] / a
                if leave is None:
                    leave = (ratio, i)
                    continue
                d = sign(ratio - leave[0])
                if d < 0 or (d == 0 and basis[i] < basis[leave[1]]):
                    leave = (ratio, i)
        if leave is None:
            return "unbounded"
        _pivot(T, basis, leave[1], entering)


def linprog_eq(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """Minimise ``c . x`` subject to ``A x = b``, ``x >= 0``, exactly."""
    m = len(A)
    n = len(c)
    c = [exact(v) for v in c]
    rows = []
    for row, rhs in zip(A, b):
        row = [exact(v) for v in row]
        rhs = exact(rhs)
        if len(row) != n:
            raise ValueError("constraint row length does not match objective")
        if sign(rhs) < 0:
            row, rhs = [-v for v in row], -rhs
        artificial = [exact(0)] * m
        artificial[len(rows)] = exact(1)
        rows.append(row + artificial + [rhs])
    basis = list(range(n, n + m))
    phase1 = [exact(0)] * n + [exact(1)] * m
    T = rows
    _simplex(T, basis, phase1, n + m)
    if sign(sum((T[i][-1] for i, bv in enumerate(basis) if bv >= n), exact(0))) > 0:
        return LPResult("infeasible")
    # drive artificials out of the basis; rows where that fails are redundant
    i = 0
    while i < len(T):
        if basis[i] >= n:
            j = next((j for j in range(n) if T[i][j] != 0), None)
            if j is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, basis, i, j)
        i += 1
    T = [row[:n] + [row[-1]] for row in T]
    status = _simplex(T, basis, c, n)
    if status == "unbounded":
        return LPResult("unbounded")
    x = [exact(0)] * n
    for i, bv in enumerate(basis):
        x[bv] = exact(T[i][-1])
    value = sum((ci * xi for ci, xi in zip(c, x)), exact(0))
    return LPResult("optimal", tuple(x), exact(value))


def feasible_point(A: Sequence[Sequence], b: Sequence) -> tuple | None:
    n = len(A[0]) if A else 0
    res = linprog_eq([0] * n, A, b)
    return res.x if res.status == "optimal" else None


def _echelon(rows: list[list]) -> tuple[list[list], list[int]]:
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pr = next((k for k in range(r, len(rows)) if rows[k][col] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        p = rows[r][col]
        rows[r] = [v / p for v in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col] != 0:
                f = rows[k][col]
                rows[k] = [a - f * bb for a, bb in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(_echelon([[exact(v) for v in r] for r in rows])[1])


def solve(A: Sequence[Sequence], b: Sequence) -> tuple | None:
    """Solve ``A x = b`` exactly.

    Returns ``None`` when inconsistent.  Raises ``ValueError`` when the
    solution is not unique.
    """
    n = len(A[0])
    aug = [[exact(v) for v in row] + [exact(rhs)] for row, rhs in zip(A, b)]
    rows, pivots = _echelon(aug)
    if n in pivots:
        return None
    if len(pivots) < n:
        raise ValueError("system is underdetermined")
    x = [exact(0)] * n
    for r, col in enumerate(pivots):
        x[col] = exact(rows[r][-1])
    return tuple(x)


def basic_feasible_solutions(A: Sequence[Sequence], b: Sequence) -> list[tuple]:
    """All vertices of ``{x >= 0 : A x = b}`` by enumerating column bases.

    Exponential in general; used only on desk-scale polytopes.
    """
    A = [[exact(v) for v in row] for row in A]
    rows, pivots = _echelon([row + [exact(rhs)] for row, rhs in zip(A, b)])
    n = len(A[0])
    if n in pivots:
        return []
    rows = [r for r in rows if any(v != 0 for v in r)]
    k = len(rows)
    out: list[tuple] = []
    for cols in combinations(range(n), k):
        sub = [[r[j] for j in cols] for r in rows]
        if rank(sub) < k:
            continue
        xs = solve(sub, [r[-1] for r in rows])
        if xs is None or any(sign(v) < 0 for v in xs):
            continue
        x = [exact(0)] * n
        for j, v in zip(cols, xs):
            x[j] = v
        x = tuple(x)
        if x not in out:
            out.append(x)
    return out
