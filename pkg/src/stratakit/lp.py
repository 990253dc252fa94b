"""Exact rational linear programming for face realizability.

Sign-vector faces are open polyhedra {equalities, strict inequalities}.
Strict feasibility is decided by maximizing a slack bound t subject to
g.x - t >= h for each strict row and t <= 1: the system is realizable iff
the optimum is positive. The simplex method runs over Fraction with
Bland's rule, so it terminates and never misclassifies a degenerate
face. Optimal dual multipliers are retained as infeasibility
certificates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = ["Feasibility", "strict_feasibility", "rational_rank"]

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Feasibility:
    """Outcome of a strict-feasibility check.

    feasible: whether the open system has a rational solution.
    witness: a solution point (when feasible).
    margin: the optimal slack bound t* (None if the equalities alone are
        inconsistent).
    certificate: dual multipliers (y on inequality rows, w on equality
        rows) proving t* optimal, or the phase-1 multipliers proving the
        equalities inconsistent.
    """

    feasible: bool
    witness: tuple[Fraction, ...] | None
    margin: Fraction | None
    certificate: dict | None


def _bland_simplex(tab, basis, ncols):
    """Maximize the objective stored in the last tableau row.

    tab is a list of rows [a_0..a_{ncols-1} | rhs]; the last row holds
    reduced costs (z_j - c_j negated convention: entry > 0 means entering
    improves). Entering: smallest improving index; leaving: smallest row
    index among minimal ratios. Returns False when unbounded.
    """
    m = len(tab) - 1
    while True:
        obj = tab[-1]
        enter = next((j for j in range(ncols) if obj[j] > 0), None)
        if enter is None:
            return True
        pivot_row = None
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[pivot_row]
                ):
                    best = ratio
                    pivot_row = i
        if pivot_row is None:
            return False
        _pivot(tab, basis, pivot_row, enter)


def _pivot(tab, basis, row, col):
    pv = tab[row][col]
    tab[row] = [v / pv for v in tab[row]]
    for i, r in enumerate(tab):
        if i != row and r[col]:
            f = r[col]
            tab[i] = [v - f * p for v, p in zip(r, tab[row])]
    basis[row] = col


def strict_feasibility(
    equalities: list[tuple[list[Fraction], Fraction]],
    stricts: list[tuple[list[Fraction], Fraction]],
    nvars: int,
) -> Feasibility:
    """Decide {e.x = f for equalities, g.x > h for stricts} over the
    rationals."""
    # variables: x+ (nvars), x- (nvars), t+, t-, slacks, artificials
    rows: list[tuple[list[Fraction], Fraction, str]] = []
    for g, h in stricts:
        rows.append((list(g) + [Fraction(-1)], Fraction(h), "ge"))
    for e, f in equalities:
        rows.append((list(e) + [ZERO], Fraction(f), "eq"))
    rows.append(([ZERO] * nvars + [ONE], ONE, "le"))  # t <= 1

    nfree = nvars + 1  # x and t, both sign-free
    nslack = sum(kind != "eq" for *_, kind in rows)
    ncore = 2 * nfree + nslack
    ncols = ncore + len(rows)  # + one artificial per row

    tab: list[list[Fraction]] = []
    signs = []
    slack_at = {}
    si = 0
    for ridx, (coeffs, rhs, kind) in enumerate(rows):
        row = [ZERO] * (ncols + 1)
        for j, a in enumerate(coeffs):
            row[j] = Fraction(a)
            row[nfree + j] = -Fraction(a)
        if kind != "eq":
            slack_at[ridx] = 2 * nfree + si
            row[2 * nfree + si] = -ONE if kind == "ge" else ONE
            si += 1
        row[-1] = Fraction(rhs)
        sign = 1
        if row[-1] < 0:
            row = [-v for v in row]
            sign = -1
        row[ncore + ridx] = ONE
        signs.append(sign)
        tab.append(row)

    basis = [ncore + i for i in range(len(rows))]

    # phase 1: maximize -sum(artificials)
    obj = [ZERO] * (ncols + 1)
    for j in range(ncore, ncols):
        obj[j] = -ONE
    tab.append(obj)
    for i in range(len(rows)):
        tab[-1] = [v + r for v, r in zip(tab[-1], tab[i])]
    _bland_simplex(tab, basis, ncore)  # artificials never re-enter
    # objective value is -tab[-1][-1]; equalities are consistent iff it is 0
    if tab[-1][-1] > 0:
        cert = {
            "phase": 1,
            "multipliers": [-ONE - tab[-1][ncore + i] for i in range(len(rows))],
            "signs": list(signs),
        }
        return Feasibility(False, None, None, cert)

    # drive any artificial still basic at zero level out of the basis
    for i in range(len(rows)):
        if basis[i] >= ncore:
            enter = next((j for j in range(ncore) if tab[i][j] != 0), None)
            if enter is not None:
                _pivot(tab, basis, i, enter)

    # phase 2: maximize t = t+ - t-
    obj = [ZERO] * (ncols + 1)
    obj[nvars] = ONE
    obj[nfree + nvars] = -ONE
    tab[-1] = obj
    for i in range(len(rows)):
        if basis[i] < ncore and obj[basis[i]]:
            f = obj[basis[i]]
            tab[-1] = [v - f * r for v, r in zip(tab[-1], tab[i])]
    if not _bland_simplex(tab, basis, ncore):
        raise RuntimeError("slack-bounded program cannot be unbounded")

    values = [ZERO] * ncols
    for i, col in enumerate(basis):
        values[col] = tab[i][-1]
    x = tuple(values[j] - values[nfree + j] for j in range(nvars))
    margin = values[nvars] - values[nfree + nvars]
    if margin > 0:
        return Feasibility(True, x, margin, None)
    # dual multipliers from the reduced costs of slack/artificial columns
    y = {}
    w = {}
    for ridx, (_, _, kind) in enumerate(rows):
        mult = -tab[-1][ncore + ridx] * signs[ridx]
        if kind == "eq":
            w[ridx] = mult
        else:
            y[ridx] = mult
    cert = {"phase": 2, "y": y, "w": w, "bound": margin}
    return Feasibility(False, x, margin, cert)


def rational_rank(rows: list[list[Fraction]]) -> int:
    """Rank of a rational matrix by exact Gaussian elimination."""
    M = [list(map(Fraction, r)) for r in rows]
    m = len(M)
    n = len(M[0]) if m else 0
    rank = 0
    col = 0
    while rank < m and col < n:
        pivot = next((i for i in range(rank, m) if M[i][col]), None)
        if pivot is None:
            col += 1
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        pv = M[rank][col]
        for i in range(rank + 1, m):
            if M[i][col]:
                f = M[i][col] / pv
                for j in range(col, n):
                    M[i][j] -= f * M[rank][j]
        rank += 1
        col += 1
    return rank
