"""Self-contained exact simplex over rationals.

Two-phase tableau method with Bland's anti-cycling rule.  Every entry is a
Fraction, so optima are exact; problem sizes here are tiny (tens of
variables), which is why no sparse or revised machinery is needed.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence


class LPInfeasible(ValueError):
    pass


class LPUnbounded(ValueError):
    pass


def _to_fraction_matrix(rows) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r: int, c: int) -> None:
        piv = self.rows[r][c]
        inv = 1 / piv
        self.rows[r] = [x * inv for x in self.rows[r]]
        self.rhs[r] *= inv
        for i in range(len(self.rows)):
            if i == r:
                continue
            f = self.rows[i][c]
            if f:
                self.rows[i] = [a - f * b for a, b in zip(self.rows[i], self.rows[r])]
                self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = c

    def minimize(self, cost: list[Fraction], allowed: Sequence[bool]) -> Fraction:
        """Bland's rule minimization over columns marked allowed."""
        m = len(self.rows)
        while True:
            # reduced costs: c_j - c_B . B^{-1} A_j
            reduced: Optional[int] = None
            for j in range(len(cost)):
                if not allowed[j]:
                    continue
                rc = cost[j] - sum(cost[self.basis[i]] * self.rows[i][j] for i in range(m))
                if rc < 0:
                    reduced = j
                    break
            if reduced is None:
                obj = sum(cost[self.basis[i]] * self.rhs[i] for i in range(m))
                return obj
            # ratio test, Bland ties by smallest basis index
            leave = None
            best = None
            for i in range(m):
                a = self.rows[i][reduced]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if best is None or ratio < best or (
                        ratio == best and self.basis[i] < self.basis[leave]
                    ):
                        best = ratio
                        leave = i
            if leave is None:
                raise LPUnbounded("objective unbounded below")
            self.pivot(leave, reduced)


def solve_lp(
    objective,
    A_ub=None,
    b_ub=None,
    A_eq=None,
    b_eq=None,
) -> tuple[Fraction, list[Fraction]]:
    """Maximize objective . x subject to A_ub x <= b_ub, A_eq x = b_eq, x >= 0.

    Returns (optimal value, an optimal vertex x).  All arithmetic exact.
    """
    c = [Fraction(x) for x in objective]
    n = len(c)
    A_ub = _to_fraction_matrix(A_ub or [])
    b_ub = [Fraction(x) for x in (b_ub or [])]
    A_eq = _to_fraction_matrix(A_eq or [])
    b_eq = [Fraction(x) for x in (b_eq or [])]

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    kinds: list[str] = []
    for row, b in zip(A_ub, b_ub):
        if b < 0:
            rows.append([-x for x in row])
            rhs.append(-b)
            kinds.append("ge")
        else:
            rows.append(list(row))
            rhs.append(b)
            kinds.append("le")
    for row, b in zip(A_eq, b_eq):
        if b < 0:
            rows.append([-x for x in row])
            rhs.append(-b)
        else:
            rows.append(list(row))
            rhs.append(b)
        kinds.append("eq")

    m = len(rows)
    n_slack = sum(1 for k in kinds if k in ("le", "ge"))
    n_art = sum(1 for k in kinds if k in ("ge", "eq"))
    width = n + n_slack + n_art
    table: list[list[Fraction]] = []
    basis: list[int] = []
    slack_at = n
    art_at = n + n_slack
    art_cols: list[int] = []
    for i, (row, kind) in enumerate(zip(rows, kinds)):
        full = row + [Fraction(0)] * (width - n)
        if kind == "le":
            full[slack_at] = Fraction(1)
            basis.append(slack_at)
            slack_at += 1
        elif kind == "ge":
            full[slack_at] = Fraction(-1)
            slack_at += 1
            full[art_at] = Fraction(1)
            basis.append(art_at)
            art_cols.append(art_at)
            art_at += 1
        else:
            full[art_at] = Fraction(1)
            basis.append(art_at)
            art_cols.append(art_at)
            art_at += 1
        table.append(full)

    tab = _Tableau(table, rhs, basis)

    if art_cols:
        phase1 = [Fraction(0)] * width
        for j in art_cols:
            phase1[j] = Fraction(1)
        allowed = [True] * width
        val = tab.minimize(phase1, allowed)
        if val != 0:
            raise LPInfeasible("no feasible point")
        # pivot artificials out of the basis if possible; drop their columns
        art_set = set(art_cols)
        for i in range(m):
            if tab.basis[i] in art_set:
                for j in range(width):
                    if j not in art_set and tab.rows[i][j] != 0:
                        tab.pivot(i, j)
                        break
        allowed = [j not in art_set for j in range(width)]
    else:
        allowed = [True] * width

    phase2 = [-c[j] if j < n else Fraction(0) for j in range(width)]
    val = tab.minimize(phase2, allowed)
    x = [Fraction(0)] * n
    for i in range(m):
        if tab.basis[i] < n:
            x[tab.basis[i]] = tab.rhs[i]
    return -val, x
