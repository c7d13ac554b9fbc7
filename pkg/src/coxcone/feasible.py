"""Dense two-phase simplex for the small feasibility problems in this package.

The linear programs here have at most a few dozen variables (rank-sized),
so a plain tableau method with Bland's anti-cycling rule is plenty.  Free
variables are handled by splitting into positive and negative parts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PIVOT_TOL = 1e-10


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    x: np.ndarray | None = None
    value: float | None = None

    @property
    def ok(self) -> bool:
        return self.status == "optimal"


def _pivot(tab: np.ndarray, basis: list[int], row: int, col: int) -> None:
    tab[row] /= tab[row, col]
    for r in range(tab.shape[0]):
        if r != row and tab[r, col] != 0.0:
            tab[r] -= tab[r, col] * tab[row]
    basis[row] = col


def _run(tab: np.ndarray, basis: list[int], ncols: int) -> str:
    """Drive the objective row (last row) to optimality with Bland's rule."""
    m = tab.shape[0] - 1
    while True:
        entering = -1
        for j in range(ncols):
            if tab[m, j] < -PIVOT_TOL:
                entering = j
                break
        if entering < 0:
            return "optimal"
        leaving = -1
        best = np.inf
        for i in range(m):
            if tab[i, entering] > PIVOT_TOL:
                ratio = tab[i, -1] / tab[i, entering]
                if ratio < best - PIVOT_TOL or (
                        abs(ratio - best) <= PIVOT_TOL
                        and (leaving < 0 or basis[i] < basis[leaving])):
                    best = ratio
                    leaving = i
        if leaving < 0:
            return "unbounded"
        _pivot(tab, basis, leaving, entering)


def _solve_standard(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> LPResult:
    """Minimize c.x subject to a x = b, x >= 0."""
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    c = np.array(c, dtype=float)
    m, n = a.shape
    flip = b < 0
    a[flip] *= -1
    b[flip] *= -1

    # phase one: artificial basis, minimize the artificial total
    tab = np.zeros((m + 1, n + m + 1))
    tab[:m, :n] = a
    tab[:m, n:n + m] = np.eye(m)
    tab[:m, -1] = b
    tab[m, n:n + m] = 1.0
    basis = list(range(n, n + m))
    for i in range(m):
        tab[m] -= tab[i]
    status = _run(tab, basis, n + m)
    if status != "optimal" or tab[m, -1] < -1e-7:
        return LPResult("infeasible")

    # expel leftover artificials; rows with no structural pivot are redundant
    keep = []
    for i in range(m):
        if basis[i] >= n:
            for j in range(n):
                if abs(tab[i, j]) > PIVOT_TOL:
                    _pivot(tab, basis, i, j)
                    break
        if basis[i] < n:
            keep.append(i)
    tab = np.vstack([tab[keep][:, list(range(n)) + [-1]],
                     np.zeros((1, n + 1))])
    basis = [basis[i] for i in keep]

    # phase two: the real objective, with basic reduced costs zeroed
    tab[-1, :n] = c
    for i, j in enumerate(basis):
        tab[-1] -= c[j] * tab[i]
    status = _run(tab, basis, n)
    if status != "optimal":
        return LPResult(status)
    x = np.zeros(n)
    for i, j in enumerate(basis):
        x[j] = tab[i, -1]
    return LPResult("optimal", x, float(c @ x))


def solve_lp(c: np.ndarray,
             a_ub: np.ndarray | None = None, b_ub: np.ndarray | None = None,
             a_eq: np.ndarray | None = None, b_eq: np.ndarray | None = None,
             ) -> LPResult:
    """Minimize c.x over free x with a_ub x <= b_ub and a_eq x = b_eq.

    Free variables are split as x = p - q with p, q >= 0 and inequalities
    get slack variables, reducing everything to standard form.
    """
    c = np.asarray(c, dtype=float)
    n = c.shape[0]
    rows_a: list[np.ndarray] = []
    rhs: list[float] = []
    n_slack = 0 if a_ub is None else np.asarray(a_ub).shape[0]
    if a_ub is not None:
        a_ub = np.asarray(a_ub, dtype=float)
        b_ub = np.asarray(b_ub, dtype=float)
        for i in range(a_ub.shape[0]):
            slack = np.zeros(n_slack)
            slack[i] = 1.0
            rows_a.append(np.concatenate([a_ub[i], -a_ub[i], slack]))
            rhs.append(float(b_ub[i]))
    if a_eq is not None:
        a_eq = np.asarray(a_eq, dtype=float)
        b_eq = np.asarray(b_eq, dtype=float)
        for i in range(a_eq.shape[0]):
            rows_a.append(np.concatenate([a_eq[i], -a_eq[i], np.zeros(n_slack)]))
            rhs.append(float(b_eq[i]))
    if not rows_a:
        # unconstrained over free variables: bounded only for a zero objective
        if np.max(np.abs(c)) <= PIVOT_TOL:
            return LPResult("optimal", np.zeros(n), 0.0)
        return LPResult("unbounded")
    a = np.array(rows_a, dtype=float)
    b = np.array(rhs, dtype=float)
    c_std = np.concatenate([c, -c, np.zeros(n_slack)])
    result = _solve_standard(a, b, c_std)
    if not result.ok:
        return result
    x = result.x[:n] - result.x[n:2 * n]
    return LPResult("optimal", x, result.value)
