"""Dense tableau simplex for small problems.

Solves ``max c.x  s.t.  A x <= b, x >= 0`` with ``b >= 0`` so the slack
basis is feasible from the start. Bland's rule is used for both the
entering and the leaving variable, so degenerate problems terminate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class LPSolution:
    status: str  # "optimal" or "unbounded"
    x: np.ndarray | None
    value: float | None
    duals: np.ndarray | None
    iterations: int


def maximize(c, A, b, tol: float = 1e-12, max_iter: int = 50_000) -> LPSolution:
    c = np.asarray(c, dtype=float)
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    m, n = A.shape
    if c.shape != (n,) or b.shape != (m,):
        raise ValueError("inconsistent LP dimensions")
    if np.any(b < 0):
        raise ValueError("right-hand side must be nonnegative")

    tab = np.zeros((m + 1, n + m + 1))
    tab[:m, :n] = A
    tab[:m, n:n + m] = np.eye(m)
    tab[:m, -1] = b
    tab[m, :n] = -c
    basis = np.arange(n, n + m)

    for it in range(max_iter):
        obj = tab[m, :-1]
        candidates = np.flatnonzero(obj < -tol)
        if candidates.size == 0:
            x = np.zeros(n + m)
            x[basis] = tab[:m, -1]
            return LPSolution("optimal", x[:n], float(tab[m, -1]), tab[m, n:n + m].copy(), it)
        j = candidates[0]
        col = tab[:m, j]
        rows = np.flatnonzero(col > tol)
        if rows.size == 0:
            return LPSolution("unbounded", None, None, None, it)
        ratios = tab[rows, -1] / col[rows]
        best = ratios.min()
        # ties within tolerance go to the smallest basic index
        tied = rows[ratios <= best + tol * max(1.0, abs(best))]
        r = tied[np.argmin(basis[tied])]

        tab[r] /= tab[r, j]
        others = tab[:, j].copy()
        others[r] = 0.0
        tab -= np.outer(others, tab[r])
        tab[np.abs(tab) < tol * 1e-3] = 0.0
        basis[r] = j
    raise RuntimeError("simplex iteration limit reached")
