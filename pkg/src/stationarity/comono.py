"""Comonotonicity of state-indexed payoffs."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatch
from .streams import Act


@dataclass(frozen=True)
class ComonoVerdict:
    comonotonic: bool
    # (w, w2) with f[w] > f[w2] and g[w2] > g[w]
    witness: tuple[int, int] | None = None

    def __bool__(self):
        return self.comonotonic


def are_comonotonic(f, g, tol: float = 0.0) -> ComonoVerdict:
    """No pair of states is ranked in opposite directions by ``f`` and ``g``.

    Differences of size at most ``tol`` count as ties.
    """
    f = np.asarray(f, dtype=float)
    g = np.asarray(g, dtype=float)
    if f.shape != g.shape or f.ndim != 1:
        raise LengthMismatch(f"cannot compare vectors of shapes {f.shape} and {g.shape}")
    df = f[:, None] - f[None, :]
    dg = g[:, None] - g[None, :]
    bad = (df > tol) & (dg < -tol)
    if bad.any():
        w, w2 = np.argwhere(bad)[0]
        return ComonoVerdict(False, (int(w), int(w2)))
    return ComonoVerdict(True)


@dataclass(frozen=True)
class TailCheck:
    ok: bool
    # (side, date or "tail", witness) of the first failure
    failure: tuple | None = None

    def __bool__(self):
        return self.ok


def comonotonic_with_tails(h, left: Act, right: Act, t: int,
                           sides: tuple[str, ...] = ("left", "right")) -> TailCheck:
    """Is ``h`` comonotonic with every payoff of the chosen acts from date ``t`` on, tails included?"""
    h = np.asarray(h, dtype=float)
    acts = [left if side == "left" else right for side in sides]
    if all(act.n == h.size for act in acts):
        # fast path: all rows at once, fall through to locate a witness
        rows = np.concatenate([np.concatenate((act.payoffs[t:], act.tail[None, :])) for act in acts])
        dh = h[:, None] - h[None, :]
        dr = rows[:, :, None] - rows[:, None, :]
        if not ((dh > 0) & (dr < 0)).any():
            return TailCheck(True)
    for side in sides:
        act = left if side == "left" else right
        if act.n != h.size:
            raise LengthMismatch("inserted vector and act disagree on the state count")
        for i in range(t, act.horizon + 1):
            verdict = are_comonotonic(h, act.payoffs[i])
            if not verdict:
                return TailCheck(False, (side, i, verdict.witness))
        verdict = are_comonotonic(h, act.tail)
        if not verdict:
            return TailCheck(False, (side, "tail", verdict.witness))
    return TailCheck(True)
