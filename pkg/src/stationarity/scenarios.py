"""Worked scenarios: the hedging example on an event A and the solar/carbon choice."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .capacity import Capacity
from .evaluate import PreferenceModel
from .streams import Act, Filtration, StateSpace, UtilityFunction, insert_at

EXAMPLE_BETA = 0.8  # needs beta * u(10) > u(7); with u = id any beta > 0.7 works


@dataclass(frozen=True, eq=False)
class HedgingScenario:
    filtration: Filtration
    t: int
    f: Act
    g: Act
    h: np.ndarray
    f_hat: Act
    g_hat: Act


def hedging_scenario(t: int = 1, states=("A", "Ac"), base: float = 0.0, n_states: int | None = None) -> HedgingScenario:
    """Acts paying 10 on A (resp. its complement) at date ``t`` and ``base`` elsewhere.

    ``h`` pays 0 on A and 7 on the complement; the hatted acts carry ``h`` at
    date ``t`` in front of the original date-``t`` payoff. With ``n_states``
    above two, A is the first state and the complement the rest.
    """
    if n_states is not None and n_states > 2:
        states = ("A",) + tuple(f"Ac{i}" for i in range(1, n_states))
    space = StateSpace(tuple(states))
    n = space.n
    in_a = np.zeros(n, dtype=bool)
    in_a[0] = True
    a_cell = frozenset([0])
    rest = frozenset(range(1, n))
    if t < 1:
        raise ValueError("the event A is only observable from date 1 on")
    filt = Filtration(space, ((frozenset(range(n)),),) + ((a_cell, rest),) * t)
    rows = np.full((t + 1, n), base)
    f_rows, g_rows = rows.copy(), rows.copy()
    f_rows[t] = np.where(in_a, 10.0, 0.0)
    g_rows[t] = np.where(in_a, 0.0, 10.0)
    f = Act(f_rows, np.full(n, base))
    g = Act(g_rows, np.full(n, base))
    h = np.where(in_a, 0.0, 7.0)
    return HedgingScenario(filt, t, f, g, h, insert_at(f, t, h, filt), insert_at(g, t, h, filt))


def symmetric_capacity(v_a: float, v_ac: float | None = None, states=("A", "Ac")) -> Capacity:
    space = StateSpace(tuple(states))
    v_ac = v_a if v_ac is None else v_ac
    return Capacity(space, [0.0, v_a, v_ac, 1.0])


def example_cdeu(v_a: float = 0.4, beta: float = EXAMPLE_BETA, states=("A", "Ac")) -> PreferenceModel:
    return PreferenceModel.cdeu(symmetric_capacity(v_a, states=states), UtilityFunction.linear(), beta)


def example_deu(p_a: float = 0.5, beta: float = EXAMPLE_BETA, states=("A", "Ac")) -> PreferenceModel:
    return PreferenceModel.deu([p_a, 1.0 - p_a], UtilityFunction.linear(), beta, StateSpace(tuple(states)))


def solar_carbon() -> dict:
    """The investment choice: before and after the date-1 tax cut ``h`` is inserted."""
    sc = hedging_scenario(t=1, states=("D", "R"))
    return {"filtration": sc.filtration, "s": sc.f, "c": sc.g, "h": sc.h,
            "s_hat": sc.f_hat, "c_hat": sc.g_hat}
