"""Axiom instances, per-instance checks, and seeded falsification.

Each axiom is tested on finite instances. A check evaluates both sides with
the model and reports ``holds``, ``violated`` or ``inapplicable`` (the
instance does not meet the axiom's side conditions or hypothesis).

Tolerance policy: a difference of at most ``eps`` counts as indifference
when reading a hypothesis and as weak preference when reading a
conclusion. A violation needs a gap larger than ``STRICT_FACTOR * eps``, so
rounding noise alone never produces one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from enum import Enum
from typing import Iterable

import numpy as np
from scipy.optimize import brentq

from .capacity import random_capacity, random_convex_capacity
from .comono import are_comonotonic, comonotonic_with_tails
from .config import EPS, STRICT_FACTOR, SamplerConfig
from .errors import SamplingExhausted, StationarityError
from .evaluate import LEFT, PreferenceModel, compare, value
from .scenarios import hedging_scenario
from .streams import Act, Filtration, StateSpace, UtilityFunction, insert_at, util_act, validate_act

HOLDS, VIOLATED, INAPPLICABLE = "holds", "violated", "inapplicable"


class AxiomId(str, Enum):
    M = "M"
    TS = "TS"
    SS = "SS"
    CS = "CS"
    PS = "PS"
    IH = "IH"
    KochS = "KochS"
    KStat = "KStat"
    P2 = "P2"
    P5 = "P5"


# axioms whose instances insert a payoff at date t in front of two continuations
SHIFT_AXIOMS = (AxiomId.SS, AxiomId.PS, AxiomId.CS, AxiomId.KochS, AxiomId.KStat)
# strongest first; each implies the next
CHAIN = SHIFT_AXIOMS
# pairs whose checks coincide on embedded instances, not just imply each other
_EXACT_PAIRS = {(AxiomId.PS, AxiomId.CS), (AxiomId.CS, AxiomId.KochS), (AxiomId.KochS, AxiomId.KStat)}

_ACT_KEYS = ("left", "right", "d", "d2")
_VEC_KEYS = ("insert", "h", "g", "grid")


@dataclass(frozen=True, eq=False)
class AxiomInstance:
    """One concrete case of an axiom.

    Payload keys by axiom:

    * SS, CS, PS, KochS, KStat: ``t``, ``left``, ``right`` (acts sharing dates
      before ``t``), ``insert`` (payoff vector put at date ``t``)
    * TS: ``x``, ``y``, ``x2``, ``y2`` and deterministic acts ``d``, ``d2``
    * IH: ``t``, deterministic act ``d``, payoff vectors ``h`` and ``g``
    * M, P5: ``left``, ``right``
    * P2: ``grid``
    """

    axiom: AxiomId
    filtration: Filtration
    payload: dict

    def to_dict(self) -> dict:
        payload = {}
        for k, val in self.payload.items():
            if isinstance(val, Act):
                payload[k] = val.to_dict()
            elif isinstance(val, np.ndarray):
                payload[k] = val.tolist()
            else:
                payload[k] = val
        return {"axiom": self.axiom.value, "filtration": self.filtration.to_dict(), "payload": payload}

    @classmethod
    def from_dict(cls, d: dict) -> "AxiomInstance":
        fd = d["filtration"]
        filt = Filtration.from_labels(StateSpace(tuple(fd["states"])), fd["partitions"])
        payload = {}
        for k, val in d["payload"].items():
            if k in _ACT_KEYS:
                payload[k] = Act.from_dict(val)
            elif k in _VEC_KEYS:
                payload[k] = np.asarray(val, dtype=float)
            else:
                payload[k] = val
        return cls(AxiomId(d["axiom"]), filt, payload)


@dataclass(frozen=True, eq=False)
class Verdict:
    status: str
    instance: AxiomInstance
    values: dict = field(default_factory=dict)
    reason: str = ""
    eps: float = EPS
    extra: dict = field(default_factory=dict)

    @property
    def axiom(self) -> AxiomId:
        return self.instance.axiom

    def to_report(self, model: PreferenceModel | None = None, seed=None, trial=None) -> dict:
        report = {
            "axiom": self.axiom.value,
            "status": self.status,
            "reason": self.reason,
            "eps": self.eps,
            "values": self.values,
            "instance": self.instance.to_dict(),
        }
        if self.extra:
            report["extra"] = self.extra
        if model is not None:
            report["model"] = model.to_dict()
        if seed is not None:
            report["seed"] = seed
        if trial is not None:
            report["trial"] = trial
        return report


# ---------------------------------------------------------------------------
# instance validation
# ---------------------------------------------------------------------------

def _deterministic_rows(rows: np.ndarray) -> bool:
    return bool(np.all(rows == rows[:, :1])) if rows.size else True


def validate_instance(inst: AxiomInstance) -> list[str]:
    """Side conditions the payload must meet; an empty list means valid."""
    ax, p, filt = inst.axiom, inst.payload, inst.filtration
    issues: list[str] = []
    if ax in SHIFT_AXIOMS:
        left, right, t, x = p["left"], p["right"], int(p["t"]), np.asarray(p["insert"], dtype=float)
        for side, act in (("left", left), ("right", right)):
            try:
                rep = validate_act(act, filt)
            except StationarityError as exc:
                issues.append(f"{side}: {exc}")
                continue
            if not rep.ok:
                issues.append(f"{side} act not adapted at {rep.issues[0]}")
        if issues:
            return issues
        if not 0 <= t <= left.horizon + 1:
            issues.append(f"date {t} out of range")
            return issues
        if not filt.is_measurable(x, t):
            issues.append(f"inserted payoff not measurable at date {t}")
        if not np.array_equal(left.payoffs[:t], right.payoffs[:t]):
            issues.append("acts differ before the insertion date")
        if ax in (AxiomId.CS, AxiomId.PS) and not _deterministic_rows(left.payoffs[:t]):
            issues.append("prefix before the insertion date is not deterministic")
        if ax == AxiomId.CS:
            chk = comonotonic_with_tails(x, left, right, t)
            if not chk:
                issues.append(f"inserted payoff not comonotonic with {chk.failure}")
        if ax == AxiomId.PS:
            chk = comonotonic_with_tails(x, left, right, t, sides=("right",))
            if not chk:
                issues.append(f"inserted payoff not comonotonic with {chk.failure}")
        if ax in (AxiomId.KochS, AxiomId.KStat):
            if t != 0:
                issues.append("insertion must happen at date 0")
            if not np.all(x == x[0]):
                issues.append("inserted payoff must be a constant outcome")
        if ax == AxiomId.KStat and not (left.is_deterministic() and right.is_deterministic()):
            issues.append("acts must be deterministic")
    elif ax == AxiomId.TS:
        for k in ("d", "d2"):
            if not p[k].is_deterministic():
                issues.append(f"{k} must be deterministic")
    elif ax == AxiomId.IH:
        t, d = int(p["t"]), p["d"]
        if not d.is_deterministic():
            issues.append("d must be deterministic")
        for k in ("h", "g"):
            if not filt.is_measurable(p[k], t):
                issues.append(f"{k} not measurable at date {t}")
    elif ax in (AxiomId.M, AxiomId.P5):
        left, right = p["left"], p["right"]
        if left.horizon != right.horizon or left.n != right.n:
            issues.append("acts must share horizon and states")
        elif ax == AxiomId.P5:
            if not (left.is_deterministic() and right.is_deterministic()):
                issues.append("acts must be deterministic")
        else:
            for side, act in (("left", left), ("right", right)):
                rep = validate_act(act, filt.with_horizon(act.horizon))
                if not rep.ok:
                    issues.append(f"{side} act not adapted at {rep.issues[0]}")
    elif ax == AxiomId.P2:
        if len(p["grid"]) == 0:
            issues.append("empty outcome grid")
    return issues


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

def _biconditional(vals: dict, eps: float) -> str | None:
    """Reason string if ``left >= right  <=>  left_after >= right_after`` fails (both directions)."""
    s = STRICT_FACTOR * eps
    d0 = vals["left"] - vals["right"]
    d1 = vals["left_after"] - vals["right_after"]
    if d0 >= -eps and d1 < -s:
        return "left weakly preferred before, right strictly preferred after"
    if d0 <= eps and d1 > s:
        return "right weakly preferred before, left strictly preferred after"
    if d1 >= -eps and d0 < -s:
        return "left weakly preferred after, right strictly preferred before"
    if d1 <= eps and d0 > s:
        return "right weakly preferred after, left strictly preferred before"
    return None


def _shift_values(model, inst) -> dict:
    p, filt = inst.payload, inst.filtration
    t, x = int(p["t"]), np.asarray(p["insert"], dtype=float)
    left_after = insert_at(p["left"], t, x, filt)
    right_after = insert_at(p["right"], t, x, filt)
    return {
        "left": value(model, p["left"]),
        "right": value(model, p["right"]),
        "left_after": value(model, left_after),
        "right_after": value(model, right_after),
    }


def _check_shift(model, inst, eps) -> Verdict:
    vals = _shift_values(model, inst)
    ax = inst.axiom
    if ax == AxiomId.PS:
        p = inst.payload
        two_sided = comonotonic_with_tails(p["insert"], p["left"], p["right"], int(p["t"]))
        if not two_sided:
            # one-sided part only: left >= right  =>  left_after >= right_after
            d0 = vals["left"] - vals["right"]
            d1 = vals["left_after"] - vals["right_after"]
            if d0 < -eps:
                return Verdict(INAPPLICABLE, inst, vals, "hypothesis left >= right not met", eps)
            if d1 < -STRICT_FACTOR * eps:
                return Verdict(VIOLATED, inst, vals,
                               "left weakly preferred before, right strictly preferred after", eps)
            return Verdict(HOLDS, inst, vals, "", eps)
    reason = _biconditional(vals, eps)
    return Verdict(VIOLATED if reason else HOLDS, inst, vals, reason or "", eps)


def _det(values: Iterable[float], tail: float, n: int) -> Act:
    return Act.deterministic(list(values), tail, n)


def _check_ts(model, inst, eps) -> Verdict:
    p = inst.payload
    n = p["d"].n

    def stream(a, b, d):
        return _det([a, b, *d.payoffs[:, 0]], d.tail[0], n)

    vals = {
        "left": value(model, stream(p["x"], p["y"], p["d"])),
        "right": value(model, stream(p["x2"], p["y2"], p["d"])),
        "left_after": value(model, stream(p["x"], p["y"], p["d2"])),
        "right_after": value(model, stream(p["x2"], p["y2"], p["d2"])),
    }
    reason = _biconditional(vals, eps)
    return Verdict(VIOLATED if reason else HOLDS, inst, vals, reason or "", eps)


def _ih_act(d: Act, t: int, first, second) -> Act:
    d = d.padded(max(d.horizon, t + 1))
    rows = d.payoffs.copy()
    rows[t], rows[t + 1] = first, second
    return Act(rows, d.tail)


def _calibrate_shift(model, d, t, h, g, eps):
    """Constant ``c`` with ``(g+c, g+c)`` indifferent to ``(h, h)``, or ``None``."""
    target = value(model, _ih_act(d, t, h, h))

    def gap(c):
        gc = g + c
        return value(model, _ih_act(d, t, gc, gc)) - target

    g0 = gap(0.0)
    if abs(g0) <= eps:
        return 0.0, g0
    lo_dom, hi_dom = model.u.domain
    # smallest admissible shift keeps g + c inside the domain
    c_min = lo_dom - g.min()
    if model.u.open_lower and math.isfinite(c_min):
        c_min += 1e-9 * max(1.0, abs(lo_dom))
    c_max = hi_dom - g.max()
    if g0 > 0:
        a = -1.0
        while gap(max(a, c_min)) > 0:
            if a <= c_min or a < -1e6:
                return None
            a *= 2.0
        a, b = max(a, c_min), 0.0
    else:
        b = 1.0
        while gap(min(b, c_max)) < 0:
            if b >= c_max or b > 1e6:
                return None
            b *= 2.0
        a, b = 0.0, min(b, c_max)
    c = brentq(gap, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    return c, gap(c)


def _check_ih(model, inst, eps) -> Verdict:
    p = inst.payload
    t, d = int(p["t"]), p["d"]
    h = np.asarray(p["h"], dtype=float)
    g = np.asarray(p["g"], dtype=float)
    cal = _calibrate_shift(model, d, t, h, g, eps)
    if cal is None:
        return Verdict(INAPPLICABLE, inst, {}, "no shift of g reaches indifference inside the domain", eps)
    c, residual = cal
    if abs(residual) > eps:
        return Verdict(INAPPLICABLE, inst, {"residual": residual}, "indifference not reached", eps)
    gc = g + c
    vals = {
        "hh": value(model, _ih_act(d, t, h, h)),
        "gg": value(model, _ih_act(d, t, gc, gc)),
        "gh": value(model, _ih_act(d, t, gc, h)),
    }
    extra = {"shift": c, "g_calibrated": gc.tolist()}
    if vals["gh"] - vals["hh"] < -STRICT_FACTOR * eps:
        return Verdict(VIOLATED, inst, vals, "(g, h) strictly worse than (h, h) despite indifference", eps, extra)
    return Verdict(HOLDS, inst, vals, "", eps, extra)


def check_monotonicity_pair(model: PreferenceModel, left: Act, right: Act, eps: float = EPS,
                            filt: Filtration | None = None) -> Verdict:
    """State-by-state dominance of the payoff paths must carry over to the acts."""
    filt = filt or Filtration.default(StateSpace.of(left.n), left.horizon)
    inst = AxiomInstance(AxiomId.M, filt, {"left": left, "right": right})
    return _check_m(model, inst, eps)


def _check_m(model, inst, eps) -> Verdict:
    left, right = inst.payload["left"], inst.payload["right"]
    # entry w of the util act is the discounted utility of the path in state w
    gaps = (util_act(left, model.u, model.beta) - util_act(right, model.u, model.beta)).tolist()
    if min(gaps) < -eps:
        return Verdict(INAPPLICABLE, inst, {"path_gaps": gaps}, "some state's path is worse on the left", eps)
    vals = {"left": value(model, left), "right": value(model, right), "path_gaps": gaps}
    if vals["left"] - vals["right"] < -STRICT_FACTOR * eps:
        return Verdict(VIOLATED, inst, vals, "dominating act strictly worse", eps)
    return Verdict(HOLDS, inst, vals, "", eps)


def _check_p5(model, inst, eps) -> Verdict:
    left, right = inst.payload["left"], inst.payload["right"]
    T = left.horizon
    du = np.concatenate([model.u(left.payoffs[:, 0]), [model.u(left.tail[0])]])
    dv = np.concatenate([model.u(right.payoffs[:, 0]), [model.u(right.tail[0])]])
    diff = du - dv
    if np.any(diff < -eps):
        return Verdict(INAPPLICABLE, inst, {}, "left is not better at every date", eps)
    weights = model.beta ** np.arange(T + 2)
    strict_gap = float(np.max(weights * diff))
    vals = {"left": value(model, left), "right": value(model, right), "strict_gap": strict_gap}
    delta = vals["left"] - vals["right"]
    s = STRICT_FACTOR * eps
    if delta < -s:
        return Verdict(VIOLATED, inst, vals, "datewise better stream strictly worse", eps)
    if strict_gap > s and delta <= eps:
        return Verdict(VIOLATED, inst, vals, "strictly better at some date but not strictly preferred", eps)
    return Verdict(HOLDS, inst, vals, "", eps)


def sensitivity_witness(model: PreferenceModel, grid, eps: float = EPS):
    """``(x, y, d)`` with ``(x, d)`` strictly preferred to ``(y, d)``, ``d`` constant at the lowest grid value."""
    grid = sorted({float(x) for x in grid})
    if not grid:
        return None
    n = model.n_states or 1
    d = Act.constant(grid[0], n)
    for x in reversed(grid):
        for y in grid:
            if x == y:
                continue
            left = _det([x], grid[0], n)
            right = _det([y], grid[0], n)
            if compare(value(model, left), value(model, right), eps) == LEFT:
                return x, y, d
    return None


def _check_p2(model, inst, eps) -> Verdict:
    wit = sensitivity_witness(model, inst.payload["grid"], eps)
    if wit is None:
        return Verdict(VIOLATED, inst, {}, "no strict preference at date 0 on the grid", eps)
    x, y, _ = wit
    return Verdict(HOLDS, inst, {"x": x, "y": y}, "", eps)


def check_instance(model: PreferenceModel, inst: AxiomInstance, eps: float = EPS) -> Verdict:
    issues = validate_instance(inst)
    if issues:
        return Verdict(INAPPLICABLE, inst, {}, "; ".join(issues), eps)
    ax = inst.axiom
    if ax in SHIFT_AXIOMS:
        return _check_shift(model, inst, eps)
    if ax == AxiomId.TS:
        return _check_ts(model, inst, eps)
    if ax == AxiomId.IH:
        return _check_ih(model, inst, eps)
    if ax == AxiomId.M:
        return _check_m(model, inst, eps)
    if ax == AxiomId.P5:
        return _check_p5(model, inst, eps)
    return _check_p2(model, inst, eps)


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def sample_filtration(n: int, horizon: int, rng, split_prob: float = 0.5,
                      states: StateSpace | None = None) -> Filtration:
    """Random refining partitions: each cell splits in two with probability ``split_prob`` per date."""
    rng = _rng(rng)
    states = states or StateSpace.of(n)
    cells = [list(range(n))]
    parts = [tuple(frozenset(c) for c in cells)]
    for _ in range(horizon):
        new = []
        for c in cells:
            if len(c) > 1 and rng.random() < split_prob:
                perm = rng.permutation(c)
                k = int(rng.integers(1, len(c)))
                new += [sorted(perm[:k].tolist()), sorted(perm[k:].tolist())]
            else:
                new.append(c)
        cells = new
        parts.append(tuple(frozenset(c) for c in cells))
    return _filtration(states, tuple(parts))


@lru_cache(maxsize=4096)
def _filtration(states: StateSpace, parts: tuple) -> Filtration:
    # small state spaces repeat the same few filtrations; build each once
    return Filtration(states, parts)


def _measurable(filt: Filtration, t: int, rng, grid) -> np.ndarray:
    ids = filt.cell_ids(t)
    return _draw(rng, grid, filt.cell_count(t))[ids]


def _random_rows(filt: Filtration, start: int, rng, grid) -> tuple[np.ndarray, np.ndarray]:
    T = filt.horizon
    rows = np.array([_measurable(filt, t, rng, grid) for t in range(start, T + 1)]).reshape(-1, filt.n)
    tail = _measurable(filt, T, rng, grid)
    return rows, tail


def _comonotone_rows(h: np.ndarray, filt: Filtration, dates, rng, grid, budget: int) -> np.ndarray:
    """Rejection-sample, for each date, a measurable vector comonotonic with ``h``.

    Proposals are either a nondecreasing image of ``h`` (measurable at every
    date from the one ``h`` is measurable at) or an unconstrained draw.
    """
    levels = np.unique(h)
    up = h[:, None] > h[None, :]
    out = np.empty((len(dates), h.size))
    for i, s in enumerate(dates):
        for _ in range(budget):
            if rng.random() < 0.5:
                image = np.sort(_draw(rng, grid, levels.size))
                cand = image[np.searchsorted(levels, h)]
            else:
                cand = _measurable(filt, s, rng, grid)
            if not (up & (cand[:, None] < cand[None, :])).any():
                out[i] = cand
                break
        else:
            raise SamplingExhausted(f"no comonotonic vector found in {budget} draws")
    return out


def _draw(rng, grid, size=None):
    """Uniform draws from ``grid``; ``rng.random`` is much cheaper than ``rng.integers`` here."""
    if size is None:
        return grid[int(rng.random() * grid.size)]
    return grid[(rng.random(size) * grid.size).astype(np.intp)]


def _lower(vals: np.ndarray, rng, grid) -> np.ndarray:
    """For each value, a uniform grid point at or below it (``grid`` sorted)."""
    count = np.searchsorted(grid, vals, side="right")
    return grid[(rng.random(vals.size) * count).astype(np.intp)]


def _constant_rows(k: int, n: int, rng, grid) -> np.ndarray:
    return np.repeat(_draw(rng, grid, k)[:, None], n, axis=1).reshape(k, n)


def sample_instance(axiom, filt: Filtration, seed=None, config: SamplerConfig | None = None) -> AxiomInstance:
    """Draw one instance of ``axiom`` adapted to ``filt``; deterministic given the seed."""
    axiom = AxiomId(axiom)
    cfg = config or SamplerConfig()
    rng = _rng(seed)
    grid = np.unique(np.asarray(cfg.grid, dtype=float))
    n, T = filt.n, filt.horizon

    if axiom in SHIFT_AXIOMS:
        t = 0 if axiom in (AxiomId.KochS, AxiomId.KStat) else int(rng.integers(0, T + 1))
        if axiom == AxiomId.KStat:
            x = np.full(n, _draw(rng, grid))
            left = Act(_constant_rows(T + 1, n, rng, grid), np.full(n, _draw(rng, grid)))
            right = Act(_constant_rows(T + 1, n, rng, grid), np.full(n, _draw(rng, grid)))
            return AxiomInstance(axiom, filt, {"t": 0, "left": left, "right": right, "insert": x})
        if axiom == AxiomId.KochS:
            x = np.full(n, _draw(rng, grid))
        elif axiom in (AxiomId.CS, AxiomId.PS) and rng.random() < 0.3:
            x = np.full(n, _draw(rng, grid))
        else:
            x = _measurable(filt, t, rng, grid)
        if axiom in (AxiomId.CS, AxiomId.PS):
            prefix = _constant_rows(t, n, rng, grid)
        else:
            prefix = np.array([_measurable(filt, s, rng, grid) for s in range(t)]).reshape(t, n)

        def continuation(constrained: bool):
            if not constrained:
                return _random_rows(filt, t, rng, grid)
            rows = _comonotone_rows(x, filt, list(range(t, T + 1)) + [T], rng, grid, cfg.budget)
            return rows[:-1], rows[-1]

        left_constrained = axiom == AxiomId.CS or (axiom == AxiomId.PS and rng.random() < 0.5)
        right_constrained = axiom in (AxiomId.CS, AxiomId.PS)
        lrows, ltail = continuation(left_constrained)
        rrows, rtail = continuation(right_constrained)
        left = Act(np.vstack([prefix, lrows]), ltail)
        right = Act(np.vstack([prefix, rrows]), rtail)
        return AxiomInstance(axiom, filt, {"t": t, "left": left, "right": right, "insert": x})

    if axiom == AxiomId.TS:
        x, y, x2, y2 = (float(v) for v in _draw(rng, grid, 4))
        d = Act(_constant_rows(T + 1, n, rng, grid), np.full(n, _draw(rng, grid)))
        d2 = Act(_constant_rows(T + 1, n, rng, grid), np.full(n, _draw(rng, grid)))
        return AxiomInstance(axiom, filt, {"x": x, "y": y, "x2": x2, "y2": y2, "d": d, "d2": d2})

    if axiom == AxiomId.IH:
        t = int(rng.integers(0, max(T, 1)))
        H = max(T, t + 1)
        d = Act(_constant_rows(H + 1, n, rng, grid), np.full(n, _draw(rng, grid)))
        h = _measurable(filt, t, rng, grid)
        g = _measurable(filt, t, rng, grid)
        return AxiomInstance(axiom, filt.with_horizon(H), {"t": t, "d": d, "h": h, "g": g})

    if axiom == AxiomId.M:
        rows, tail = _random_rows(filt, 0, rng, grid)
        left = Act(rows, tail)
        if rng.random() < 0.5:
            rrows, rtail = _random_rows(filt, 0, rng, grid)
        else:
            # lower left's payoff on randomly chosen cells
            full = np.concatenate((rows, tail[None, :]))
            for s in range(T + 2):
                ids = filt.cell_ids(s)
                cells = np.empty(filt.cell_count(s))
                cells[ids] = full[s]
                pick = rng.random(cells.size) < 0.5
                cells[pick] = _lower(cells[pick], rng, grid)
                full[s] = cells[ids]
            rrows, rtail = full[:-1], full[-1]
        return AxiomInstance(axiom, filt, {"left": left, "right": Act(rrows, rtail)})

    if axiom == AxiomId.P5:
        vals = _draw(rng, grid, T + 2)
        if rng.random() < 0.5:
            other = _draw(rng, grid, T + 2)
        else:
            other = _lower(vals, rng, grid)
        left = _det(vals[:-1], vals[-1], n)
        right = _det(other[:-1], other[-1], n)
        return AxiomInstance(axiom, filt, {"left": left, "right": right})

    return AxiomInstance(axiom, filt, {"grid": [float(v) for v in grid]})


def seed_corpus(axiom, states: StateSpace) -> list[AxiomInstance]:
    """Hand-built instances tried before random ones: the temporal-hedging example."""
    axiom = AxiomId(axiom)
    n = states.n
    if n < 2 or axiom not in (AxiomId.SS, AxiomId.PS):
        return []
    sc = hedging_scenario(t=1, n_states=n)
    filt = Filtration(states, sc.filtration.partitions)
    out = [AxiomInstance(axiom, filt, {"t": 1, "left": sc.f, "right": sc.g, "insert": sc.h})]
    if axiom == AxiomId.SS:
        out.append(AxiomInstance(axiom, filt, {"t": 1, "left": sc.g, "right": sc.f, "insert": sc.h}))
    return out


# ---------------------------------------------------------------------------
# falsification
# ---------------------------------------------------------------------------

@dataclass
class FalsificationSummary:
    axiom: AxiomId
    trials: int
    seed: int
    counts: dict
    violation: Verdict | None = None
    trial_index: int | None = None

    def to_dict(self, model: PreferenceModel | None = None) -> dict:
        d = {"axiom": self.axiom.value, "trials": self.trials, "seed": self.seed, "counts": self.counts}
        if self.violation is not None:
            d["violation"] = self.violation.to_report(model, self.seed, self.trial_index)
        else:
            d["violation"] = None
        return d


def _model_states(model: PreferenceModel, n_states: int | None) -> StateSpace:
    if model.states is not None:
        return model.states
    n = model.n_states or n_states or 1
    return StateSpace.of(n)


def trial_instance(axiom, states: StateSpace, seed: int, trial: int,
                   config: SamplerConfig | None = None) -> AxiomInstance:
    """The random instance used at ``trial``; independent of every other trial."""
    cfg = config or SamplerConfig()
    rng = np.random.default_rng([seed, trial])
    horizon = int(rng.integers(0, cfg.max_horizon + 1))
    filt = sample_filtration(states.n, horizon, rng, cfg.split_prob, states)
    return sample_instance(axiom, filt, rng, cfg)


def run_trials(model: PreferenceModel, axiom, trials: int, seed: int, config: SamplerConfig | None = None,
               eps: float = EPS, n_states: int | None = None, stop_at_first: bool = True,
               use_corpus: bool = True) -> FalsificationSummary:
    axiom = AxiomId(axiom)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    cfg = config or SamplerConfig()
    if not np.all(model.u.in_domain(np.asarray(cfg.grid))):
        raise ValueError("sampler grid leaves the utility domain")
    states = _model_states(model, n_states)
    corpus = seed_corpus(axiom, states) if use_corpus else []
    counts = {HOLDS: 0, VIOLATED: 0, INAPPLICABLE: 0}
    summary = FalsificationSummary(axiom, trials, seed, counts)
    for k in range(trials):
        inst = corpus[k] if k < len(corpus) else trial_instance(axiom, states, seed, k, cfg)
        verdict = check_instance(model, inst, eps)
        counts[verdict.status] += 1
        if verdict.status == VIOLATED and summary.violation is None:
            summary.violation, summary.trial_index = verdict, k
            if stop_at_first:
                break
    return summary


def falsify(model: PreferenceModel, axiom, trials: int, seed: int, config: SamplerConfig | None = None,
            eps: float = EPS, n_states: int | None = None) -> Verdict | None:
    """First violated verdict over the seeded corpus and ``trials`` random instances, or ``None``."""
    return run_trials(model, axiom, trials, seed, config, eps, n_states).violation


# ---------------------------------------------------------------------------
# implication chain
# ---------------------------------------------------------------------------

def embed(inst: AxiomInstance, stronger) -> AxiomInstance:
    """Read an instance of a weaker stationarity axiom as one of the next stronger axiom."""
    return AxiomInstance(AxiomId(stronger), inst.filtration, dict(inst.payload))


def reference_models(states: StateSpace, seed: int = 0) -> dict[str, PreferenceModel]:
    """A small zoo of models on ``states`` used to cross-check verdicts."""
    rng = np.random.default_rng([seed, states.n, 7919])
    n = states.n
    models = {
        "DEU": PreferenceModel.deu(rng.dirichlet(np.ones(n)), UtilityFunction.crra(0.5), 0.8, states),
        "CDEU-convex": PreferenceModel.cdeu(random_convex_capacity(n, rng, states), UtilityFunction.linear(), 0.7),
        "CDEU-general": PreferenceModel.cdeu(random_capacity(n, rng, states), UtilityFunction.cara(0.2), 0.85),
        "MaxMin": PreferenceModel.maxmin([rng.dirichlet(np.ones(n)) for _ in range(3)],
                                         UtilityFunction.linear(), 0.75, states),
    }
    return models


@dataclass
class NestingReport:
    stronger: AxiomId
    weaker: AxiomId
    trials: int
    exact: bool
    structural_failures: list = field(default_factory=list)
    implication_failures: list = field(default_factory=list)
    verdict_mismatches: list = field(default_factory=list)
    checks: int = 0

    @property
    def ok(self) -> bool:
        if self.structural_failures or self.implication_failures:
            return False
        return not (self.exact and self.verdict_mismatches)

    def to_dict(self) -> dict:
        return {"stronger": self.stronger.value, "weaker": self.weaker.value, "trials": self.trials,
                "exact": self.exact, "checks": self.checks, "ok": self.ok,
                "structural_failures": len(self.structural_failures),
                "implication_failures": len(self.implication_failures),
                "verdict_mismatches": len(self.verdict_mismatches)}


def nesting_check(stronger, weaker, trials: int, seed: int, config: SamplerConfig | None = None,
                  eps: float = EPS, models: dict | None = None) -> NestingReport:
    """Check that sampled instances of ``weaker`` embed as valid instances of ``stronger``.

    On every embedded instance and every model, a violation of the weaker
    axiom must come with a violation of the stronger one. For pairs whose
    checks coincide the verdicts must match exactly.
    """
    stronger, weaker = AxiomId(stronger), AxiomId(weaker)
    pos = CHAIN.index(stronger)
    if pos + 1 >= len(CHAIN) or CHAIN[pos + 1] != weaker:
        raise ValueError(f"{stronger.value} -> {weaker.value} is not an adjacent pair of the chain")
    cfg = config or SamplerConfig()
    report = NestingReport(stronger, weaker, trials, (stronger, weaker) in _EXACT_PAIRS)
    zoo = {}
    for k in range(trials):
        rng = np.random.default_rng([seed, k, 31])
        if models is not None:
            n = next(iter(models.values())).n_states
        else:
            n = int(rng.integers(2, cfg.max_states + 1))
        states = StateSpace.of(n)
        if models is None and n not in zoo:
            zoo[n] = reference_models(states, seed)
        pool = models if models is not None else zoo[n]
        inst = trial_instance(weaker, states, seed, k, cfg)
        if validate_instance(inst):
            report.structural_failures.append((k, "sampled instance invalid", validate_instance(inst)))
            continue
        emb = embed(inst, stronger)
        issues = validate_instance(emb)
        if issues:
            report.structural_failures.append((k, issues))
            continue
        for name, model in pool.items():
            vw = check_instance(model, inst, eps)
            vs = check_instance(model, emb, eps)
            report.checks += 1
            if vw.status == VIOLATED and vs.status != VIOLATED:
                report.implication_failures.append((k, name, vw.status, vs.status))
            if vw.status != vs.status:
                report.verdict_mismatches.append((k, name, vw.status, vs.status))
    return report
