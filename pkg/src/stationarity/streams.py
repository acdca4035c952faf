"""Outcomes, utilities, filtrations and acts.

An act is stored as a finite payoff matrix ``payoffs[t, w]`` for dates
``0..T`` plus a per-state ``tail`` that is paid at every date after ``T``.
Everything here is immutable; the stream surgeries return new objects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .config import EPS
from .errors import DimensionMismatch, DomainError, MeasurabilityViolation




# ---------------------------------------------------------------------------
# utility functions
# ---------------------------------------------------------------------------

_FAMILIES = ("linear", "crra", "cara", "log", "tabulated")


@dataclass(frozen=True, eq=False)
class UtilityFunction:
    """Instantaneous utility ``scale * base(x) + shift`` on a real interval.

    Use the classmethod constructors; ``params`` holds the family parameters.
    """

    family: str
    params: dict = field(default_factory=dict)
    domain: tuple[float, float] = (-math.inf, math.inf)
    open_lower: bool = False
    scale: float = 1.0
    shift: float = 0.0

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown utility family {self.family!r}")
        if not self.scale > 0:
            raise ValueError("scale must be positive")
        lo, hi = self.domain
        if not lo < hi:
            raise ValueError("empty utility domain")

    # constructors ---------------------------------------------------------
    @classmethod
    def linear(cls, a: float = 1.0, b: float = 0.0) -> "UtilityFunction":
        if not a > 0:
            raise ValueError("linear utility needs a > 0")
        return cls("linear", {"a": float(a), "b": float(b)})

    @classmethod
    def crra(cls, gamma: float) -> "UtilityFunction":
        if not gamma > 0:
            raise ValueError("CRRA needs gamma > 0")
        return cls("crra", {"gamma": float(gamma)}, (0.0, math.inf), open_lower=gamma >= 1)

    @classmethod
    def cara(cls, alpha: float) -> "UtilityFunction":
        if not alpha > 0:
            raise ValueError("CARA needs alpha > 0")
        return cls("cara", {"alpha": float(alpha)})

    @classmethod
    def log(cls) -> "UtilityFunction":
        return cls("log", {}, (0.0, math.inf), open_lower=True)

    @classmethod
    def tabulated(cls, xs: Sequence[float], ys: Sequence[float], strict: bool = True) -> "UtilityFunction":
        """Piecewise-linear interpolation through ``(xs, ys)``.

        ``strict=False`` admits flat pieces; such a function is not a valid
        utility for the representations but is handy for degenerate checks.
        """
        xs = tuple(float(x) for x in xs)
        ys = tuple(float(y) for y in ys)
        if len(xs) != len(ys) or len(xs) < 2:
            raise ValueError("tabulated utility needs >= 2 matching knots")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("tabulated knots must be strictly increasing in x")
        if strict and any(b <= a for a, b in zip(ys, ys[1:])):
            raise ValueError("tabulated utility must be strictly increasing")
        if not strict and any(b < a for a, b in zip(ys, ys[1:])):
            raise ValueError("tabulated utility must be nondecreasing")
        return cls("tabulated", {"x": xs, "y": ys, "strict": strict}, (xs[0], xs[-1]))

    def affine(self, a: float, b: float) -> "UtilityFunction":
        """Return ``a * u + b``."""
        return UtilityFunction(
            self.family, dict(self.params), self.domain, self.open_lower,
            scale=self.scale * a, shift=self.shift * a + b,
        )

    # evaluation -----------------------------------------------------------
    @property
    def strictly_increasing(self) -> bool:
        return self.family != "tabulated" or self.params["strict"]

    def in_domain(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        lo, hi = self.domain
        if lo == -math.inf and hi == math.inf:
            return np.isfinite(x)
        low_ok = x > lo if self.open_lower else x >= lo
        return low_ok & (x <= hi) & np.isfinite(x)

    def check_domain(self, x) -> None:
        ok = self.in_domain(x)
        if not ok.all():
            bad = np.asarray(x, dtype=float)[~ok]
            raise DomainError(f"outcome {bad.flat[0]!r} outside utility domain {self.domain}")

    def _base(self, x: np.ndarray) -> np.ndarray:
        p = self.params
        f = self.family
        if f == "linear":
            return p["a"] * x + p["b"]
        if f == "crra":
            g = p["gamma"]
            if g == 1.0:
                return np.log(x)
            return np.power(x, 1.0 - g) / (1.0 - g)
        if f == "cara":
            a = p["alpha"]
            return -np.expm1(-a * x) / a
        if f == "log":
            return np.log(x)
        return np.interp(x, p["x"], p["y"])

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        self.check_domain(x)
        out = self.scale * self._base(x) + self.shift
        return out if out.ndim else float(out)

    def to_dict(self) -> dict:
        d = {"family": self.family}
        for k, val in self.params.items():
            d[k] = list(val) if isinstance(val, tuple) else val
        if self.scale != 1.0 or self.shift != 0.0:
            d["scale"], d["shift"] = self.scale, self.shift
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "UtilityFunction":
        fam = d.get("family")
        if fam == "linear":
            u = cls.linear(d.get("a", 1.0), d.get("b", 0.0))
        elif fam == "crra":
            u = cls.crra(d["gamma"])
        elif fam == "cara":
            u = cls.cara(d["alpha"])
        elif fam == "log":
            u = cls.log()
        elif fam == "tabulated":
            u = cls.tabulated(d["x"], d["y"], strict=d.get("strict", True))
        else:
            raise ValueError(f"unknown utility family {fam!r}")
        if "scale" in d or "shift" in d:
            u = u.affine(d.get("scale", 1.0), d.get("shift", 0.0))
        return u

    def __repr__(self):
        return f"UtilityFunction({self.to_dict()})"


def discount_factor(beta: float) -> float:
    beta = float(beta)
    if not 0.0 < beta < 1.0:
        raise ValueError(f"discount factor must lie in (0, 1), got {beta}")
    return beta


# ---------------------------------------------------------------------------
# states and information
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StateSpace:
    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(s) for s in self.labels)
        object.__setattr__(self, "labels", labels)
        if not 1 <= len(labels) <= 16:
            raise ValueError("state count must be between 1 and 16")
        if len(set(labels)) != len(labels):
            raise ValueError("state labels must be distinct")

    @classmethod
    def of(cls, n: int) -> "StateSpace":
        return cls(tuple(f"s{i + 1}" for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def names(self, cell) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in sorted(cell))


Partition = tuple[frozenset, ...]


def _normalize_partition(cells, n) -> Partition:
    cells = [frozenset(int(i) for i in c) for c in cells]
    if any(not c for c in cells):
        raise ValueError("partition cells must be nonempty")
    seen = sorted(i for c in cells for i in c)
    if seen != list(range(n)):
        raise ValueError("cells do not partition the state set")
    return tuple(sorted(cells, key=min))


@dataclass(frozen=True, eq=False)
class Filtration:
    """Increasing partitions ``partitions[0..T]`` with a trivial first entry.

    Dates beyond ``T`` use ``partitions[T]``.
    """

    states: StateSpace
    partitions: tuple[Partition, ...]

    def __post_init__(self):
        n = self.states.n
        parts = tuple(_normalize_partition(p, n) for p in self.partitions)
        if not parts:
            raise ValueError("filtration needs at least one partition")
        if len(parts[0]) != 1:
            raise ValueError("the date-0 partition must be trivial")
        ids = np.empty((len(parts), n), dtype=np.int64)
        for t, p in enumerate(parts):
            for k, cell in enumerate(p):
                ids[t, list(cell)] = k
        for t in range(len(parts) - 1):
            # refinement: every finer cell sits inside one coarser cell
            for cell in parts[t + 1]:
                if len({ids[t, i] for i in cell}) != 1:
                    raise ValueError(f"partition {t + 1} does not refine partition {t}")
        ids.setflags(write=False)
        object.__setattr__(self, "partitions", parts)
        object.__setattr__(self, "_ids", ids)
        # ids shifted by row offsets, so one scatter checks many dates at once
        dates = np.minimum(np.arange(len(parts) + 1), len(parts) - 1)
        object.__setattr__(self, "_stacked", ids[dates] + (np.arange(len(parts) + 1) * n)[:, None])

    def __eq__(self, other):
        return (isinstance(other, Filtration) and self.states == other.states
                and self.partitions == other.partitions)

    def __hash__(self):
        return hash((self.states, self.partitions))

    @classmethod
    def default(cls, states: StateSpace, horizon: int) -> "Filtration":
        """Trivial information at date 0, full information afterwards."""
        n = states.n
        full = tuple(frozenset([i]) for i in range(n))
        trivial = (frozenset(range(n)),)
        return cls(states, (trivial,) + (full,) * horizon)

    @classmethod
    def trivial(cls, states: StateSpace, horizon: int) -> "Filtration":
        return cls(states, ((frozenset(range(states.n)),),) * (horizon + 1))

    @classmethod
    def from_labels(cls, states: StateSpace, partitions) -> "Filtration":
        return cls(states, tuple(tuple(frozenset(states.index(s) for s in cell) for cell in p)
                                 for p in partitions))

    @property
    def horizon(self) -> int:
        return len(self.partitions) - 1

    @property
    def n(self) -> int:
        return self.states.n

    def partition(self, t: int) -> Partition:
        return self.partitions[min(t, self.horizon)]

    def cell_ids(self, t: int) -> np.ndarray:
        return self._ids[min(t, self.horizon)]

    def cell_count(self, t: int) -> int:
        return len(self.partition(t))

    def with_horizon(self, horizon: int) -> "Filtration":
        """Truncate, or extend by repeating the finest partition."""
        if horizon < 0:
            raise ValueError("horizon must be >= 0")
        if horizon == self.horizon:
            return self
        parts = tuple(self.partition(t) for t in range(horizon + 1))
        return Filtration(self.states, parts)

    def bad_cells(self, values, t: int) -> list[frozenset]:
        """Cells of the date-``t`` partition on which ``values`` is not constant."""
        values = np.asarray(values, dtype=float)
        if self.is_measurable(values, t):
            return []
        return [c for c in self.partition(t) if len({values[i] for i in c}) > 1]

    def is_measurable(self, values, t: int) -> bool:
        return self.rows_measurable(np.asarray(values, dtype=float)[None, :], t)

    def rows_measurable(self, rows: np.ndarray, start: int = 0) -> bool:
        """Is row ``k`` of ``rows`` measurable at date ``start + k`` for every ``k``?"""
        k = rows.shape[0]
        if start == 0 and k <= self.horizon + 2:
            ids = self._stacked[:k]
        else:
            dates = np.minimum(np.arange(start, start + k), self.horizon)
            ids = self._ids[dates] + (np.arange(k) * self.n)[:, None]
        # compare every entry with the value written last into its cell
        first = np.empty(k * self.n)
        first[ids] = rows
        return bool((first[ids] == rows).all())

    def to_dict(self) -> dict:
        return {
            "states": list(self.states.labels),
            "partitions": [[list(self.states.names(c)) for c in p] for p in self.partitions],
        }


# ---------------------------------------------------------------------------
# acts
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Act:
    """Payoff matrix ``payoffs[t, w]`` for ``t <= horizon`` and a constant tail."""

    payoffs: np.ndarray
    tail: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.payoffs, dtype=float)
        tail = np.asarray(self.tail, dtype=float)
        if p.ndim != 2 or p.shape[0] < 1:
            raise DimensionMismatch("payoffs must be a nonempty (T+1, n) matrix")
        if tail.shape != (p.shape[1],):
            raise DimensionMismatch("tail length must equal the state count")
        # one owned block: dates 0..T, then the tail as a last row
        full = np.concatenate((p, tail[None, :]))
        if not np.isfinite(full).all():
            raise ValueError("payoffs must be finite")
        full.setflags(write=False)
        object.__setattr__(self, "_full", full)
        object.__setattr__(self, "payoffs", full[:-1])
        object.__setattr__(self, "tail", full[-1])

    @classmethod
    def constant(cls, x: float, n: int, horizon: int = 0) -> "Act":
        return cls(np.full((horizon + 1, n), float(x)), np.full(n, float(x)))

    @classmethod
    def deterministic(cls, values: Sequence[float], tail: float, n: int = 1) -> "Act":
        values = np.asarray(values, dtype=float)
        return cls(np.repeat(values[:, None], n, axis=1), np.full(n, float(tail)))

    @property
    def horizon(self) -> int:
        return self.payoffs.shape[0] - 1

    @property
    def n(self) -> int:
        return self.payoffs.shape[1]

    def at(self, t: int) -> np.ndarray:
        """Payoff vector at any date, tail included."""
        return self.payoffs[t] if t <= self.horizon else self.tail

    def is_deterministic(self) -> bool:
        return bool((self.payoffs == self.payoffs[:, :1]).all() and (self.tail == self.tail[0]).all())

    def path(self, w: int) -> "Act":
        """The deterministic stream received in state ``w`` as a one-state act."""
        return Act(self.payoffs[:, w:w + 1], self.tail[w:w + 1])

    def padded(self, horizon: int) -> "Act":
        """Same stream written with a longer explicit horizon."""
        if horizon < self.horizon:
            raise ValueError("cannot pad to a shorter horizon")
        extra = np.repeat(self.tail[None, :], horizon - self.horizon, axis=0)
        return Act(np.vstack([self.payoffs, extra]), self.tail)

    def outcomes(self) -> np.ndarray:
        return np.concatenate([self.payoffs.ravel(), self.tail])

    def same_as(self, other: "Act") -> bool:
        return (self.payoffs.shape == other.payoffs.shape
                and np.array_equal(self.payoffs, other.payoffs)
                and np.array_equal(self.tail, other.tail))

    def to_dict(self) -> dict:
        return {"horizon": self.horizon, "payoffs": self.payoffs.tolist(), "tail": self.tail.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "Act":
        act = cls(d["payoffs"], d["tail"])
        if "horizon" in d and d["horizon"] != act.horizon:
            raise DimensionMismatch(f"horizon {d['horizon']} does not match {act.horizon + 1} payoff rows")
        return act

    def __repr__(self):
        return f"Act(payoffs={self.payoffs.tolist()}, tail={self.tail.tolist()})"


@dataclass
class ValidationReport:
    issues: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def __bool__(self):
        return self.ok

    def lines(self) -> list[str]:
        return [str(i) for i in self.issues]


def validate_act(act: Act, filt: Filtration) -> ValidationReport:
    """List every ``(date, cell)`` on which the act is not measurable.

    The tail is reported with date ``"tail"``.
    """
    if act.n != filt.n:
        raise DimensionMismatch(f"act has {act.n} states, filtration has {filt.n}")
    if act.horizon != filt.horizon:
        raise DimensionMismatch(f"act horizon {act.horizon} != filtration horizon {filt.horizon}")
    report = ValidationReport()
    if filt.rows_measurable(act._full, 0):
        return report
    for t in range(act.horizon + 1):
        for cell in filt.bad_cells(act.payoffs[t], t):
            report.issues.append((t, filt.states.names(cell)))
    for cell in filt.bad_cells(act.tail, act.horizon):
        report.issues.append(("tail", filt.states.names(cell)))
    return report


@lru_cache(maxsize=1024)
def _date_weights(beta: float, horizon: int) -> np.ndarray:
    # beta^t for t <= T, then the closed-form weight of the constant tail
    w = beta ** np.arange(horizon + 2)
    w[-1] /= 1.0 - beta
    w.setflags(write=False)
    return w


def util_act(act: Act, u: UtilityFunction, beta: float) -> np.ndarray:
    """Total discounted utility received in each state."""
    return _date_weights(discount_factor(beta), act.horizon) @ u(act._full)


def insert_at(act: Act, t: int, g, filt: Filtration) -> Act:
    """Insert payoff vector ``g`` at date ``t``, pushing later dates back by one."""
    g = np.asarray(g, dtype=float)
    if g.shape != (act.n,):
        raise DimensionMismatch("inserted vector must have one entry per state")
    if not 0 <= t <= act.horizon + 1:
        raise ValueError(f"insertion date {t} outside 0..{act.horizon + 1}")
    bad = filt.bad_cells(g, t)
    if bad:
        raise MeasurabilityViolation(
            f"inserted payoff is not measurable at date {t} on cell {filt.states.names(bad[0])}",
            t, filt.states.names(bad[0]))
    if t == act.horizon + 1:
        rows = np.vstack([act.payoffs, g[None, :]])
    else:
        rows = np.vstack([act.payoffs[:t], g[None, :], act.payoffs[t:]])
    return Act(rows, act.tail)


def drop_at(act: Act, t: int, filt: Filtration) -> Act:
    """Remove date ``t`` and advance every later payoff by one date.

    Advanced payoffs must be measurable at their new, coarser date.
    """
    if not 0 <= t <= act.horizon:
        raise ValueError(f"drop date {t} outside 0..{act.horizon}")
    if act.horizon == 0:
        rows = act.tail[None, :]
    else:
        rows = np.delete(act.payoffs, t, axis=0)
    new_T = rows.shape[0] - 1
    for s in range(t, new_T + 1):
        bad = filt.bad_cells(rows[s], s)
        if bad:
            cell = filt.states.names(bad[0])
            raise MeasurabilityViolation(f"payoff advanced to date {s} is not measurable on cell {cell}", s, cell)
    bad = filt.bad_cells(act.tail, new_T)
    if bad:
        cell = filt.states.names(bad[0])
        raise MeasurabilityViolation(f"tail is not measurable at date {new_T} on cell {cell}", "tail", cell)
    return Act(rows, act.tail)


def check_act(act: Act, filt: Filtration) -> None:
    """Raise ``MeasurabilityViolation`` unless the act is adapted."""
    report = validate_act(act, filt)
    if not report.ok:
        date, cell = report.issues[0]
        raise MeasurabilityViolation(f"act not measurable at date {date} on cell {cell}", date, cell)


__all__ = [
    "EPS", "UtilityFunction", "StateSpace", "Filtration", "Act", "ValidationReport",
    "discount_factor", "validate_act", "util_act", "insert_at", "drop_at", "check_act",
]
