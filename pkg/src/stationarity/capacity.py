"""Capacities on a finite state space.

A capacity is stored as a table indexed by bitmask: bit ``i`` of the index
is set when state ``i`` belongs to the event.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .config import EPS
from .errors import InvalidCapacity, InvalidDistortion, InvalidProbability, LengthMismatch, NegativeMass
from .simplex import maximize
from .streams import StateSpace, ValidationReport


def mask_of(states: Sequence[int]) -> int:
    m = 0
    for i in states:
        m |= 1 << int(i)
    return m


def members(mask: int, n: int) -> tuple[int, ...]:
    return tuple(i for i in range(n) if mask >> i & 1)


def subset_sums(p) -> np.ndarray:
    """``out[mask] = sum(p[i] for i in mask)`` for every mask."""
    p = np.asarray(p, dtype=float)
    out = np.zeros(1 << p.size)
    for i, x in enumerate(p):
        k = 1 << i
        out[k:2 * k] = out[:k] + x
    return out


def check_probability(p, n: int | None = None, eps: float = EPS) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or (n is not None and p.size != n):
        raise InvalidProbability(f"expected a probability vector over {n} states")
    if np.any(p < -eps) or abs(p.sum() - 1.0) > eps:
        raise InvalidProbability(f"not a probability vector: {p.tolist()}")
    return p


@dataclass(frozen=True, eq=False)
class Capacity:
    states: StateSpace
    table: np.ndarray

    def __post_init__(self):
        table = np.array(self.table, dtype=float)
        if table.shape != (1 << self.states.n,):
            raise InvalidCapacity(f"capacity table needs {1 << self.states.n} entries")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    @property
    def n(self) -> int:
        return self.states.n

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def __call__(self, event) -> float:
        if isinstance(event, (int, np.integer)):
            return float(self.table[event])
        return float(self.table[mask_of(self._indices(event))])

    def _indices(self, event):
        return [self.states.index(s) if isinstance(s, str) else int(s) for s in event]

    @classmethod
    def from_probability(cls, p, states: StateSpace | None = None) -> "Capacity":
        p = check_probability(p)
        states = states or StateSpace.of(p.size)
        return cls(states, subset_sums(p))

    @classmethod
    def from_values(cls, states: StateSpace, values: dict) -> "Capacity":
        """Build from ``{event: value}`` where events are iterables of labels or indices.

        The empty set and the whole space default to 0 and 1.
        """
        table = np.full(1 << states.n, np.nan)
        table[0], table[-1] = 0.0, 1.0
        for event, val in values.items():
            idx = [states.index(s) if isinstance(s, str) else int(s) for s in event]
            table[mask_of(idx)] = float(val)
        if np.isnan(table).any():
            missing = int(np.flatnonzero(np.isnan(table))[0])
            raise InvalidCapacity(f"capacity table incomplete, missing {states.names(members(missing, states.n))}")
        return cls(states, table)

    @classmethod
    def from_function(cls, states: StateSpace, fn: Callable[[frozenset], float]) -> "Capacity":
        n = states.n
        return cls(states, [fn(frozenset(members(m, n))) for m in range(1 << n)])

    def to_dict(self) -> dict:
        vals = {}
        for m in range(1, self.full):
            vals[",".join(sorted(self.states.labels[i] for i in members(m, self.n)))] = float(self.table[m])
        return {"states": list(self.states.labels), "values": vals}

    @classmethod
    def from_dict(cls, d: dict) -> "Capacity":
        states = StateSpace(tuple(d["states"]))
        values = {}
        for key, val in d.get("values", {}).items():
            labels = [s.strip() for s in key.split(",")] if key.strip() else []
            for s in labels:
                if s not in states.labels:
                    raise InvalidCapacity(f"unknown state {s!r} in capacity key {key!r}")
            values[tuple(labels)] = val
        return cls.from_values(states, values)

    def singletons(self) -> np.ndarray:
        return self.table[1 << np.arange(self.n)]


def validate_capacity(v: Capacity, eps: float = EPS) -> ValidationReport:
    """Normalization and monotonicity violations; an empty report means valid.

    Monotonicity is checked on covering pairs ``A, A + {i}``; a violation on
    any nested pair forces one on some covering pair along a chain.
    """
    report = ValidationReport()
    t = v.table
    n = v.n
    if abs(t[0]) > eps:
        report.issues.append(("normalization", "empty set", float(t[0])))
    if abs(t[-1] - 1.0) > eps:
        report.issues.append(("normalization", "whole space", float(t[-1])))
    if not np.all(np.isfinite(t)):
        report.issues.append(("non-finite values",))
        return report
    for i in range(n):
        k = 1 << i
        lower = np.flatnonzero((np.arange(1 << n) & k) == 0)
        drops = np.flatnonzero(t[lower] > t[lower | k] + eps)
        for m in lower[drops]:
            report.issues.append(("monotonicity", v.states.names(members(m, n)),
                                  v.states.names(members(m | k, n))))
    return report


def check_capacity(v: Capacity, eps: float = EPS) -> Capacity:
    report = validate_capacity(v, eps)
    if not report.ok:
        raise InvalidCapacity(f"invalid capacity: {report.issues[0]}")
    return v


def is_convex(v: Capacity, eps: float = EPS):
    """Return ``(True, None)`` or ``(False, (A, B))`` with ``v(A|B) + v(A&B) < v(A) + v(B)``.

    Uses the local form of supermodularity: it suffices to check
    ``A = S + {i}``, ``B = S + {j}`` for ``i, j`` outside ``S``.
    """
    t = v.table
    n = v.n
    idx = np.arange(1 << n)
    for i in range(n):
        for j in range(i + 1, n):
            bi, bj = 1 << i, 1 << j
            S = idx[(idx & (bi | bj)) == 0]
            gap = t[S | bi | bj] + t[S] - t[S | bi] - t[S | bj]
            bad = np.flatnonzero(gap < -eps)
            if bad.size:
                s = int(S[bad[0]])
                return False, (members(s | bi, n), members(s | bj, n))
    return True, None


def is_additive(v: Capacity, eps: float = EPS) -> bool:
    return bool(np.all(np.abs(subset_sums(v.singletons()) - v.table) <= eps))


def choquet(f, v: Capacity) -> float:
    """Choquet integral of a state-indexed vector.

    With distinct values ``a1 > ... > ak`` this is
    ``ak + sum (a_i - a_{i+1}) v({f >= a_i})``. Tied values contribute a zero
    difference, so their internal order never matters.
    """
    f = np.asarray(f, dtype=float)
    if f.shape != (v.n,):
        raise LengthMismatch(f"vector has {f.size} entries, capacity has {v.n} states")
    order = np.argsort(-f, kind="stable")
    a = f[order]
    levels = np.cumsum(np.left_shift(1, order))
    return float(a[-1] + np.dot(a[:-1] - a[1:], v.table[levels[:-1]]))


def core_contains(p, v: Capacity, eps: float = EPS) -> bool:
    p = np.asarray(p, dtype=float)
    if p.shape != (v.n,) or np.any(p < -eps) or abs(p.sum() - 1.0) > eps:
        return False
    return bool(np.all(subset_sums(p) >= v.table - eps))


def marginal_vector(v: Capacity, ordering: Sequence[int], eps: float = EPS) -> np.ndarray:
    """Increments of ``v`` along the chain of events built in ``ordering``."""
    ordering = [int(i) for i in ordering]
    if sorted(ordering) != list(range(v.n)):
        raise ValueError("ordering must be a permutation of the states")
    p = np.zeros(v.n)
    prev = 0
    for i in ordering:
        cur = prev | (1 << i)
        p[i] = v.table[cur] - v.table[prev]
        prev = cur
    if np.any(p < -eps):
        raise NegativeMass(f"marginal vector has negative mass: {p.tolist()}")
    return p


def core_vertices(v: Capacity, eps: float = EPS) -> list[np.ndarray]:
    """Distinct marginal vectors over all orderings (the core's vertices when ``v`` is convex)."""
    out, seen = [], set()
    for perm in itertools.permutations(range(v.n)):
        p = marginal_vector(v, perm, eps)
        key = tuple(np.round(p, 12))
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out


@dataclass(frozen=True)
class CoreQueryResult:
    status: str  # "ok" or "empty_core"
    value: float | None
    minimizer: np.ndarray | None
    marginal: np.ndarray | None = None  # descending-order marginal vector, convex v only
    choquet_delta: float | None = None


class CoreIdentityError(AssertionError):
    """The LP optimum disagrees with the Choquet integral for a convex capacity."""


def core_min_expectation(f, v: Capacity, eps: float = EPS, cross_check: bool = True) -> CoreQueryResult:
    """Minimize ``E_p[f]`` over the core of ``v``.

    Solved through the LP dual ``max sum_A y_A v(A) + z`` subject to
    ``sum_{A ni w} y_A + z <= f(w)``, ``y >= 0``; the primal minimizer is read
    off the dual prices. An unbounded dual means the core is empty. When ``v``
    is convex the optimum is cross-checked against the Choquet integral and the
    descending-order marginal vector.
    """
    f = np.asarray(f, dtype=float)
    if f.shape != (v.n,):
        raise LengthMismatch(f"vector has {f.size} entries, capacity has {v.n} states")
    n = v.n
    offset = f.min()
    rhs = f - offset  # shifting by a constant keeps the rhs nonnegative
    events = np.arange(1, v.full)
    A = np.empty((n, events.size + 2))
    A[:, :events.size] = (events[None, :] >> np.arange(n)[:, None]) & 1
    A[:, -2], A[:, -1] = 1.0, -1.0  # free multiplier of the total-mass equation
    c = np.concatenate([v.table[events], [1.0, -1.0]])
    sol = maximize(c, A, rhs)
    if sol.status == "unbounded":
        return CoreQueryResult("empty_core", None, None)
    p = np.clip(sol.duals, 0.0, None)
    p /= p.sum()
    value = float(sol.value + offset)

    marginal = delta = None
    if cross_check and is_convex(v, eps)[0]:
        order = np.argsort(-f, kind="stable")
        marginal = marginal_vector(v, order, eps)
        ch = choquet(f, v)
        delta = value - ch
        scale = max(1.0, float(np.abs(f).max()))
        if abs(delta) > eps * scale or abs(float(marginal @ f) - value) > eps * scale:
            raise CoreIdentityError(f"core LP value {value!r} vs Choquet {ch!r}")
    return CoreQueryResult("ok", value, p, marginal, delta)


def capacity_from_distortion(p, g: Callable[[float], float], states: StateSpace | None = None,
                             eps: float = EPS) -> Capacity:
    """``v(A) = g(p(A))`` for a distortion ``g`` with ``g(0)=0``, ``g(1)=1``, nondecreasing."""
    p = check_probability(p)
    if abs(g(0.0)) > eps or abs(g(1.0) - 1.0) > eps:
        raise InvalidDistortion("distortion must satisfy g(0) = 0 and g(1) = 1")
    sums = subset_sums(p)
    probe = np.unique(np.concatenate([np.linspace(0.0, 1.0, 201), np.clip(sums, 0.0, 1.0)]))
    gv = np.array([g(float(x)) for x in probe])
    if np.any(np.diff(gv) < -eps):
        raise InvalidDistortion("distortion must be nondecreasing on [0, 1]")
    table = np.array([g(float(min(max(s, 0.0), 1.0))) for s in sums])
    table[0], table[-1] = 0.0, 1.0
    return Capacity(states or StateSpace.of(p.size), table)


def random_capacity(n: int, rng: np.random.Generator, states: StateSpace | None = None) -> Capacity:
    """A random normalized monotone capacity (generally neither additive nor convex)."""
    full = (1 << n) - 1
    raw = rng.random(1 << n)
    table = np.zeros(1 << n)
    for m in sorted(range(1, full), key=lambda m: bin(m).count("1")):
        below = max(table[m & ~(1 << i)] for i in range(n) if m >> i & 1)
        table[m] = max(raw[m], below)
    table[full] = 1.0
    return Capacity(states or StateSpace.of(n), table)


def random_convex_capacity(n: int, rng: np.random.Generator, states: StateSpace | None = None) -> Capacity:
    """Power distortion ``x**k`` (``k >= 1``) of a random probability."""
    p = rng.dirichlet(np.ones(n))
    k = 1.0 + 3.0 * rng.random()
    return capacity_from_distortion(p, lambda x: x ** k, states)
