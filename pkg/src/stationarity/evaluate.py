"""Preference functionals over acts and the relation they induce."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .capacity import Capacity, check_capacity, check_probability, choquet
from .config import EPS
from .errors import InvalidModel, NotDeterministic
from .streams import Act, StateSpace, UtilityFunction, discount_factor, util_act

KINDS = ("DU", "DEU", "CDEU", "MaxMin")

LEFT = "strictly-prefers-left"
RIGHT = "strictly-prefers-right"
INDIFFERENT = "indifferent"


@dataclass(frozen=True, eq=False)
class PreferenceModel:
    kind: str
    u: UtilityFunction
    beta: float
    probability: np.ndarray | None = None
    capacity: Capacity | None = None
    priors: tuple = ()
    states: StateSpace | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidModel(f"unknown model kind {self.kind!r}")
        try:
            object.__setattr__(self, "beta", discount_factor(self.beta))
        except ValueError as exc:
            raise InvalidModel(str(exc)) from None
        if self.kind == "DEU":
            if self.probability is None:
                raise InvalidModel("DEU needs a probability")
            p = check_probability(self.probability)
            p.setflags(write=False)
            object.__setattr__(self, "probability", p)
        elif self.kind == "CDEU":
            if self.capacity is None:
                raise InvalidModel("CDEU needs a capacity")
            check_capacity(self.capacity)
            object.__setattr__(self, "states", self.capacity.states)
        elif self.kind == "MaxMin":
            if not self.priors:
                raise InvalidModel("MaxMin needs a nonempty list of priors")
            n = len(self.priors[0])
            pri = tuple(check_probability(p, n) for p in self.priors)
            mat = np.vstack(pri)
            mat.setflags(write=False)
            object.__setattr__(self, "priors", pri)
            object.__setattr__(self, "_prior_matrix", mat)
        if self.states is not None and self.kind != "DU" and self.states.n != self.n_states:
            raise InvalidModel("state labels do not match the model's dimension")

    @classmethod
    def du(cls, u, beta):
        return cls("DU", u, beta)

    @classmethod
    def deu(cls, p, u, beta, states=None):
        return cls("DEU", u, beta, probability=np.asarray(p, dtype=float), states=states)

    @classmethod
    def cdeu(cls, v, u, beta):
        return cls("CDEU", u, beta, capacity=v)

    @classmethod
    def maxmin(cls, priors, u, beta, states=None):
        return cls("MaxMin", u, beta, priors=tuple(np.asarray(p, dtype=float) for p in priors), states=states)

    @property
    def n_states(self) -> int | None:
        if self.kind == "DEU":
            return self.probability.size
        if self.kind == "CDEU":
            return self.capacity.n
        if self.kind == "MaxMin":
            return self._prior_matrix.shape[1]
        return None

    def with_utility(self, u: UtilityFunction) -> "PreferenceModel":
        return PreferenceModel(self.kind, u, self.beta, self.probability, self.capacity, self.priors, self.states)

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "beta": self.beta, "u": self.u.to_dict()}
        if self.kind == "DEU":
            d["probability"] = self.probability.tolist()
        elif self.kind == "CDEU":
            d["capacity"] = self.capacity.to_dict()
        elif self.kind == "MaxMin":
            d["priors"] = [p.tolist() for p in self.priors]
        if self.states is not None and self.kind != "CDEU":
            d["states"] = list(self.states.labels)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "PreferenceModel":
        kind = d.get("kind")
        if "u" not in d or "beta" not in d:
            raise InvalidModel("model needs 'u' and 'beta'")
        try:
            u = UtilityFunction.from_dict(d["u"])
        except (KeyError, ValueError) as exc:
            raise InvalidModel(f"bad utility spec: {exc}") from None
        states = StateSpace(tuple(d["states"])) if "states" in d else None

        def vec(p):
            if isinstance(p, dict):
                if states is None:
                    raise InvalidModel("probabilities keyed by label need a 'states' list")
                return [p[s] for s in states.labels]
            return p

        if kind == "DU":
            return cls.du(u, d["beta"])
        if kind == "DEU":
            return cls.deu(vec(d["probability"]), u, d["beta"], states)
        if kind == "CDEU":
            return cls.cdeu(Capacity.from_dict(d["capacity"]), u, d["beta"])
        if kind == "MaxMin":
            return cls.maxmin([vec(p) for p in d["priors"]], u, d["beta"], states)
        raise InvalidModel(f"unknown model kind {kind!r}")


@dataclass(frozen=True)
class PreferenceVerdict:
    relation: str
    values: tuple[float, float]
    tolerance: float = EPS

    def __post_init__(self):
        diff = self.values[0] - self.values[1]
        expected = INDIFFERENT if abs(diff) <= self.tolerance else (LEFT if diff > 0 else RIGHT)
        if self.relation != expected:
            raise ValueError("relation inconsistent with values")


def _check_states(model: PreferenceModel, act: Act) -> None:
    n = model.n_states
    if n is not None and act.n != n:
        raise InvalidModel(f"act has {act.n} states, model has {n}")


def du_value(d: Act, model: PreferenceModel) -> float:
    """Discounted utility of a deterministic stream."""
    if not d.is_deterministic():
        raise NotDeterministic("discounted utility needs a state-independent stream")
    return float(util_act(d.path(0), model.u, model.beta)[0])


def deu_value(act: Act, model: PreferenceModel) -> float:
    """Expectation of the util act."""
    _check_states(model, act)
    return float(model.probability @ util_act(act, model.u, model.beta))


def deu_value_swapped(act: Act, model: PreferenceModel) -> float:
    """Discounted sum of per-date expected utilities, tail in closed form."""
    _check_states(model, act)
    p, u, beta = model.probability, model.u, model.beta
    terms = []
    for t in range(act.horizon + 1):
        terms.append(beta ** t * math.fsum(pw * uw for pw, uw in zip(p, u(act.payoffs[t]))))
    T = act.horizon
    terms.append(beta ** (T + 1) / (1.0 - beta) * math.fsum(pw * uw for pw, uw in zip(p, u(act.tail))))
    return math.fsum(terms)


def cdeu_value(act: Act, model: PreferenceModel) -> float:
    _check_states(model, act)
    return choquet(util_act(act, model.u, model.beta), model.capacity)


def maxmin_value(act: Act, model: PreferenceModel) -> float:
    """Minimum expected util act over the listed priors.

    The objective is linear in the prior, so the minimum over their convex
    hull is attained at one of them.
    """
    _check_states(model, act)
    return float(np.min(model._prior_matrix @ util_act(act, model.u, model.beta)))


def value(model: PreferenceModel, act: Act) -> float:
    if model.kind == "DU":
        return du_value(act, model)
    if model.kind == "DEU":
        return deu_value(act, model)
    if model.kind == "CDEU":
        return cdeu_value(act, model)
    return maxmin_value(act, model)


def compare(a: float, b: float, eps: float = EPS) -> str:
    diff = a - b
    if abs(diff) <= eps:
        return INDIFFERENT
    return LEFT if diff > 0 else RIGHT


def prefer(model: PreferenceModel, left: Act, right: Act, eps: float = EPS) -> PreferenceVerdict:
    a, b = value(model, left), value(model, right)
    return PreferenceVerdict(compare(a, b, eps), (a, b), eps)
