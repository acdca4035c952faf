"""JSON readers and writers for acts, capacities and models."""

from __future__ import annotations

import json
from pathlib import Path

from .capacity import Capacity, check_capacity
from .errors import StationarityError
from .evaluate import PreferenceModel
from .streams import Act, Filtration, StateSpace, ValidationReport, validate_act


class InputError(StationarityError):
    """A file could not be read or does not follow its schema."""


def load_json(path) -> dict:
    try:
        with open(Path(path), encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    return data


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed indentation, so equal inputs give equal bytes."""
    return json.dumps(obj, sort_keys=True, indent=2)


def act_from_dict(d: dict) -> tuple[Act, Filtration, ValidationReport]:
    """Parse ``{"states", "horizon", "partitions"?, "payoffs", "tail"}``.

    Without ``partitions`` the filtration reveals the state at date 1. The
    returned report lists adaptedness problems; it is not raised.
    """
    try:
        states = StateSpace(tuple(d["states"]))
        act = Act.from_dict(d)
        if "partitions" in d:
            filt = Filtration.from_labels(states, d["partitions"])
        else:
            filt = Filtration.default(states, act.horizon)
    except KeyError as exc:
        raise InputError(f"act is missing field {exc}") from None
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed act: {exc}") from None
    return act, filt, validate_act(act, filt)


def act_to_dict(act: Act, filt: Filtration) -> dict:
    d = filt.to_dict()
    d.update(act.to_dict())
    return d


def load_act(path) -> tuple[Act, Filtration, ValidationReport]:
    return act_from_dict(load_json(path))


def load_capacity(path) -> Capacity:
    d = load_json(path)
    try:
        return check_capacity(Capacity.from_dict(d))
    except KeyError as exc:
        raise InputError(f"capacity is missing field {exc}") from None
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed capacity: {exc}") from None


def load_model(path) -> PreferenceModel:
    d = load_json(path)
    try:
        return PreferenceModel.from_dict(d)
    except KeyError as exc:
        raise InputError(f"model is missing field {exc}") from None
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed model: {exc}") from None


def save_json(obj, path) -> None:
    Path(path).write_text(dumps(obj) + "\n", encoding="utf-8")
