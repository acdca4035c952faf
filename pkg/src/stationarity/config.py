"""Shared tolerances and run configuration."""

from __future__ import annotations

from dataclasses import dataclass, field

# Absolute tolerance for every value comparison in the package.
EPS = 1e-9

# A violation needs a gap this many times larger than EPS.
STRICT_FACTOR = 10.0


@dataclass(frozen=True)
class SamplerConfig:
    """Bounds for the random instance generators used by the axiom harness."""

    max_states: int = 4
    max_horizon: int = 4
    grid: tuple[float, ...] = (0.0, 1.0, 3.0, 7.0, 10.0)
    split_prob: float = 0.5
    # rejection attempts allowed per constrained vector
    budget: int = 200


@dataclass(frozen=True)
class RunConfig:
    command: str
    model: str | None = None
    act: str | None = None
    act2: str | None = None
    capacity: str | None = None
    objective: tuple[float, ...] | None = None
    axiom: str | None = None
    trials: int = 1000
    seed: int = 0
    eps: float = EPS
    format: str = "text"
    name: str | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.eps <= 0:
            raise ValueError("eps must be positive")
        if self.command == "axiom" and (self.trials < 1 or self.seed is None):
            raise ValueError("axiom runs need a seed and trials >= 1")
