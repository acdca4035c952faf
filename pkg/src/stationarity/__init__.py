"""Stationarity axioms for intertemporal choice under uncertainty.

Acts are payoff streams adapted to a filtration. They are valued by
discounted utility (DU), discounted expected utility (DEU), Choquet
discounted expected utility (CDEU), or a MaxMin model, and the
stationarity-type axioms can be checked and falsified against each model.
"""

from .axioms import (AxiomId, AxiomInstance, Verdict, check_instance, check_monotonicity_pair, falsify,
                     nesting_check, run_trials, sample_filtration, sample_instance, sensitivity_witness)
from .capacity import (Capacity, capacity_from_distortion, choquet, core_min_expectation, is_convex,
                       marginal_vector, validate_capacity)
from .comono import are_comonotonic, comonotonic_with_tails
from .config import EPS, RunConfig, SamplerConfig
from .evaluate import (INDIFFERENT, LEFT, RIGHT, PreferenceModel, PreferenceVerdict, cdeu_value, deu_value,
                       deu_value_swapped, du_value, maxmin_value, prefer, value)
from .streams import (Act, Filtration, StateSpace, UtilityFunction, discount_factor, drop_at, insert_at,
                      util_act, validate_act)

__all__ = [
    "Act", "AxiomId", "AxiomInstance", "Capacity", "EPS", "Filtration", "INDIFFERENT", "LEFT",
    "PreferenceModel", "PreferenceVerdict", "RIGHT", "RunConfig", "SamplerConfig", "StateSpace",
    "UtilityFunction", "Verdict", "are_comonotonic", "capacity_from_distortion", "cdeu_value",
    "check_instance", "check_monotonicity_pair", "choquet", "comonotonic_with_tails", "core_min_expectation",
    "deu_value", "deu_value_swapped", "discount_factor", "drop_at", "du_value", "falsify", "insert_at",
    "is_convex", "marginal_vector", "maxmin_value", "nesting_check", "prefer", "run_trials",
    "sample_filtration", "sample_instance", "sensitivity_witness", "util_act", "validate_act",
    "validate_capacity", "value",
]
