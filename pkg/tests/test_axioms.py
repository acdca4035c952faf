import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import full_info, seeds
from stationarity.axioms import (CHAIN, HOLDS, INAPPLICABLE, VIOLATED, AxiomId, AxiomInstance, check_instance,
                                 check_monotonicity_pair, embed, falsify, nesting_check, reference_models,
                                 run_trials, sample_filtration, sample_instance, seed_corpus,
                                 sensitivity_witness, trial_instance, validate_instance)
from stationarity.config import SamplerConfig
from stationarity.errors import SamplingExhausted
from stationarity.evaluate import PreferenceModel
from stationarity.scenarios import example_cdeu, example_deu, hedging_scenario
from stationarity.streams import Act, StateSpace, UtilityFunction

LIN = UtilityFunction.linear()
STATES = StateSpace(("A", "Ac"))


def shift(axiom, sc, left, right, t=1):
    return AxiomInstance(axiom, sc.filtration, {"t": t, "left": left, "right": right, "insert": sc.h})


class TestExample1Instances:
    def test_ss_violated_for_pessimist(self, example1):
        v = check_instance(example_cdeu(0.4), shift(AxiomId.SS, example1, example1.f, example1.g))
        assert v.status == VIOLATED
        assert v.values["left"] == pytest.approx(3.2) and v.values["right"] == pytest.approx(3.2)
        assert v.values["left_after"] == pytest.approx(5.92) and v.values["right_after"] == pytest.approx(4.8)

    def test_ss_holds_for_deu(self, example1):
        assert check_instance(example_deu(0.5), shift(AxiomId.SS, example1, example1.f, example1.g)).status == HOLDS

    def test_ps_violated_for_optimist(self, example1):
        v = check_instance(example_cdeu(0.6), shift(AxiomId.PS, example1, example1.f, example1.g))
        assert v.status == VIOLATED
        assert v.values["left_after"] == pytest.approx(6.08) and v.values["right_after"] == pytest.approx(7.2)

    def test_ps_holds_for_pessimist(self, example1):
        assert check_instance(example_cdeu(0.4), shift(AxiomId.PS, example1, example1.f, example1.g)).status == HOLDS

    def test_ps_swapped_sides_is_not_an_instance(self, example1):
        # h is comonotone with f only, so f must sit on the left
        inst = shift(AxiomId.PS, example1, example1.g, example1.f)
        assert validate_instance(inst)
        assert check_instance(example_cdeu(0.6), inst).status == INAPPLICABLE

    def test_cs_rejects_example1(self, example1):
        assert validate_instance(shift(AxiomId.CS, example1, example1.f, example1.g))

    def test_kochs_needs_constant_insert(self, example1):
        issues = validate_instance(shift(AxiomId.KochS, example1, example1.f, example1.g))
        assert any("date 0" in s for s in issues) and any("constant" in s for s in issues)

    def test_sweep_sign(self, example1):
        inst = shift(AxiomId.SS, example1, example1.f, example1.g)
        for v in np.linspace(0.1, 0.9, 9):
            vals = check_instance(example_cdeu(float(v)), inst).values
            gap = vals["left_after"] - vals["right_after"]
            if 2 * v < 1 - 1e-12:
                assert gap > 0
            elif 2 * v > 1 + 1e-12:
                assert gap < 0
            else:
                assert abs(gap) < 1e-12


class TestOtherChecks:
    def test_ts_deu(self):
        d = Act.deterministic([3.0], 1.0, 2)
        d2 = Act.deterministic([0.0], 10.0, 2)
        inst = AxiomInstance(AxiomId.TS, full_info(2, 1),
                             {"x": 10.0, "y": 0.0, "x2": 0.0, "y2": 10.0, "d": d, "d2": d2})
        v = check_instance(example_deu(0.5), inst)
        assert v.status == HOLDS and v.values["left"] > v.values["right"]

    def test_ts_rejects_random_tail(self):
        d = Act([[0.0, 1.0]], [0.0, 0.0])
        inst = AxiomInstance(AxiomId.TS, full_info(2, 0), {"x": 1.0, "y": 0.0, "x2": 0.0, "y2": 1.0, "d": d, "d2": d})
        assert check_instance(example_deu(0.5), inst).status == INAPPLICABLE

    def test_ih_calibrates_and_holds_for_deu(self):
        inst = AxiomInstance(AxiomId.IH, full_info(2, 1),
                             {"t": 0, "d": Act.constant(0.0, 2, 1), "h": [5.0, 5.0], "g": [1.0, 1.0]})
        v = check_instance(example_deu(0.5), inst)
        assert v.status == HOLDS
        assert v.extra["shift"] == pytest.approx(4.0)
        assert v.values["gh"] == pytest.approx(v.values["hh"], abs=1e-9)

    def test_ih_uncertain_payoffs(self):
        filt = full_info(2, 2)
        inst = AxiomInstance(AxiomId.IH, filt, {"t": 1, "d": Act.constant(1.0, 2, 2),
                                                "h": [0.0, 10.0], "g": [10.0, 0.0]})
        # pessimistic convex capacity: hedging across dates helps, never hurts
        assert check_instance(example_cdeu(0.4), inst).status == HOLDS

    def test_ih_rejects_unmeasurable(self):
        inst = AxiomInstance(AxiomId.IH, full_info(2, 1),
                             {"t": 0, "d": Act.constant(0.0, 2, 1), "h": [0.0, 1.0], "g": [1.0, 1.0]})
        assert validate_instance(inst)

    def test_monotonicity_pair(self):
        hi = Act([[5.0, 5.0], [10.0, 3.0]], [1.0, 1.0])
        lo = Act([[5.0, 5.0], [7.0, 3.0]], [1.0, 0.0])
        assert check_monotonicity_pair(example_cdeu(0.4), hi, lo).status == HOLDS
        assert check_monotonicity_pair(example_cdeu(0.4), lo, hi).status == INAPPLICABLE

    def test_monotonicity_compares_whole_paths(self):
        # worse at date 1 but better overall in every state
        left = Act([[10.0, 10.0], [0.0, 0.0]], [0.0, 0.0])
        right = Act([[0.0, 0.0], [1.0, 1.0]], [0.0, 0.0])
        assert check_monotonicity_pair(example_deu(0.5), left, right).status == HOLDS

    def test_p5(self):
        better = Act.deterministic([3.0, 5.0], 1.0, 2)
        worse = Act.deterministic([3.0, 4.0], 1.0, 2)
        inst = AxiomInstance(AxiomId.P5, full_info(2, 1), {"left": better, "right": worse})
        assert check_instance(example_cdeu(0.4), inst).status == HOLDS

    def test_p2(self):
        inst = AxiomInstance(AxiomId.P2, full_info(1, 0), {"grid": [0.0, 1.0]})
        assert check_instance(PreferenceModel.du(LIN, 0.5), inst).status == HOLDS


class TestSensitivityWitness:
    def test_identity(self):
        x, y, d = sensitivity_witness(PreferenceModel.du(LIN, 0.5), [0, 1])
        assert (x, y) == (1.0, 0.0)
        assert d.is_deterministic() and d.tail[0] == 0.0

    def test_degenerate_tabulated(self):
        u = UtilityFunction.tabulated([0, 10], [1, 1], strict=False)
        assert sensitivity_witness(PreferenceModel.du(u, 0.5), [0, 5, 10]) is None

    def test_crra(self):
        x, y, _ = sensitivity_witness(PreferenceModel.du(UtilityFunction.crra(0.5), 0.9), [1, 4])
        assert (x, y) == (4.0, 1.0)

    def test_empty(self):
        assert sensitivity_witness(PreferenceModel.du(LIN, 0.5), []) is None


class TestSampling:
    @given(seeds, st.integers(1, 5), st.integers(0, 5))
    def test_filtration_refines(self, seed, n, T):
        filt = sample_filtration(n, T, seed)
        assert filt.horizon == T and len(filt.partition(0)) == 1

    @pytest.mark.parametrize("axiom", list(AxiomId))
    @settings(max_examples=30)
    @given(seed=seeds, n=st.integers(1, 4))
    def test_sampled_instances_are_valid(self, axiom, seed, n):
        inst = trial_instance(axiom, StateSpace.of(n), seed, 0)
        assert validate_instance(inst) == []

    @given(seeds)
    def test_kochs_insert_is_constant(self, seed):
        inst = trial_instance(AxiomId.KochS, StateSpace.of(3), seed, 0)
        x = inst.payload["insert"]
        assert inst.payload["t"] == 0 and np.all(x == x[0])

    @given(seeds)
    def test_kstat_acts_are_deterministic(self, seed):
        inst = trial_instance(AxiomId.KStat, StateSpace.of(3), seed, 0)
        assert inst.payload["left"].is_deterministic() and inst.payload["right"].is_deterministic()

    def test_exhausted_budget(self):
        filt = full_info(3, 2)
        with pytest.raises(SamplingExhausted):
            for seed in range(50):
                sample_instance(AxiomId.CS, filt, seed, SamplerConfig(budget=0))

    @pytest.mark.parametrize("axiom", list(AxiomId))
    def test_deterministic_given_seed(self, axiom):
        a = trial_instance(axiom, StateSpace.of(3), 17, 4).to_dict()
        b = trial_instance(axiom, StateSpace.of(3), 17, 4).to_dict()
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)

    def test_seed_corpus(self):
        assert len(seed_corpus(AxiomId.SS, STATES)) == 2
        assert len(seed_corpus(AxiomId.PS, STATES)) == 1
        assert seed_corpus(AxiomId.CS, STATES) == []
        assert seed_corpus(AxiomId.SS, StateSpace.of(1)) == []
        for inst in seed_corpus(AxiomId.SS, StateSpace.of(4)):
            assert validate_instance(inst) == []


class TestFalsification:
    @pytest.mark.parametrize("v, axiom, left, right", [(0.4, AxiomId.SS, 5.92, 4.8), (0.6, AxiomId.PS, 6.08, 7.2)])
    def test_found_at_trial_zero_and_replays(self, v, axiom, left, right):
        model = example_cdeu(v)
        summary = run_trials(model, axiom, 100, seed=0)
        assert summary.trial_index == 0
        report = summary.violation.to_report(model, 0, 0)
        replay = AxiomInstance.from_dict(json.loads(json.dumps(report["instance"])))
        again = check_instance(PreferenceModel.from_dict(report["model"]), replay)
        assert again.status == VIOLATED
        assert again.values == pytest.approx(report["values"])
        assert (again.values["left_after"], again.values["right_after"]) == pytest.approx((left, right))

    def test_no_corpus_for_deu(self):
        assert falsify(example_deu(0.5), AxiomId.SS, 200, seed=3) is None

    def test_grid_outside_domain(self):
        model = PreferenceModel.du(UtilityFunction.log(), 0.5)
        with pytest.raises(ValueError):
            run_trials(model, AxiomId.M, 1, 0)

    def test_counts_add_up(self):
        s = run_trials(example_cdeu(0.4), AxiomId.CS, 300, seed=1, stop_at_first=False)
        assert sum(s.counts.values()) == 300 and s.counts[VIOLATED] == 0

    @pytest.mark.parametrize("name, passes, fails", [
        ("DEU", ["M", "TS", "SS", "CS", "PS", "IH", "KochS", "KStat", "P2", "P5"], []),
        ("CDEU-convex", ["M", "TS", "CS", "PS", "IH", "KochS", "KStat"], ["SS"]),
        ("CDEU-general", ["M", "TS", "CS", "KochS", "KStat"], ["SS"]),
        ("MaxMin", ["M", "TS", "KochS", "IH", "KStat"], ["SS"]),
    ])
    def test_reference_models(self, name, passes, fails):
        model = reference_models(StateSpace.of(3), seed=5)[name]
        for ax in passes:
            assert falsify(model, ax, 400, seed=11) is None, ax
        for ax in fails:
            assert falsify(model, ax, 2000, seed=11) is not None, ax


class TestNesting:
    @pytest.mark.parametrize("i", range(len(CHAIN) - 1))
    def test_adjacent_pairs(self, i):
        report = nesting_check(CHAIN[i], CHAIN[i + 1], 150, seed=2)
        assert report.ok, report.to_dict()
        assert report.checks > 0

    def test_non_adjacent(self):
        with pytest.raises(ValueError):
            nesting_check(AxiomId.SS, AxiomId.CS, 1, 0)

    def test_embed_relabels(self, example1):
        inst = shift(AxiomId.PS, example1, example1.f, example1.g)
        assert embed(inst, AxiomId.SS).axiom == AxiomId.SS
        assert embed(inst, AxiomId.SS).payload == inst.payload
