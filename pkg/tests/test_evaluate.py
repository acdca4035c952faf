import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import adapted_acts, betas, seeds, symmetric
from stationarity.capacity import Capacity, core_vertices, random_capacity, random_convex_capacity
from stationarity.errors import InvalidModel, NotDeterministic
from stationarity.evaluate import (INDIFFERENT, LEFT, RIGHT, PreferenceModel, PreferenceVerdict, cdeu_value,
                                   compare, deu_value, deu_value_swapped, du_value, maxmin_value, prefer,
                                   value)
from stationarity.scenarios import example_cdeu, example_deu, solar_carbon
from stationarity.streams import Act, StateSpace, UtilityFunction

LIN = UtilityFunction.linear()


def models_for(n, rng):
    p = rng.dirichlet(np.ones(n))
    return [
        PreferenceModel.deu(p, UtilityFunction.crra(0.5), 0.8),
        PreferenceModel.cdeu(random_capacity(n, rng), UtilityFunction.crra(0.5), 0.8),
        PreferenceModel.cdeu(random_convex_capacity(n, rng), UtilityFunction.crra(0.5), 0.7),
        PreferenceModel.maxmin([rng.dirichlet(np.ones(n)) for _ in range(3)], UtilityFunction.crra(0.5), 0.9),
    ]


class TestDU:
    def test_constant(self):
        m = PreferenceModel.du(UtilityFunction.crra(0.5), 0.75)
        assert du_value(Act.constant(9.0, 1), m) == pytest.approx(6.0 / 0.25)

    def test_hand_sum(self):
        m = PreferenceModel.du(LIN, 0.5)
        assert du_value(Act.deterministic([10, 20, 1], 0.0), m) == pytest.approx(20.25, abs=1e-12)

    def test_zero(self):
        assert du_value(Act.constant(0.0, 1, 3), PreferenceModel.du(LIN, 0.9)) == 0.0

    def test_rejects_uncertain_stream(self):
        with pytest.raises(NotDeterministic):
            du_value(Act([[0.0, 1.0]], [0.0, 0.0]), PreferenceModel.du(LIN, 0.9))


class TestDEU:
    def test_constant(self):
        m = PreferenceModel.deu([0.3, 0.7], UtilityFunction.crra(0.5), 0.75)
        assert deu_value(Act.constant(4.0, 2), m) == pytest.approx(4.0 / 0.25)

    def test_solar_and_carbon(self):
        sc = solar_carbon()
        m = example_deu(0.5, states=("D", "R"))
        assert deu_value(sc["s"], m) == pytest.approx(4.0, abs=1e-12)
        assert deu_value(sc["c"], m) == pytest.approx(4.0, abs=1e-12)
        assert deu_value_swapped(sc["s"], m) == pytest.approx(4.0, abs=1e-12)
        assert prefer(m, sc["s"], sc["c"]).relation == INDIFFERENT

    @given(adapted_acts(), seeds, betas)
    def test_exchange(self, case, seed, beta):
        _, act = case
        p = np.random.default_rng(seed).dirichlet(np.ones(act.n))
        m = PreferenceModel.deu(p, UtilityFunction.crra(0.5), beta)
        assert deu_value(act, m) == pytest.approx(deu_value_swapped(act, m), abs=1e-9)

    def test_invalid_probability(self):
        with pytest.raises(Exception):
            PreferenceModel.deu([0.5, 0.6], LIN, 0.8)


class TestCDEU:
    def test_example1(self, example1):
        m = example_cdeu(0.4)
        assert cdeu_value(example1.f, m) == pytest.approx(3.2, abs=1e-12)
        assert cdeu_value(example1.g, m) == pytest.approx(3.2, abs=1e-12)
        assert cdeu_value(example1.f_hat, m) == pytest.approx(5.92, abs=1e-12)
        assert cdeu_value(example1.g_hat, m) == pytest.approx(4.8, abs=1e-12)
        assert prefer(m, example1.f_hat, example1.g_hat).relation == LEFT

    def test_deu_verdict_on_hatted_acts(self, example1):
        m = example_deu(0.5)
        assert value(m, example1.f_hat) == pytest.approx(6.0, abs=1e-12)
        assert prefer(m, example1.f_hat, example1.g_hat).relation == INDIFFERENT

    @given(adapted_acts(), seeds)
    def test_additive_capacity_is_deu(self, case, seed):
        _, act = case
        p = np.random.default_rng(seed).dirichlet(np.ones(act.n))
        cd = PreferenceModel.cdeu(Capacity.from_probability(p), LIN, 0.8)
        de = PreferenceModel.deu(p, LIN, 0.8)
        assert value(cd, act) == pytest.approx(value(de, act), abs=1e-9)

    def test_state_count_checked(self):
        with pytest.raises(InvalidModel):
            value(example_cdeu(0.4), Act.constant(1.0, 3))


class TestMaxMin:
    def test_singleton_is_deu(self):
        act = Act([[1.0, 5.0], [2.0, 0.0]], [3.0, 1.0])
        mm = PreferenceModel.maxmin([[0.3, 0.7]], LIN, 0.8)
        assert maxmin_value(act, mm) == pytest.approx(value(PreferenceModel.deu([0.3, 0.7], LIN, 0.8), act))

    @given(adapted_acts(), seeds)
    def test_core_vertices_give_cdeu(self, case, seed):
        _, act = case
        v = random_convex_capacity(act.n, np.random.default_rng(seed))
        mm = PreferenceModel.maxmin(core_vertices(v), LIN, 0.8)
        assert value(mm, act) == pytest.approx(value(PreferenceModel.cdeu(v, LIN, 0.8), act), abs=1e-9)

    def test_constant(self):
        mm = PreferenceModel.maxmin([[0.1, 0.9], [0.6, 0.4]], LIN, 0.5)
        assert value(mm, Act.constant(3.0, 2)) == pytest.approx(6.0)

    def test_needs_priors(self):
        with pytest.raises(InvalidModel):
            PreferenceModel.maxmin([], LIN, 0.5)


class TestPrefer:
    def test_reflexive(self, example1):
        assert prefer(example_cdeu(0.4), example1.f, example1.f).relation == INDIFFERENT

    def test_compare(self):
        assert compare(1.0, 1.0 + 1e-10) == INDIFFERENT
        assert compare(2.0, 1.0) == LEFT and compare(1.0, 2.0) == RIGHT

    def test_verdict_consistency(self):
        with pytest.raises(ValueError):
            PreferenceVerdict(LEFT, (1.0, 2.0))

    @given(st.integers(1, 4).flatmap(lambda n: st.tuples(adapted_acts(n=n), adapted_acts(n=n))), seeds,
           st.floats(0.2, 5), st.floats(-5, 5))
    def test_affine_invariance_of_verdicts(self, pair, seed, a, b):
        (_, x), (_, y) = pair
        for m in models_for(x.n, np.random.default_rng(seed)):
            base = prefer(m, x, y)
            gap = abs(base.values[0] - base.values[1])
            assume(gap < 1e-12 or gap > 1e-6)
            assert prefer(m.with_utility(m.u.affine(a, b)), x, y).relation == base.relation

    @given(adapted_acts(), seeds)
    def test_monotone_responsiveness(self, case, seed):
        filt, act = case
        rng = np.random.default_rng(seed)
        t = int(rng.integers(0, act.horizon + 2))
        rows = np.concatenate([act.payoffs, act.tail[None, :]])
        ids = filt.cell_ids(t)
        rows[t, ids == ids[int(rng.integers(0, act.n))]] += rng.uniform(0, 5)
        raised = Act(rows[:-1], rows[-1])
        for m in models_for(act.n, rng):
            assert value(m, raised) >= value(m, act) - 1e-12


class TestSerialization:
    @pytest.mark.parametrize("model", [
        PreferenceModel.du(LIN, 0.5),
        PreferenceModel.deu([0.2, 0.8], UtilityFunction.cara(0.5), 0.9, StateSpace(("x", "y"))),
        PreferenceModel.cdeu(symmetric(0.4), LIN, 0.8),
        PreferenceModel.maxmin([[0.2, 0.8], [0.5, 0.5]], UtilityFunction.crra(2.0), 0.6),
    ])
    def test_round_trip(self, model):
        back = PreferenceModel.from_dict(model.to_dict())
        assert back.to_dict() == model.to_dict()

    def test_label_keyed_probability(self):
        m = PreferenceModel.from_dict({"kind": "DEU", "beta": 0.8, "u": {"family": "linear"},
                                       "states": ["A", "B"], "probability": {"B": 0.25, "A": 0.75}})
        np.testing.assert_allclose(m.probability, [0.75, 0.25])

    @pytest.mark.parametrize("bad", [
        {"kind": "XYZ", "beta": 0.5, "u": {"family": "linear"}},
        {"kind": "DEU", "beta": 1.5, "u": {"family": "linear"}, "probability": [1.0]},
        {"kind": "DEU", "beta": 0.5, "u": {"family": "nope"}, "probability": [1.0]},
        {"kind": "DEU", "u": {"family": "linear"}},
    ])
    def test_rejects(self, bad):
        with pytest.raises(InvalidModel):
            PreferenceModel.from_dict(bad)
