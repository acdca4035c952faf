import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from stationarity.capacity import Capacity, random_capacity, random_convex_capacity
from stationarity.scenarios import hedging_scenario
from stationarity.streams import Act, Filtration, StateSpace

settings.register_profile("default", deadline=None, max_examples=100,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

GRID = (0.0, 1.0, 3.0, 7.0, 10.0)

payoff = st.floats(min_value=-50, max_value=50, allow_nan=False, allow_infinity=False)
seeds = st.integers(min_value=0, max_value=2**32 - 1)
betas = st.floats(min_value=0.05, max_value=0.95)


def vectors(n, elements=payoff):
    return st.lists(elements, min_size=n, max_size=n).map(np.array)


@st.composite
def capacities(draw, min_n=1, max_n=6, convex=False):
    n = draw(st.integers(min_n, max_n))
    rng = np.random.default_rng(draw(seeds))
    return random_convex_capacity(n, rng) if convex else random_capacity(n, rng)


@st.composite
def capacity_and_vector(draw, max_n=6, convex=False):
    v = draw(capacities(max_n=max_n, convex=convex))
    return v, draw(vectors(v.n))


@st.composite
def probabilities(draw, n):
    w = draw(st.lists(st.floats(0.01, 1.0), min_size=n, max_size=n))
    p = np.array(w)
    return p / p.sum()


@st.composite
def adapted_acts(draw, n=None, max_horizon=4):
    """A filtration and an act adapted to it, payoffs drawn from the sampler grid."""
    from stationarity.axioms import sample_filtration

    n = n or draw(st.integers(1, 4))
    T = draw(st.integers(0, max_horizon))
    rng = np.random.default_rng(draw(seeds))
    filt = sample_filtration(n, T, rng)
    grid = np.array(GRID)
    rows = []
    for t in range(T + 2):
        ids = filt.cell_ids(t)
        rows.append(grid[rng.integers(0, grid.size, size=ids.max() + 1)][ids])
    return filt, Act(np.array(rows[:-1]), rows[-1])


@pytest.fixture
def two_states():
    return StateSpace(("A", "Ac"))


@pytest.fixture
def example1():
    return hedging_scenario()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def symmetric(v, states=("A", "Ac")):
    return Capacity(StateSpace(states), [0.0, v, v, 1.0])


def full_info(n, T):
    return Filtration.default(StateSpace.of(n), T)


# PASS/FAIL lines collected by test_acceptance.py, echoed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
