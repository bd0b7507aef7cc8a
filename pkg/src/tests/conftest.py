from __future__ import annotations

import os

import pytest
from hypothesis import strategies as st

os.environ.setdefault("FUNDSIM_LOG_LEVEL", "WARNING")


@pytest.fixture(scope="session")
def bundled_scenario():
    from fundsim.cli import load_scenario
    from fundsim.scenarios import bundled

    def _load(name: str):
        return load_scenario(bundled(name))

    return _load


@pytest.fixture(scope="session")
def counterexample():
    from fundsim.analytics import build_counterexample

    return build_counterexample(1.0)


@pytest.fixture(scope="session")
def counterexample_scenario(counterexample):
    from fundsim.schemas import Scenario

    return Scenario.counterexample(counterexample)


@pytest.fixture
def random_walk_kernel():
    from fundsim.schemas import LatticeKernel

    return LatticeKernel(
        s=1.0,
        transitions={1: {2: 0.5, 0: 0.5}, -1: {-2: 0.5, 0: 0.5}},
        init={1: 0.5, -1: 0.5},
    )


def coordinates(bound: float = 5.0) -> st.SearchStrategy[float]:
    return st.floats(min_value=-bound, max_value=bound, allow_nan=False, allow_infinity=False)


def positive(low: float = 0.1, high: float = 100.0) -> st.SearchStrategy[float]:
    return st.floats(min_value=low, max_value=high, allow_nan=False, allow_infinity=False)


@st.composite
def contexts(draw):
    from fundsim.analytics import StockContext

    return StockContext(a_k=draw(positive()), b_k=draw(positive()), f_now=draw(positive()), f_next=draw(positive()))
