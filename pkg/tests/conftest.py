import math

import pytest

from recycler.engine.rng import RandomSource
from recycler.engine.types import StepOutcome
from recycler.graph.families import generate_family, grid2d
from recycler.graph.types import Graph
from recycler.models.hardcore import HardcoreSampler, HardcoreState

SAMPLES = 20_000
SIGNIFICANCE = 1e-3
STRICT_TOLERANCE = 0.01


def tv_tolerance(support: int, samples: int = SAMPLES) -> float:
    """
    About seven times the expected TV distance of an exact sampler.
    """

    return 3 * math.sqrt(support / samples)


def strict_samples(support: int) -> int:
    """
    Runs that keep an exact sampler's expected TV near half of `STRICT_TOLERANCE`.
    """

    return max(100_000, 5_000 * support)


def single_edge() -> Graph:
    return Graph.from_edges(2, [(0, 1)])


def p3() -> Graph:
    return generate_family("path", 3)


def k3() -> Graph:
    return generate_family("complete", 3)


def c4() -> Graph:
    return generate_family("cycle", 4)


def k4() -> Graph:
    return generate_family("complete", 4)


def grid_2x2() -> Graph:
    return grid2d(2, 2)


def grid_2x3() -> Graph:
    return grid2d(2, 3)


def path_0_1_4_2_3() -> Graph:
    """
    A five-vertex path whose middle vertex is numbered last.
    """

    return Graph.from_edges(5, [(0, 1), (1, 4), (4, 2), (2, 3)])


class CorruptedHardcoreSampler(HardcoreSampler):
    """
    Accepts color 0 instead of recycling when the proposal conflicts.
    """

    def _step(self, state: HardcoreState, site: int, rng: RandomSource) -> StepOutcome:
        v = site

        if rng.uniform() > self._zero_threshold:
            if not any(state.config[u] == 1 for u in self.graph.neighbors(v)):
                state.config[v] = 1

        return self._accept(state, v)


@pytest.fixture
def rng() -> RandomSource:
    return RandomSource(12345)
