"""
Providing the sample-and-compare loop shared by the CLI and the test suite.
"""

import logging
from typing import Any, Callable, Hashable

from recycler.engine.rng import RandomSource
from recycler.engine.runner import sample_many
from recycler.engine.types import RunRecord, Sampler
from recycler.graph.types import Graph
from recycler.models.cluster import RCSampler, rc_to_potts
from recycler.models.coloring import ColoringSampler
from recycler.models.hardcore import HardcoreSampler
from recycler.models.spin import SpinSampler
from recycler.oracle.enumerate import (
    enumerate_colorings,
    enumerate_hardcore,
    enumerate_rc,
    enumerate_spin,
)
from recycler.oracle.stats import goodness_of_fit, tally
from recycler.oracle.types import ExactDistribution, GofReport

logger = logging.getLogger(__name__)

KeyFunction = Callable[[RunRecord, RandomSource], Hashable]
"""
Map from a completed run (and a stream private to it) to the key compared with the
exact law.
"""


def exact_distribution(sampler: Sampler[Any]) -> ExactDistribution:
    """
    The exact law a sampler targets.

    Args:
        sampler (Sampler[Any]): One of the bundled samplers.

    Returns:
        ExactDistribution: Keyed like `sampler.key`.
    """

    match sampler:
        case HardcoreSampler(graph=graph, params=params):
            return enumerate_hardcore(graph, params.fugacity)
        case SpinSampler(graph=graph, params=params):
            return enumerate_spin(graph, params.beta, params.j, params.q, params.kind)
        case RCSampler(graph=graph, params=params):
            return enumerate_rc(graph, params.p, params.q)
        case ColoringSampler(graph=graph, params=params):
            return enumerate_colorings(graph, params.k)

    raise TypeError(f"No exact law for sampler '{type(sampler).__name__}'.")


def coupled_potts_key(graph: Graph, q: int) -> KeyFunction:
    """
    Key function coloring a random cluster sample's components uniformly out of 1..q.
    """

    def key(record: RunRecord, rng: RandomSource) -> Hashable:
        return tuple(rc_to_potts(map(tuple, record.sample), graph, q, rng))

    return key


def verify_sampler(
    sampler: Sampler[Any],
    exact: ExactDistribution | None = None,
    samples: int = 100_000,
    seed: int = 0,
    tolerance: float = 0.01,
    significance: float = 1e-3,
    iteration_cap: int | None = None,
    key: KeyFunction | None = None,
    parallel: int = 1,
) -> GofReport:
    """
    Draw samples and compare them with the exact law.

    Interrupted runs are dropped; the test uses completed runs only.

    Args:
        sampler (Sampler[Any]): The sampler under test.
        exact (ExactDistribution | None, optional): The law to compare with. Defaults to
            `exact_distribution(sampler)`.
        samples (int, optional): Number of runs. Defaults to 100000.
        seed (int, optional): Base seed; run i uses stream i. Defaults to 0.
        tolerance (float, optional): Largest acceptable TV distance. Defaults to 0.01.
        significance (float, optional): Smallest acceptable p-value. Defaults to 1e-3.
        iteration_cap (int | None, optional): Per-run cap. Defaults to no cap.
        key (KeyFunction | None, optional): Custom key per run, drawing from stream (i, 0).
            Defaults to the run's own key.
        parallel (int, optional): Worker processes. Defaults to 1.

    Returns:
        GofReport: The comparison.
    """

    if exact is None:
        exact = exact_distribution(sampler)

    root = RandomSource(seed)
    keys: list[Hashable] = []
    interrupted = 0

    for record in sample_many(sampler, seed, samples, iteration_cap, parallel=parallel):
        if not record.completed:
            interrupted += 1
        elif key is None:
            keys.append(record.key)
        else:
            keys.append(key(record, root.spawn(record.run).spawn(0)))

    if interrupted:
        logger.debug("Dropped %d interrupted runs out of %d.", interrupted, samples)

    return goodness_of_fit(exact, tally(keys), tolerance, significance)
