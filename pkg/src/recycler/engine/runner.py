"""
Providing the run loop.

A run repeats `choose_site` / `step` until the active set covers every site. An
iteration cap interrupts the run and discards the partial state: the stopping time is
independent of the returned sample, so dropping long runs biases nothing that is
returned.
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import repeat
from typing import Any, Callable, Iterator, TypeVar

from recycler.engine.rng import RandomSource
from recycler.engine.types import Outcome, RRState, RunRecord, Sampler, StepOutcome

logger = logging.getLogger(__name__)

S = TypeVar("S", bound=RRState)

Tracer = Callable[[Any, StepOutcome], None]
"""
Hook called with (state after the step, outcome); must not draw random numbers.
"""


@dataclass(frozen=True, kw_only=True)
class TraceEntry:
    """
    One traced iteration.
    """

    t: int
    """
    Step counter after the iteration.
    """

    active_size: int
    """
    Size of the active set after the iteration.
    """

    kind: Outcome
    """
    Accepted or rejected.
    """

    removed: int
    """
    Number of sites removed (net of sites restored in the same step).
    """


class Trace:
    """
    Tracer collecting a `TraceEntry` per iteration.
    """

    entries: list[TraceEntry]

    def __init__(self) -> None:
        self.entries = []

    def __call__(self, state: RRState, outcome: StepOutcome) -> None:
        self.entries.append(
            TraceEntry(
                t=state.t,
                active_size=len(state.active),
                kind=outcome.kind,
                removed=len(outcome.removed_sites) - len(outcome.restored_sites),
            )
        )


def iterate(sampler: Sampler[S], state: S, rng: RandomSource) -> StepOutcome:
    """
    One Repeat-loop iteration.
    """

    site = sampler.choose_site(state, rng)
    return sampler.step(state, site, rng)


def advance(
    sampler: Sampler[S],
    rng: RandomSource,
    steps: int,
    tracer: Tracer | None = None,
) -> S:
    """
    Run at most `steps` iterations from a fresh state and return the live state.

    Args:
        sampler (Sampler[S]): The model.
        rng (RandomSource): The random source.
        steps (int): Iteration budget (value >= 0).
        tracer (Tracer | None, optional): Per-step hook. Defaults to None.

    Returns:
        S: The state after `steps` iterations, or earlier if it completed.
    """

    state = sampler.init()

    while state.t < steps and not sampler.is_complete(state):
        outcome = iterate(sampler, state, rng)
        if tracer is not None:
            tracer(state, outcome)

    return state


def run(
    sampler: Sampler[S],
    rng: RandomSource,
    iteration_cap: int | None = None,
    tracer: Tracer | None = None,
) -> RunRecord:
    """
    Run until complete or until the cap is reached.

    Args:
        sampler (Sampler[S]): The model.
        rng (RandomSource): The random source.
        iteration_cap (int | None, optional): Maximum iterations (value >= 1). Defaults to
            no cap.
        tracer (Tracer | None, optional): Per-step hook. Defaults to None.

    Returns:
        RunRecord: The record; `sample` is None if the run was interrupted.
    """

    if iteration_cap is not None and iteration_cap < 1:
        raise ValueError(f"Iteration cap '{iteration_cap}' should be a positive value.")

    start = time.perf_counter_ns()
    state = sampler.init()

    while not sampler.is_complete(state):
        if iteration_cap is not None and state.t >= iteration_cap:
            break

        outcome = iterate(sampler, state, rng)
        if tracer is not None:
            tracer(state, outcome)

    wall_ns = time.perf_counter_ns() - start
    completed = sampler.is_complete(state)
    run_index = rng.spawn_key[-1] if rng.spawn_key else 0

    if not completed:
        logger.debug("Run %d interrupted after %d iterations.", run_index, state.t)

    return RunRecord(
        sample=sampler.encode(state) if completed else None,
        key=sampler.key(state) if completed else None,
        iterations=state.t,
        seed=rng.seed,
        run=run_index,
        wall_ns=wall_ns,
        completed=completed,
    )


def record_trace(
    sampler: Sampler[S],
    rng: RandomSource,
    iteration_cap: int | None = None,
) -> tuple[RunRecord, list[TraceEntry]]:
    """
    Run with a `Trace` attached.

    Returns:
        tuple[RunRecord, list[TraceEntry]]: The record and one entry per iteration.
    """

    trace = Trace()
    record = run(sampler, rng, iteration_cap, trace)
    return record, trace.entries


def run_indexed(
    sampler: Sampler[S], seed: int, index: int, iteration_cap: int | None = None
) -> RunRecord:
    """
    Run number `index` of a multi-run job on base seed `seed`.

    Picklable, for process pools.
    """

    return run(sampler, RandomSource(seed).spawn(index), iteration_cap)


def sample_many(
    sampler: Sampler[S],
    seed: int,
    count: int,
    iteration_cap: int | None = None,
    start: int = 0,
    parallel: int = 1,
) -> Iterator[RunRecord]:
    """
    Independent runs, run `i` on stream `spawn(i)` of `seed`.

    With `parallel` > 1 runs execute in a process pool; records are still yielded in run
    order, so the output does not depend on completion order.

    Args:
        sampler (Sampler[S]): The model.
        seed (int): The base seed.
        count (int): Number of runs.
        iteration_cap (int | None, optional): Per-run cap. Defaults to no cap.
        start (int, optional): Index of the first run. Defaults to 0.
        parallel (int, optional): Worker processes. Defaults to 1.

    Yields:
        RunRecord: One record per run, completed or not.
    """

    indices = range(start, start + count)

    if parallel <= 1:
        for index in indices:
            yield run_indexed(sampler, seed, index, iteration_cap)
        return

    with ProcessPoolExecutor(max_workers=parallel) as executor:
        yield from executor.map(
            run_indexed,
            repeat(sampler),
            repeat(seed),
            indices,
            repeat(iteration_cap),
            chunksize=64,
        )


def mean_drift(entries: list[TraceEntry]) -> float:
    """
    Mean change of the active-set size per traced iteration, from an empty start.

    Args:
        entries (list[TraceEntry]): A run's trace.

    Returns:
        float: (final active size) / (number of iterations), or 0 for an empty trace.
    """

    if not entries:
        return 0.0

    return entries[-1].active_size / len(entries)
