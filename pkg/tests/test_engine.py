import json
import math

import numpy as np
import pytest

from conftest import p3
from recycler.engine.acceptance import heat_bath_acceptance
from recycler.engine.order import SiteHeap
from recycler.engine.rng import RandomSource
from recycler.engine.runner import (
    Trace,
    TraceEntry,
    advance,
    mean_drift,
    record_trace,
    run,
    sample_many,
)
from recycler.engine.types import Outcome, RunRecord
from recycler.exc import InvariantViolation, SamplerStateError
from recycler.graph.families import generate_family
from recycler.graph.types import Graph
from recycler.models.hardcore import HardcoreParams, HardcoreSampler, hc_drift_bound


def hardcore(graph: Graph, fugacity: float = 1.0) -> HardcoreSampler:
    return HardcoreSampler(graph, HardcoreParams(fugacity=fugacity))


def test_random_source_reproducible():
    a, b = RandomSource(7), RandomSource(7)
    assert [a.uniform() for _ in range(5)] == [b.uniform() for _ in range(5)]
    assert [a.uniform_int(6) for _ in range(5)] == [b.uniform_int(6) for _ in range(5)]


def test_random_source_spawn():
    root = RandomSource(7)
    assert root.spawn(3).spawn_key == (3,)
    assert root.spawn(3).uniform() == RandomSource(7, (3,)).uniform()
    assert root.spawn(3).uniform() != root.spawn(4).uniform()


def test_random_source_ranges():
    rng = RandomSource(1)
    draws = [rng.uniform() for _ in range(1000)]
    assert all(0 <= u < 1 for u in draws)
    assert {rng.uniform_int(3) for _ in range(200)} == {0, 1, 2}
    assert not rng.bernoulli(0.0)
    assert rng.bernoulli(1.0)


@pytest.mark.parametrize("seed", [-1, 1 << 64])
def test_random_source_seed_range(seed):
    with pytest.raises(ValueError):
        RandomSource(seed)


def test_uniform_int_is_uniform():
    rng = RandomSource(99)
    counts = np.bincount([rng.uniform_int(5) for _ in range(50_000)], minlength=5)
    assert np.all(np.abs(counts / 50_000 - 0.2) < 0.01)


@pytest.mark.parametrize(
    ("rho", "m", "expected"),
    [(1.0, 1.0, 1.0), (0.5, 2.0, 0.25), (0.5, 1.0, 0.5)],
)
def test_heat_bath_acceptance(rho, m, expected):
    assert heat_bath_acceptance(rho, m) == pytest.approx(expected)


def test_heat_bath_acceptance_errors():
    with pytest.raises(InvariantViolation):
        heat_bath_acceptance(2.0, 1.0)

    with pytest.raises(SamplerStateError):
        heat_bath_acceptance(0.0, 1.0)


def test_site_heap():
    heap = SiteHeap([3, 1, 2])
    assert heap.peek() == 1
    heap.take(2)
    assert list(heap) == [1, 3]
    heap.take(1)
    heap.push_all([0, 5])
    assert list(heap) == [0, 3, 5]
    assert len(heap) == 3


def test_single_vertex_run():
    record = run(hardcore(Graph.from_edges(1, [])), RandomSource(0))
    assert record.completed
    assert record.iterations == 1


def test_empty_graph_is_complete():
    sampler = hardcore(Graph.from_edges(0, []))
    assert sampler.is_complete(sampler.init())

    record = run(sampler, RandomSource(0))
    assert record.completed
    assert record.iterations == 0
    assert record.sample == []


def test_step_on_complete_state():
    sampler = hardcore(Graph.from_edges(1, []))
    state = advance(sampler, RandomSource(0), 5)

    with pytest.raises(SamplerStateError):
        sampler.step(state, 0, RandomSource(0))


def test_step_on_active_site():
    sampler = hardcore(p3())
    rng = RandomSource(0)
    state = advance(sampler, rng, 1)

    with pytest.raises(SamplerStateError):
        sampler.step(state, next(iter(state.active)), rng)


def test_cap_interrupts():
    record = run(hardcore(Graph.from_edges(2, [(0, 1)])), RandomSource(0), iteration_cap=1)
    assert not record.completed
    assert record.sample is None
    assert record.key is None
    assert record.iterations == 1


def test_cap_must_be_positive():
    with pytest.raises(ValueError):
        run(hardcore(p3()), RandomSource(0), iteration_cap=0)


def test_run_deterministic():
    graph = generate_family("cycle", 30)
    a = run(hardcore(graph), RandomSource(5).spawn(2))
    b = run(hardcore(graph), RandomSource(5).spawn(2))
    assert (a.sample, a.iterations, a.run) == (b.sample, b.iterations, 2)


def test_sample_many_replays_single_runs():
    sampler = hardcore(generate_family("cycle", 10))
    records = list(sample_many(sampler, 11, 4))
    assert [r.run for r in records] == [0, 1, 2, 3]

    third = run(sampler, RandomSource(11).spawn(2))
    assert (records[2].sample, records[2].iterations) == (third.sample, third.iterations)

    tail = list(sample_many(sampler, 11, 2, start=2))
    assert [r.sample for r in tail] == [r.sample for r in records[2:]]


def test_run_record_json():
    record = RunRecord(
        sample=[0, 2], key=(0, 2), iterations=3, seed=7, run=1, wall_ns=10, completed=True
    )
    assert json.loads(record.to_json()) == {
        "sample": [0, 2],
        "iterations": 3,
        "seed": 7,
        "run": 1,
        "wall_ns": 10,
        "completed": True,
    }
    assert "wall_ns" not in json.loads(record.to_json(timing=False))


def test_trace_single_vertex():
    _, entries = record_trace(hardcore(Graph.from_edges(1, [])), RandomSource(3))
    assert entries == [TraceEntry(t=1, active_size=1, kind=Outcome.ACCEPTED, removed=0)]


def test_trace_does_not_change_draws():
    sampler = hardcore(generate_family("cycle", 25), 0.8)
    plain = run(sampler, RandomSource(4))
    traced, entries = record_trace(sampler, RandomSource(4))

    assert (plain.sample, plain.iterations) == (traced.sample, traced.iterations)
    assert len(entries) == traced.iterations
    assert entries[-1].active_size == 25


def test_advance_stops_early():
    sampler = hardcore(generate_family("cycle", 20))
    state = advance(sampler, RandomSource(1), 3)
    assert state.t == 3
    assert len(state.active) <= 3


def test_invariants_every_step_p3():
    sampler = hardcore(p3())

    def check(state, outcome):
        sampler.check(state)
        if outcome.accepted:
            assert not outcome.removed_sites
            assert outcome.added_site in state.active
        else:
            assert outcome.added_site not in state.active

    for index in range(10_000):
        run(sampler, RandomSource(2).spawn(index), tracer=check)


def test_drift_on_cycle():
    graph = generate_family("cycle", 20)
    sampler = hardcore(graph, 0.1)
    bound = hc_drift_bound(2, 0.1)
    assert bound == pytest.approx(0.7 / 1.1)

    changes: list[int] = []
    index = 0

    while len(changes) < 10_000:
        trace = Trace()
        run(sampler, RandomSource(8).spawn(index), tracer=trace)
        sizes = [0] + [entry.active_size for entry in trace.entries]
        changes.extend(b - a for a, b in zip(sizes, sizes[1:]))
        index += 1

    values = np.asarray(changes, dtype=float)
    stderr = values.std(ddof=1) / math.sqrt(len(values))
    assert values.mean() >= bound - 3 * stderr


def test_mean_drift():
    entries = [
        TraceEntry(t=1, active_size=1, kind=Outcome.ACCEPTED, removed=0),
        TraceEntry(t=2, active_size=0, kind=Outcome.REJECTED, removed=1),
        TraceEntry(t=3, active_size=1, kind=Outcome.ACCEPTED, removed=0),
        TraceEntry(t=4, active_size=2, kind=Outcome.ACCEPTED, removed=0),
    ]
    assert mean_drift(entries) == 0.5
    assert mean_drift([]) == 0.0
