import math
from collections import Counter

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given, settings

from conftest import (
    SAMPLES,
    SIGNIFICANCE,
    STRICT_TOLERANCE,
    c4,
    grid_2x2,
    k3,
    k4,
    p3,
    path_0_1_4_2_3,
    strict_samples,
    tv_tolerance,
)
from recycler.engine.order import SiteHeap
from recycler.engine.rng import RandomSource
from recycler.engine.runner import advance, record_trace, run, sample_many
from recycler.exc import ParameterError
from recycler.graph.connectivity import induced_subgraph
from recycler.graph.families import generate_family
from recycler.graph.types import Graph
from recycler.models.spin import (
    SpinParams,
    SpinSampler,
    SpinState,
    ising_drift_bound,
    ising_local_field,
    ising_threshold,
)
from recycler.oracle.enumerate import enumerate_spin
from recycler.oracle.stats import goodness_of_fit, independence_test
from recycler.oracle.verify import verify_sampler

INSTANCES = {"p3": p3, "k3": k3, "c4": c4, "grid2x2": grid_2x2}


def active_changes(entries) -> list[int]:
    sizes = [0] + [entry.active_size for entry in entries]
    return [b - a for a, b in zip(sizes, sizes[1:])]


def verify(graph: Graph, params: SpinParams, seed: int = 99, strict: bool = False):
    sampler = SpinSampler(graph, params)
    exact = enumerate_spin(graph, params.beta, params.j, params.q, params.kind)

    if strict:
        samples, tolerance = strict_samples(len(exact)), STRICT_TOLERANCE
    else:
        samples, tolerance = SAMPLES, tv_tolerance(len(exact))

    return verify_sampler(
        sampler, exact, samples=samples, seed=seed, tolerance=tolerance, significance=SIGNIFICANCE
    )


def test_thresholds():
    assert ising_threshold(4) == pytest.approx(0.05579, abs=1e-5)
    assert ising_threshold(1) == pytest.approx(math.log(2))
    assert ising_threshold(2) == pytest.approx(0.2027, abs=1e-4)

    with pytest.raises(ParameterError):
        ising_threshold(0)


def test_drift_bound_sign():
    threshold = ising_threshold(4)
    assert ising_drift_bound(4, 0.05) > 0
    assert ising_drift_bound(4, 0.06) < 0
    assert ising_drift_bound(4, threshold) == pytest.approx(0, abs=1e-12)
    assert ising_drift_bound(2, 0.0) == pytest.approx(1)


def test_local_field():
    state = SpinState(size=3, rest=0, active={0, 2}, config=[1, 0, -1])
    assert ising_local_field(p3(), state, 1) == (2, 0)
    assert ising_local_field(p3(), state, 0) == (0, 0)

    state = SpinState(size=3, rest=0, active={0, 1}, config=[1, 1, 0])
    assert ising_local_field(k3(), state, 2) == (2, 2)


def test_acceptance_with_balanced_neighbors():
    sampler = SpinSampler(p3(), SpinParams(beta=0.1))
    accepted = 0

    for seed in range(SAMPLES):
        state = SpinState(
            size=3, rest=0, active={0, 2}, config=[1, 0, -1], pending=SiteHeap([1])
        )
        accepted += sampler.step(state, 1, RandomSource(seed)).accepted

    expected = 1 / math.cosh(0.2)
    assert abs(accepted / SAMPLES - expected) < 4 * math.sqrt(expected * (1 - expected) / SAMPLES)


def test_params_defaults():
    assert SpinParams(beta=0.1).kind == "ising"
    assert SpinParams(beta=0.1, q=3).kind == "potts"
    assert SpinParams(beta=0.1, q=2, kind="potts").colors == (1, 2)
    assert SpinParams(beta=0.1).colors == (-1, 1)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"beta": -0.1},
        {"beta": 0.1, "j": 2},
        {"beta": 0.1, "q": 1},
        {"beta": 0.1, "q": 3, "kind": "ising"},
        {"beta": 0.1, "kind": "xy"},
        {"beta": 0.1, "rejection": "everything"},
    ],
)
def test_params_errors(kwargs):
    with pytest.raises(ParameterError):
        SpinParams(**kwargs)


def test_potts_two_colors_matches_ising():
    beta = 0.3
    ising = enumerate_spin(c4(), beta)
    potts = enumerate_spin(c4(), 2 * beta, q=2, kind="potts")

    for key, probability in potts.entries.items():
        spins = tuple(-1 if c == 1 else 1 for c in key)
        assert ising.probability(spins) == pytest.approx(probability)


@pytest.mark.parametrize(
    ("name", "beta", "j", "q"),
    [
        ("p3", 0.3, 1, 2),
        ("k3", 0.3, -1, 2),
        ("c4", 0.05, 1, 3),
        ("grid2x2", 0.3, -1, 3),
        ("c4", 0.3, 1, 2),
    ],
)
def test_exactness(name, beta, j, q):
    report = verify(INSTANCES[name](), SpinParams(beta=beta, j=j, q=q))
    assert report.passed, report.summary()


@pytest.mark.slow
@pytest.mark.parametrize("name", list(INSTANCES))
@pytest.mark.parametrize("beta", [0.05, 0.3])
@pytest.mark.parametrize("j", [1, -1])
@pytest.mark.parametrize("q", [2, 3])
def test_exactness_strict(name, beta, j, q):
    report = verify(INSTANCES[name](), SpinParams(beta=beta, j=j, q=q), strict=True)
    assert report.passed, report.summary()


def test_exactness_k4():
    report = verify(k4(), SpinParams(beta=0.3))
    assert report.passed, report.summary()


def test_potts_sampler_matches_ising_law():
    beta = 0.3
    graph = c4()
    sampler = SpinSampler(graph, SpinParams(beta=2 * beta, q=2, kind="potts"))

    def as_spins(record, rng):
        return tuple(-1 if c == 1 else 1 for c in record.sample)

    exact = enumerate_spin(graph, beta)
    report = verify_sampler(
        sampler, exact, samples=SAMPLES, seed=5, tolerance=tv_tolerance(len(exact)), key=as_spins
    )
    assert report.passed, report.summary()


def test_default_policy_exact_on_path():
    params = SpinParams(beta=0.6)
    assert params.rejection == "component"

    report = verify(path_0_1_4_2_3(), params)
    assert report.passed, report.summary()


@pytest.mark.slow
def test_default_policy_exact_on_path_strict():
    report = verify(path_0_1_4_2_3(), SpinParams(beta=0.6), strict=True)
    assert report.passed, report.summary()


def test_neighbors_policy_biased_on_path():
    report = verify(path_0_1_4_2_3(), SpinParams(beta=0.6, rejection="neighbors"))
    assert not report.passed


@pytest.mark.parametrize("rejection", ["component", "restart"])
def test_component_policies_exact_on_path(rejection):
    report = verify(path_0_1_4_2_3(), SpinParams(beta=0.6, rejection=rejection))
    assert report.passed, report.summary()


@pytest.mark.parametrize("rejection", ["neighbors2", "component", "restart"])
def test_wider_policies_exact(rejection):
    report = verify(c4(), SpinParams(beta=0.3, q=3, rejection=rejection))
    assert report.passed, report.summary()


def test_conditional_law_on_active_set():
    beta = 0.3
    graph = c4()
    sampler = SpinSampler(graph, SpinParams(beta=beta))
    root = RandomSource(78)

    groups: dict[frozenset[int], Counter] = {}

    for index in range(SAMPLES):
        state = advance(sampler, root.spawn(index), 3)
        assert not any(state.fixed_part().values())

        active = frozenset(state.active)
        groups.setdefault(active, Counter())[tuple(state.config[v] for v in sorted(active))] += 1

    active, counts = max(groups.items(), key=lambda item: sum(item[1].values()))
    assert len(active) == 3

    induced, _ = induced_subgraph(graph, active)
    exact = enumerate_spin(induced, beta)

    report = goodness_of_fit(
        exact, counts, tv_tolerance(len(exact), sum(counts.values())), SIGNIFICANCE
    )
    assert report.passed, report.summary()


def test_independence_of_stopping_time():
    sampler = SpinSampler(p3(), SpinParams(beta=0.3))
    records = [(r.iterations, sum(r.sample)) for r in sample_many(sampler, 32, 10_000)]

    report = independence_test(records, SIGNIFICANCE)
    assert report.passed, report.summary()


def test_drift_on_cycle():
    beta = 0.1
    assert beta < ising_threshold(2)

    sampler = SpinSampler(
        generate_family("cycle", 30), SpinParams(beta=beta, rejection="neighbors")
    )
    changes: list[int] = []
    index = 0

    while len(changes) < 50_000:
        _, entries = record_trace(sampler, RandomSource(8).spawn(index))
        changes.extend(active_changes(entries))
        index += 1

    values = np.asarray(changes, dtype=float)
    stderr = values.std(ddof=1) / math.sqrt(len(values))
    assert values.mean() >= ising_drift_bound(2, beta) - 3 * stderr


@pytest.mark.parametrize("n", [100, 1000, pytest.param(10_000, marks=pytest.mark.slow)])
def test_linear_time_on_cycles(n):
    beta = 0.1
    sampler = SpinSampler(
        generate_family("cycle", n), SpinParams(beta=beta, rejection="neighbors")
    )
    times = np.asarray([r.iterations for r in sample_many(sampler, n, 50)])

    assert times.mean() <= n / ising_drift_bound(2, beta)


@pytest.mark.parametrize(
    "sizes", [(100, 1000), pytest.param((100, 1000, 10_000), marks=pytest.mark.slow)]
)
def test_time_per_site_stable(sizes):
    params = SpinParams(beta=0.1, rejection="neighbors")
    ratios = []

    for n in sizes:
        sampler = SpinSampler(generate_family("cycle", n), params)
        ratios.append(np.mean([r.iterations for r in sample_many(sampler, 9, 30)]) / n)

    assert all(abs(ratio - ratios[0]) <= 0.2 * ratios[0] for ratio in ratios)


@given(
    st.integers(min_value=1, max_value=6),
    st.data(),
    st.floats(min_value=0.0, max_value=1.5),
    st.sampled_from([1, -1]),
    st.sampled_from([2, 3, 4]),
    st.sampled_from(["neighbors", "neighbors2", "component", "restart"]),
    st.integers(min_value=0, max_value=2**32),
)
@settings(max_examples=50, deadline=None)
def test_invariants_hold_every_step(n, data, beta, j, q, rejection, seed):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    graph = Graph.from_edges(n, edges)
    params = SpinParams(beta=beta, j=j, q=q, rejection=rejection)
    sampler = SpinSampler(graph, params)

    def check(state, outcome):
        sampler.check(state)
        if not outcome.accepted:
            assert outcome.removed_sites <= set(graph.vertices) - {outcome.added_site}

    record = run(sampler, RandomSource(seed), tracer=check)

    assert record.completed
    assert set(record.sample) <= set(params.colors)
