import json
import math
from collections import Counter, defaultdict

import numpy as np
import pytest

from conftest import k3, p3, single_edge
from recycler.exc import InvariantViolation, OracleGuardError, ParameterError
from recycler.graph.connectivity import DisjointSet
from recycler.graph.families import generate_family
from recycler.models.spin import SpinParams, SpinSampler
from recycler.oracle.enumerate import (
    enumerate_colorings,
    enumerate_hardcore,
    enumerate_rc,
    enumerate_spin,
    independent_sets,
    marginalize,
)
from recycler.oracle.stats import goodness_of_fit, independence_test, tally, total_variation
from recycler.oracle.types import ExactDistribution
from recycler.oracle.verify import exact_distribution


def test_independent_sets():
    assert list(independent_sets(p3())) == [(), (0,), (0, 2), (1,), (2,)]


def test_hardcore_uniform_at_unit_fugacity():
    exact = enumerate_hardcore(p3(), 1.0)

    assert len(exact) == 5
    assert all(p == pytest.approx(0.2) for p in exact.entries.values())
    assert exact.normalizer == pytest.approx(5)


def test_hardcore_single_edge():
    exact = enumerate_hardcore(single_edge(), 1.0)
    assert set(exact.entries) == {(), (0,), (1,)}


def test_ising_single_edge():
    exact = enumerate_spin(single_edge(), math.log(2))

    assert exact.probability((1, 1)) == pytest.approx(0.4)
    assert exact.probability((1, -1)) == pytest.approx(0.1)
    assert exact.normalizer == pytest.approx(5)
    assert exact.model == "ising"


def test_coupling_sign_on_bipartite_graph():
    ferro = enumerate_spin(p3(), 0.7, j=1)
    anti = enumerate_spin(p3(), 0.7, j=-1)

    assert ferro.normalizer == pytest.approx(anti.normalizer)
    assert ferro.probability((1, 1, 1)) == pytest.approx(anti.probability((1, -1, 1)))


def test_potts_kind():
    exact = enumerate_spin(k3(), 0.5, q=3)

    assert exact.model == "potts"
    assert len(exact) == 27
    assert exact.probability((1, 1, 1)) > exact.probability((1, 2, 3))


def test_rc_laws():
    assert enumerate_rc(single_edge(), 0.5, 2).probability((1,)) == pytest.approx(1 / 3)
    assert enumerate_rc(k3(), 0.5, 2).probability((0, 0, 0)) == pytest.approx(2 / 7)


def test_rc_near_unit_weight_is_bernoulli():
    p = 0.3
    exact = enumerate_rc(k3(), p, 1 + 1e-9)

    for key, probability in exact.entries.items():
        size = sum(key)
        assert probability == pytest.approx(p**size * (1 - p) ** (3 - size), rel=1e-6)


def test_colorings():
    exact = enumerate_colorings(p3(), 3)
    assert exact.count == 12
    assert exact.probability((1, 2, 1)) == pytest.approx(1 / 12)

    assert enumerate_colorings(k3(), 3).count == 6

    with pytest.raises(OracleGuardError):
        enumerate_colorings(k3(), 2)


@pytest.mark.parametrize(
    "call",
    [
        lambda: enumerate_hardcore(generate_family("path", 25), 1.0),
        lambda: enumerate_spin(generate_family("path", 16), 0.1, q=3),
        lambda: enumerate_rc(generate_family("grid2d", 5), 0.5, 2),
    ],
    ids=["hardcore", "potts", "rc"],
)
def test_guards(call):
    with pytest.raises(OracleGuardError):
        call()


def test_marginalize():
    exact = marginalize(enumerate_hardcore(p3(), 1.0), len)

    assert exact.entries == pytest.approx({0: 0.2, 1: 0.6, 2: 0.2})
    assert "marginal len" in exact.instance


def test_distribution_must_sum_to_one():
    with pytest.raises(InvariantViolation):
        ExactDistribution(model="x", instance="y", entries={"a": 0.5}, normalizer=1.0)


def test_rc_coupling_matches_potts():
    beta = 0.4
    q = 3
    graph = k3()
    rc = enumerate_rc(graph, 1 - math.exp(-beta), q)
    law: dict[tuple[int, ...], float] = defaultdict(float)

    for key, probability in rc.entries.items():
        components = DisjointSet(graph.n)
        for e, color in enumerate(key):
            if color:
                components.union(*graph.edges[e])

        roots = sorted({components.find(v) for v in graph.vertices})
        for colors in np.ndindex(*(q,) * len(roots)):
            assignment = dict(zip(roots, colors))
            coloring = tuple(int(assignment[components.find(v)]) + 1 for v in graph.vertices)
            law[coloring] += probability / q ** len(roots)

    potts = enumerate_spin(graph, beta, q=q)
    assert total_variation(potts.entries, law) == pytest.approx(0, abs=1e-12)


def test_exact_distribution_dispatch():
    exact = exact_distribution(SpinSampler(p3(), SpinParams(beta=0.2, q=3)))
    assert exact.model == "potts"

    with pytest.raises(TypeError):
        exact_distribution(object())


def test_total_variation():
    assert total_variation({"a": 0.5, "b": 0.5}, {"a": 1.0}) == pytest.approx(0.5)
    assert total_variation({"a": 1.0}, {"a": 1.0}) == 0


def test_goodness_of_fit_exact_counts():
    exact = enumerate_hardcore(p3(), 1.0)
    report = goodness_of_fit(exact, Counter({key: 200 for key in exact.entries}))

    assert report.passed
    assert report.tv == pytest.approx(0)
    assert report.p_value == pytest.approx(1)
    assert report.dof == 4


def test_goodness_of_fit_biased_counts():
    exact = enumerate_hardcore(p3(), 1.0)
    keys = sorted(exact.entries)
    counts = Counter({keys[0]: 400, keys[1]: 200, keys[2]: 200, keys[3]: 200})

    report = goodness_of_fit(exact, counts)

    assert report.tv == pytest.approx(0.2)
    assert not report.passed
    assert report.summary().startswith("FAIL")


def test_goodness_of_fit_impossible_configuration():
    exact = enumerate_hardcore(p3(), 1.0)
    counts = Counter({(): 100, (0, 1): 1})

    report = goodness_of_fit(exact, counts, tolerance=1.0)

    assert not report.passed
    assert report.offending == [[0, 1]]
    assert report.note == "impossible configuration observed"


def test_goodness_of_fit_needs_observations():
    with pytest.raises(ParameterError):
        goodness_of_fit(enumerate_hardcore(p3(), 1.0), Counter())


def test_independence_of_unrelated_statistic():
    generator = np.random.default_rng(1)
    times = generator.integers(1, 100, size=5000)
    coins = generator.integers(0, 2, size=5000)

    report = independence_test(list(zip(times.tolist(), coins.tolist())))
    assert report.passed, report.summary()


def test_independence_detects_stopping_time_dependence():
    times = np.random.default_rng(2).integers(1, 20, size=5000).tolist()

    report = independence_test([(t, t) for t in times])

    assert not report.passed
    assert report.tv > 0.9


def test_independence_degenerate_statistic():
    report = independence_test([(t, "same") for t in range(1000)])

    assert report.passed
    assert report.note == "degenerate statistic"


def test_independence_needs_records():
    with pytest.raises(ParameterError):
        independence_test([(1, 0)] * 999)


def test_tally():
    assert tally([(0,), (), (0,)]) == {(0,): 2, (): 1}


def test_json():
    exact = enumerate_hardcore(p3(), 1.0)
    encoded = json.loads(json.dumps(exact.to_json()))

    assert encoded["model"] == "hardcore"
    assert len(encoded["entries"]) == 5
    assert {"configuration": [0, 2], "probability": pytest.approx(0.2)} in encoded["entries"]

    report = goodness_of_fit(exact, Counter({key: 100 for key in exact.entries}))
    decoded = json.loads(report.to_json())

    assert decoded["passed"] is True
    assert decoded["samples"] == 500
