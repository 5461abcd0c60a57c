"""
Providing exhaustive enumeration of each model's law on small graphs.

Keys match `Sampler.key`: occupied vertices for the hard-core model, per-vertex colors
for spins and colorings, per-edge 0/1 colors (in `Graph.edges` order) for the random
cluster model.
"""

import itertools
import logging
import math
from collections import defaultdict
from typing import Callable, Hashable, Iterator

from recycler._typing import Config
from recycler.exc import OracleGuardError
from recycler.graph.connectivity import DisjointSet
from recycler.graph.types import Graph
from recycler.models.cluster import RCParams
from recycler.models.hardcore import HardcoreParams
from recycler.models.spin import SpinKind, SpinParams
from recycler.oracle.types import ExactDistribution

logger = logging.getLogger(__name__)

MAX_SITES = 24
MAX_CONFIGURATIONS = 1 << 24


def _guard(sites: int, colors: int, what: str) -> None:
    if sites > MAX_SITES:
        raise OracleGuardError(f"Cannot enumerate {sites} {what}, limit is {MAX_SITES}.")

    if colors**sites > MAX_CONFIGURATIONS:
        raise OracleGuardError(
            f"Cannot enumerate {colors}^{sites} configurations, limit is {MAX_CONFIGURATIONS}."
        )


def _normalize(
    model: str, instance: str, weights: dict[Hashable, float], count: int | None = None
) -> ExactDistribution:
    z = math.fsum(weights.values())
    entries = {key: w / z for key, w in weights.items() if w > 0}

    logger.debug("Enumerated %s on %s: %d configurations.", model, instance, len(entries))

    return ExactDistribution(
        model=model, instance=instance, entries=entries, normalizer=z, count=count
    )


def _describe(graph: Graph, **params: object) -> str:
    values = ", ".join(f"{name}={value}" for name, value in params.items())
    return f"n={graph.n}, edges={list(graph.edges)}, {values}"


def independent_sets(graph: Graph) -> Iterator[Config]:
    """
    Every independent set as a sorted vertex tuple, the empty set first.
    """

    def extend(start: int, chosen: list[int], blocked: set[int]) -> Iterator[Config]:
        yield tuple(chosen)

        for v in range(start, graph.n):
            if v in blocked:
                continue

            chosen.append(v)
            yield from extend(v + 1, chosen, blocked | set(graph.neighbors(v)))
            chosen.pop()

    return extend(0, [], set())


def enumerate_hardcore(graph: Graph, fugacity: float) -> ExactDistribution:
    """
    Exact hard-core law: independent sets weighted by fugacity^size.

    Args:
        graph (Graph): At most 24 vertices.
        fugacity (float): lambda > 0.

    Returns:
        ExactDistribution: Keyed by sorted occupied-vertex tuples.
    """

    HardcoreParams(fugacity=fugacity)
    _guard(graph.n, 2, "vertices")

    weights = {s: fugacity ** len(s) for s in independent_sets(graph)}
    return _normalize("hardcore", _describe(graph, fugacity=fugacity), weights)


def enumerate_spin(
    graph: Graph, beta: float, j: int = 1, q: int = 2, kind: SpinKind | None = None
) -> ExactDistribution:
    """
    Exact Ising or Potts law exp(-beta J H) / Z.

    Ising edges contribute -x(u) x(v) to H; Potts edges contribute -1 when concordant.

    Args:
        graph (Graph): The graph.
        beta (float): Inverse temperature.
        j (int, optional): Coupling sign. Defaults to 1.
        q (int, optional): Number of colors. Defaults to 2.
        kind (SpinKind | None, optional): "ising" or "potts". Defaults to "ising" for q = 2.

    Returns:
        ExactDistribution: Keyed by per-vertex color tuples.
    """

    params = SpinParams(beta=beta, j=j, q=q, kind=kind)
    _guard(graph.n, q, "vertices")

    if params.kind == "ising":
        def agreement(a: int, b: int) -> int:
            return a * b
    else:
        def agreement(a: int, b: int) -> int:
            return 1 if a == b else 0

    exponents = {
        x: beta * j * sum(agreement(x[u], x[v]) for u, v in graph.edges)
        for x in itertools.product(params.colors, repeat=graph.n)
    }

    shift = max(exponents.values())
    weights: dict[Hashable, float] = {x: math.exp(e - shift) for x, e in exponents.items()}
    exact = _normalize(params.kind, _describe(graph, beta=beta, j=j, q=q), weights)

    return ExactDistribution(
        model=exact.model,
        instance=exact.instance,
        entries=exact.entries,
        normalizer=exact.normalizer * math.exp(shift),
    )


def enumerate_rc(graph: Graph, p: float, q: float) -> ExactDistribution:
    """
    Exact random cluster law p^|A| (1 - p)^|E \\ A| q^c(A) / Z over edge subsets.

    Args:
        graph (Graph): At most 24 edges.
        p (float): Edge probability in [0, 1].
        q (float): Cluster weight (value > 1).

    Returns:
        ExactDistribution: Keyed by per-edge 0/1 tuples; zero-weight subsets are left out.
    """

    RCParams(p=p, q=q)
    m = graph.edge_count
    _guard(m, 2, "edges")

    weights: dict[Hashable, float] = {}

    for x in itertools.product((0, 1), repeat=m):
        components = DisjointSet(graph.n)
        size = 0

        for e, color in enumerate(x):
            if color:
                components.union(*graph.edges[e])
                size += 1

        weights[x] = p**size * (1 - p) ** (m - size) * q**components.components

    return _normalize("rc", _describe(graph, p=p, q=q), weights)


def enumerate_colorings(graph: Graph, k: int) -> ExactDistribution:
    """
    Uniform law over proper k-colorings.

    Args:
        graph (Graph): The graph.
        k (int): Number of colors.

    Returns:
        ExactDistribution: Keyed by per-vertex color tuples in 1..k; `count` holds the
        number of proper colorings.
    """

    _guard(graph.n, k, "vertices")

    colorings: list[Config] = []
    coloring = [0] * graph.n

    def extend(v: int) -> None:
        if v == graph.n:
            colorings.append(tuple(coloring))
            return

        for c in range(1, k + 1):
            if all(coloring[u] != c for u in graph.neighbors(v) if u < v):
                coloring[v] = c
                extend(v + 1)
        coloring[v] = 0

    extend(0)

    if not colorings:
        raise OracleGuardError(f"Graph has no proper {k}-coloring.")

    weights: dict[Hashable, float] = {x: 1.0 for x in colorings}
    return _normalize("coloring", _describe(graph, k=k), weights, count=len(colorings))


def marginalize(
    exact: ExactDistribution, statistic: Callable[[Config], Hashable]
) -> ExactDistribution:
    """
    Exact law of a statistic of the configuration.

    Args:
        exact (ExactDistribution): The full law.
        statistic (Callable[[Config], Hashable]): Map from a configuration key to a value.

    Returns:
        ExactDistribution: Keyed by statistic values.
    """

    grouped: dict[Hashable, list[float]] = defaultdict(list)

    for key, p in exact.entries.items():
        grouped[statistic(key)].append(p)

    entries = {value: math.fsum(ps) for value, ps in grouped.items()}
    name = getattr(statistic, "__name__", "statistic")

    return ExactDistribution(
        model=exact.model,
        instance=f"{exact.instance}, marginal {name}",
        entries=entries,
        normalizer=exact.normalizer,
    )
