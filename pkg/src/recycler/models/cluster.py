"""
Providing the random cluster sampler and its coupling to ferromagnetic Potts.

Target law: pi(A) proportional to p^|A| (1 - p)^|E \\ A| q^c(A) over edge subsets A, where
c(A) counts the components of (V, A). Sites are edges, tried lowest index first and
oriented (v, w) with v the lower endpoint. A proposal of 1 between two components of
(V, A_t) is accepted with probability 1/q; a rejection removes from E_t every edge
touching w's component. With the tree trick, a spanning tree of that component plus v
and {v, w} is added back, each tree edge colored 1 with probability rho / (1 - p + rho).
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable

from recycler._typing import Config, Edge, Site
from recycler.engine.order import SiteHeap
from recycler.engine.rng import RandomSource
from recycler.engine.types import Outcome, RRState, Sampler, StepOutcome
from recycler.exc import InvariantViolation, ParameterError
from recycler.graph.connectivity import (
    DisjointSet,
    component_of,
    connected_in,
    count_components,
    spanning_tree,
)
from recycler.graph.types import EdgeSubgraph, Graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True, kw_only=True)
class RCParams:
    """
    Random cluster model parameters.
    """

    p: float
    """
    Edge probability in [0, 1].
    """

    q: float
    """
    Cluster weight (value > 1), not necessarily an integer.
    """

    tree_trick: bool = True
    """
    Add a random spanning tree back after each rejection.
    """

    def __post_init__(self) -> None:
        if not 0 <= self.p <= 1:
            raise ParameterError(f"Edge probability '{self.p}' should lie in [0, 1].")

        if not self.q > 1:
            raise ParameterError(f"Cluster weight '{self.q}' should be greater than 1.")

    @property
    def rho(self) -> float:
        """
        Acceptance probability p / q of an edge joining two components.
        """

        return self.p / self.q

    @property
    def tree_edge_probability(self) -> float:
        """
        rho / (1 - p + rho), the law of each edge of a random cluster sample on a tree.
        """

        return self.rho / (1 - self.p + self.rho)


@dataclass(kw_only=True)
class RCState(RRState):
    """
    Random cluster state over edge indices; inactive edges hold 0.
    """

    ones: EdgeSubgraph
    """
    A_t, the edges colored 1.
    """

    pending: SiteHeap = field(default_factory=lambda: SiteHeap(()))
    """
    Inactive edges, lowest index first.
    """


def rc_threshold(delta: int, q: float, tree_trick: bool = True) -> float:
    """
    Largest p (exclusive) with O(|E|) expected steps.

    Args:
        delta (int): Maximum degree.
        q (float): Cluster weight (value > 1).
        tree_trick (bool, optional): Whether the tree trick is used. Defaults to True.

    Returns:
        float: The smaller root of (1 - 1/q)(delta - 1) p^2 - (delta - 1/q) p + 1 with the
        trick, 1 / (delta - 1/q) without it.
    """

    if delta < 2:
        raise ParameterError(f"Maximum degree '{delta}' should be at least 2.")

    if not q > 1:
        raise ParameterError(f"Cluster weight '{q}' should be greater than 1.")

    b = delta - 1 / q

    if not tree_trick:
        return 1 / b

    a = (1 - 1 / q) * (delta - 1)
    discriminant = b * b - 4 * a

    if discriminant < 0:
        raise InvariantViolation(f"Discriminant '{discriminant}' is negative.")

    return (b - math.sqrt(discriminant)) / (2 * a)


def rc_alpha(delta: int, params: RCParams) -> float:
    """
    (delta - 2)(1 - p + rho) / (1 - p), the component weight in the potential.
    """

    if params.p >= 1:
        raise ParameterError("Potential weight is undefined at p = 1.")

    return (delta - 2) * (1 - params.p + params.rho) / (1 - params.p)


def rc_potential(state: RCState, params: RCParams) -> float:
    """
    |E_t| - alpha * c(A_t), with alpha from `rc_alpha` on the state's graph.

    For maximum degree 2 alpha vanishes and the potential is |E_t|.
    """

    alpha = rc_alpha(state.ones.graph.max_degree, params)
    return len(state.active) - alpha * count_components(state.ones)


def rc_drift_bound(delta: int, params: RCParams) -> float:
    """
    Lower bound on the expected potential change of a step joining two components.

    The bound is for the potential |E_t| + alpha * c(A_t), where joining two components
    lowers c by one and costs alpha. `rc_potential` subtracts the component term, so the
    two agree only when alpha is 0, that is for maximum degree 2.

    Args:
        delta (int): Maximum degree.
        params (RCParams): The model parameters.

    Returns:
        float: (1 - p) + p ((1/q)(1 - alpha) + (1 - 1/q)(-alpha)), positive iff p is
        below `rc_threshold(delta, q)`.
    """

    alpha = rc_alpha(delta, params)
    q = params.q

    return (1 - params.p) + params.p * ((1 - alpha) / q - (1 - 1 / q) * alpha)


class RCSampler(Sampler[RCState]):
    """
    Randomness Recycler for the random cluster model.
    """

    params: RCParams

    def __init__(self, graph: Graph, params: RCParams) -> None:
        super().__init__(graph)
        self.params = params

    def init(self) -> RCState:
        m = self.graph.edge_count
        ones = EdgeSubgraph(self.graph)

        # every edge is 0 with probability 1
        if self.params.p == 0:
            return RCState(size=m, rest=0, ones=ones, active=set(range(m)))

        return RCState(size=m, rest=0, ones=ones, pending=SiteHeap(range(m)))

    def choose_site(self, state: RCState, rng: RandomSource) -> Site:
        return state.pending.peek()

    def _accept(self, state: RCState, e: Site, color: int) -> StepOutcome:
        state.config[e] = color
        state.active.add(e)
        state.pending.take(e)

        if color == 1:
            state.ones.add(e)

        return StepOutcome(kind=Outcome.ACCEPTED, added_site=e)

    def _step(self, state: RCState, site: Site, rng: RandomSource) -> StepOutcome:
        e = site
        v, w = self.graph.edges[e]
        color = 1 if rng.bernoulli(self.params.p) else 0

        if color == 0 or connected_in(state.ones, v, w):
            return self._accept(state, e, color)

        if rng.bernoulli(1 / self.params.q):
            return self._accept(state, e, 1)

        vertices, internal = component_of(state.ones, w)
        removed = {
            i
            for u in vertices
            for i in self.graph.incident_edges(u)
            if i in state.active
        }

        limit = len(vertices) * (self.graph.max_degree - 1) + 1
        if len(removed) > limit:
            raise InvariantViolation(f"Rejection removed {len(removed)} edges, limit {limit}.")

        for i in removed:
            state.ones.discard(i)
        state.deactivate(removed)
        state.pending.push_all(removed)

        if not self.params.tree_trick:
            return StepOutcome(
                kind=Outcome.REJECTED, added_site=e, removed_sites=frozenset(removed)
            )

        tree_edges = spanning_tree(vertices, internal, (v, w), v)
        tree = sorted(self.graph.edge_index(a, b) for a, b in tree_edges)

        if len(tree) != len(vertices):
            raise InvariantViolation(
                f"Spanning tree has {len(tree)} edges for {len(vertices)} vertices."
            )

        probability = self.params.tree_edge_probability
        for i in tree:
            self._accept(state, i, 1 if rng.bernoulli(probability) else 0)

        logger.debug("Edge %d rejected: removed %d edges, restored %d.", e, len(removed), len(tree))

        return StepOutcome(
            kind=Outcome.REJECTED,
            added_site=e,
            removed_sites=frozenset(removed),
            restored_sites=frozenset(tree),
        )

    def check(self, state: RCState) -> None:
        for e in range(self.graph.edge_count):
            c = state.config[e]

            if e not in state.active and c != 0:
                raise InvariantViolation(f"Inactive edge '{self.graph.edges[e]}' is colored 1.")

            if (c == 1) != (e in state.ones):
                raise InvariantViolation(f"Edge '{self.graph.edges[e]}' disagrees with A_t.")

        if set(state.pending) != set(range(self.graph.edge_count)) - state.active:
            raise InvariantViolation("Pending edges differ from the inactive set.")

    def encode(self, state: RCState) -> list[list[int]]:
        return [list(edge) for edge in state.ones.edges()]

    def key(self, state: RCState) -> Config:
        return tuple(state.config)


def rc_to_potts(sample: Iterable[Edge], graph: Graph, q: int, rng: RandomSource) -> list[int]:
    """
    Color every component of (V, sample) with one uniform color out of 1..q.

    With p = 1 - exp(-beta) this turns a random cluster sample into a ferromagnetic
    Potts sample with weight exp(beta * concordant edges).

    Args:
        sample (Iterable[Edge]): The edges colored 1.
        graph (Graph): The graph sampled on.
        q (int): The integer cluster weight used for sampling (value >= 2).
        rng (RandomSource): Source of the color draws.

    Returns:
        list[int]: Per-vertex colors.
    """

    if isinstance(q, bool) or q != int(q) or q < 2:
        raise ParameterError(f"Potts coupling needs an integer color count, got '{q}'.")

    components = DisjointSet(graph.n)

    for u, v in sample:
        if not graph.has_edge(u, v):
            raise ParameterError(f"Edge '{(u, v)}' is not in the graph.")
        components.union(u, v)

    # components colored in order of their lowest vertex
    colors: dict[int, int] = {}
    result = []

    for v in graph.vertices:
        root = components.find(v)
        if root not in colors:
            colors[root] = rng.uniform_int(int(q)) + 1
        result.append(colors[root])

    return result
