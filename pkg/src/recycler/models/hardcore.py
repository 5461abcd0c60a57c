"""
Providing the hard-core (weighted independent set) sampler.

Target law: pi(x) proportional to lambda^(number of occupied vertices) over independent
sets. Each step occupies the chosen vertex with the heat-bath probability
lambda / (1 + lambda); if an active neighbor is already occupied, the step recycles by
deactivating the chosen vertex, the occupied neighbor w, all of w's neighbors and the
neighbors of v examined before w.

Two variants:

- basic: vertices are tried lowest-numbered first and w is the lowest-numbered
  occupied neighbor.
- improved: vertices are tried so that the inactive vertices of each component stay
  connected, and w is found by a cyclic scan from a uniformly random neighbor.
"""

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Literal

from recycler._typing import Config, Site
from recycler.engine.rng import RandomSource
from recycler.engine.types import Outcome, RRState, Sampler, StepOutcome
from recycler.exc import InvariantViolation, ParameterError
from recycler.graph.connectivity import components
from recycler.graph.types import Graph

Variant = Literal["basic", "improved"]


@dataclass(frozen=True, kw_only=True)
class HardcoreParams:
    """
    Hard-core model parameters.
    """

    fugacity: float
    """
    Weight per occupied vertex (lambda > 0).
    """

    variant: Variant = "basic"
    """
    Site order and conflict search, see module docs.
    """

    def __post_init__(self) -> None:
        if not self.fugacity > 0:
            raise ParameterError(f"Fugacity '{self.fugacity}' should be a positive value.")

        if self.variant not in ("basic", "improved"):
            raise ParameterError(f"Unknown hard-core variant '{self.variant}'.")


@dataclass(kw_only=True)
class HardcoreState(RRState):
    """
    Hard-core state; color 1 marks occupied vertices, inactive vertices hold 0.
    """

    pending: list[int] = field(default_factory=list)
    """
    Inactive vertices in trial order.

    basic: a min-heap. improved: a stack whose every entry is adjacent to an earlier
    entry of its component, so popping the top keeps each component's inactive part
    connected.
    """


def threshold_basic(delta: int) -> float:
    """
    Largest fugacity (exclusive) with linear expected running time for the basic variant.

    Args:
        delta (int): Maximum degree (value >= 1).

    Returns:
        float: 1 / (2 delta - 1).
    """

    if delta < 1:
        raise ParameterError(f"Maximum degree '{delta}' should be at least 1.")

    return 1 / (2 * delta - 1)


def threshold_improved(delta: int) -> float:
    """
    Fugacity bound (exclusive) under which the potential |V_t| - (3 delta / 4) * occupied
    drifts upward for the improved variant.

    Args:
        delta (int): Maximum degree (value >= 2).

    Returns:
        float: 4 / (3 delta - 4).
    """

    if 3 * delta - 4 <= 0:
        raise ParameterError(f"Maximum degree '{delta}' should be at least 2.")

    return 4 / (3 * delta - 4)


def lambda_for_drift(delta: int, gamma: float) -> float:
    """
    Largest fugacity whose per-step drift of |V_t| is at least `gamma`.

    At this fugacity the expected iteration count is at most n / gamma and
    P(T >= 2 (m / gamma) n) <= 2^-m.

    Args:
        delta (int): Maximum degree (value >= 1).
        gamma (float): Target drift in (0, 1).

    Returns:
        float: 1 / (2 delta / (1 - gamma) - 1).
    """

    if not 0 < gamma < 1:
        raise ParameterError(f"Drift '{gamma}' should lie in (0, 1).")

    if delta < 1:
        raise ParameterError(f"Maximum degree '{delta}' should be at least 1.")

    return 1 / (2 * delta / (1 - gamma) - 1)


def hc_drift_bound(delta: int, fugacity: float) -> float:
    """
    Lower bound on E[|V_t+1| - |V_t|] for the basic variant.

    Returns:
        float: (1 - (2 delta - 1) lambda) / (1 + lambda).
    """

    return (1 - (2 * delta - 1) * fugacity) / (1 + fugacity)


def potential_alpha(delta: int) -> float:
    """
    Weight alpha = 3 delta / 4 of the occupied count in the improved potential.

    Args:
        delta (int): Maximum degree.

    Returns:
        float: The weight.
    """

    return 3 * delta / 4


def hc_potential_drift_bound(fugacity: float, alpha: float) -> float:
    """
    Worst-case expected change of the potential when alpha balances the accept and
    reject cases (alpha = 3 delta / 4 with the improved variant).

    Returns:
        float: 1 - alpha lambda / (1 + lambda).
    """

    return 1 - alpha * fugacity / (1 + fugacity)


def potential(state: RRState, alpha: float) -> float:
    """
    |V_t| - alpha * (number of active vertices colored 1).

    Zero on the initial state and at most n on a complete one.
    """

    occupied = sum(1 for v in state.active if state.config[v] == 1)
    return len(state.active) - alpha * occupied


class HardcoreSampler(Sampler[HardcoreState]):
    """
    Randomness Recycler for weighted independent sets.
    """

    params: HardcoreParams

    _zero_threshold: float
    """
    1 / (1 + lambda): a draw at or below it colors the new vertex 0.
    """

    _component_orders: list[list[int]]
    """
    Breadth-first order of every component, the initial improved-variant stack.
    """

    def __init__(self, graph: Graph, params: HardcoreParams) -> None:
        super().__init__(graph)
        self.params = params
        self._zero_threshold = 1 / (1 + params.fugacity)
        self._component_orders = components(graph)

    def init(self) -> HardcoreState:
        if self.params.variant == "basic":
            pending = list(self.graph.vertices)
        else:
            pending = [v for order in self._component_orders for v in order]

        return HardcoreState(size=self.graph.n, rest=0, pending=pending)

    def choose_site(self, state: HardcoreState, rng: RandomSource) -> Site:
        if self.params.variant == "basic":
            return state.pending[0]
        return state.pending[-1]

    def _find_conflict(
        self, state: HardcoreState, v: int, rng: RandomSource
    ) -> tuple[int, set[int], int]:
        """
        Locate the occupied neighbor w of `v`.

        Returns:
            tuple[int, set[int], int]: w, the active neighbors examined before w, and how
            many neighbors were examined before w.
        """

        neighbors = self.graph.neighbors(v)
        start = 0 if self.params.variant == "basic" else rng.uniform_int(len(neighbors))
        examined: set[int] = set()

        for offset in range(len(neighbors)):
            u = neighbors[(start + offset) % len(neighbors)]

            if state.config[u] == 1:
                return u, examined, offset

            if u in state.active:
                examined.add(u)

        raise InvariantViolation(f"Vertex '{v}' has no occupied neighbor.")

    def _requeue(self, state: HardcoreState, v: int, removed: set[int]) -> None:
        """
        Put removed vertices back into the pending order.
        """

        if self.params.variant == "basic":
            for u in removed:
                heapq.heappush(state.pending, u)
            return

        # removed vertices go above v in breadth-first order from v, each one adjacent to
        # an entry below it
        seen = {v}
        queue = deque([v])

        while queue:
            u = queue.popleft()
            for x in self.graph.neighbors(u):
                if x in removed and x not in seen:
                    seen.add(x)
                    state.pending.append(x)
                    queue.append(x)

    def _step(self, state: HardcoreState, site: Site, rng: RandomSource) -> StepOutcome:
        v = site
        config = state.config

        if rng.uniform() <= self._zero_threshold:
            return self._accept(state, v)

        if not any(config[u] == 1 for u in self.graph.neighbors(v)):
            config[v] = 1
            return self._accept(state, v)

        w, examined, inspected = self._find_conflict(state, v, rng)

        removed = {w} | examined
        removed.update(u for u in self.graph.neighbors(w) if u in state.active)

        state.deactivate(removed)
        self._requeue(state, v, removed)

        return StepOutcome(
            kind=Outcome.REJECTED,
            added_site=v,
            removed_sites=frozenset(removed),
            inspected=inspected,
        )

    def _accept(self, state: HardcoreState, v: int) -> StepOutcome:
        state.active.add(v)
        pending = state.pending

        if self.params.variant == "basic":
            if pending[0] == v:
                heapq.heappop(pending)
            else:
                pending.remove(v)
                heapq.heapify(pending)
        elif pending[-1] == v:
            pending.pop()
        else:
            pending.remove(v)

        return StepOutcome(kind=Outcome.ACCEPTED, added_site=v)

    def check(self, state: HardcoreState) -> None:
        for v in self.graph.vertices:
            if v not in state.active and state.config[v] != 0:
                raise InvariantViolation(f"Inactive vertex '{v}' is occupied.")

        for u, v in self.graph.edges:
            if state.config[u] == 1 and state.config[v] == 1:
                raise InvariantViolation(f"Edge '{(u, v)}' has both endpoints occupied.")

        if sorted(state.pending) != sorted(set(self.graph.vertices) - state.active):
            raise InvariantViolation("Pending vertices differ from the inactive set.")

        if self.params.variant == "improved":
            self._check_complement_connected(state)

    def _check_complement_connected(self, state: HardcoreState) -> None:
        for order in self._component_orders:
            inactive = [v for v in order if v not in state.active]

            if not inactive:
                continue

            seen = {inactive[0]}
            queue = deque([inactive[0]])

            while queue:
                u = queue.popleft()
                for x in self.graph.neighbors(u):
                    if x not in state.active and x not in seen:
                        seen.add(x)
                        queue.append(x)

            if len(seen) != len(inactive):
                raise InvariantViolation(
                    f"Inactive part of the component of '{order[0]}' is disconnected."
                )

    def encode(self, state: HardcoreState) -> list[int]:
        return [v for v in self.graph.vertices if state.config[v] == 1]

    def key(self, state: HardcoreState) -> Config:
        return tuple(self.encode(state))
