"""
Providing the heat-bath sampler for uniform proper colorings.

Inactive vertices are blank (color 0) and constrain nothing, so the law on the active
set is uniform over proper colorings of the induced subgraph. A step picks a color
uniformly among those not used by active neighbors and accepts with probability
(k - a) / k, where a is the number of distinct neighbor colors.
"""

from dataclasses import dataclass, field

from recycler._typing import Config, Site
from recycler.engine.acceptance import heat_bath_acceptance
from recycler.engine.order import SiteHeap
from recycler.engine.rng import RandomSource
from recycler.engine.types import Outcome, RRState, Sampler, StepOutcome
from recycler.exc import InvariantViolation, ParameterError
from recycler.graph.types import Graph
from recycler.models.recycle import (
    DEFAULT_POLICY,
    RejectionPolicy,
    rejection_set,
    validate_policy,
)

REGIME_CLAIM = "linear expected number of steps when k is Omega(delta^4)"


@dataclass(frozen=True, kw_only=True)
class ColoringParams:
    """
    Proper coloring parameters.
    """

    k: int
    """
    Number of colors (value >= 2).
    """

    rejection: RejectionPolicy = DEFAULT_POLICY
    """
    Vertices removed on rejection, see `recycler.models.recycle`.
    """

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ParameterError(f"Color count '{self.k}' should be at least 2.")

        validate_policy(self.rejection)


@dataclass(kw_only=True)
class ColoringState(RRState):
    """
    Coloring state; blank vertices hold 0.
    """

    pending: SiteHeap = field(default_factory=lambda: SiteHeap(()))


@dataclass(frozen=True, kw_only=True)
class RegimeReport:
    """
    What is known about the running time of a coloring run.
    """

    delta: int
    k: int

    claim: str = REGIME_CLAIM
    """
    The asymptotic guarantee; its constant is unspecified.
    """

    cutoff: float | None = None
    """
    Concrete k threshold; always None since none is known.
    """

    provable: bool | None = None
    """
    False when k is known to lie outside every proven regime, None when undecided.
    """

    note: str = ""

    measured_drift: float | None = None
    """
    Mean change of |V_t| per step from a traced run, if one was supplied.
    """


def coloring_regime_note(
    delta: int, k: int | None = None, measured_drift: float | None = None
) -> RegimeReport:
    """
    Report the running-time regime for `k` colors at maximum degree `delta`.

    Args:
        delta (int): Maximum degree.
        k (int | None, optional): Number of colors. Defaults to delta + 1.
        measured_drift (float | None, optional): Empirical drift to attach. Defaults to None.

    Returns:
        RegimeReport: The report.
    """

    k = delta + 1 if k is None else k

    if k <= delta + 1:
        return RegimeReport(
            delta=delta,
            k=k,
            provable=False,
            note="outside any provable regime; sampler may still be run",
            measured_drift=measured_drift,
        )

    return RegimeReport(
        delta=delta,
        k=k,
        note="no concrete cutoff; the constant in the bound is unspecified",
        measured_drift=measured_drift,
    )


class ColoringSampler(Sampler[ColoringState]):
    """
    Heat-bath Randomness Recycler for uniform proper k-colorings.
    """

    params: ColoringParams

    def __init__(self, graph: Graph, params: ColoringParams) -> None:
        if params.k <= graph.max_degree:
            raise ParameterError(
                f"Color count '{params.k}' should exceed the maximum degree {graph.max_degree}."
            )

        super().__init__(graph)
        self.params = params

    def init(self) -> ColoringState:
        return ColoringState(size=self.graph.n, rest=0, pending=SiteHeap(self.graph.vertices))

    def choose_site(self, state: ColoringState, rng: RandomSource) -> Site:
        return state.pending.peek()

    def _step(self, state: ColoringState, site: Site, rng: RandomSource) -> StepOutcome:
        v = site
        k = self.params.k
        used = {state.config[u] for u in self.graph.neighbors(v)} - {0}
        available = [c for c in range(1, k + 1) if c not in used]

        color = available[rng.uniform_int(len(available))]
        acceptance = heat_bath_acceptance(len(available), k)

        if acceptance >= 1 or rng.uniform() < acceptance:
            state.config[v] = color
            state.active.add(v)
            state.pending.take(v)
            return StepOutcome(kind=Outcome.ACCEPTED, added_site=v)

        removed = rejection_set(self.graph, state.active, v, self.params.rejection)
        state.deactivate(removed)
        state.pending.push_all(removed)

        return StepOutcome(kind=Outcome.REJECTED, added_site=v, removed_sites=frozenset(removed))

    def check(self, state: ColoringState) -> None:
        for v in self.graph.vertices:
            if (v in state.active) != (state.config[v] != 0):
                raise InvariantViolation(f"Vertex '{v}' breaks the blank invariant.")

        for u, v in self.graph.edges:
            if state.config[u] != 0 and state.config[u] == state.config[v]:
                raise InvariantViolation(f"Edge '{(u, v)}' is monochromatic.")

    def encode(self, state: ColoringState) -> list[int]:
        return list(state.config)

    def key(self, state: ColoringState) -> Config:
        return tuple(state.config)


def expected_acceptance_floor(delta: int, k: int) -> float:
    """
    Smallest possible acceptance probability, (k - delta) / k.
    """

    if k <= delta:
        raise ParameterError(f"Color count '{k}' should exceed the maximum degree {delta}.")

    return (k - delta) / k


def coloring_drift_bound(delta: int, k: int) -> float:
    """
    Lower bound on E[|V_t+1| - |V_t|] under the neighbors policy.

    Accepting adds one vertex and a rejection removes at most delta, so the drift is at
    least a - delta (1 - a) with a = (k - delta) / k.
    """

    a = expected_acceptance_floor(delta, k)
    return a - delta * (1 - a)

