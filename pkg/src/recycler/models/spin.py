"""
Providing the heat-bath Ising and Potts samplers.

Target law: pi(x) proportional to exp(-beta J H(x)) with H(x) = -sum over edges of
x(v1) x(v2) for Ising spins in {-1, +1}, or minus the number of concordant edges for
Potts colors 1..q. Inactive vertices hold the extra color 0, which contributes nothing
to H, so the law on the active set is the model on the induced subgraph.

A step draws a color for v from its heat-bath law given the active neighbors, then
accepts with probability Z_v(x) / max Z_v, where Z_v is the normalizer of that law.
For Ising this is cosh(beta S) / cosh(beta d), with d the number of active neighbors
and S their spin sum. A Potts model with q = 2 at inverse temperature 2 beta is the
Ising model at beta.
"""

import math
from dataclasses import dataclass, field
from typing import Literal

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

SpinKind = Literal["ising", "potts"]


@dataclass(frozen=True, kw_only=True)
class SpinParams:
    """
    Ising or Potts parameters.
    """

    beta: float
    """
    Inverse temperature, the literal coefficient in exp(-beta J H) (value >= 0).
    """

    j: int = 1
    """
    Coupling sign: 1 ferromagnetic, -1 antiferromagnetic.
    """

    q: int = 2
    """
    Number of colors; Ising requires 2.
    """

    kind: SpinKind | None = None
    """
    "ising" for spins in {-1, +1}, "potts" for colors 1..q. Defaults to "ising" when q is 2
    and "potts" otherwise.
    """

    rejection: RejectionPolicy = DEFAULT_POLICY
    """
    Vertices removed on rejection, see `recycler.models.recycle`.
    """

    def __post_init__(self) -> None:
        if self.kind is None:
            object.__setattr__(self, "kind", "ising" if self.q == 2 else "potts")

        if not self.beta >= 0:
            raise ParameterError(f"Inverse temperature '{self.beta}' should not be negative.")

        if self.j not in (1, -1):
            raise ParameterError(f"Coupling '{self.j}' should be 1 or -1.")

        if self.q < 2:
            raise ParameterError(f"Color count '{self.q}' should be at least 2.")

        if self.kind == "ising" and self.q != 2:
            raise ParameterError(f"Ising model uses 2 colors, got '{self.q}'.")

        if self.kind not in ("ising", "potts"):
            raise ParameterError(f"Unknown spin model '{self.kind}'.")

        validate_policy(self.rejection)

    @property
    def colors(self) -> tuple[int, ...]:
        """
        Colors an active vertex can take: -1 and 1 for Ising, 1..q for Potts.
        """

        if self.kind == "ising":
            return (-1, 1)
        return tuple(range(1, self.q + 1))


@dataclass(kw_only=True)
class SpinState(RRState):
    """
    Spin state; inactive vertices hold color 0.
    """

    pending: SiteHeap = field(default_factory=lambda: SiteHeap(()))
    """
    Inactive vertices, lowest first.
    """


def ising_threshold(delta: int) -> float:
    """
    Largest beta (exclusive) with linear expected running time.

    Args:
        delta (int): Maximum degree (value >= 1).

    Returns:
        float: ln(1 + 1 / delta) / delta.
    """

    if delta < 1:
        raise ParameterError(f"Maximum degree '{delta}' should be at least 1.")

    return math.log1p(1 / delta) / delta


def ising_drift_bound(delta: int, beta: float) -> float:
    """
    Lower bound on E[|V_t+1| - |V_t|] per step.

    Returns:
        float: (delta + 1) exp(-beta delta) - delta, positive iff beta < ising_threshold(delta).
    """

    return (delta + 1) * math.exp(-beta * delta) - delta


def ising_local_field(graph: Graph, state: RRState, v: int) -> tuple[int, int]:
    """
    Number of active neighbors of `v` and their spin sum.

    Inactive neighbors hold 0 and add nothing to either count.

    Returns:
        tuple[int, int]: (d, S).
    """

    d = 0
    s = 0

    for u in graph.neighbors(v):
        c = state.config[u]
        if c != 0:
            d += 1
            s += c

    return d, s


class SpinSampler(Sampler[SpinState]):
    """
    Heat-bath Randomness Recycler for Ising and Potts models.
    """

    params: SpinParams

    def __init__(self, graph: Graph, params: SpinParams) -> None:
        super().__init__(graph)
        self.params = params

    def init(self) -> SpinState:
        return SpinState(size=self.graph.n, rest=0, pending=SiteHeap(self.graph.vertices))

    def choose_site(self, state: SpinState, rng: RandomSource) -> Site:
        return state.pending.peek()

    def _propose_ising(self, state: SpinState, v: int, rng: RandomSource) -> tuple[int, float]:
        """
        Heat-bath spin for `v` and its acceptance probability.
        """

        beta, j = self.params.beta, self.params.j
        d, s = ising_local_field(self.graph, state, v)

        # P(+1) = exp(beta J S) / (2 cosh(beta S))
        spin = 1 if rng.uniform() * (1 + math.exp(-2 * beta * j * s)) < 1 else -1
        acceptance = heat_bath_acceptance(math.cosh(beta * s), math.cosh(beta * d))

        return spin, acceptance

    def _propose_potts(self, state: SpinState, v: int, rng: RandomSource) -> tuple[int, float]:
        """
        Heat-bath color for `v` and its acceptance probability.
        """

        beta, j, q = self.params.beta, self.params.j, self.params.q
        counts = [0] * (q + 1)

        for u in self.graph.neighbors(v):
            counts[state.config[u]] += 1

        d = len(self.graph.neighbors(v)) - counts[0]

        # shift exponents so the largest possible weight is 1
        shift = beta * j * d if j > 0 else 0.0
        weights = [math.exp(beta * j * counts[c] - shift) for c in range(1, q + 1)]
        z = math.fsum(weights)
        z_max = math.exp(beta * j * d - shift) + (q - 1) * math.exp(-shift)

        u = rng.uniform() * z
        color = q
        for c, weight in enumerate(weights, start=1):
            u -= weight
            if u < 0:
                color = c
                break

        return color, heat_bath_acceptance(z, z_max)

    def _step(self, state: SpinState, site: Site, rng: RandomSource) -> StepOutcome:
        v = site

        if self.params.kind == "ising":
            color, acceptance = self._propose_ising(state, v, rng)
        else:
            color, acceptance = self._propose_potts(state, v, rng)

        if acceptance >= 1 or rng.uniform() < acceptance:
            state.config[v] = color
            state.active.add(v)
            state.pending.take(v)
            return StepOutcome(kind=Outcome.ACCEPTED, added_site=v)

        removed = rejection_set(self.graph, state.active, v, self.params.rejection)
        state.deactivate(removed)
        state.pending.push_all(removed)

        return StepOutcome(kind=Outcome.REJECTED, added_site=v, removed_sites=frozenset(removed))

    def check(self, state: SpinState) -> None:
        colors = set(self.params.colors)

        for v in self.graph.vertices:
            c = state.config[v]
            if (v in state.active) != (c != 0):
                raise InvariantViolation(f"Vertex '{v}' breaks the rest-color invariant.")
            if c != 0 and c not in colors:
                raise InvariantViolation(f"Vertex '{v}' has invalid color '{c}'.")

    def encode(self, state: SpinState) -> list[int]:
        return list(state.config)

    def key(self, state: SpinState) -> Config:
        return tuple(state.config)
