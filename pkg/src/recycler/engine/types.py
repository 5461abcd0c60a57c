"""
Providing types.
"""

import abc
import json
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any, Generic, TypeVar

from recycler._typing import Config, Site
from recycler.engine.rng import RandomSource
from recycler.exc import SamplerStateError
from recycler.graph.types import Graph


class Outcome(StrEnum):
    """
    Kind of a step.
    """

    ACCEPTED = "accepted"
    REJECTED = "rejected"


@dataclass(kw_only=True)
class RRState:
    """
    The pair (active set, fixed colors on its complement) plus the random configuration.

    Outside `active` every site holds `rest`; inside it the configuration is feasible and
    distributed as the model conditioned on the complement.
    """

    size: int
    """
    Number of sites (vertices, or edges for edge models).
    """

    rest: int
    """
    The color every inactive site holds.
    """

    active: set[Site] = field(default_factory=set)
    """
    The growing site set.
    """

    config: list[int] = field(default_factory=list)
    """
    Color of every site.
    """

    t: int = 0
    """
    Number of steps taken.
    """

    def __post_init__(self) -> None:
        if not self.config:
            self.config = [self.rest] * self.size

    @property
    def complete(self) -> bool:
        """
        Whether every site is active.
        """

        return len(self.active) == self.size

    def fixed_part(self) -> dict[Site, int]:
        """
        The configuration restricted to inactive sites.
        """

        return {s: c for s, c in enumerate(self.config) if s not in self.active}

    def deactivate(self, sites: set[Site]) -> None:
        """
        Remove sites from the active set and reset them to the rest color.
        """

        for s in sites:
            self.active.discard(s)
            self.config[s] = self.rest


@dataclass(frozen=True, kw_only=True)
class StepOutcome:
    """
    Result of one Repeat-loop iteration.
    """

    kind: Outcome
    """
    Accepted or rejected.
    """

    added_site: Site
    """
    The site the step tried to add.
    """

    removed_sites: frozenset[Site] = frozenset()
    """
    Sites removed from the active set on rejection.
    """

    restored_sites: frozenset[Site] = frozenset()
    """
    Sites re-added in the same step after a rejection (random cluster tree add-back).
    """

    inspected: int = 0
    """
    Neighbors examined before the conflicting one was found (hard-core).
    """

    @property
    def accepted(self) -> bool:
        """
        Whether the step added its site.
        """

        return self.kind is Outcome.ACCEPTED


@dataclass(frozen=True, kw_only=True)
class RunRecord:
    """
    One sampler run.
    """

    sample: Any | None
    """
    Model-specific JSON encoding of the final configuration; None when interrupted.
    """

    key: Config | None
    """
    Canonical configuration used by the oracle; None when interrupted.
    """

    iterations: int
    """
    Number of Repeat-loop iterations (T).
    """

    seed: int
    """
    Base seed.
    """

    run: int
    """
    Stream index below `seed`.
    """

    wall_ns: int
    """
    Wall-clock nanoseconds.
    """

    completed: bool
    """
    False if the iteration cap interrupted the run.
    """

    def to_json(self, timing: bool = True) -> str:
        """
        Serialize to one JSON-lines record.

        Args:
            timing (bool, optional): Include `wall_ns`. Defaults to True.

        Returns:
            str: The record without a trailing newline.
        """

        record: dict[str, Any] = {
            "sample": self.sample,
            "iterations": self.iterations,
            "seed": self.seed,
            "run": self.run,
        }

        if timing:
            record["wall_ns"] = self.wall_ns

        record["completed"] = self.completed

        return json.dumps(record, separators=(",", ":"))


S = TypeVar("S", bound=RRState)


class Sampler(abc.ABC, Generic[S]):
    """
    A model's side of the recycling protocol.

    Subclasses choose sites independently of the random configuration and implement
    `_step`; `step` guards the contract shared by all models.
    """

    graph: Graph
    """
    The graph sampled on, shared read-only between runs.
    """

    def __init__(self, graph: Graph) -> None:
        self.graph = graph

    @abc.abstractmethod
    def init(self) -> S:
        """
        A fresh state with an empty (or trivially complete) active set.
        """

        ...

    @abc.abstractmethod
    def choose_site(self, state: S, rng: RandomSource) -> Site:
        """
        An inactive site to try next.
        """

        ...

    @abc.abstractmethod
    def _step(self, state: S, site: Site, rng: RandomSource) -> StepOutcome:
        """
        Propose a color for `site` and accept it or recycle.
        """

        ...

    @abc.abstractmethod
    def encode(self, state: S) -> Any:
        """
        JSON-friendly encoding of a complete configuration.
        """

        ...

    @abc.abstractmethod
    def key(self, state: S) -> Config:
        """
        Canonical configuration matching the oracle's encoding.
        """

        ...

    def check(self, state: S) -> None:
        """
        Raise `InvariantViolation` if the state breaks a model invariant.
        """

        return None

    def is_complete(self, state: S) -> bool:
        """
        Whether a run may stop at `state`.
        """

        return state.complete

    def step(self, state: S, site: Site, rng: RandomSource) -> StepOutcome:
        """
        Run one Repeat-loop iteration on `site`.

        Args:
            state (S): The live state, updated in place.
            site (Site): An inactive site, normally from `choose_site`.
            rng (RandomSource): The run's random source.

        Returns:
            StepOutcome: What happened.
        """

        if self.is_complete(state):
            raise SamplerStateError("Cannot step a complete state.")

        if site in state.active:
            raise SamplerStateError(f"Site '{site}' is already active.")

        outcome = self._step(state, site, rng)
        state.t += 1

        return outcome
