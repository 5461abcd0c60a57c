"""
Providing types.
"""

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Hashable

from recycler.exc import InvariantViolation

SUM_TOLERANCE = 1e-12


@dataclass(frozen=True, kw_only=True)
class ExactDistribution:
    """
    An exactly enumerated law over canonical configurations.
    """

    model: str
    """
    Model tag, e.g. "hardcore".
    """

    instance: str
    """
    Human-readable description of graph and parameters.
    """

    entries: dict[Hashable, float]
    """
    Probability of every configuration with positive weight.
    """

    normalizer: float
    """
    The normalizing constant Z of the unnormalized weights.
    """

    count: int | None = None
    """
    Number of feasible configurations, when the law is uniform.
    """

    def __post_init__(self) -> None:
        total = math.fsum(self.entries.values())

        if abs(total - 1) > SUM_TOLERANCE:
            raise InvariantViolation(f"Probabilities of '{self.instance}' sum to {total}.")

    def __len__(self) -> int:
        return len(self.entries)

    def probability(self, key: Hashable) -> float:
        """
        Probability of `key`, 0 outside the support.
        """

        return self.entries.get(key, 0.0)

    def to_json(self) -> dict[str, Any]:
        return {
            "model": self.model,
            "instance": self.instance,
            "normalizer": self.normalizer,
            "count": self.count,
            "entries": [
                {"configuration": list(key) if isinstance(key, tuple) else key, "probability": p}
                for key, p in sorted(self.entries.items(), key=lambda item: repr(item[0]))
            ],
        }


@dataclass(frozen=True, kw_only=True)
class GofReport:
    """
    Result of a goodness-of-fit or independence test.
    """

    samples: int
    """
    Number of observations tested.
    """

    tv: float
    """
    Total variation distance, in [0, 1].
    """

    chi2: float
    """
    Pearson chi-square statistic.
    """

    dof: int
    """
    Degrees of freedom after pooling sparse cells.
    """

    p_value: float
    """
    Chi-square p-value, in [0, 1].
    """

    passed: bool

    note: str = ""

    offending: list[Any] = field(default_factory=list)
    """
    Observed configurations the exact law gives zero probability.
    """

    def to_json(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"))

    def summary(self) -> str:
        """
        One human-readable line.
        """

        verdict = "PASS" if self.passed else "FAIL"
        line = (
            f"{verdict}: {self.samples} samples, TV {self.tv:.5f}, "
            f"chi2 {self.chi2:.3f} on {self.dof} dof, p-value {self.p_value:.4g}"
        )

        return f"{line} ({self.note})" if self.note else line
