"""
Providing total variation, chi-square goodness-of-fit and the T-independence test.

Chi-square cells with expected count below `MIN_EXPECTED` are pooled before testing.
"""

import math
from collections import Counter
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np
from scipy import stats

from recycler.exc import ParameterError
from recycler.oracle.types import ExactDistribution, GofReport

MIN_EXPECTED = 5.0
MIN_INDEPENDENCE_RECORDS = 1000

_POOLED = "<pooled>"


def total_variation(exact: Mapping[Hashable, float], empirical: Mapping[Hashable, float]) -> float:
    """
    Half the L1 distance between two laws given as probability maps.
    """

    keys = set(exact) | set(empirical)
    return 0.5 * math.fsum(abs(exact.get(k, 0.0) - empirical.get(k, 0.0)) for k in keys)


def _pool(observed: list[float], expected: list[float]) -> tuple[list[float], list[float]]:
    """
    Merge cells whose expected count is below `MIN_EXPECTED`, smallest first.
    """

    order = sorted(range(len(expected)), key=lambda i: expected[i])
    pooled_obs: list[float] = []
    pooled_exp: list[float] = []
    acc_obs = acc_exp = 0.0

    for i in order:
        if acc_exp + expected[i] < MIN_EXPECTED and expected[i] < MIN_EXPECTED:
            acc_obs += observed[i]
            acc_exp += expected[i]
            continue

        pooled_obs.append(observed[i] + acc_obs)
        pooled_exp.append(expected[i] + acc_exp)
        acc_obs = acc_exp = 0.0

    if acc_exp > 0 or acc_obs > 0:
        if pooled_exp:
            pooled_obs[0] += acc_obs
            pooled_exp[0] += acc_exp
        else:
            pooled_obs.append(acc_obs)
            pooled_exp.append(acc_exp)

    return pooled_obs, pooled_exp


def goodness_of_fit(
    exact: ExactDistribution,
    counts: Mapping[Hashable, int],
    tolerance: float = 0.01,
    significance: float = 1e-3,
) -> GofReport:
    """
    Compare observed configuration counts with an exact law.

    Args:
        exact (ExactDistribution): The exact law.
        counts (Mapping[Hashable, int]): Observations per configuration key.
        tolerance (float, optional): Largest acceptable TV distance. Defaults to 0.01.
        significance (float, optional): Smallest acceptable p-value. Defaults to 1e-3.

    Returns:
        GofReport: Passed iff TV <= tolerance, p-value >= significance and no impossible
        configuration was observed.
    """

    total = sum(counts.values())

    if total < 1:
        raise ParameterError("Goodness-of-fit needs at least one observation.")

    empirical = {key: c / total for key, c in counts.items() if c > 0}
    tv = total_variation(exact.entries, empirical)
    offending = sorted((key for key in empirical if key not in exact.entries), key=repr)

    support = list(exact.entries)
    observed = [float(counts.get(key, 0)) for key in support]
    expected = [total * exact.entries[key] for key in support]
    observed, expected = _pool(observed, expected)

    if offending:
        return GofReport(
            samples=total,
            tv=tv,
            chi2=0.0,
            dof=max(len(expected) - 1, 0),
            p_value=0.0,
            passed=False,
            note="impossible configuration observed",
            offending=[list(key) if isinstance(key, tuple) else key for key in offending],
        )

    if len(expected) < 2:
        return GofReport(
            samples=total,
            tv=tv,
            chi2=0.0,
            dof=0,
            p_value=1.0,
            passed=tv <= tolerance,
            note="single chi-square cell after pooling",
        )

    f_obs = np.asarray(observed)
    f_exp = np.asarray(expected)
    f_exp *= f_obs.sum() / f_exp.sum()

    result = stats.chisquare(f_obs, f_exp)
    p_value = float(result.pvalue)

    return GofReport(
        samples=total,
        tv=tv,
        chi2=float(result.statistic),
        dof=len(expected) - 1,
        p_value=p_value,
        passed=tv <= tolerance and p_value >= significance,
    )


def independence_test(
    records: Sequence[tuple[int, Hashable]], significance: float = 1e-3
) -> GofReport:
    """
    Test that a sample statistic does not depend on the stopping time T.

    Runs are split at the median of T; the statistic's distributions in the two halves are
    compared with a chi-square homogeneity test.

    Args:
        records (Sequence[tuple[int, Hashable]]): (T, statistic) per completed run, at least
            1000 of them.
        significance (float, optional): Smallest acceptable p-value. Defaults to 1e-3.

    Returns:
        GofReport: `tv` is the distance between the two conditional laws.
    """

    if len(records) < MIN_INDEPENDENCE_RECORDS:
        raise ParameterError(
            f"Independence test needs {MIN_INDEPENDENCE_RECORDS} records, got {len(records)}."
        )

    times = np.asarray([t for t, _ in records])
    values = [value for _, value in records]
    median = float(np.median(times))

    low = Counter(value for t, value in zip(times, values) if t <= median)
    high = Counter(value for t, value in zip(times, values) if t > median)

    def trivial(note: str, tv: float = 0.0) -> GofReport:
        return GofReport(
            samples=len(records), tv=tv, chi2=0.0, dof=0, p_value=1.0, passed=True, note=note
        )

    if len(set(values)) < 2:
        return trivial("degenerate statistic")

    if not low or not high:
        return trivial("degenerate stopping time")

    tv = total_variation(_law(low), _law(high))
    table = _contingency(low, high)

    if table.shape[1] < 2:
        return trivial("single statistic cell after pooling", tv)

    result = stats.chi2_contingency(table, correction=False)
    p_value = float(result.pvalue)

    return GofReport(
        samples=len(records),
        tv=tv,
        chi2=float(result.statistic),
        dof=int(result.dof),
        p_value=p_value,
        passed=p_value >= significance,
    )


def _law(counter: Counter) -> dict[Hashable, float]:
    total = sum(counter.values())
    return {key: c / total for key, c in counter.items()}


def _contingency(low: Counter, high: Counter) -> np.ndarray:
    """
    2 x V table of statistic counts with sparse values pooled into one column.
    """

    columns: dict[Hashable, list[int]] = {}
    rare = [0, 0]

    for value in sorted(set(low) | set(high), key=repr):
        row = [low.get(value, 0), high.get(value, 0)]

        if sum(row) < 2 * MIN_EXPECTED:
            rare[0] += row[0]
            rare[1] += row[1]
        else:
            columns[value] = row

    if sum(rare):
        columns[_POOLED] = rare

    return np.asarray(list(columns.values())).T


def tally(keys: Iterable[Hashable]) -> Counter:
    """
    Count configuration keys.
    """

    return Counter(keys)
