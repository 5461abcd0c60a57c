"""
Providing the runtime-scaling harness.

Iterations of the Repeat loop are the primary metric; wall-clock nanoseconds are
recorded alongside. Replication r at size position s runs on stream s * reps + r of
the base seed.
"""

import csv
import logging
import math
from dataclasses import astuple, dataclass, fields
from typing import Any, Callable, Iterable, Iterator, TextIO

import numpy as np

from recycler.engine.runner import sample_many
from recycler.engine.types import Sampler
from recycler.graph.types import Graph

logger = logging.getLogger(__name__)

TAIL_MULTIPLES = (1, 2, 3)


@dataclass(frozen=True, kw_only=True)
class BenchRow:
    """
    One benchmark replication.
    """

    model: str
    family: str

    n: int
    """
    Number of sites (vertices, or edges for the random cluster model).
    """

    params: str
    """
    Model parameters as "name=value" pairs joined by ';'.
    """

    rep: int
    iterations: int
    wall_ns: int
    seed: int


HEADER = tuple(f.name for f in fields(BenchRow))


@dataclass(frozen=True, kw_only=True)
class SizeSummary:
    """
    Aggregate over the replications of one size.
    """

    n: int
    reps: int
    mean_iterations: float
    per_site: float
    """
    Mean iterations divided by the number of sites.
    """

    stderr: float
    """
    Standard error of the mean iteration count.
    """

    tails: tuple[tuple[int, float, float], ...] = ()
    """
    (m, empirical P(T >= 2 (m / gamma) n), 2^-m) per tail multiple, when a drift is known.
    """


def run_bench(
    build: Callable[[Graph], Sampler[Any]],
    graphs: Iterable[Graph],
    *,
    model: str,
    family: str,
    params: str,
    reps: int,
    seed: int,
    sites: Callable[[Graph], int] = lambda graph: graph.n,
    cap: int | None = None,
    parallel: int = 1,
) -> Iterator[BenchRow]:
    """
    Run `reps` replications per graph.

    Args:
        build (Callable[[Graph], Sampler[Any]]): Sampler factory.
        graphs (Iterable[Graph]): One graph per size.
        model (str), family (str), params (str): Labels copied into every row.
        reps (int): Replications per size.
        seed (int): Base seed.
        sites (Callable[[Graph], int], optional): Site count of a graph. Defaults to vertices.
        cap (int | None, optional): Per-run iteration cap. Defaults to no cap.
        parallel (int, optional): Worker processes. Defaults to 1.

    Yields:
        BenchRow: One row per completed replication.
    """

    for position, graph in enumerate(graphs):
        sampler = build(graph)
        records = sample_many(sampler, seed, reps, cap, start=position * reps, parallel=parallel)

        for rep, record in enumerate(records):
            if not record.completed:
                logger.warning("Replication %d at n=%d hit the cap, skipped.", rep, sites(graph))
                continue

            yield BenchRow(
                model=model,
                family=family,
                n=sites(graph),
                params=params,
                rep=rep,
                iterations=record.iterations,
                wall_ns=record.wall_ns,
                seed=seed,
            )


def write_csv(rows: Iterable[BenchRow], fp: TextIO) -> list[BenchRow]:
    """
    Write rows with the standard header and return them.
    """

    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(HEADER)

    written = []
    for row in rows:
        writer.writerow(astuple(row))
        written.append(row)

    return written


def summarize(rows: Iterable[BenchRow], gamma: float | None = None) -> list[SizeSummary]:
    """
    Per-size mean, ratio to size, standard error and, given a drift, the tail table.

    Args:
        rows (Iterable[BenchRow]): Benchmark rows.
        gamma (float | None, optional): Per-step drift of |V_t|. Defaults to None.

    Returns:
        list[SizeSummary]: One summary per size, in order of first appearance.
    """

    by_size: dict[int, list[int]] = {}
    for row in rows:
        by_size.setdefault(row.n, []).append(row.iterations)

    summaries = []

    for n, iterations in by_size.items():
        values = np.asarray(iterations, dtype=float)
        mean = float(values.mean())
        stderr = float(values.std(ddof=1) / math.sqrt(len(values))) if len(values) > 1 else 0.0

        tails: tuple[tuple[int, float, float], ...] = ()
        if gamma is not None and gamma > 0:
            tails = tuple(
                (m, float(np.mean(values >= 2 * (m / gamma) * n)), 2.0**-m) for m in TAIL_MULTIPLES
            )

        summaries.append(
            SizeSummary(
                n=n,
                reps=len(values),
                mean_iterations=mean,
                per_site=mean / n if n else 0.0,
                stderr=stderr,
                tails=tails,
            )
        )

    return summaries


def format_summary(summaries: list[SizeSummary]) -> str:
    """
    Render summaries as a plain-text block.
    """

    lines = ["# n reps mean_T mean_T/n stderr"]

    for s in summaries:
        lines.append(
            f"# {s.n} {s.reps} {s.mean_iterations:.3f} {s.per_site:.5f} {s.stderr:.3f}"
        )

    tails = [s for s in summaries if s.tails]
    if tails:
        lines.append("# tail: n m P(T>=2(m/gamma)n) bound")
        for s in tails:
            for m, empirical, bound in s.tails:
                lines.append(f"# tail: {s.n} {m} {empirical:.5f} {bound:.5f}")

    return "\n".join(lines)
