"""
Providing CLI.
"""

import logging
import os
import sys
from argparse import ArgumentParser, Namespace
from contextlib import nullcontext
from typing import Any, NoReturn, TextIO

from recycler.engine.runner import sample_many
from recycler.engine.types import Sampler
from recycler.exc import ParameterError, RecyclerError
from recycler.graph.families import FAMILIES, generate_family
from recycler.graph.io import read_edge_list
from recycler.graph.types import Graph
from recycler.models.cluster import RCParams, RCSampler, rc_threshold
from recycler.models.coloring import ColoringParams, ColoringSampler, coloring_regime_note
from recycler.models.hardcore import (
    HardcoreParams,
    HardcoreSampler,
    hc_drift_bound,
    threshold_basic,
    threshold_improved,
)
from recycler.models.recycle import DEFAULT_POLICY, POLICIES
from recycler.models.spin import SpinParams, SpinSampler, ising_drift_bound, ising_threshold
from recycler.oracle.verify import verify_sampler
from recyclit.bench import format_summary, run_bench, summarize, write_csv
from recyclit.logger import file_logger, standard_logger

MODELS = ("hardcore", "ising", "potts", "rc", "coloring")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY_FAILED = 2

SEED_ENV = "RR_SEED"

logger = logging.getLogger("recyclit")


class Parser(ArgumentParser):
    """
    Argument parser exiting with `EXIT_USAGE` on bad flags.
    """

    def error(self, message: str) -> NoReturn:
        """
        Print usage and exit with the usage status.
        """

        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def default_seed() -> int:
    """
    The seed from `RR_SEED`, 0 if unset.
    """

    value = os.environ.get(SEED_ENV, "0")

    try:
        return int(value)
    except ValueError:
        raise ParameterError(f"{SEED_ENV} '{value}' is not a decimal integer.") from None


def parse_size(text: str) -> int | tuple[int, int]:
    """
    "N" for a vertex count, "RxC" for grid dimensions.
    """

    try:
        if "x" in text:
            rows, cols = text.split("x", 1)
            return int(rows), int(cols)
        return int(text)
    except ValueError:
        raise ParameterError(f"Size '{text}' should be 'N' or 'RxC'.") from None


def load_graph(args: Namespace, size: int | tuple[int, int] | None = None) -> Graph:
    """
    The graph selected by `--graph` or `--family`.

    Args:
        args (Namespace): Parsed arguments.
        size (int | tuple[int, int] | None, optional): Family size overriding `--size`.
            Defaults to None.

    Returns:
        Graph: The loaded or generated graph.
    """

    if args.graph is not None:
        return read_edge_list(args.graph)

    if args.family is None:
        raise ParameterError("Either --graph or --family is required.")

    size = size if size is not None else args.size

    if size is None:
        raise ParameterError("--size is required with --family.")

    return generate_family(args.family, size)


def build_sampler(args: Namespace, graph: Graph) -> Sampler[Any]:
    """
    The sampler selected by `--model` and its parameter flags.
    """

    match args.model:
        case "hardcore":
            params = HardcoreParams(fugacity=args.fugacity, variant=args.variant)
            return HardcoreSampler(graph, params)
        case "ising" | "potts":
            q = 2 if args.model == "ising" else _integer_q(args.q)
            spin = SpinParams(
                beta=args.beta, j=args.j, q=q, kind=args.model, rejection=args.policy
            )
            return SpinSampler(graph, spin)
        case "rc":
            return RCSampler(graph, RCParams(p=args.p, q=args.q, tree_trick=args.tree))
        case "coloring":
            if args.k is None:
                raise ParameterError("--k is required for the coloring model.")
            return ColoringSampler(graph, ColoringParams(k=args.k, rejection=args.policy))

    raise ParameterError(f"Unknown model '{args.model}'.")


def _integer_q(q: float) -> int:
    """
    Potts color count from the shared `--q` flag.
    """

    if q != int(q):
        raise ParameterError(f"Potts color count '{q}' should be an integer.")
    return int(q)


def describe_params(args: Namespace) -> str:
    """
    The model parameters as a JSON object, for output headers.
    """

    match args.model:
        case "hardcore":
            values: dict[str, Any] = {"lambda": args.fugacity, "variant": args.variant}
        case "ising" | "potts":
            values = {"beta": args.beta, "j": args.j, "q": args.q, "policy": args.policy}
        case "rc":
            values = {"p": args.p, "q": args.q, "tree": args.tree}
        case _:
            values = {"k": args.k, "policy": args.policy}

    return ";".join(f"{name}={value}" for name, value in values.items())


def regime_warning(args: Namespace, delta: int) -> str | None:
    """
    Why the parameters lie outside the proven linear-time regime, or None.
    """

    match args.model:
        case "hardcore" if args.variant == "basic":
            limit = threshold_basic(max(delta, 1))
            if args.fugacity >= limit:
                return f"lambda {args.fugacity} is not below the basic threshold {limit:.6g}"
        case "hardcore":
            if delta < 2:
                return None
            limit = threshold_improved(delta)
            if args.fugacity >= limit:
                return f"lambda {args.fugacity} is not below the improved threshold {limit:.6g}"
        case "ising" | "potts":
            limit = ising_threshold(max(delta, 1))
            if args.beta >= limit:
                return f"beta {args.beta} is not below the threshold {limit:.6g}"
        case "rc":
            if delta < 2:
                return None
            limit = rc_threshold(delta, args.q, args.tree)
            if args.p >= limit:
                return f"p {args.p} is not below the threshold {limit:.6g}"
        case "coloring":
            report = coloring_regime_note(delta, args.k)
            if report.provable is False:
                return f"k {report.k}: {report.note}"

    return None


def drift(args: Namespace, delta: int) -> float | None:
    """
    Per-step drift of |V_t| used for the tail table, when the model has one.
    """

    if args.model == "hardcore" and args.variant == "basic":
        gamma = hc_drift_bound(delta, args.fugacity)
    elif args.model == "ising":
        gamma = ising_drift_bound(delta, args.beta)
    else:
        return None

    return gamma if gamma > 0 else None


def _output(path: str | None) -> Any:
    """
    Context manager for `--out`, or standard output.
    """

    return open(path, "w", newline="") if path else nullcontext(sys.stdout)


def cmd_sample(args: Namespace) -> int:
    """
    Draw samples and print one JSON record per run.

    Returns:
        int: Exit status.
    """

    graph = load_graph(args)
    sampler = build_sampler(args, graph)

    completed = interrupted = 0

    fp: TextIO
    with _output(args.out) as fp:
        for record in sample_many(
            sampler, args.seed, args.samples, args.cap, parallel=args.parallel
        ):
            if not record.completed:
                interrupted += 1
                continue

            completed += 1
            fp.write(record.to_json(args.timing) + "\n")

    print(f"# samples {completed}, interrupted {interrupted}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args: Namespace) -> int:
    """
    Compare the sampler with the exact law and print the report.

    Returns:
        int: `EXIT_OK` on a pass, `EXIT_VERIFY_FAILED` otherwise.
    """

    graph = load_graph(args)
    sampler = build_sampler(args, graph)

    report = verify_sampler(
        sampler,
        samples=args.samples,
        seed=args.seed,
        tolerance=args.tolerance,
        significance=args.significance,
        iteration_cap=args.cap,
        parallel=args.parallel,
    )

    print(report.to_json())
    print(report.summary())

    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def _edge_sites(graph: Graph) -> int:
    """
    Site count of edge models.
    """

    return graph.edge_count


def _vertex_sites(graph: Graph) -> int:
    """
    Site count of vertex models.
    """

    return graph.n


def cmd_bench(args: Namespace) -> int:
    """
    Time runs per size, write the CSV and print per-size summaries.

    Returns:
        int: Exit status.
    """

    if args.graph is not None:
        graphs = [load_graph(args)]
    elif not args.sizes:
        raise ParameterError("Either --graph or --sizes is required.")
    else:
        graphs = [load_graph(args, size) for size in args.sizes]

    delta = max(graph.max_degree for graph in graphs)

    if args.regime_check:
        warning = regime_warning(args, delta)
        if warning is not None:
            logger.warning("Outside the linear-time regime: %s.", warning)

    rows = run_bench(
        lambda graph: build_sampler(args, graph),
        graphs,
        model=args.model,
        family=args.family or "file",
        params=describe_params(args),
        reps=args.reps,
        seed=args.seed,
        sites=_edge_sites if args.model == "rc" else _vertex_sites,
        cap=args.cap,
        parallel=args.parallel,
    )

    fp: TextIO
    with _output(args.out) as fp:
        written = write_csv(rows, fp)

    print(format_summary(summarize(written, drift(args, delta))), file=sys.stderr)
    return EXIT_OK


def cmd_thresholds(args: Namespace) -> int:
    """
    Print every model threshold at `--max-degree`.

    Returns:
        int: Exit status.
    """

    delta = args.max_degree

    if delta < 1:
        raise ParameterError(f"Maximum degree '{delta}' should be at least 1.")

    def optional(compute: Any) -> str:
        try:
            return f"{compute():.6g}"
        except ParameterError:
            return "n/a"

    rows = [
        ("hardcore_basic", optional(lambda: threshold_basic(delta))),
        ("hardcore_improved", optional(lambda: threshold_improved(delta))),
        ("ising_beta", optional(lambda: ising_threshold(delta))),
        ("rc_tree", optional(lambda: rc_threshold(delta, args.q, True))),
        ("rc_no_tree", optional(lambda: rc_threshold(delta, args.q, False))),
    ]

    print(f"# max_degree={delta} q={args.q}")
    for name, value in rows:
        print(f"{name} {value}")

    return EXIT_OK


def _add_instance_arguments(parser: ArgumentParser) -> None:
    parser.add_argument("--model", choices=MODELS, required=True, help="model to sample")
    parser.add_argument("--graph", help="edge-list file; overrides --family")
    parser.add_argument("--family", choices=FAMILIES, help="generated graph family")
    parser.add_argument("--lambda", dest="fugacity", type=float, default=1.0, help="fugacity")
    parser.add_argument("--variant", choices=("basic", "improved"), default="basic")
    parser.add_argument("--beta", type=float, default=0.1, help="inverse temperature")
    parser.add_argument("--j", type=int, choices=(1, -1), default=1, help="coupling sign")
    parser.add_argument("--q", type=float, default=2.0, help="colors (potts) or cluster weight")
    parser.add_argument("--p", type=float, default=0.3, help="random cluster edge probability")
    parser.add_argument("--k", type=int, help="number of colors (coloring)")
    parser.add_argument(
        "--policy", choices=POLICIES, default=DEFAULT_POLICY, help="spin and coloring rejection set"
    )
    parser.add_argument("--no-tree", dest="tree", action="store_false", help="disable tree trick")
    parser.add_argument(
        "--seed",
        type=int,
        default=None,
        help=f"base seed. Default: ${SEED_ENV} or 0.",
    )
    parser.add_argument("--cap", type=int, help="iteration cap per run")
    parser.add_argument("--parallel", type=int, default=1, help="worker processes")
    parser.add_argument("--out", help="output file. Default: stdout.")


def make_parser() -> ArgumentParser:
    """
    Build the `recyclit` argument parser.

    Returns:
        ArgumentParser: The parser with its subcommands.
    """

    parser = Parser(prog="recyclit")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more logging")
    parser.add_argument("--log-dir", help="log to a file in this directory instead of stderr")

    commands = parser.add_subparsers(dest="command", required=True)

    sample = commands.add_parser("sample", help="emit samples as JSON lines")
    _add_instance_arguments(sample)
    sample.add_argument("--size", type=parse_size, help="vertex count or RxC")
    sample.add_argument("--samples", type=int, default=1)
    sample.add_argument("--timing", action="store_true", help="include wall_ns in records")
    sample.set_defaults(handler=cmd_sample)

    verify = commands.add_parser("verify", help="compare samples with the exact law")
    _add_instance_arguments(verify)
    verify.add_argument("--size", type=parse_size, help="vertex count or RxC")
    verify.add_argument("--samples", type=int, default=100_000)
    verify.add_argument("--tolerance", type=float, default=0.01)
    verify.add_argument("--significance", type=float, default=1e-3)
    verify.set_defaults(handler=cmd_verify)

    bench = commands.add_parser("bench", help="runtime scaling as CSV")
    _add_instance_arguments(bench)
    bench.add_argument("--sizes", type=parse_size, nargs="+", default=[])
    bench.add_argument("--reps", type=int, default=10)
    bench.add_argument("--regime-check", action="store_true", help="warn outside the regime")
    bench.set_defaults(handler=cmd_bench)

    thresholds = commands.add_parser("thresholds", help="print linear-time thresholds")
    thresholds.add_argument("--max-degree", type=int, required=True)
    thresholds.add_argument("--q", type=float, default=2.0)
    thresholds.set_defaults(handler=cmd_thresholds)

    return parser


def main(argv: list[str] | None = None) -> int:
    """
    The entry of the CLI program.
    """

    parser = make_parser()
    args = parser.parse_args(argv)

    if args.log_dir:
        file_logger(args.log_dir, f"recyclit-{args.command}", args.verbose)
    else:
        standard_logger(args.verbose)

    try:
        if getattr(args, "seed", 0) is None:
            args.seed = default_seed()
        return args.handler(args)
    except (RecyclerError, ValueError, OSError) as ex:
        print(f"recyclit: error: {ex}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
