"""
Command-line front end.

    colorcut solve FILE [--mode greedy|prob] [--seed N] [--time-limit S] [--max-iters N]
                        [--temperature T] [--emit-cut] [--report PATH]
    colorcut generate --nodes N --colors C --density D --seed S --count K --out DIR
    colorcut generate --suite [--nodes N] --seed S --out DIR
    colorcut verify FILE [--oracle brute|mincut]
    colorcut bench --dir DIR [--mode greedy|prob|both] [--csv PATH] [--workers N]

Exit status: 0 on success, 1 when ``verify`` finds the solver off the
oracle, 2 on input errors.
"""

import argparse
import logging
import os
import sys
from collections import defaultdict
from pathlib import Path
from typing import List, Optional, Sequence

from colorcut import __version__
from colorcut.bench import default_time_limit, format_table, run_dataset, write_csv
from colorcut.exact import brute_force_optimum, global_min_cut
from colorcut.exceptions import ColorCutError
from colorcut.instances import (
    INSTANCE_SUFFIX,
    INSTANCES_PER_DATASET,
    GeneratorParams,
    benchmark_grid,
    dataset_key,
    generate_instance,
    instance_filename,
    read_instance,
    save_instance,
)
from colorcut.vns import Mode, SolverConfig, solve

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT_ERROR = 2

REPORT_DIR_ENV = "COLORCUT_REPORT_DIR"
DEFAULT_VERIFY_ITERATIONS = 1000


class _InputError(Exception):
    pass


def _add_solver_arguments(parser: argparse.ArgumentParser, modes: Sequence[str]):
    parser.add_argument("--mode", choices=modes, default="greedy")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--time-limit", type=float, default=None, metavar="S")
    parser.add_argument("--max-iters", type=int, default=None, metavar="N")
    parser.add_argument("--temperature", type=float, default=1.0, metavar="T")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="colorcut",
        description="Minimum coloring cut solver: VNS heuristics, exact oracles and benchmarks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more logging")
    parser.add_argument("-q", "--quiet", action="store_true", help="only log errors")
    commands = parser.add_subparsers(dest="command", required=True)

    solve_parser = commands.add_parser("solve", help="solve one instance file")
    solve_parser.add_argument("file", type=Path)
    _add_solver_arguments(solve_parser, ["greedy", "prob"])
    solve_parser.add_argument("--emit-cut", action="store_true", help="print the minimal cut edges")
    solve_parser.add_argument("--report", type=Path, default=None, help="save a JSON run report")

    generate_parser = commands.add_parser("generate", help="generate random instance files")
    generate_parser.add_argument("--nodes", type=int, default=None)
    generate_parser.add_argument("--colors", type=int, default=None)
    generate_parser.add_argument("--density", type=float, default=None)
    generate_parser.add_argument("--seed", type=int, default=0)
    generate_parser.add_argument("--count", type=int, default=INSTANCES_PER_DATASET)
    generate_parser.add_argument("--out", type=Path, default=Path("."))
    generate_parser.add_argument(
        "--suite", action="store_true", help="generate the whole benchmark grid"
    )

    verify_parser = commands.add_parser("verify", help="compare the solver with an exact oracle")
    verify_parser.add_argument("file", type=Path)
    verify_parser.add_argument("--oracle", choices=["brute", "mincut"], default="brute")
    _add_solver_arguments(verify_parser, ["greedy", "prob"])

    bench_parser = commands.add_parser("bench", help="run datasets of instance files")
    bench_parser.add_argument("--dir", type=Path, required=True)
    _add_solver_arguments(bench_parser, ["greedy", "prob", "both"])
    bench_parser.add_argument("--csv", type=Path, default=None)
    bench_parser.add_argument("--workers", type=int, default=1)
    bench_parser.add_argument(
        "--with-timing",
        action="store_true",
        help="write elapsed times even when only an iteration budget is set",
    )
    bench_parser.add_argument("--compare-reference", action="store_true")
    return parser


def _configure_logging(verbose: int, quiet: bool):
    if quiet:
        level = logging.ERROR
    elif verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(
        level=level, format="%(asctime)s %(name)s %(levelname)s: %(message)s", stream=sys.stderr
    )


def _solver_config(args, mode: str, node_count: int, default_iterations=None) -> SolverConfig:
    time_limit = args.time_limit
    max_iterations = args.max_iters if args.max_iters is not None else default_iterations
    if time_limit is None and max_iterations is None:
        time_limit = default_time_limit(node_count)
    try:
        return SolverConfig(
            mode=Mode.parse(mode),
            temperature=args.temperature,
            time_limit=time_limit,
            max_iterations=max_iterations,
            seed=args.seed,
        )
    except ValueError as e:
        raise _InputError(str(e)) from None


def _load(file_path: Path):
    try:
        return read_instance(file_path)
    except OSError as e:
        raise _InputError(f"cannot read {file_path}: {e.strerror or e}") from None
    except UnicodeDecodeError as e:
        raise _InputError(f"{file_path}: not valid UTF-8 (byte {e.start})") from None
    except ColorCutError as e:
        raise _InputError(f"{file_path}: {e}") from None


def _cmd_solve(args) -> int:
    graph = _load(args.file)
    report = solve(graph, _solver_config(args, args.mode, graph.node_count))
    print(f"value={report.value}")
    print("cut_colors=" + " ".join(str(c) for c in report.cut_colors))
    print("kept_colors=" + " ".join(str(c) for c in report.kept_colors))
    print(f"iterations={report.outer_iterations} shakes={report.shakes}")
    print(f"elapsed_s={report.elapsed:.6f}")
    if args.emit_cut:
        print(f"minimal_cut={len(report.minimal_cut)}")
        for u, v, color in report.minimal_cut:
            print(f"{u} {v} {color}")
    if args.report is not None:
        report.save(args.report)
    return EXIT_OK


def _cmd_generate(args) -> int:
    if args.suite:
        datasets = benchmark_grid([args.nodes]) if args.nodes is not None else benchmark_grid()
    else:
        missing = [
            flag
            for flag, value in (("--nodes", args.nodes), ("--colors", args.colors),
                                ("--density", args.density))
            if value is None
        ]
        if missing:
            raise _InputError("generate needs " + ", ".join(missing) + " (or --suite)")
        datasets = [(args.nodes, args.colors, args.density)]
    if args.count < 1:
        raise _InputError(f"--count must be positive, got {args.count}")

    args.out.mkdir(parents=True, exist_ok=True)
    written = 0
    for dataset_index, (nodes, colors, density) in enumerate(datasets):
        for index in range(args.count):
            seed = args.seed + dataset_index * args.count + index
            try:
                params = GeneratorParams(nodes, colors, density, seed)
                graph = generate_instance(params)
            except ValueError as e:
                raise _InputError(str(e)) from None
            save_instance(
                graph,
                args.out / instance_filename(params, index),
                comments=[f"nodes={nodes} colors={colors} density={density:g} seed={seed}"],
            )
            written += 1
    logger.info("Wrote %d instance files to %s", written, args.out)
    print(f"generated={written}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    graph = _load(args.file)
    config = _solver_config(
        args, args.mode, graph.node_count, default_iterations=DEFAULT_VERIFY_ITERATIONS
    )
    if args.oracle == "mincut":
        if not graph.colors_distinct():
            raise _InputError("the mincut oracle needs all edge colors to be distinct")
        optimum = global_min_cut(graph)
    else:
        try:
            optimum = brute_force_optimum(graph).value
        except ValueError as e:
            raise _InputError(str(e)) from None

    report = solve(graph, config)
    gap = report.value - optimum
    print(f"solver={report.value} oracle={optimum} gap={gap}")
    if gap < 0:
        logger.error("Solver value %d is below the optimum %d", report.value, optimum)
    return EXIT_OK if gap == 0 else EXIT_MISMATCH


def _cmd_bench(args) -> int:
    files = sorted(args.dir.glob(f"*{INSTANCE_SUFFIX}"))
    if not files:
        raise _InputError(f"no {INSTANCE_SUFFIX} files in {args.dir}")

    datasets = defaultdict(list)
    for file_path in files:
        graph = _load(file_path)
        datasets[dataset_key(file_path, graph)].append((file_path.stem, graph))

    modes = ["greedy", "prob"] if args.mode == "both" else [args.mode]
    timed = True if args.with_timing else None
    reports = []
    for (nodes, colors, density), members in datasets.items():
        names = [name for name, _ in members]
        graphs = [graph for _, graph in members]
        for mode in modes:
            config = _solver_config(args, mode, nodes)
            reports.append(
                run_dataset(
                    graphs, config, names=names, density=density, workers=args.workers, timed=timed
                )
            )

    csv_path = args.csv
    if csv_path is None and os.environ.get(REPORT_DIR_ENV):
        csv_path = Path(os.environ[REPORT_DIR_ENV]) / "bench.csv"
    if csv_path is not None:
        csv_path.parent.mkdir(parents=True, exist_ok=True)
        with open(csv_path, "w", newline="", encoding="utf-8") as f:
            write_csv(reports, f)
    else:
        write_csv(reports, sys.stdout)

    print(format_table(reports, compare_reference=args.compare_reference), file=sys.stderr)
    return EXIT_OK


COMMANDS = {
    "solve": _cmd_solve,
    "generate": _cmd_generate,
    "verify": _cmd_verify,
    "bench": _cmd_bench,
}


def cli_dispatch(argv: Optional[List[str]] = None) -> int:
    """
    Parses ``argv`` and runs the selected subcommand.

    Returns
    -------
    int
        The exit status (0 success, 1 oracle mismatch, 2 input error).
    """

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_INPUT_ERROR

    _configure_logging(args.verbose, args.quiet)
    try:
        return COMMANDS[args.command](args)
    except (_InputError, ColorCutError) as e:
        print(f"colorcut {args.command}: error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


def main():
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()
