"""Dataset runs, time budgets and CSV/table reporting."""

import bisect
import csv
import logging
import math
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, TextIO, Tuple

import numpy as np

from colorcut.exceptions import ColorCutError
from colorcut.graph import ColoredGraph
from colorcut.vns import SolverConfig, solve

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("nodes", "colors", "density", "instance", "mode", "seed", "value", "elapsed_s")
AVERAGE_ROW_ID = "AVG"

# Wall-clock budget in seconds per instance size (node count).
TIME_LIMITS = ((50, 1.0), (100, 20.0), (200, 30.0), (400, 80.0), (500, 200.0), (1000, 2800.0))

# Published average values of the VNS on the original benchmark files, keyed by
# (nodes, colors, density). Both color-choice strategies reported the same averages.
REFERENCE_AVERAGES: Dict[Tuple[int, int, float], float] = {
    (50, 12, 0.8): 9.8, (50, 12, 0.5): 7.4, (50, 12, 0.2): 2.5,
    (50, 25, 0.8): 15.5, (50, 25, 0.5): 9.9, (50, 25, 0.2): 2.7,
    (50, 50, 0.8): 21.3, (50, 50, 0.5): 11.6, (50, 50, 0.2): 2.8,
    (50, 62, 0.8): 22.7, (50, 62, 0.5): 12.1, (50, 62, 0.2): 2.8,
    (100, 25, 0.8): 21.0, (100, 25, 0.5): 16.5, (100, 25, 0.2): 6.2,
    (100, 50, 0.8): 33.1, (100, 50, 0.5): 22.2, (100, 50, 0.2): 6.8,
    (100, 100, 0.8): 45.2, (100, 100, 0.5): 26.5, (100, 100, 0.2): 7.2,
    (100, 125, 0.8): 48.6, (100, 125, 0.5): 27.1, (100, 125, 0.2): 7.2,
    (200, 50, 0.8): 43.3, (200, 50, 0.5): 32.7, (200, 50, 0.2): 13.2,
    (200, 100, 0.8): 68.8, (200, 100, 0.5): 45.4, (200, 100, 0.2): 15.0,
    (200, 200, 0.8): 93.8, (200, 200, 0.5): 54.1, (200, 200, 0.2): 15.9,
    (200, 250, 0.8): 99.4, (200, 250, 0.5): 56.5, (200, 250, 0.2): 16.1,
    (400, 100, 0.8): 88.7, (400, 100, 0.5): 71.9, (400, 100, 0.2): 30.7,
    (400, 200, 0.8): 144.3, (400, 200, 0.5): 99.5, (400, 200, 0.2): 35.0,
    (400, 400, 0.8): 195.7, (400, 400, 0.5): 120.3, (400, 400, 0.2): 37.4,
    (400, 500, 0.8): 210.2, (400, 500, 0.5): 124.9, (400, 500, 0.2): 38.2,
    (500, 125, 0.8): 111.4, (500, 125, 0.5): 89.2, (500, 125, 0.2): 37.1,
    (500, 250, 0.8): 178.3, (500, 250, 0.5): 123.8, (500, 250, 0.2): 41.4,
    (500, 500, 0.8): 240.4, (500, 500, 0.5): 146.8, (500, 500, 0.2): 45.0,
    (500, 625, 0.8): 256.9, (500, 625, 0.5): 155.2, (500, 625, 0.2): 45.3,
    (1000, 250, 0.8): 228.8, (1000, 250, 0.5): 197.2, (1000, 250, 0.2): 113.8,
    (1000, 500, 0.8): 375.4, (1000, 500, 0.5): 284.3, (1000, 500, 0.2): 133.4,
    (1000, 1000, 0.8): 514.7, (1000, 1000, 0.5): 353.6, (1000, 1000, 0.2): 145.8,
    (1000, 1250, 0.8): 552.6, (1000, 1250, 0.5): 369.7, (1000, 1250, 0.2): 147.0,
}


def default_time_limit(node_count: int) -> float:
    """
    Time budget for an instance with ``node_count`` nodes: the budget of the
    largest listed size not above it, 1 second below the smallest size.
    """

    sizes = [size for size, _ in TIME_LIMITS]
    position = bisect.bisect_right(sizes, node_count)
    if position == 0:
        return TIME_LIMITS[0][1]
    return TIME_LIMITS[position - 1][1]


def derive_seed(base_seed: int, index: int) -> int:
    """Independent 64-bit seed for instance ``index`` of a dataset run."""
    sequence = np.random.SeedSequence(base_seed, spawn_key=(index,))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


@dataclass
class InstanceResult:
    instance: str
    seed: int
    value: Optional[int] = None
    elapsed: Optional[float] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass
class DatasetReport:
    """
    Results of one configuration on one dataset.

    Attributes
    ----------
    params: tuple
        ``(node_count, color_count, density)``; density is None when unknown.
    mode: str
        Color-choice strategy of the runs.
    seed: int
        Base seed the per-instance seeds were derived from.
    per_instance: list of InstanceResult
        One entry per instance, in input order, failures included.
    timed: bool
        Whether elapsed times are reported in CSV output.
    """

    params: Tuple[int, int, Optional[float]]
    mode: str
    seed: int
    per_instance: List[InstanceResult] = field(default_factory=list)
    timed: bool = True

    @property
    def succeeded(self) -> List[InstanceResult]:
        return [result for result in self.per_instance if result.ok]

    @property
    def failures(self) -> List[InstanceResult]:
        return [result for result in self.per_instance if not result.ok]

    @property
    def average_value(self) -> float:
        """Mean value over the successful runs, NaN when every run failed."""
        if not self.succeeded:
            return math.nan
        return statistics.fmean(result.value for result in self.succeeded)

    @property
    def average_time(self) -> float:
        if not self.succeeded:
            return math.nan
        return statistics.fmean(result.elapsed for result in self.succeeded)

    @property
    def rounded_average(self) -> float:
        return round(self.average_value, 1)

    def csv_rows(self) -> List[Dict[str, object]]:
        nodes, colors, density = self.params
        common = dict(
            nodes=nodes,
            colors=colors,
            density="" if density is None else f"{density:g}",
            mode=self.mode,
        )
        rows = []
        for result in self.succeeded:
            rows.append(
                dict(
                    common,
                    instance=result.instance,
                    seed=result.seed,
                    value=result.value,
                    elapsed_s=f"{result.elapsed:.6f}" if self.timed else "",
                )
            )
        if self.succeeded:
            rows.append(
                dict(
                    common,
                    instance=AVERAGE_ROW_ID,
                    seed=self.seed,
                    value=repr(self.average_value),
                    elapsed_s=f"{self.average_time:.6f}" if self.timed else "",
                )
            )
        return rows


def _run_one(task: Tuple[str, ColoredGraph, SolverConfig]) -> InstanceResult:
    name, graph, config = task
    try:
        report = solve(graph, config)
    except (ColorCutError, ValueError) as e:
        return InstanceResult(name, config.seed, error=str(e))
    except Exception as e:
        logger.exception("Unexpected failure on instance %s", name)
        return InstanceResult(name, config.seed, error=f"{type(e).__name__}: {e}")
    return InstanceResult(name, config.seed, value=report.value, elapsed=report.elapsed)


def run_dataset(
    instances: Sequence[ColoredGraph],
    config: Optional[SolverConfig] = None,
    names: Optional[Sequence[str]] = None,
    density: Optional[float] = None,
    workers: int = 1,
    timed: Optional[bool] = None,
) -> DatasetReport:
    """
    Solves every instance of a dataset and aggregates the results.

    Parameters
    ----------
    instances: list of ColoredGraph
        The dataset, ideally sharing node and color counts.
    config: SolverConfig, optional
        Mode, temperature, budgets and base seed. Instance ``i`` runs with
        ``derive_seed(config.seed, i)``. Defaults to greedy mode with the
        default time limit of the first instance's size.
    names: list of str, optional
        Instance ids for the report, defaults to the positions.
    density: float, optional
        Dataset density for the report.
    workers: int, optional, defaults to 1
        Number of worker processes; runs are independent and results keep
        the input order.
    timed: bool, optional
        Whether CSV rows carry elapsed times. Defaults to True unless the
        runs are bounded by an iteration budget only.

    Returns
    -------
    DatasetReport
        Per-instance failures are recorded in the report, not raised.
    """

    if not instances:
        raise ValueError("No instances were supplied")
    if config is None:
        config = SolverConfig(time_limit=default_time_limit(instances[0].node_count))
    if names is None:
        names = [str(i) for i in range(len(instances))]
    if len(names) != len(instances):
        raise ValueError(f"Got {len(names)} names for {len(instances)} instances")
    if timed is None:
        timed = config.time_limit is not None

    shapes = {(graph.node_count, graph.color_count) for graph in instances}
    if len(shapes) > 1:
        logger.warning("Dataset mixes instance shapes %s", sorted(shapes))

    tasks = [
        (name, graph, config.replace(seed=derive_seed(config.seed, index)))
        for index, (name, graph) in enumerate(zip(names, instances))
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, tasks))
    else:
        results = [_run_one(task) for task in tasks]

    for result in results:
        if not result.ok:
            logger.warning("Instance %s failed: %s", result.instance, result.error)

    first = instances[0]
    return DatasetReport(
        params=(first.node_count, first.color_count, density),
        mode=config.mode.value,
        seed=config.seed,
        per_instance=results,
        timed=timed,
    )


def write_csv(reports: Iterable[DatasetReport], stream: TextIO):
    writer = csv.DictWriter(stream, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for report in reports:
        writer.writerows(report.csv_rows())


def format_table(reports: Sequence[DatasetReport], compare_reference: bool = False) -> str:
    """
    Plain-text table with one row per dataset and a value/time column pair
    per mode, averages rounded to 1 decimal.
    """

    modes = list(dict.fromkeys(report.mode for report in reports))
    by_dataset: Dict[Tuple[int, int, Optional[float]], Dict[str, DatasetReport]] = {}
    for report in reports:
        by_dataset.setdefault(report.params, {})[report.mode] = report

    header = ["nodes", "colors", "density"]
    for mode in modes:
        header += [f"{mode} value", f"{mode} time (s)"]
    if compare_reference:
        header += ["reference", "match"]

    rows = [header]
    for params, per_mode in by_dataset.items():
        nodes, colors, density = params
        row = [str(nodes), str(colors), "-" if density is None else f"{density:g}"]
        for mode in modes:
            report = per_mode.get(mode)
            if report is None or not report.succeeded:
                row += ["-", "-"]
            else:
                row += [f"{report.rounded_average:.1f}", f"{report.average_time:.4g}"]
        if compare_reference:
            reference = REFERENCE_AVERAGES.get(params)
            if reference is None:
                row += ["-", "-"]
            else:
                matches = all(
                    report.succeeded and report.rounded_average == reference
                    for report in per_mode.values()
                )
                row += [f"{reference:.1f}", "yes" if matches else "no"]
        rows.append(row)

    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    return "\n".join(
        "  ".join(cell.rjust(width) for cell, width in zip(row, widths)) for row in rows
    )
