"""
Instance files and random instance generation.

File format (UTF-8 text, 0-based ids)::

    <node_count> <edge_count> <color_count>
    <u> <v> <color>          one line per edge

Lines starting with ``#`` are comments and blank lines are ignored.
"""

import io
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, TextIO, Tuple, Union

import networkx as nx
import numpy as np

from colorcut.exceptions import InstanceFormatError
from colorcut.graph import ColoredGraph, Edge, validate

logger = logging.getLogger(__name__)

INSTANCE_SUFFIX = ".mcc"

BENCHMARK_NODE_COUNTS = (50, 100, 200, 400, 500, 1000)
BENCHMARK_DENSITIES = (0.8, 0.5, 0.2)
INSTANCES_PER_DATASET = 10

_FILENAME_PATTERN = re.compile(r"^n(\d+)_c(\d+)_d([0-9.]+)_(\d+)$")


@dataclass(frozen=True)
class GeneratorParams:
    """
    Attributes
    ----------
    node_count: int
        Number of nodes, at least 2.
    color_count: int
        Number of colors, at least 1.
    density: float
        Edge density in (0, 1]; the expected edge count is
        ``density * node_count * (node_count - 1) / 2``.
    seed: int
        Seed of the PCG64 stream driving the generator.
    """

    node_count: int
    color_count: int
    density: float
    seed: int = 0

    def __post_init__(self):
        if self.node_count < 2:
            raise ValueError(f"Node count must be at least 2, got {self.node_count}")
        if self.color_count < 1:
            raise ValueError(f"Color count must be at least 1, got {self.color_count}")
        if not 0 < self.density <= 1:
            raise ValueError(f"Density must be in (0, 1], got {self.density}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"Seed must fit in 64 unsigned bits, got {self.seed}")

    @property
    def pair_count(self) -> int:
        return self.node_count * (self.node_count - 1) // 2

    @property
    def expected_edges(self) -> float:
        return self.density * self.pair_count


def _lines(text: Union[str, TextIO]) -> Iterable[Tuple[int, str]]:
    stream = io.StringIO(text) if isinstance(text, str) else text
    for number, raw in enumerate(stream, start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield number, line


def _integers(line: str, number: int, kind: str, what: str) -> List[int]:
    fields = line.split()
    if len(fields) != 3:
        raise InstanceFormatError(number, kind, f"expected 3 integers for {what}, got {line!r}")
    try:
        return [int(x) for x in fields]
    except ValueError:
        raise InstanceFormatError(number, kind, f"non-integer field in {what}: {line!r}") from None


def parse_instance(text: Union[str, TextIO]) -> ColoredGraph:
    """
    Parses an instance and validates it.

    Parameters
    ----------
    text: str or text stream
        Instance contents.

    Returns
    -------
    ColoredGraph

    Raises
    ------
    InstanceFormatError
        On a malformed header or edge line, a wrong number of edge lines, or
        any instance invariant violation. ``kind`` tells them apart and
        ``line`` points at the offending line (the header line for
        violations of the whole graph).
    """

    lines = _lines(text)
    try:
        header_line, header = next(lines)
    except StopIteration:
        raise InstanceFormatError(1, "header", "empty instance, missing header") from None

    node_count, edge_count, color_count = _integers(header, header_line, "header", "the header")
    if node_count < 1 or edge_count < 0 or color_count < 1:
        raise InstanceFormatError(
            header_line, "header", f"header values out of range: {header!r}"
        )

    edges = []
    edge_lines = []
    for number, line in lines:
        if len(edges) == edge_count:
            raise InstanceFormatError(
                number, "edge_count", f"more edge lines than the {edge_count} announced"
            )
        edges.append(Edge(*_integers(line, number, "edge_line", "an edge")))
        edge_lines.append(number)

    if len(edges) < edge_count:
        raise InstanceFormatError(
            header_line, "edge_count", f"header announces {edge_count} edges, found {len(edges)}"
        )

    # The graph stores edges sorted, so violations are traced back through the same order.
    order = sorted(
        range(len(edges)),
        key=lambda i: (min(edges[i].u, edges[i].v), max(edges[i].u, edges[i].v), edges[i].color),
    )
    graph = ColoredGraph(node_count, tuple(edges), color_count)
    violations = validate(graph)
    if violations:
        first = violations[0]
        line = header_line if first.edge_index is None else edge_lines[order[first.edge_index]]
        raise InstanceFormatError(line, first.kind, first.message)
    return graph


def write_instance(graph: ColoredGraph, comments: Sequence[str] = ()) -> str:
    """
    Canonical serialization: header, optional ``#`` comment lines, then the
    edges sorted by ``(u, v, color)``.
    """

    out = [f"{graph.node_count} {graph.edge_count} {graph.color_count}"]
    out += [f"# {comment}" for comment in comments]
    out += [f"{u} {v} {color}" for u, v, color in graph.edges]
    return "\n".join(out) + "\n"


def read_instance(file_path: Union[str, Path]) -> ColoredGraph:
    with open(file_path, "r", encoding="utf-8") as f:
        return parse_instance(f)


def save_instance(graph: ColoredGraph, file_path: Union[str, Path], comments: Sequence[str] = ()):
    with open(file_path, "w", encoding="utf-8") as f:
        f.write(write_instance(graph, comments))


def generate_instance(params: GeneratorParams) -> ColoredGraph:
    """
    Random connected instance with every color used.

    A uniform random spanning tree (random Pruefer sequence) guarantees
    connectivity; every other node pair becomes an edge independently with
    the probability that brings the expected edge count to
    ``params.expected_edges``. Colors are uniform, then every missing color
    is moved onto a random edge whose color occurs at least twice.

    Raises
    ------
    ValueError
        If fewer edges than colors were sampled, so some color cannot be used.
    """

    n = params.node_count
    tree_edges = n - 1
    if params.expected_edges < tree_edges:
        logger.warning(
            "Expected edge count %.1f is below the %d spanning tree edges; "
            "instances will be denser than requested density %.3f",
            params.expected_edges,
            tree_edges,
            params.density,
        )

    rng = np.random.Generator(np.random.PCG64(params.seed))
    prufer = rng.integers(0, n, size=n - 2).tolist() if n > 2 else []
    tree = nx.from_prufer_sequence(prufer)
    pairs = {(min(u, v), max(u, v)) for u, v in tree.edges()}

    extra_pairs = params.pair_count - tree_edges
    if extra_pairs > 0:
        probability = (params.expected_edges - tree_edges) / extra_pairs
        probability = min(max(probability, 0.0), 1.0)
        rows, cols = np.triu_indices(n, k=1)
        draws = rng.random(rows.size) < probability
        for u, v, drawn in zip(rows.tolist(), cols.tolist(), draws.tolist()):
            if drawn and (u, v) not in pairs:
                pairs.add((u, v))

    endpoints = sorted(pairs)
    if len(endpoints) < params.color_count:
        raise ValueError(
            f"Sampled {len(endpoints)} edges, fewer than the {params.color_count} colors "
            f"that must all be used"
        )

    colors = rng.integers(0, params.color_count, size=len(endpoints))
    counts = np.bincount(colors, minlength=params.color_count)
    for missing in np.flatnonzero(counts == 0).tolist():
        donors = np.flatnonzero(counts[colors] >= 2)
        edge_index = int(donors[rng.integers(donors.size)])
        counts[colors[edge_index]] -= 1
        colors[edge_index] = missing
        counts[missing] += 1

    edges = tuple(Edge(u, v, int(color)) for (u, v), color in zip(endpoints, colors.tolist()))
    return ColoredGraph(n, edges, params.color_count)


def benchmark_grid(
    node_counts: Sequence[int] = BENCHMARK_NODE_COUNTS,
    densities: Sequence[float] = BENCHMARK_DENSITIES,
) -> List[Tuple[int, int, float]]:
    """
    ``(node_count, color_count, density)`` triples of the standard benchmark
    suite: color counts n/4, n/2, n and 5n/4 for every node count.
    """

    grid = []
    for n in node_counts:
        for color_count in (n // 4, n // 2, n, 5 * n // 4):
            for density in densities:
                grid.append((n, color_count, density))
    return grid


def instance_filename(params: GeneratorParams, index: int) -> str:
    stem = f"n{params.node_count}_c{params.color_count}_d{params.density:g}_{index:02d}"
    return stem + INSTANCE_SUFFIX


def dataset_key(
    file_path: Union[str, Path], graph: Optional[ColoredGraph] = None
) -> Tuple[int, int, float]:
    """
    ``(node_count, color_count, density)`` of the dataset an instance file
    belongs to, read from a generator file name, or measured from the graph
    for other names.
    """

    match = _FILENAME_PATTERN.match(Path(file_path).stem)
    if match:
        return int(match.group(1)), int(match.group(2)), float(match.group(3))
    if graph is None:
        graph = read_instance(file_path)
    pairs = graph.node_count * (graph.node_count - 1) / 2
    density = round(graph.edge_count / pairs, 2) if pairs else 0.0
    return graph.node_count, graph.color_count, density
