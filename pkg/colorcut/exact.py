"""Exact oracles used to check the heuristic on small instances."""

import itertools
from dataclasses import dataclass
from typing import Set, Tuple

import networkx as nx

from colorcut.exceptions import InvalidInstanceError, Violation
from colorcut.graph import ColoredGraph, ColorSet, count_components

DEFAULT_MAX_COLORS = 20


@dataclass(frozen=True)
class ExactResult:
    """
    Attributes
    ----------
    value: int
        Smallest number of colors whose removal disconnects the graph.
    witness: ColorSet
        One optimal set of colors to remove.
    explored: int
        Number of color subsets examined before the witness was found.
    """

    value: int
    witness: ColorSet
    explored: int


def brute_force_optimum(graph: ColoredGraph, max_colors: int = DEFAULT_MAX_COLORS) -> ExactResult:
    """
    Enumerates color subsets by increasing size, and lexicographically
    within a size, and returns the first one whose removal disconnects the
    graph.

    Raises
    ------
    ValueError
        If the instance has more than ``max_colors`` colors.
    InvalidInstanceError
        If the graph has fewer than 2 nodes, so no removal can disconnect it.
    """

    if graph.color_count > max_colors:
        raise ValueError(
            f"Brute force is limited to {max_colors} colors, the instance has "
            f"{graph.color_count}"
        )
    if graph.node_count < 2:
        raise InvalidInstanceError(
            [Violation("node_count", f"at least 2 nodes are needed, got {graph.node_count}")]
        )

    all_colors = graph.all_colors
    explored = 0
    for size in range(graph.color_count + 1):
        for removed in itertools.combinations(range(graph.color_count), size):
            explored += 1
            witness = ColorSet.of(graph.color_count, removed)
            if count_components(graph, all_colors - witness) > 1:
                return ExactResult(value=size, witness=witness, explored=explored)

    # Removing every color leaves node_count >= 2 isolated nodes, so the loop always returns.
    raise AssertionError("unreachable")


def _weighted_graph(graph: ColoredGraph) -> nx.Graph:
    weighted = nx.Graph()
    weighted.add_nodes_from(range(graph.node_count))
    for u, v, _ in graph.edges:
        if weighted.has_edge(u, v):
            weighted[u][v]["weight"] += 1
        else:
            weighted.add_edge(u, v, weight=1)
    return weighted


def _stoer_wagner(graph: ColoredGraph) -> Tuple[int, Tuple[Set[int], Set[int]]]:
    if graph.node_count < 2:
        raise InvalidInstanceError(
            [Violation("node_count", f"at least 2 nodes are needed, got {graph.node_count}")]
        )
    cut_value, (side, other_side) = nx.stoer_wagner(_weighted_graph(graph))
    return int(cut_value), (set(side), set(other_side))


def global_min_cut(graph: ColoredGraph) -> int:
    """
    Size of a global minimum edge cut, ignoring colors.

    Edges have unit weight and parallel edges add up. Solved with the
    Stoer-Wagner procedure from networkx.
    """

    return _stoer_wagner(graph)[0]


def min_cut_partition(graph: ColoredGraph) -> Tuple[Set[int], Set[int]]:
    """The two node sides of the minimum cut found by ``global_min_cut``."""
    return _stoer_wagner(graph)[1]
