"""Edge-colored graphs, color sets and connectivity of color-induced subgraphs."""

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, List, NamedTuple, Sequence, Tuple

from colorcut.exceptions import InfeasibleSolutionError, Violation
from colorcut.utils import UnionFind, iter_bits


class Edge(NamedTuple):
    u: int
    v: int
    color: int


@dataclass(frozen=True)
class ColorSet:
    """
    Immutable subset of the color ids ``0 .. width-1`` stored as a bit mask.

    Attributes
    ----------
    width: int
        Number of colors of the instance the set belongs to.
    mask: int
        Bit ``c`` is set iff color ``c`` is a member.
    """

    width: int
    mask: int = 0

    def __post_init__(self):
        if self.width < 0:
            raise ValueError(f"Color set width must be non-negative, got {self.width}")
        if self.mask < 0 or self.mask >> self.width:
            raise ValueError(f"Mask {self.mask:#x} has bits outside width {self.width}")

    @classmethod
    def empty(cls, width: int) -> "ColorSet":
        return cls(width, 0)

    @classmethod
    def full(cls, width: int) -> "ColorSet":
        return cls(width, (1 << width) - 1)

    @classmethod
    def of(cls, width: int, colors: Iterable[int]) -> "ColorSet":
        mask = 0
        for color in colors:
            cls._check_color(width, color)
            mask |= 1 << color
        return cls(width, mask)

    @staticmethod
    def _check_color(width: int, color: int):
        if not 0 <= color < width:
            raise ValueError(f"Color {color} is outside [0, {width})")

    def _check_compatible(self, other: "ColorSet"):
        if self.width != other.width:
            raise ValueError(f"Color sets of width {self.width} and {other.width} are incompatible")

    def __contains__(self, color: int) -> bool:
        return 0 <= color < self.width and bool(self.mask >> color & 1)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def add(self, color: int) -> "ColorSet":
        self._check_color(self.width, color)
        return ColorSet(self.width, self.mask | 1 << color)

    def discard(self, color: int) -> "ColorSet":
        self._check_color(self.width, color)
        return ColorSet(self.width, self.mask & ~(1 << color))

    def complement(self) -> "ColorSet":
        return ColorSet(self.width, ~self.mask & ((1 << self.width) - 1))

    def __or__(self, other: "ColorSet") -> "ColorSet":
        self._check_compatible(other)
        return ColorSet(self.width, self.mask | other.mask)

    def __and__(self, other: "ColorSet") -> "ColorSet":
        self._check_compatible(other)
        return ColorSet(self.width, self.mask & other.mask)

    def __sub__(self, other: "ColorSet") -> "ColorSet":
        self._check_compatible(other)
        return ColorSet(self.width, self.mask & ~other.mask)

    def __xor__(self, other: "ColorSet") -> "ColorSet":
        self._check_compatible(other)
        return ColorSet(self.width, self.mask ^ other.mask)

    def symmetric_difference_size(self, other: "ColorSet") -> int:
        return len(self ^ other)

    def issubset(self, other: "ColorSet") -> bool:
        self._check_compatible(other)
        return self.mask & ~other.mask == 0

    def __repr__(self):
        return f"ColorSet({sorted(self)}, width={self.width})"


@dataclass(frozen=True)
class ColoredGraph:
    """
    Undirected multigraph whose edges carry exactly one color each.

    Edges are normalised to ``u <= v`` and kept sorted by ``(u, v, color)``,
    so two graphs with the same edge multiset compare equal. Construction
    does not check the instance invariants, see ``validate``.

    Attributes
    ----------
    node_count: int
        Number of nodes, ids ``0 .. node_count-1``.
    edges: tuple of Edge
        The canonical edge list.
    color_count: int
        Number of colors, ids ``0 .. color_count-1``.
    """

    node_count: int
    edges: Tuple[Edge, ...]
    color_count: int

    def __post_init__(self):
        canonical = sorted(Edge(min(u, v), max(u, v), color) for u, v, color in self.edges)
        object.__setattr__(self, "edges", tuple(canonical))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def edges_by_color(self) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
        buckets: List[List[Tuple[int, int]]] = [[] for _ in range(self.color_count)]
        for u, v, color in self.edges:
            if 0 <= color < self.color_count:
                buckets[color].append((u, v))
        return tuple(tuple(bucket) for bucket in buckets)

    @property
    def all_colors(self) -> ColorSet:
        return ColorSet.full(self.color_count)

    @property
    def no_colors(self) -> ColorSet:
        return ColorSet.empty(self.color_count)

    def colors_distinct(self) -> bool:
        """True when every edge has its own color."""
        return self.color_count == self.edge_count and all(
            len(bucket) == 1 for bucket in self.edges_by_color
        )

    def __repr__(self):
        return (
            f"ColoredGraph(node_count={self.node_count}, edge_count={self.edge_count}, "
            f"color_count={self.color_count})"
        )


@dataclass(frozen=True)
class Solution:
    """A color set together with the component count of the subgraph it induces."""

    colors: ColorSet
    components: int = field(compare=False)

    @classmethod
    def of(cls, graph: ColoredGraph, colors: ColorSet) -> "Solution":
        return cls(colors, count_components(graph, colors))

    @property
    def feasible(self) -> bool:
        return self.components > 1

    def __len__(self) -> int:
        return len(self.colors)


def _union_find_for(graph: ColoredGraph, colors: ColorSet) -> UnionFind:
    union_find = UnionFind(graph.node_count)
    by_color = graph.edges_by_color
    for color in colors:
        union_find.union_all(by_color[color])
    return union_find


def count_components(graph: ColoredGraph, colors: ColorSet) -> int:
    """
    Number of connected components of the spanning subgraph made of the
    edges whose color is in ``colors``. Isolated nodes count as components.
    """

    return _union_find_for(graph, colors).components


def is_feasible(graph: ColoredGraph, colors: ColorSet) -> bool:
    """True iff the subgraph induced by ``colors`` is disconnected."""
    return count_components(graph, colors) > 1


def candidate_components(
    graph: ColoredGraph, base: ColorSet, candidates: Sequence[int]
) -> List[int]:
    """
    Evaluates ``count_components(graph, base | {c})`` for every candidate.

    The union-find for ``base`` is built once and cloned per candidate, only
    the candidate's own edges are merged into the clone.
    """

    base_union_find = _union_find_for(graph, base)
    by_color = graph.edges_by_color
    counts = []
    for color in candidates:
        trial = base_union_find.copy()
        trial.union_all(by_color[color])
        counts.append(trial.components)
    return counts


def components_without(graph: ColoredGraph, removed: Iterable[Edge]) -> int:
    """Number of components left after deleting the edge multiset ``removed``."""
    remaining = Counter(graph.edges)
    remaining.subtract(Counter(Edge(*edge) for edge in removed))
    union_find = UnionFind(graph.node_count)
    for (u, v, _), multiplicity in remaining.items():
        if multiplicity > 0:
            union_find.union(u, v)
    return union_find.components


def disconnecting_edges(graph: ColoredGraph, kept_colors: ColorSet) -> Tuple[Edge, ...]:
    """
    Returns every edge whose color is not kept.

    Raises
    ------
    InfeasibleSolutionError
        If ``kept_colors`` induces a connected subgraph, in which case the
        returned edges would not disconnect the graph.
    """

    if not is_feasible(graph, kept_colors):
        raise InfeasibleSolutionError(
            f"Kept colors {sorted(kept_colors)} induce a connected subgraph"
        )
    return tuple(edge for edge in graph.edges if edge.color not in kept_colors)


def extract_minimal_cut(graph: ColoredGraph, disconnecting: Iterable[Edge]) -> Tuple[Edge, ...]:
    """
    Shrinks a disconnecting edge set to an inclusion-minimal one.

    Edges of ``disconnecting`` are tentatively put back in ascending
    ``(u, v, color)`` order; an edge stays put back unless doing so would
    reconnect the graph.

    Raises
    ------
    InfeasibleSolutionError
        If removing ``disconnecting`` leaves the graph connected.
    """

    removed = sorted(Edge(min(u, v), max(u, v), color) for u, v, color in disconnecting)
    remaining = Counter(graph.edges)
    remaining.subtract(Counter(removed))
    if any(multiplicity < 0 for multiplicity in remaining.values()):
        raise ValueError("Disconnecting set contains edges that are not in the graph")

    union_find = UnionFind(graph.node_count)
    for (u, v, _), multiplicity in remaining.items():
        if multiplicity > 0:
            union_find.union(u, v)

    if union_find.components == 1:
        raise InfeasibleSolutionError("Removing the given edges does not disconnect the graph")

    cut = []
    for edge in removed:
        if union_find.connected(edge.u, edge.v):
            continue
        if union_find.components == 2:
            cut.append(edge)
            continue
        union_find.union(edge.u, edge.v)
    return tuple(cut)


def validate(graph: ColoredGraph) -> List[Violation]:
    """
    Checks every instance invariant.

    Returns
    -------
    list of Violation
        Empty when the graph is a valid instance. Connectivity is only
        checked when all ids are in range.
    """

    violations = []
    if graph.node_count < 1:
        violations.append(
            Violation("node_count", f"node count must be positive, got {graph.node_count}")
        )
    if graph.color_count < 1:
        violations.append(
            Violation("color_count", f"color count must be positive, got {graph.color_count}")
        )

    ids_in_range = not violations
    used = set()
    for index, (u, v, color) in enumerate(graph.edges):
        if u < 0 or v >= graph.node_count:
            ids_in_range = False
            violations.append(
                Violation(
                    "node_out_of_range",
                    f"edge ({u}, {v}) has a node outside [0, {graph.node_count})",
                    index,
                )
            )
        elif u == v:
            violations.append(Violation("self_loop", f"self-loop on node {u}", index))

        if not 0 <= color < graph.color_count:
            ids_in_range = False
            violations.append(
                Violation(
                    "color_out_of_range",
                    f"edge ({u}, {v}) has color {color} outside [0, {graph.color_count})",
                    index,
                )
            )
        else:
            used.add(color)

    unused = [color for color in range(max(graph.color_count, 0)) if color not in used]
    if unused:
        violations.append(
            Violation("unused_color", f"colors never used by an edge: {unused}")
        )

    if ids_in_range and count_components(graph, graph.all_colors) > 1:
        violations.append(Violation("disconnected", "the graph with all colors is disconnected"))

    return violations
