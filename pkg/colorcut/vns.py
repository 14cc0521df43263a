"""
Variable Neighborhood Search for the minimum coloring cut problem.

A solution is a set of *kept* colors whose edges leave the graph
disconnected; the search maximises it, and the colors left out form the
disconnecting color set. Greedy and probabilistic (Boltzmann) color choice
share every routine except the choice of the next color to add.
"""

import enum
import json
import logging
import time
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from colorcut.exceptions import InfeasibleSolutionError, InvalidInstanceError, Violation
from colorcut.graph import (
    ColoredGraph,
    ColorSet,
    Edge,
    Solution,
    candidate_components,
    count_components,
    disconnecting_edges,
    extract_minimal_cut,
    validate,
)

logger = logging.getLogger(__name__)


class Mode(enum.Enum):
    GREEDY = "greedy"
    PROBABILISTIC = "probabilistic"

    @classmethod
    def parse(cls, value: "str | Mode") -> "Mode":
        if isinstance(value, Mode):
            return value
        aliases = {
            "greedy": cls.GREEDY,
            "prob": cls.PROBABILISTIC,
            "probabilistic": cls.PROBABILISTIC,
        }
        try:
            return aliases[value.strip().lower()]
        except KeyError:
            raise ValueError(f"Unknown mode {value!r}, expected greedy or prob") from None


@dataclass(frozen=True)
class SolverConfig:
    """
    Parameters of one solver run.

    Attributes
    ----------
    mode: Mode
        Greedy (max-components, lowest color id on ties) or probabilistic
        (Boltzmann) color choice.
    temperature: float
        Boltzmann temperature, must be positive.
    time_limit: float, optional
        Wall-clock budget in seconds.
    max_iterations: int, optional
        Budget of outer iterations. At least one of the two budgets is required.
    seed: int
        Seed of the run's PCG64 stream.
    """

    mode: Mode = Mode.GREEDY
    temperature: float = 1.0
    time_limit: Optional[float] = None
    max_iterations: Optional[int] = None
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode.parse(self.mode))
        if not self.temperature > 0:
            raise ValueError(f"Temperature must be positive, got {self.temperature}")
        if self.time_limit is None and self.max_iterations is None:
            raise ValueError("No stop condition: set time_limit and/or max_iterations")
        if self.time_limit is not None and not self.time_limit > 0:
            raise ValueError(f"Time limit must be positive, got {self.time_limit}")
        if self.max_iterations is not None and self.max_iterations < 1:
            raise ValueError(f"Iteration budget must be at least 1, got {self.max_iterations}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"Seed must fit in 64 unsigned bits, got {self.seed}")

    def replace(self, **changes) -> "SolverConfig":
        return replace(self, **changes)


@dataclass
class RunReport:
    """
    Outcome of ``solve``.

    ``value`` is the number of colors of the disconnecting set, that is
    ``color_count - len(kept_colors)``. ``trace`` holds one
    ``(outer_iteration, elapsed, value)`` point for the initial solution and
    one per improvement of the best solution.
    """

    value: int
    kept_colors: ColorSet
    cut_colors: ColorSet
    disconnecting: Tuple[Edge, ...]
    minimal_cut: Tuple[Edge, ...]
    elapsed: float
    outer_iterations: int
    shakes: int
    mode: Mode = Mode.GREEDY
    seed: int = 0
    improvements: int = 0
    trace: List[Tuple[int, float, int]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return dict(
            value=self.value,
            color_count=self.kept_colors.width,
            kept_colors=list(self.kept_colors),
            cut_colors=list(self.cut_colors),
            disconnecting=[list(edge) for edge in self.disconnecting],
            minimal_cut=[list(edge) for edge in self.minimal_cut],
            elapsed=self.elapsed,
            outer_iterations=self.outer_iterations,
            shakes=self.shakes,
            mode=self.mode.value,
            seed=self.seed,
            improvements=self.improvements,
            trace=[list(point) for point in self.trace],
        )

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunReport":
        width = data["color_count"]
        return cls(
            value=data["value"],
            kept_colors=ColorSet.of(width, data["kept_colors"]),
            cut_colors=ColorSet.of(width, data["cut_colors"]),
            disconnecting=tuple(Edge(*edge) for edge in data["disconnecting"]),
            minimal_cut=tuple(Edge(*edge) for edge in data["minimal_cut"]),
            elapsed=data["elapsed"],
            outer_iterations=data["outer_iterations"],
            shakes=data["shakes"],
            mode=Mode.parse(data["mode"]),
            seed=data["seed"],
            improvements=data.get("improvements", 0),
            trace=[tuple(point) for point in data.get("trace", [])],
        )

    def save(self, file_path):
        """
        Serializes the report as JSON and saves it to disk.

        Parameters
        ----------
        file_path: str or path-like
            Path of the JSON output.
        """

        with open(file_path, "w") as f:
            json.dump(self.to_dict(), f, indent=2)

    @classmethod
    def load(cls, file_path) -> "RunReport":
        with open(file_path, "r") as f:
            return cls.from_dict(json.load(f))


def make_rng(seed: int) -> np.random.Generator:
    """The single random stream of a run: PCG64 seeded with ``seed``."""
    return np.random.Generator(np.random.PCG64(seed))


def _uniform_member(colors: ColorSet, rng: np.random.Generator) -> int:
    members = list(colors)
    return members[int(rng.integers(len(members)))]


def boltzmann_select(
    graph: ColoredGraph,
    base: ColorSet,
    candidates: Sequence[int],
    temperature: float,
    rng: np.random.Generator,
) -> Optional[int]:
    """
    Draws a candidate color with probability proportional to
    ``exp(delta(c) / temperature)``, where ``delta(c)`` is the component
    count of ``base | {c}`` minus the best such count over the candidates.

    Only feasible candidates (still disconnected after adding them) can be
    drawn; the weights are renormalised over them.

    Returns
    -------
    int or None
        The chosen color, or None when no candidate keeps ``base`` disconnected.
    """

    candidates = list(candidates)
    if not candidates:
        return None

    components = np.asarray(candidate_components(graph, base, candidates), dtype=float)
    feasible = components > 1
    if not feasible.any():
        return None

    best = components.max()
    weights = np.exp((components[feasible] - best) / temperature)
    choices = np.asarray(candidates)[feasible]
    return int(rng.choice(choices, p=weights / weights.sum()))


def _greedy_select(graph: ColoredGraph, base: ColorSet, candidates: Sequence[int]) -> Optional[int]:
    # Max-components candidate, lowest color id on ties; None unless it keeps `base` disconnected.
    if not candidates:
        return None
    components = candidate_components(graph, base, candidates)
    best_index = max(range(len(candidates)), key=lambda i: (components[i], -candidates[i]))
    if components[best_index] <= 1:
        return None
    return candidates[best_index]


def _select(
    graph: ColoredGraph,
    base: ColorSet,
    candidates: Sequence[int],
    config: SolverConfig,
    rng: np.random.Generator,
) -> Optional[int]:
    if config.mode is Mode.GREEDY:
        return _greedy_select(graph, base, candidates)
    return boltzmann_select(graph, base, candidates, config.temperature, rng)


def _extend(
    graph: ColoredGraph,
    base: ColorSet,
    pool: ColorSet,
    config: SolverConfig,
    rng: np.random.Generator,
) -> ColorSet:
    # Adds colors of ``pool`` to ``base`` one at a time while the result stays disconnected.
    current = base
    remaining = pool - base
    while remaining:
        color = _select(graph, current, list(remaining), config, rng)
        if color is None:
            break
        current = current.add(color)
        remaining = remaining.discard(color)
    return current


def _require_splittable(graph: ColoredGraph):
    violations = validate(graph)
    if graph.node_count < 2:
        violations.append(
            Violation("node_count", f"at least 2 nodes are needed, got {graph.node_count}")
        )
    if violations:
        raise InvalidInstanceError(violations)


def generate_initial_solution(
    graph: ColoredGraph, config: SolverConfig, rng: np.random.Generator
) -> Solution:
    """
    Builds a maximal disconnected color set from scratch, one color at a time.

    Raises
    ------
    InvalidInstanceError
        If the graph has fewer than 2 nodes.
    """

    if graph.node_count < 2:
        raise InvalidInstanceError(
            [Violation("node_count", f"at least 2 nodes are needed, got {graph.node_count}")]
        )
    colors = _extend(graph, graph.no_colors, graph.all_colors, config, rng)
    return Solution.of(graph, colors)


def new_solution(
    graph: ColoredGraph, best: Solution, config: SolverConfig, rng: np.random.Generator
) -> Solution:
    """
    Builds a candidate from the complementary space of ``best``: first only
    colors outside ``best`` are added, then colors of ``best`` fill up what
    is still possible.
    """

    best_colors = best.colors
    colors = _extend(graph, graph.no_colors, best_colors.complement(), config, rng)
    colors = _extend(graph, colors, best_colors, config, rng)
    return Solution.of(graph, colors)


def shake(base: ColorSet, current: ColorSet, k: int, rng: np.random.Generator) -> ColorSet:
    """
    Applies ``k`` random moves to ``current``, each one either removing a
    color shared with ``base`` or adding a color absent from both.

    A move is a removal when a uniform draw is below 0.5 and a removal is
    possible, otherwise an addition; when the chosen pool is empty the other
    move is made. Every move grows the symmetric difference with ``base`` by
    one. If both pools run dry the remaining moves are skipped. The result
    may induce a connected subgraph.
    """

    shaken = current
    for step in range(k):
        removable = shaken & base
        addable = (shaken | base).complement()
        delta = rng.random()
        if delta < 0.5 and removable:
            shaken = shaken.discard(_uniform_member(removable, rng))
        elif addable:
            shaken = shaken.add(_uniform_member(addable, rng))
        elif removable:
            shaken = shaken.discard(_uniform_member(removable, rng))
        else:
            logger.debug(
                "Shake exhausted both pools after %d of %d moves", step, k
            )
            break
    return shaken


def fix(graph: ColoredGraph, s: ColorSet, rng: np.random.Generator) -> ColorSet:
    """Removes uniformly random colors from ``s`` until it induces a disconnected subgraph."""
    while count_components(graph, s) == 1:
        s = s.discard(_uniform_member(s, rng))
    return s


def local_search(
    graph: ColoredGraph, s: ColorSet, config: SolverConfig, rng: np.random.Generator
) -> ColorSet:
    """
    Adds colors to the feasible set ``s`` until no single addition keeps it
    disconnected.

    Raises
    ------
    InfeasibleSolutionError
        If ``s`` already induces a connected subgraph.
    """

    if count_components(graph, s) <= 1:
        raise InfeasibleSolutionError(f"Local search needs a disconnected start, got {s!r}")
    return _extend(graph, s, s.complement(), config, rng)


class _StopCondition(object):
    def __init__(self, config: SolverConfig, started: float):
        self.deadline = None if config.time_limit is None else started + config.time_limit
        self.max_iterations = config.max_iterations

    def out_of_time(self) -> bool:
        return self.deadline is not None and time.perf_counter() >= self.deadline

    def reached(self, iterations: int) -> bool:
        if self.max_iterations is not None and iterations >= self.max_iterations:
            return True
        return self.out_of_time()


def solve(graph: ColoredGraph, config: SolverConfig) -> RunReport:
    """
    Runs the VNS until the stop condition of ``config`` holds.

    Parameters
    ----------
    graph: ColoredGraph
        A valid instance with at least 2 nodes.
    config: SolverConfig
        Mode, temperature, budgets and seed.

    Returns
    -------
    RunReport
        Best kept colors found, the disconnecting edges they leave out and
        an inclusion-minimal cut extracted from them.

    Raises
    ------
    InvalidInstanceError
        If the graph breaks an instance invariant or has fewer than 2 nodes.
    """

    _require_splittable(graph)
    rng = make_rng(config.seed)
    started = time.perf_counter()
    stop = _StopCondition(config, started)
    color_count = graph.color_count

    best = generate_initial_solution(graph, config, rng).colors
    max_neighborhood = color_count - len(best)
    trace = [(0, time.perf_counter() - started, color_count - len(best))]
    logger.info("Initial solution value %d (%s)", color_count - len(best), config.mode.value)

    iterations = 0
    shakes = 0
    improvements = 0

    def record(new_best: ColorSet):
        nonlocal best, max_neighborhood, improvements
        best = new_best
        max_neighborhood = color_count - len(best)
        improvements += 1
        trace.append((iterations, time.perf_counter() - started, max_neighborhood))
        logger.info("Iteration %d: best value %d", iterations, max_neighborhood)

    while True:
        s = new_solution(graph, Solution.of(graph, best), config, rng).colors
        while len(s) > len(best):
            record(s)
            s = new_solution(graph, Solution.of(graph, best), config, rng).colors

        k = 1
        while k < max_neighborhood:
            if stop.out_of_time():
                break
            shaken = shake(s, s, k, rng)
            shakes += 1
            if count_components(graph, shaken) == 1:
                shaken = fix(graph, shaken, rng)
            shaken = local_search(graph, shaken, config, rng)
            if len(shaken) > len(s):
                s = shaken
                k = 1
            else:
                k += 1
            logger.debug("Iteration %d: k=%d, |S|=%d", iterations, k, len(s))

        if len(s) > len(best):
            record(s)

        iterations += 1
        if stop.reached(iterations):
            break

    disconnecting = disconnecting_edges(graph, best)
    elapsed = time.perf_counter() - started
    logger.info(
        "Finished after %d iterations and %d shakes: value %d in %.3fs",
        iterations,
        shakes,
        color_count - len(best),
        elapsed,
    )
    return RunReport(
        value=color_count - len(best),
        kept_colors=best,
        cut_colors=best.complement(),
        disconnecting=disconnecting,
        minimal_cut=extract_minimal_cut(graph, disconnecting),
        elapsed=elapsed,
        outer_iterations=iterations,
        shakes=shakes,
        mode=config.mode,
        seed=config.seed,
        improvements=improvements,
        trace=trace,
    )
