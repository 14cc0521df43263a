import logging
from collections import Counter

import pytest
from hypothesis import given, settings

from colorcut.exact import brute_force_optimum, global_min_cut
from colorcut.exceptions import InfeasibleSolutionError, InvalidInstanceError
from colorcut.graph import (
    ColoredGraph,
    ColorSet,
    Solution,
    components_without,
    count_components,
    disconnecting_edges,
    is_feasible,
)
from colorcut.instances import GeneratorParams, generate_instance
from colorcut.vns import (
    Mode,
    RunReport,
    SolverConfig,
    boltzmann_select,
    fix,
    generate_initial_solution,
    local_search,
    make_rng,
    new_solution,
    shake,
    solve,
)
from tests.strategies import colored_graphs, subset

GREEDY = SolverConfig(Mode.GREEDY, max_iterations=20)
PROBABILISTIC = SolverConfig(Mode.PROBABILISTIC, max_iterations=20)

DRAWS = 100_000


def _frequencies(graph, candidates, temperature=1.0, seed=5):
    rng = make_rng(seed)
    counts = Counter(
        boltzmann_select(graph, graph.no_colors, candidates, temperature, rng) for _ in range(DRAWS)
    )
    return [counts[c] / DRAWS for c in candidates]


def _cycle(n):
    return ColoredGraph(n, tuple((i, (i + 1) % n, i) for i in range(n)), n)


def _complete4():
    pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    return ColoredGraph(4, tuple((u, v, c) for c, (u, v) in enumerate(pairs)), 6)


def test_mode_parse_aliases():
    assert Mode.parse("greedy") is Mode.GREEDY
    assert Mode.parse("prob") is Mode.PROBABILISTIC
    assert Mode.parse(" Probabilistic ") is Mode.PROBABILISTIC
    with pytest.raises(ValueError):
        Mode.parse("annealing")


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(),
        dict(max_iterations=5, temperature=0.0),
        dict(max_iterations=5, temperature=-1.0),
        dict(time_limit=0.0),
        dict(max_iterations=0),
        dict(max_iterations=5, seed=-1),
        dict(max_iterations=5, seed=2**64),
    ],
)
def test_solver_config_rejects_bad_parameters(kwargs):
    with pytest.raises(ValueError):
        SolverConfig(**kwargs)


def test_solver_config_accepts_mode_names():
    config = SolverConfig("prob", max_iterations=3)
    assert config.mode is Mode.PROBABILISTIC
    assert config.replace(seed=9).seed == 9


def test_boltzmann_single_feasible_candidate_is_always_chosen(two_candidates):
    rng = make_rng(0)
    for _ in range(100):
        assert boltzmann_select(two_candidates, two_candidates.no_colors, [1], 1.0, rng) == 1


def test_boltzmann_skips_connecting_candidates():
    # color 0 alone spans every node
    graph = ColoredGraph(3, ((0, 1, 0), (1, 2, 0), (0, 2, 1)), 2)
    rng = make_rng(0)
    for _ in range(100):
        assert boltzmann_select(graph, graph.no_colors, [0, 1], 1.0, rng) == 1


def test_boltzmann_returns_none_without_feasible_candidates(triangle, single_edge):
    rng = make_rng(0)
    assert boltzmann_select(single_edge, single_edge.no_colors, [0], 1.0, rng) is None
    assert boltzmann_select(triangle, subset(triangle, 0), [1, 2], 1.0, rng) is None
    assert boltzmann_select(triangle, triangle.no_colors, [], 1.0, rng) is None


def test_boltzmann_equal_components_are_equally_likely():
    graph = ColoredGraph(5, ((0, 1, 0), (2, 3, 1), (1, 2, 2), (3, 4, 2)), 3)
    frequencies = _frequencies(graph, [0, 1])
    assert frequencies == pytest.approx([0.5, 0.5], abs=0.01)


def test_boltzmann_two_candidate_frequencies(two_candidates):
    frequencies = _frequencies(two_candidates, [0, 1])
    assert frequencies == pytest.approx([0.7311, 0.2689], abs=0.01)


def test_boltzmann_three_candidate_frequencies(three_candidates):
    frequencies = _frequencies(three_candidates, [0, 1, 2])
    assert frequencies == pytest.approx([0.6652, 0.2447, 0.0900], abs=0.01)


def test_boltzmann_high_temperature_flattens_choice(two_candidates):
    frequencies = _frequencies(two_candidates, [0, 1], temperature=1000.0)
    assert frequencies == pytest.approx([0.5, 0.5], abs=0.01)


def test_initial_solution_single_edge_keeps_nothing(single_edge):
    solution = generate_initial_solution(single_edge, GREEDY, make_rng(0))
    assert solution.colors == single_edge.no_colors
    assert solution.components == 2


def test_initial_solution_star_keeps_two_leaves(star):
    for config in (GREEDY, PROBABILISTIC):
        solution = generate_initial_solution(star, config, make_rng(3))
        assert len(solution) == 2
        assert solution.feasible


def test_initial_solution_greedy_breaks_ties_by_lowest_color(star, path4):
    assert generate_initial_solution(star, GREEDY, make_rng(0)).colors == subset(star, 0, 1)
    assert generate_initial_solution(path4, GREEDY, make_rng(0)).colors == subset(path4, 1)


def test_initial_solution_greedy_ignores_the_random_stream(small_instance):
    first = generate_initial_solution(small_instance, GREEDY, make_rng(1))
    second = generate_initial_solution(small_instance, GREEDY, make_rng(2))
    assert first == second


def test_initial_solution_rejects_single_node():
    graph = ColoredGraph(1, (), 1)
    with pytest.raises(InvalidInstanceError):
        generate_initial_solution(graph, GREEDY, make_rng(0))


def test_initial_solution_is_maximal(small_instance):
    solution = generate_initial_solution(small_instance, PROBABILISTIC, make_rng(4))
    assert solution.feasible
    for color in solution.colors.complement():
        assert not is_feasible(small_instance, solution.colors.add(color))


@pytest.mark.parametrize("config", [GREEDY, PROBABILISTIC])
def test_new_solution_from_empty_best_matches_initial(small_instance, config):
    empty = Solution.of(small_instance, small_instance.no_colors)
    rebuilt = new_solution(small_instance, empty, config, make_rng(8))
    initial = generate_initial_solution(small_instance, config, make_rng(8))
    assert rebuilt == initial


def test_new_solution_is_feasible_and_maximal(small_instance):
    rng = make_rng(6)
    best = generate_initial_solution(small_instance, PROBABILISTIC, rng)
    candidate = new_solution(small_instance, best, PROBABILISTIC, rng)
    assert candidate.feasible
    for color in candidate.colors.complement():
        assert not is_feasible(small_instance, candidate.colors.add(color))


def test_shake_moves_exactly_k_steps_away():
    rng = make_rng(7)
    bases = []
    for index in range(20):
        node_count = int(rng.integers(10, 16))
        params = GeneratorParams(node_count, int(rng.integers(3, 13)), 0.6, seed=index)
        graph = generate_instance(params)
        for seed, config in enumerate((GREEDY, PROBABILISTIC)):
            bases.append(generate_initial_solution(graph, config, make_rng(seed)).colors)
            bases.append(ColorSet(graph.color_count, int(rng.integers(0, 1 << graph.color_count))))
    for trial in range(10_000):
        base = bases[trial % len(bases)]
        k = int(rng.integers(0, base.width + 1))
        assert shake(base, base, k, rng).symmetric_difference_size(base) == k


def test_shake_with_zero_moves_is_identity():
    base = ColorSet.of(5, [1, 3])
    assert shake(base, base, 0, make_rng(0)) == base


def test_shake_full_set_only_removes():
    base = ColorSet.full(6)
    shaken = shake(base, base, 4, make_rng(1))
    assert len(shaken) == 2
    assert shaken.issubset(base)


def test_shake_empty_set_only_adds():
    base = ColorSet.empty(6)
    assert len(shake(base, base, 4, make_rng(1))) == 4


def test_shake_stops_when_both_pools_are_exhausted():
    base = ColorSet.of(4, [0, 2])
    shaken = shake(base, base, 10, make_rng(2))
    assert shaken == base.complement()


def test_fix_leaves_feasible_set_unchanged(path4):
    kept = subset(path4, 0)
    assert fix(path4, kept, make_rng(0)) == kept


def test_fix_single_edge_drops_its_color(single_edge):
    assert fix(single_edge, single_edge.all_colors, make_rng(0)) == single_edge.no_colors


def test_fix_returns_feasible_subset(triangle, small_instance):
    for graph in (triangle, small_instance):
        fixed = fix(graph, graph.all_colors, make_rng(3))
        assert is_feasible(graph, fixed)
        assert fixed.issubset(graph.all_colors)


@pytest.mark.parametrize("config", [GREEDY, PROBABILISTIC])
def test_local_search_returns_maximal_superset(small_instance, config):
    start = fix(small_instance, subset(small_instance, 0, 1), make_rng(0))
    result = local_search(small_instance, start, config, make_rng(1))
    assert start.issubset(result)
    assert is_feasible(small_instance, result)
    for color in result.complement():
        assert count_components(small_instance, result.add(color)) == 1


def test_local_search_rejects_connected_start(triangle):
    with pytest.raises(InfeasibleSolutionError):
        local_search(triangle, triangle.all_colors, GREEDY, make_rng(0))


def test_solve_triangle():
    graph = ColoredGraph(3, ((0, 1, 0), (1, 2, 1), (0, 2, 2)), 3)
    report = solve(graph, GREEDY)
    assert report.value == 2
    assert len(report.kept_colors) == 1
    assert len(report.minimal_cut) == 2


def test_solve_star_removes_one_color(star):
    report = solve(star, PROBABILISTIC)
    assert report.value == 1
    assert len(report.minimal_cut) == 1


def test_solve_single_edge(single_edge):
    report = solve(single_edge, GREEDY)
    assert report.value == 1
    assert report.minimal_cut == single_edge.edges


def test_solve_rejects_invalid_instance():
    disconnected = ColoredGraph(4, ((0, 1, 0), (2, 3, 0)), 1)
    with pytest.raises(InvalidInstanceError) as e:
        solve(disconnected, GREEDY)
    assert e.value.kinds == ["disconnected"]


@pytest.mark.parametrize("config", [GREEDY, PROBABILISTIC])
def test_solve_report_is_consistent(small_instance, config):
    report = solve(small_instance, config.replace(seed=12))
    assert report.value == small_instance.color_count - len(report.kept_colors)
    assert report.cut_colors == report.kept_colors.complement()
    assert report.disconnecting == disconnecting_edges(small_instance, report.kept_colors)
    assert set(report.minimal_cut) <= set(report.disconnecting)
    assert components_without(small_instance, report.minimal_cut) > 1
    assert report.outer_iterations == 20
    assert report.mode is config.mode
    assert report.trace[-1][2] == report.value
    assert len(report.trace) == report.improvements + 1


@pytest.mark.parametrize("config", [GREEDY, PROBABILISTIC])
def test_solve_is_deterministic_for_a_seed(small_instance, config):
    first = solve(small_instance, config.replace(seed=99))
    second = solve(small_instance, config.replace(seed=99))
    assert first.kept_colors == second.kept_colors
    assert first.minimal_cut == second.minimal_cut
    assert first.shakes == second.shakes
    assert [p[::2] for p in first.trace] == [p[::2] for p in second.trace]


def test_solve_never_worsens_with_a_larger_iteration_budget(small_instance):
    values = [
        solve(small_instance, PROBABILISTIC.replace(max_iterations=budget, seed=4)).value
        for budget in range(1, 8)
    ]
    assert values == sorted(values, reverse=True)


def test_solve_honours_time_limit(small_instance):
    report = solve(small_instance, SolverConfig(Mode.PROBABILISTIC, time_limit=0.05))
    assert report.outer_iterations >= 1
    assert report.elapsed < 5


@pytest.mark.parametrize("graph", [_cycle(5), _cycle(8), _complete4()])
def test_solve_distinct_colors_matches_global_min_cut(graph):
    assert graph.colors_distinct()
    assert solve(graph, GREEDY).value == global_min_cut(graph)


@settings(max_examples=60, deadline=None)
@given(colored_graphs(max_nodes=8, max_colors=7))
def test_solve_value_is_never_below_the_optimum(graph):
    report = solve(graph, PROBABILISTIC.replace(max_iterations=3))
    assert report.value >= brute_force_optimum(graph).value
    assert is_feasible(graph, report.kept_colors)


def test_solve_logs_progress(small_instance, caplog):
    with caplog.at_level(logging.INFO, logger="colorcut.vns"):
        solve(small_instance, GREEDY.replace(max_iterations=2))
    assert "Initial solution value" in caplog.text
    assert "Finished after 2 iterations" in caplog.text


def test_run_report_save_and_load(tmp_path, small_instance):
    report = solve(small_instance, PROBABILISTIC.replace(seed=3))
    path = tmp_path / "report.json"
    report.save(path)
    loaded = RunReport.load(path)
    assert loaded.value == report.value
    assert loaded.kept_colors == report.kept_colors
    assert loaded.minimal_cut == report.minimal_cut
    assert loaded.mode is Mode.PROBABILISTIC
    assert loaded.trace == [tuple(point) for point in report.trace]
