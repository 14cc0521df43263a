import pytest

from colorcut.bench import run_dataset
from colorcut.exact import brute_force_optimum, global_min_cut
from colorcut.graph import ColoredGraph, components_without, disconnecting_edges, is_feasible
from colorcut.instances import GeneratorParams, generate_instance
from colorcut.vns import Mode, SolverConfig, make_rng, solve

SWEEP_ITERATIONS = 200
DENSITIES = (0.3, 0.6, 0.9)


def _random_instances(count, min_colors=3, max_colors=12, seed=0):
    # Sizes and densities drawn per instance; draws with too few edges for
    # the requested colors are skipped.
    rng = make_rng(seed)
    instances = []
    instance_seed = 0
    while len(instances) < count:
        node_count = int(rng.integers(4, 13))
        color_count = int(rng.integers(min_colors, max_colors + 1))
        density = DENSITIES[int(rng.integers(len(DENSITIES)))]
        instance_seed += 1
        try:
            instances.append(
                generate_instance(GeneratorParams(node_count, color_count, density, instance_seed))
            )
        except ValueError:
            continue
    return instances


def _distinct_instances(count):
    # Generated topologies recolored so every edge has its own color.
    instances = []
    for base in _random_instances(count, min_colors=1, max_colors=1, seed=500):
        edges = tuple((u, v, color) for color, (u, v, _) in enumerate(base.edges))
        instances.append(ColoredGraph(base.node_count, edges, len(edges)))
    return instances


def _check_report(graph, report):
    assert is_feasible(graph, report.kept_colors)
    assert report.disconnecting == disconnecting_edges(graph, report.kept_colors)
    assert components_without(graph, report.minimal_cut) > 1
    for index in range(len(report.minimal_cut)):
        rest = report.minimal_cut[:index] + report.minimal_cut[index + 1:]
        assert components_without(graph, rest) == 1


@pytest.mark.slow
@pytest.mark.parametrize("mode", [Mode.GREEDY, Mode.PROBABILISTIC])
def test_solver_matches_brute_force_on_small_instances(mode):
    instances = _random_instances(200)
    optimal = 0
    for seed, graph in enumerate(instances):
        report = solve(graph, SolverConfig(mode, max_iterations=SWEEP_ITERATIONS, seed=seed))
        optimum = brute_force_optimum(graph).value
        assert report.value >= optimum
        _check_report(graph, report)
        optimal += report.value == optimum
    assert optimal >= 190


@pytest.mark.slow
def test_solver_matches_min_cut_with_distinct_colors():
    instances = _distinct_instances(100)
    optimal = 0
    for seed, graph in enumerate(instances):
        assert graph.colors_distinct()
        config = SolverConfig(Mode.PROBABILISTIC, max_iterations=SWEEP_ITERATIONS, seed=seed)
        report = solve(graph, config)
        optimum = global_min_cut(graph)
        assert report.value >= optimum
        _check_report(graph, report)
        optimal += report.value == optimum
    assert optimal >= 95


@pytest.mark.slow
@pytest.mark.parametrize("density", [0.2, 0.5, 0.8])
def test_modes_agree_on_dataset_averages(density):
    graphs = [
        generate_instance(GeneratorParams(50, 12, density, seed=int(100 * density) + i))
        for i in range(10)
    ]
    averages = [
        run_dataset(graphs, SolverConfig(mode, time_limit=1.0, seed=3)).average_value
        for mode in (Mode.GREEDY, Mode.PROBABILISTIC)
    ]
    optimum = sum(brute_force_optimum(graph).value for graph in graphs) / len(graphs)
    assert averages[0] == averages[1] == optimum


def test_solver_value_bounds_on_generated_instances():
    for seed, graph in enumerate(_random_instances(10, seed=1000)):
        report = solve(graph, SolverConfig(Mode.GREEDY, max_iterations=5, seed=seed))
        assert 1 <= report.value <= graph.color_count
        assert report.value >= brute_force_optimum(graph).value
        _check_report(graph, report)
