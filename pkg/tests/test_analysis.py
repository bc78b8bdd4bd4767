# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

import math

import networkx as nx
import numpy as np
import pytest

from systoleforge.analysis.criticality import criticality_report
from systoleforge.analysis.determinants import (
    elementary_subgraph_determinant,
    exact_determinant,
    exact_rank,
    sampled_oracle_check,
)
from systoleforge.analysis.intersection import (
    IntersectionData,
    MultipleIntersection,
    adjacency_graph,
    block_adjacency,
    intersection_adjacency,
    intersection_data,
    intersection_graph,
    twist_matrix,
)
from systoleforge.analysis.subsets import (
    chain_subset,
    induced_subtrees,
    permutation_equivalent,
    tree_subset_search,
)
from systoleforge.assembly.curves import Curve
from systoleforge.assembly.filling import fills_check
from systoleforge.assembly.k5 import search_k5_gluings
from systoleforge.errors import TooLarge
from systoleforge.pipeline.examples import chain_surface, k5_matrix_fixture
from systoleforge.pipeline.reproduce import DEFORMATION_THETA


def test_fixture_determinant():
    fixture = k5_matrix_fixture()

    assert fixture.version == 1
    assert exact_determinant(fixture.matrix) in (48, -48)
    assert fixture.determinant == "48"


def test_determinant_small_cases():
    assert exact_determinant([[2, 1], [1, 3]]) == 5
    assert exact_determinant([[0, 1], [1, 0]]) == -1
    assert exact_determinant([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert exact_determinant([[1, 2, 3], [1, 2, 3], [4, 5, 6]]) == 0
    assert exact_determinant([]) == 1


def test_determinant_rejects_non_square():
    with pytest.raises(ValueError):
        exact_determinant([[1, 2, 3], [4, 5, 6]])
    with pytest.raises(ValueError):
        exact_determinant([[1, 2], [3]])


def test_exact_rank():
    assert exact_rank([[1, 2], [2, 4]]) == 1
    assert exact_rank([[0, 0], [0, 0]]) == 0
    assert exact_rank([[1, 0, 1], [0, 1, 1]]) == 2
    assert exact_rank(block_adjacency(k5_matrix_fixture().matrix)) == 20


def test_determinant_matches_numpy_on_integer_matrices():
    rng = np.random.default_rng(7)
    for _ in range(50):
        n = int(rng.integers(1, 7))
        m = rng.integers(-3, 4, size=(n, n))
        assert exact_determinant(m.tolist()) == round(np.linalg.det(m))


def test_elementary_expansion_on_small_graphs():
    assert elementary_subgraph_determinant(nx.complete_graph(2)) == -1
    assert elementary_subgraph_determinant(nx.cycle_graph(6)) == -4
    assert elementary_subgraph_determinant(nx.cycle_graph(8)) == 0
    assert elementary_subgraph_determinant(nx.cycle_graph(3)) == 2
    assert elementary_subgraph_determinant(nx.path_graph(3)) == 0


def test_elementary_expansion_matches_elimination_on_fixture():
    adjacency = block_adjacency(k5_matrix_fixture().matrix)

    expanded = elementary_subgraph_determinant(adjacency_graph(adjacency), max_vertices=20)

    assert expanded == exact_determinant(adjacency) == 48 * 48


def test_elementary_expansion_matches_elimination_on_random_bipartite_graphs():
    for seed in range(200):
        rng = np.random.default_rng(seed)
        rows, columns = int(rng.integers(1, 7)), int(rng.integers(1, 7))
        graph = nx.bipartite.random_graph(rows, columns, 0.5, seed=seed)
        adjacency = nx.to_numpy_array(graph, nodelist=sorted(graph.nodes), dtype=int)
        assert elementary_subgraph_determinant(graph) == exact_determinant(adjacency.tolist())


def test_elementary_expansion_respects_cap():
    with pytest.raises(TooLarge):
        elementary_subgraph_determinant(nx.cycle_graph(10), max_vertices=8)


def test_sampled_oracle_agrees_on_chain_intersections():
    graph = adjacency_graph(intersection_adjacency(intersection_data(chain_surface(4))))

    sample = sampled_oracle_check(graph, seed=3)

    assert len(sample.subsets) == 32
    assert sample.mismatches == ()
    assert all(1 <= len(subset) <= 10 for subset in sample.subsets)


def test_sampled_oracle_is_fixed_by_seed():
    graph = nx.cycle_graph(12)

    assert sampled_oracle_check(graph, seed=5) == sampled_oracle_check(graph, seed=5)
    assert sampled_oracle_check(graph, seed=5).subsets != sampled_oracle_check(graph, seed=6).subsets


def test_sampled_oracle_reports_disagreement(monkeypatch):
    monkeypatch.setattr("systoleforge.analysis.determinants.exact_determinant", lambda matrix: 99)

    sample = sampled_oracle_check(nx.path_graph(4), seed=0, samples=5)

    assert len(sample.mismatches) == 5


def test_sampled_oracle_on_empty_graph():
    assert sampled_oracle_check(nx.Graph(), seed=1).subsets == ()


def test_intersection_graph_is_bipartite():
    graph = intersection_graph([[1, 0], [1, 1]])

    assert graph.num_vertices == 4
    assert list(graph.vertex_labels) == [0, 0, 1, 1]
    assert len(graph.edges) == 3


@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_chain_intersections_form_a_cycle(g):
    data = intersection_data(chain_surface(g))
    graph = adjacency_graph(intersection_adjacency(data))

    assert data.size == 2 * g + 2
    assert nx.is_connected(graph)
    assert all(degree == 2 for _, degree in graph.degree())
    assert all(sum(row) == 2 for row in data.matrix)


@pytest.mark.parametrize(
    "g, expected", [(2, -4), (3, 0), (4, -4), (5, 0), (6, -4), (7, 0), (8, -4)]
)
def test_chain_determinant(g, expected):
    data = intersection_data(chain_surface(g))

    assert exact_determinant(intersection_adjacency(data)) == expected


def test_k5_dtilde_is_square_of_det_a():
    found = search_k5_gluings()[0]
    data = intersection_data(found.surface, found.curves)
    det_a = exact_determinant(data.matrix)

    report = criticality_report(found.surface, DEFORMATION_THETA, data=data)

    assert abs(det_a) == 48
    assert report.det_dtilde == det_a * det_a == 2304
    assert report.full_rank
    assert report.systole_count == 20
    assert report.codimension_bound == 19
    assert report.dimension_lower_bound == 11


def test_twist_matrix_shape():
    data = intersection_data(chain_surface(2))

    at_right_angle = twist_matrix(data, math.pi / 2)
    deformed = twist_matrix(data, DEFORMATION_THETA)

    assert np.allclose(at_right_angle, 0.0)
    assert np.allclose(deformed, -deformed.T)
    assert np.linalg.matrix_rank(deformed) == 2 * exact_rank(data.matrix)
    assert np.linalg.matrix_rank(twist_matrix(data, 1.0)) == exact_rank(intersection_adjacency(data))


def test_chain_criticality():
    x = chain_surface(2)

    report = criticality_report(x, DEFORMATION_THETA)

    assert report.genus == 2
    assert report.det_dtilde == -4
    assert report.index_upper_bound == 6
    assert report.codimension_bound == 5
    assert report.dimension_lower_bound == 1
    assert "eutactic" in report.caveat


def test_criticality_without_transversality():
    report = criticality_report(chain_surface(3), DEFORMATION_THETA)

    assert not report.full_rank
    assert report.rank_dtilde < report.systole_count
    assert report.codimension_bound is None
    assert report.dimension_lower_bound is None


def test_chain_subset_fills():
    x = chain_surface(2)
    data = intersection_data(x)

    subset = chain_subset(data)

    assert len(subset) == 4
    assert data.red_index[0] not in subset
    assert fills_check(x, subset).fills


def test_tree_subset_search_on_chain():
    x = chain_surface(2)
    data = intersection_data(x)

    found = tree_subset_search(data, x)

    assert found is not None
    assert len(found) % 2 == 0
    assert fills_check(x, found).fills


def test_tree_subset_search_without_filling_subset():
    x = chain_surface(2)
    data = intersection_data(x)

    assert tree_subset_search(data, x, fills=lambda subset: False) is None


def test_induced_subtrees_of_square():
    square = block_adjacency([[1, 1], [1, 1]])

    trees = induced_subtrees(square)

    assert all(len(tree) <= 3 for tree in trees)
    assert trees[0] == (0, 1, 2)
    assert len([tree for tree in trees if len(tree) == 1]) == 4


def test_induced_subtrees_cap():
    with pytest.raises(TooLarge):
        induced_subtrees(block_adjacency(k5_matrix_fixture().matrix), max_candidates=10)


def test_permutation_equivalence():
    matrix = [[1, 1, 0], [0, 1, 1], [0, 0, 1]]
    permuted = [[0, 1, 1], [1, 1, 0], [1, 0, 0]]

    assert permutation_equivalent(matrix, permuted)
    assert permutation_equivalent(matrix, [list(c) for c in zip(*permuted)])
    assert not permutation_equivalent(matrix, [[1, 1, 0], [1, 1, 0], [0, 0, 1]])
    assert permutation_equivalent([[0, 0]], [[0, 0]])


def test_multiple_intersection_message():
    error = MultipleIntersection("red0", "blue1", 2)

    assert "red0" in str(error)
    assert error.count == 2


def test_even_trees_have_at_most_one_perfect_matching():
    assert elementary_subgraph_determinant(nx.path_graph(4)) == 1
    assert elementary_subgraph_determinant(nx.path_graph(6)) == -1
    assert elementary_subgraph_determinant(nx.star_graph(3)) == 0
    for seed in range(20):
        tree = nx.random_labeled_tree(10, seed=seed)
        adjacency = nx.to_numpy_array(tree, nodelist=sorted(tree.nodes), dtype=int)
        value = elementary_subgraph_determinant(tree)
        assert value == exact_determinant(adjacency.tolist())
        assert abs(value) in (0, 1)


def _toy_data(matrix):
    red = tuple(Curve("red", i, (i,), (i,)) for i in range(len(matrix)))
    blue = tuple(
        Curve("blue", j, (100 + j,), (100 + j,)) for j in range(len(matrix[0]) if matrix else 0)
    )
    matrix = tuple(tuple(row) for row in matrix)
    return IntersectionData(
        red_index=red, blue_index=blue, matrix=matrix, graph=intersection_graph(matrix)
    )


def test_tree_subset_search_on_complete_bipartite_square():
    data = _toy_data([[1, 1], [1, 1]])
    tested = []

    def only_everything_fills(subset):
        tested.append(len(subset))
        return len(subset) == 4

    assert tree_subset_search(data, None, fills=only_everything_fills) is None
    assert tested and set(tested) == {2}


def test_tree_subset_search_tries_canonical_order():
    data = _toy_data([[1, 1, 0], [0, 1, 1]])
    curves = data.red_index + data.blue_index
    tested = []

    def record(subset):
        tested.append(tuple(subset))
        return False

    tree_subset_search(data, None, fills=record)

    expected = [(0, 1, 2, 3), (0, 1, 3, 4), (0, 2), (0, 3), (1, 3), (1, 4)]
    assert tested == [tuple(curves[i] for i in candidate) for candidate in expected]


def test_tree_subset_search_on_empty_data():
    assert tree_subset_search(_toy_data([]), None) is None
