# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

import pytest

from systoleforge.graphs.halfedge import (
    Cycle,
    HalfEdgeGraph,
    bouquet,
    complete_graph,
    theta_graph,
)


def test_from_edges_numbers_darts_by_edge():
    graph = HalfEdgeGraph.from_edges(3, [(0, 1), (1, 2), (2, 0)])

    assert graph.num_darts == 6
    assert graph.theta == (1, 0, 3, 2, 5, 4)
    assert graph.vertex_of == (0, 1, 1, 2, 2, 0)
    assert graph.edges == ((0, 1), (2, 3), (4, 5))
    assert graph.head(2) == 2
    assert graph.star(1) == (1, 2)


def test_theta_graph_has_parallel_edges():
    graph = theta_graph(3)

    assert graph.num_vertices == 2
    assert graph.num_edges == 3
    assert graph.valence(0) == 3
    assert not graph.is_simple()
    assert graph.is_connected()


def test_loops_are_edges_with_both_darts_at_one_vertex():
    graph = bouquet(2)

    assert graph.valence(0) == 4
    assert graph.is_loop(0)
    assert graph.endpoints(1) == (0, 0)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"num_vertices": 2, "vertex_of": (0, 1), "theta": (0, 1)},
        {"num_vertices": 2, "vertex_of": (0, 1, 1), "theta": (1, 0, 2)},
        {"num_vertices": 2, "vertex_of": (0, 0), "theta": (1, 0)},
        {"num_vertices": 1, "vertex_of": (0, 3), "theta": (1, 0)},
    ],
)
def test_invalid_graphs_are_rejected(kwargs):
    with pytest.raises(ValueError):
        HalfEdgeGraph(**kwargs)


def test_cycle_canonical_form_ignores_rotation_and_reversal():
    graph = complete_graph(4)
    walk = (0, 6, 3)
    variants = [walk, (6, 3, 0), (3, 0, 6), (2, 7, 1), (7, 1, 2), (1, 2, 7)]

    canonical = {Cycle.from_walk(graph, variant) for variant in variants}

    assert canonical == {Cycle(darts=(0, 6, 3))}
    assert Cycle(darts=(0, 6, 3)).vertices(graph) == (0, 1, 2)


def test_cycle_rejects_backtracks_and_open_walks():
    graph = complete_graph(4)

    with pytest.raises(ValueError):
        Cycle.from_walk(graph, (0, 1))
    with pytest.raises(ValueError):
        Cycle.from_walk(graph, (0, 6))


def test_from_networkx_keeps_edge_count():
    nx = pytest.importorskip("networkx")

    graph = HalfEdgeGraph.from_networkx(nx.petersen_graph())

    assert graph.num_vertices == 10
    assert graph.num_edges == 15
    assert all(graph.valence(v) == 3 for v in graph.vertices())
