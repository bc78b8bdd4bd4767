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
import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from systoleforge.graphs.automorphisms import (
    automorphism_group,
    find_isomorphism,
    is_automorphism,
    is_isomorphism,
)
from systoleforge.graphs.halfedge import (
    HalfEdgeGraph,
    bouquet,
    complete_graph,
    cycle_graph,
    petersen_graph,
    theta_graph,
)
from systoleforge.graphs.transitivity import (
    is_isotropic,
    is_vertex_transitive,
    local_symmetry_failure,
)


def _networkx_automorphism_count(graph: HalfEdgeGraph) -> int:
    simple = graph.to_networkx()
    plain = nx.Graph(simple)
    return sum(1 for _ in GraphMatcher(plain, plain).isomorphisms_iter())


def test_petersen_group_order_matches_brute_force():
    graph = petersen_graph()

    group = automorphism_group(graph)

    assert group.order == 120
    assert group.order == _networkx_automorphism_count(graph)
    assert all(is_automorphism(graph, g) for g in group.generators)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_theta_group_order(d):
    group = automorphism_group(theta_graph(d))

    assert group.order == 2 * math.factorial(d)


@pytest.mark.parametrize(
    ("graph", "order"),
    [
        (complete_graph(4), 24),
        (cycle_graph(5), 10),
        (bouquet(2), 8),
        (HalfEdgeGraph.from_networkx(nx.hypercube_graph(3)), 48),
    ],
)
def test_group_orders(graph, order):
    group = automorphism_group(graph)

    assert group.order == order
    assert math.factorial(graph.num_darts) % group.order == 0
    for generator in group.generators:
        assert is_automorphism(graph, generator)
        assert all(
            graph.valence(v) == graph.valence(generator.vertex_map[v])
            for v in graph.vertices()
        )


def test_generators_are_sorted_and_deterministic():
    first = automorphism_group(petersen_graph())
    second = automorphism_group(petersen_graph())

    assert first == second
    keys = [(g.vertex_map, g.dart_map) for g in first.generators]
    assert keys == sorted(keys)


def test_respecting_labels_restricts_the_group():
    labelled = theta_graph(3).with_labels(edge_labels=[1, 2, 3])
    pinned = theta_graph(3).with_labels(vertex_labels=[0, 1], edge_labels=[1, 2, 3])

    assert automorphism_group(labelled, respect_labels=True).order == 2
    assert automorphism_group(pinned, respect_labels=True).order == 1
    assert automorphism_group(labelled).order == 12


def test_find_isomorphism_between_relabelled_graphs():
    graph = petersen_graph()
    perm = [3, 7, 1, 9, 0, 5, 2, 8, 6, 4]
    relabelled = HalfEdgeGraph.from_edges(
        10, [(perm[graph.vertex_of[a]], perm[graph.vertex_of[b]]) for a, b in graph.edges]
    )

    iso = find_isomorphism(graph, relabelled)

    assert iso is not None
    assert is_isomorphism(graph, relabelled, iso)


def test_non_isomorphic_cubic_graphs():
    k33 = HalfEdgeGraph.from_networkx(nx.complete_bipartite_graph(3, 3))
    prism = HalfEdgeGraph.from_networkx(nx.circular_ladder_graph(3))

    assert find_isomorphism(k33, prism) is None


def test_prescribed_darts_are_honoured():
    graph = theta_graph(3)

    iso = find_isomorphism(graph, graph, prescribed_darts={0: 2, 2: 0})

    assert iso is not None
    assert iso.dart_map[0] == 2
    assert iso.dart_map[2] == 0
    assert iso.dart_map[4] == 4
    assert iso.vertex_map == (0, 1)


@pytest.mark.parametrize(
    "graph", [petersen_graph(), theta_graph(4), cycle_graph(5), complete_graph(4)]
)
def test_isotropic_fixtures(graph):
    verdict = is_isotropic(graph)

    assert verdict.isotropic
    assert is_vertex_transitive(graph)


def test_path_is_not_isotropic():
    path = HalfEdgeGraph.from_edges(3, [(0, 1), (1, 2)])

    verdict = is_isotropic(path)

    assert not verdict.isotropic
    assert verdict.failing_injection is not None
    assert verdict.failing_injection.source == 0
    assert verdict.failing_injection.target == 1


def test_prism_is_vertex_transitive_but_not_locally_symmetric():
    prism = HalfEdgeGraph.from_networkx(nx.circular_ladder_graph(3))

    assert is_vertex_transitive(prism)
    assert local_symmetry_failure(prism, 0) is not None
    assert not is_isotropic(prism).isotropic
