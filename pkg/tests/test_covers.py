# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

import networkx as nx
import pytest

from systoleforge.covers.certify import CertificationFailed, certify_girth_doubling
from systoleforge.covers.coloring import (
    BaseNotTheta,
    ColoringImproper,
    check_coloring,
    make_colored_gluing_graph,
)
from systoleforge.covers.homology import (
    CoveringMap,
    NotLiftable,
    collapse_tower,
    deck_transformations,
    homology_tower,
    identity_cover,
    lift_automorphism,
    lift_closed_walk,
    mod2_homology_cover,
)
from systoleforge.errors import TooLarge
from systoleforge.graphs.automorphisms import (
    Isomorphism,
    automorphism_group,
    is_automorphism,
)
from systoleforge.graphs.girth import embedded_cycles, girth_length
from systoleforge.graphs.halfedge import (
    HalfEdgeGraph,
    bouquet,
    petersen_graph,
    theta_graph,
)


def _commutes(cover, psi, lifted):
    return all(
        cover.dart_map[lifted.dart_map[d]] == psi.dart_map[cover.dart_map[d]]
        for d in cover.total.darts()
    )


def test_theta_three_cover_is_the_cube():
    cover = mod2_homology_cover(theta_graph(3))

    assert cover.degree == 4
    assert cover.total.num_vertices == 8
    assert cover.total.num_edges == 12
    assert cover.violations() == []
    assert nx.is_isomorphic(nx.Graph(cover.total.to_networkx()), nx.hypercube_graph(3))


def test_tree_cover_is_trivial():
    path = HalfEdgeGraph.from_edges(3, [(0, 1), (1, 2)])

    cover = mod2_homology_cover(path)

    assert cover.degree == 1
    assert cover.total == path


def test_single_loop_cover_is_a_bigon():
    cover = mod2_homology_cover(bouquet(1))

    assert cover.degree == 2
    assert cover.total.num_vertices == 2
    assert girth_length(cover.total) == 2
    assert not any(cover.total.is_loop(d) for d in cover.total.darts())


def test_cover_size_cap():
    with pytest.raises(TooLarge) as excinfo:
        mod2_homology_cover(theta_graph(3), max_cover_size=7)

    assert excinfo.value.size == 8


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_theta_covers_double_the_girth(d):
    certificate = certify_girth_doubling(mod2_homology_cover(theta_graph(d)))

    assert certificate.base_girth == 2
    assert certificate.total_girth == 4
    assert certificate.strict_polygonal
    assert certificate.isotropic
    assert [c.status for c in certificate.clauses] == ["pass", "pass", "pass"]


def test_identity_cover_does_not_double():
    with pytest.raises(CertificationFailed) as excinfo:
        certify_girth_doubling(identity_cover(petersen_graph()))

    assert excinfo.value.clause == "girth_doubled"
    assert excinfo.value.witness == (5, 5)


def test_second_iterate_has_girth_eight():
    steps = homology_tower(theta_graph(3), 2)

    assert steps[1].degree == 32
    assert steps[1].total.num_vertices == 256
    assert girth_length(steps[1].total) == 8


@pytest.mark.slow
def test_second_iterate_is_certified():
    steps = homology_tower(theta_graph(3), 2)

    certificate = certify_girth_doubling(steps[1])

    assert certificate.total_girth == 8
    assert certificate.strict_polygonal
    assert certificate.isotropic


def test_collapsed_tower_covers_theta():
    cover = collapse_tower(homology_tower(theta_graph(3), 2))

    assert cover.degree == 128
    assert cover.violations() == []
    gluing = make_colored_gluing_graph(cover)
    assert sorted(set(gluing.edge_color)) == [1, 2, 3]


def test_closed_walks_lift_exactly_when_their_class_vanishes():
    base = theta_graph(3)
    cover = mod2_homology_cover(base)
    for cycle in embedded_cycles(base, 4):
        voltage = 0
        for dart in cycle.darts:
            voltage ^= cover.voltages[dart]
        start = cover.fiber(base.vertex_of[cycle.darts[0]])[0]
        lifted = lift_closed_walk(cover, cycle.darts, start)

        assert (cover.total.head(lifted[-1]) == start) == (voltage == 0)


def test_deck_group_is_transitive_on_fibres():
    cover = mod2_homology_cover(theta_graph(3))

    decks = deck_transformations(cover)

    assert len(decks) == cover.degree
    assert {deck.vertex_map[0] for deck in decks} == set(cover.fiber(0))
    assert all(is_automorphism(cover.total, deck) for deck in decks)


def test_identity_lifts_to_identity():
    cover = mod2_homology_cover(theta_graph(3))

    lifted = lift_automorphism(cover, Isomorphism.identity(cover.base))

    assert lifted.is_identity()


def test_edge_swap_lifts_to_the_four_cycle():
    cover = mod2_homology_cover(theta_graph(2))
    psi = Isomorphism(vertex_map=(0, 1), dart_map=(2, 3, 0, 1))

    lifted = lift_automorphism(cover, psi)

    assert is_automorphism(cover.total, lifted)
    assert _commutes(cover, psi, lifted)


def test_every_theta_generator_lifts():
    cover = mod2_homology_cover(theta_graph(3))

    for psi in automorphism_group(cover.base).generators:
        lifted = lift_automorphism(cover, psi)

        assert is_automorphism(cover.total, lifted)
        assert _commutes(cover, psi, lifted)


def test_loop_swap_does_not_lift_to_an_irregular_cover():
    base = bouquet(2)
    total = HalfEdgeGraph(
        num_vertices=2,
        vertex_of=(0, 1, 0, 1, 0, 1, 0, 1),
        theta=(2, 3, 0, 1, 7, 6, 5, 4),
    )
    cover = CoveringMap(total=total, base=base, dart_map=(0, 0, 1, 1, 2, 2, 3, 3))
    swap = Isomorphism(vertex_map=(0,), dart_map=(2, 3, 0, 1))

    assert cover.violations() == []
    with pytest.raises(NotLiftable):
        lift_automorphism(cover, swap)


def test_colored_gluing_graph_on_theta_itself():
    gluing = make_colored_gluing_graph(identity_cover(theta_graph(3)))

    assert gluing.vertex_sign == (1, -1)
    assert gluing.edge_color == (1, 2, 3)


def test_colored_gluing_graph_on_the_cube():
    cover = mod2_homology_cover(theta_graph(3))

    gluing = make_colored_gluing_graph(cover)

    assert all(
        gluing.vertex_sign[v] == (1 if cover.vertex_map[v] == 0 else -1)
        for v in cover.total.vertices()
    )
    for vertex in cover.total.vertices():
        assert sorted(gluing.dart_color(d) for d in cover.total.star(vertex)) == [1, 2, 3]


def test_gluing_graph_needs_theta_base():
    with pytest.raises(BaseNotTheta):
        make_colored_gluing_graph(identity_cover(petersen_graph()))


def test_improper_colourings_are_rejected():
    with pytest.raises(ColoringImproper):
        check_coloring(theta_graph(2), (1, 1), (1, 2))
    with pytest.raises(ColoringImproper):
        check_coloring(theta_graph(2), (1, -1), (1, 1))
