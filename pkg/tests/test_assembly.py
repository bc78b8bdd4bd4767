# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

import math

import pytest

from systoleforge.analysis.intersection import intersection_data
from systoleforge.analysis.subsets import permutation_equivalent
from systoleforge.assembly.block import UnsupportedMapType, build_block
from systoleforge.assembly.certify import HypothesisFailed, certify_systoles, tile_paths
from systoleforge.assembly.curves import expected_systole_count, systole_count, trace_curves
from systoleforge.assembly.filling import fills_check
from systoleforge.assembly.holonomy import Developer, holonomy_length
from systoleforge.assembly.k5 import component_assignment, search_k5_gluings
from systoleforge.assembly.surface import (
    DisconnectedGluing,
    NonOrientableGluing,
    RedGluing,
    ValenceMismatch,
    assemble,
    assemble_bespoke,
    closed_form_genus,
    genus,
    surface_summary,
)
from systoleforge.assembly.tiling import TileComplex, class_labels, connected_classes
from systoleforge.assembly.transitivity import quad_transitivity
from systoleforge.covers.coloring import ColoredGluingGraph
from systoleforge.errors import TooLarge
from systoleforge.graphs.halfedge import HalfEdgeGraph, theta_graph
from systoleforge.hyperbolic.polygon import (
    build_polygon,
    deformed_side_length,
    regular_side_length,
)
from systoleforge.maps.catalog import cube, tetrahedron, theta_map, torus_grid
from systoleforge.pipeline.examples import (
    beachball_surface,
    chain_surface,
    cube_cover_surface,
    k5_matrix_fixture,
    theta_gluing,
)


@pytest.fixture(scope="module")
def k5_found():
    return search_k5_gluings()


def test_block_of_tetrahedron():
    block = build_block(tetrahedron())

    assert (block.p, block.q) == (3, 3)
    assert block.num_tiles == 4
    assert block.num_components == 4
    assert all(len(component) == 3 for component in block.components)
    assert [c.color for c in block.components] == [1, 2, 3, 4]
    sides = block.tile_sides(0)
    assert len(sides) == 6
    assert [side.color for side in sides] == ["blue", "red"] * 3


def test_block_point_neighbors_avoid_own_component():
    block = build_block(tetrahedron())

    for component in block.components:
        neighbours = block.point_neighbors(component.index)
        assert component.index not in neighbours
        assert len(set(neighbours)) == 3


def test_block_rejects_low_valence():
    with pytest.raises(UnsupportedMapType):
        build_block(theta_map(2))


def test_tile_complex_rejects_broken_pairing():
    with pytest.raises(ValueError):
        TileComplex(q=3, num_tiles=1, partner=(1, 0, 3, 2, 5, 4))


@pytest.mark.parametrize("g", range(2, 9))
def test_chain_genus_and_curves(g):
    x = chain_surface(g)
    curves = trace_curves(x)

    assert genus(x) == g
    assert closed_form_genus(x) == g
    assert len(curves) == 2 * g + 2
    assert len(curves.red) == len(curves.blue) == g + 1
    assert systole_count(x, curves) == expected_systole_count(x) == 2 * g + 2
    assert curves.length_per_curve == pytest.approx(2 * regular_side_length(g + 1))


def test_chain_tiling_vertices_have_four_corners():
    x = chain_surface(3)
    summary = surface_summary(x)

    assert all(len(corners) == 4 for corners in x.complex.vertex_classes())
    assert x.complex.bad_vertices() == []
    assert summary.tiles == 4
    assert summary.tiling_edges == 4 * x.q
    assert summary.tiling_vertices == 2 * x.q
    assert summary.connected


def test_connected_classes_are_ordered_by_smallest_member():
    classes = connected_classes(6, [(4, 1), (5, 3)])

    assert classes == ((0,), (1, 4), (2,), (3, 5))
    assert class_labels(classes, 6) == (0, 1, 2, 3, 1, 3)


def test_vertex_classes_are_sorted_and_labelled():
    complex_ = chain_surface(2).complex
    classes = complex_.vertex_classes()

    assert [c[0] for c in classes] == sorted(c[0] for c in classes)
    assert all(list(c) == sorted(c) for c in classes)
    for v, corners in enumerate(classes):
        assert {complex_.vertex_of_corner(corner) for corner in corners} == {v}
    assert complex_.tile_components == 1


def test_curve_names_are_stable():
    first = trace_curves(chain_surface(2))
    second = trace_curves(chain_surface(2))

    assert [c.name for c in first.curves] == [c.name for c in second.curves]
    assert [c.edges for c in first.curves] == [c.edges for c in second.curves]
    assert first.by_name("red0") is first.red[0]
    with pytest.raises(KeyError):
        first.by_name("green0")


@pytest.mark.parametrize("theta", [math.pi / 2, 1.3, 1.8])
@pytest.mark.parametrize("build", [lambda: chain_surface(2), lambda: beachball_surface(3)])
def test_holonomy_matches_side_length(build, theta):
    x = build()
    developer = Developer(build_polygon(x.q, theta))
    target = x.p * deformed_side_length(x.q, theta)

    for curve in trace_curves(x).curves:
        assert holonomy_length(x, curve, theta, developer=developer) == pytest.approx(
            target, abs=1e-8
        )


@pytest.mark.slow
def test_cube_cover_holonomy():
    x = cube_cover_surface()
    curves = trace_curves(x)

    assert genus(x) == closed_form_genus(x)
    assert len(curves) == expected_systole_count(x)
    assert curves.length_per_curve == pytest.approx(4 * regular_side_length(3))
    for theta in (math.pi / 2, 1.3):
        developer = Developer(build_polygon(3, theta))
        target = 4 * deformed_side_length(3, theta)
        for curve in curves.curves[:10] + curves.curves[-10:]:
            length = holonomy_length(x, curve, theta, developer=developer)
            assert length == pytest.approx(target, abs=1e-8)


def test_assemble_checks_valence():
    with pytest.raises(ValenceMismatch):
        assemble(build_block(tetrahedron()), theta_gluing(3))


def test_equal_signs_without_reversal_are_rejected():
    block = build_block(theta_map(3))
    gluings = [
        RedGluing(first=(0, i), second=(1, i), point_map=(0, 1)) for i in range(3)
    ]

    with pytest.raises(NonOrientableGluing):
        assemble_bespoke(block, theta_graph(3), (1, 1), gluings)


def test_open_boundary_is_rejected():
    block = build_block(theta_map(3))
    gluings = [
        RedGluing(first=(0, i), second=(1, i), point_map=(0, 1)) for i in range(2)
    ]

    with pytest.raises(ValueError, match="left open"):
        assemble_bespoke(block, theta_graph(3), (1, -1), gluings)


def test_disconnected_gluing_graph_is_rejected():
    two_thetas = HalfEdgeGraph.from_edges(4, [(0, 1)] * 3 + [(2, 3)] * 3)
    gluing = ColoredGluingGraph(
        graph=two_thetas, vertex_sign=(1, -1, 1, -1), edge_color=(1, 2, 3, 1, 2, 3)
    )

    with pytest.raises(DisconnectedGluing) as excinfo:
        assemble(build_block(theta_map(3)), gluing)

    assert excinfo.value.components == 2


def test_red_gluing_validates_cyclic_order():
    with pytest.raises(ValueError):
        RedGluing(first=(0, 0), second=(1, 0), point_map=(0, 2, 1))
    with pytest.raises(ValueError):
        RedGluing(first=(0, 0), second=(1, 0), point_map=(0, 0, 1))

    reversed_map = RedGluing(first=(0, 0), second=(1, 0), point_map=(0, 2, 1), reverse=True)
    assert reversed_map.reverse


def test_certify_chain():
    x = chain_surface(2)
    certificate = certify_systoles(x)

    assert [c.name for c in certificate.clauses] == [
        "map_girth",
        "gluing_girth",
        "polygonal_theta_cover",
        "side_distance_margins",
        "tile_path_lengths",
    ]
    assert certificate.paths_checked > 0
    assert certificate.shortest_path_length >= certificate.systole_length - 1e-6


def test_tile_paths_return_to_origin():
    x = chain_surface(2)
    complex_ = x.complex

    paths = list(tile_paths(x, 2, start_tiles=[0]))

    assert paths
    for path in paths:
        assert 1 <= len(path) <= 2
        assert complex_.split(path[0])[0] == 0
        assert complex_.split(complex_.partner[path[-1]])[0] == 0


def test_tile_paths_start_from_every_tile_by_default():
    x = chain_surface(2)
    complex_ = x.complex

    paths = list(tile_paths(x, 2))

    assert {complex_.split(path[0])[0] for path in paths} == set(range(x.num_tiles))
    assert len(paths) == sum(
        len(list(tile_paths(x, 2, start_tiles=[tile]))) for tile in range(x.num_tiles)
    )


def test_certify_rejects_short_gluing_girth():
    x = assemble(build_block(tetrahedron()), theta_gluing(4))

    with pytest.raises(HypothesisFailed) as excinfo:
        certify_systoles(x)
    assert excinfo.value.clause == "gluing_girth"


def test_all_systoles_fill():
    x = chain_surface(2)
    curves = trace_curves(x)

    report = fills_check(x, curves.curves)

    assert report.fills
    assert len(report.components) == x.num_tiles
    assert all(component.is_disk for component in report.components)


def test_red_curves_alone_do_not_fill():
    x = chain_surface(2)
    curves = trace_curves(x)

    assert not fills_check(x, curves.red).fills
    assert not fills_check(x, ()).fills


def test_chain_tiling_is_transitive():
    result = quad_transitivity(chain_surface(2))

    assert result.quad_transitive
    assert result.triangle_transitive
    assert result.group_order >= result.color_preserving_order > 0


def test_transitivity_respects_chamber_cap():
    with pytest.raises(TooLarge):
        quad_transitivity(chain_surface(2), max_chambers=4)


def test_component_assignment_swaps_last_two():
    plain = component_assignment((0, 0, 0, 0, 0))
    swapped = component_assignment((0, 1, 0, 0, 0))

    assert plain[1] == {0: 0, 2: 1, 3: 2, 4: 3}
    assert swapped[1] == {0: 0, 2: 1, 3: 3, 4: 2}


def test_k5_search(k5_found):
    assert k5_found
    for found in k5_found:
        assert found.parities[0] == 0
        assert genus(found.surface) == 6
        assert len(found.curves.red) == 10
        assert len(found.curves.blue) == 10


def test_k5_matrix_matches_fixture(k5_found):
    fixture = k5_matrix_fixture()
    x = k5_found[0].surface

    data = intersection_data(x, k5_found[0].curves)

    assert permutation_equivalent(data.matrix, fixture.matrix)


def test_k5_certificate_waives_theta_cover(k5_found):
    certificate = certify_systoles(k5_found[0].surface)
    statuses = {c.name: c.status for c in certificate.clauses}

    assert statuses["polygonal_theta_cover"] == "waived"
    assert statuses["tile_path_lengths"] == "pass"


def test_cube_block_components():
    block = build_block(cube())

    assert (block.p, block.q) == (4, 3)
    assert block.num_components == 6


def test_torus_grid_block_has_a_hole_per_face():
    block = build_block(torus_grid(5))

    assert (block.p, block.q) == (4, 4)
    assert block.num_components == 25
    assert block.num_tiles == 25


def test_beachball_theta_three():
    x = beachball_surface(3)
    curves = trace_curves(x)

    assert genus(x) == closed_form_genus(x) == 2
    assert systole_count(x, curves) == 6 * genus(x) - 6
    assert certify_systoles(x).paths_checked > 0
    assert quad_transitivity(x).quad_transitive


def test_empty_subset_leaves_the_whole_surface():
    x = chain_surface(3)

    report = fills_check(x, ())

    assert not report.fills
    assert len(report.components) == 1
    assert report.components[0].euler_characteristic == 2 - 2 * genus(x)
    assert report.components[0].boundary_cycles == 0
