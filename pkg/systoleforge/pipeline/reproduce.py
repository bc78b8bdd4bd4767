# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""End-to-end recipes for the named example surfaces.

Each recipe runs the whole pipeline and records one clause per checked fact in
a ``RunReport``. Clause failures are recorded, never raised, so the report is
always complete; the CLI turns a failed report into exit code 1.
"""

from __future__ import annotations

import logging
import time

import networkx as nx

from systoleforge.analysis.criticality import criticality_report
from systoleforge.analysis.determinants import (
    elementary_subgraph_determinant,
    exact_determinant,
)
from systoleforge.analysis.intersection import (
    IntersectionData,
    adjacency_graph,
    intersection_adjacency,
    intersection_data,
)
from systoleforge.analysis.subsets import chain_subset, permutation_equivalent, tree_subset_search
from systoleforge.assembly.certify import HypothesisFailed, certify_systoles
from systoleforge.assembly.curves import CurveSystem, expected_systole_count, trace_curves
from systoleforge.assembly.filling import fills_check
from systoleforge.assembly.holonomy import Developer, holonomy_length
from systoleforge.assembly.k5 import search_k5_gluings
from systoleforge.assembly.surface import AssembledSurface, closed_form_genus, genus
from systoleforge.assembly.transitivity import quad_transitivity
from systoleforge.config import ForgeConfig
from systoleforge.covers.certify import CertificationFailed, certify_girth_doubling
from systoleforge.covers.homology import homology_tower
from systoleforge.errors import ForgeError, TooLarge
from systoleforge.graphs.halfedge import theta_graph
from systoleforge.hyperbolic.polygon import build_polygon, deformed_side_length
from systoleforge.pipeline.examples import (
    ExampleName,
    beachball_surface,
    chain_surface,
    cube_cover_surface,
    k5_matrix_fixture,
    parse_example,
)
from systoleforge.storage.report_store import RunReport

logger = logging.getLogger(__name__)

# angle used for statements that need the deformed surface
DEFORMATION_THETA = 1.3


class ClauseFailed(ForgeError):
    def __init__(self, clause: str) -> None:
        super().__init__(f"clause {clause} failed")
        self.clause = clause


def _surface_clauses(
    report: RunReport, x: AssembledSurface, config: ForgeConfig
) -> CurveSystem | None:
    g = genus(x)
    report.add(
        "genus",
        "Euler count of the quadrilateral tiling matches the closed form",
        g == closed_form_genus(x),
        euler=g,
        closed_form=closed_form_genus(x),
    )
    try:
        curves = trace_curves(x)
    except ForgeError as exc:
        report.add("curves_close", "every blue arc closes after p steps", False, error=exc)
        return None
    expected = expected_systole_count(x)
    report.add(
        "systole_count",
        "traced red and blue curves match the count formula",
        len(curves) == expected,
        red=len(curves.red),
        blue=len(curves.blue),
        formula=expected,
    )
    try:
        certificate = certify_systoles(x, margin=config.acceptance_margin)
        report.add(
            "systoles_certified",
            "hypotheses of the systole argument and the tile-path length oracle",
            True,
            paths=certificate.paths_checked,
            shortest=certificate.shortest_path_length,
            systole=certificate.systole_length,
        )
    except HypothesisFailed as exc:
        report.add(
            "systoles_certified",
            "hypotheses of the systole argument and the tile-path length oracle",
            False,
            clause=exc.clause,
            error=exc,
        )
    for theta in (config.theta, DEFORMATION_THETA):
        developer = Developer(build_polygon(x.q, theta))
        target = x.p * deformed_side_length(x.q, theta)
        worst = max(
            abs(holonomy_length(x, c, theta, developer=developer) - target) for c in curves.curves
        )
        report.add(
            f"holonomy_theta_{theta:.4f}",
            "every systole develops to a translation of length p times the side length",
            worst <= config.tolerance,
            target=target,
            worst_error=worst,
        )
    full = fills_check(x, curves.curves)
    report.add(
        "systoles_fill",
        "cutting along all systoles leaves the open tiles",
        full.fills and len(full.components) == x.num_tiles,
        components=len(full.components),
        tiles=x.num_tiles,
    )
    return curves


def _transitivity_clause(report: RunReport, x: AssembledSurface, config: ForgeConfig, *, expect: bool | None) -> None:
    try:
        result = quad_transitivity(x, max_chambers=config.max_tiling_chambers)
    except TooLarge as exc:
        logger.info("skipping transitivity: %s", exc)
        return
    ok = (result.quad_transitive and result.triangle_transitive) if expect else True
    report.add(
        "tiling_transitivity",
        "isometries act transitively on quadrilaterals and triangles",
        ok,
        group_order=result.group_order,
        quad_orbits=result.quad_orbits,
        triangle_orbits=result.triangle_orbits,
        color_quad_orbits=result.color_quad_orbits,
        color_triangle_orbits=result.color_triangle_orbits,
    )


def _oracle_clause(report: RunReport, data: IntersectionData, det: int, config: ForgeConfig) -> None:
    if data.size > config.max_elementary_vertices:
        return
    graph = adjacency_graph(intersection_adjacency(data))
    oracle = elementary_subgraph_determinant(graph, max_vertices=config.max_elementary_vertices)
    report.add(
        "determinant_oracle",
        "elementary spanning subgraph expansion agrees with elimination",
        oracle == det,
        elimination=det,
        expansion=oracle,
    )


def reproduce_chain(g: int, config: ForgeConfig, report: RunReport) -> None:
    x = chain_surface(g)
    curves = _surface_clauses(report, x, config)
    report.add("chain_genus", "the double of the chain block has genus g", genus(x) == g, genus=genus(x))
    if curves is None:
        return
    report.add(
        "chain_systoles",
        "the chain surface has 2g + 2 systoles",
        len(curves) == 2 * g + 2,
        systoles=len(curves),
    )
    data = intersection_data(x, curves)
    graph = nx.Graph(data.graph.to_networkx())
    is_cycle = nx.is_connected(graph) and all(d == 2 for _, d in graph.degree())
    report.add(
        "chain_intersections",
        "red and blue systoles form a single cycle",
        is_cycle and graph.number_of_nodes() == 2 * g + 2,
        vertices=graph.number_of_nodes(),
    )
    critical = criticality_report(x, DEFORMATION_THETA, data=data)
    expected_det = -4 if g % 2 == 0 else 0
    report.add(
        "chain_determinant",
        "intersection adjacency determinant is -4 for even genus and 0 for odd genus",
        critical.det_dtilde == expected_det,
        det=critical.det_dtilde,
        rank=critical.rank_dtilde,
    )
    _oracle_clause(report, data, critical.det_dtilde, config)
    if g % 2 == 0:
        report.add(
            "chain_dimension",
            "equal-systole locus has dimension at least 4g - 7",
            critical.dimension_lower_bound == 4 * g - 7,
            codimension=critical.codimension_bound,
            dimension=critical.dimension_lower_bound,
            index_bound=critical.index_upper_bound,
        )
    subset = chain_subset(data)
    report.add(
        "chain_minus_two_fills",
        "removing two intersecting systoles leaves a filling set of 2g curves",
        len(subset) == 2 * g and fills_check(x, subset).fills,
        curves=len(subset),
    )
    if g % 2 == 0:
        tree = tree_subset_search(data, x, max_candidates=config.max_subset_candidates)
        report.add(
            "filling_even_tree",
            "an induced even subtree of the intersection graph fills",
            tree is not None and len(tree) == 2 * g,
            curves=" ".join(c.name for c in tree) if tree else "none",
        )
    _transitivity_clause(report, x, config, expect=True)


def reproduce_beachball(q: int, config: ForgeConfig, report: RunReport) -> None:
    x = beachball_surface(q)
    curves = _surface_clauses(report, x, config)
    if curves is not None:
        data = intersection_data(x, curves)
        report.add(
            "beachball_bipartite",
            "red and blue systoles cross in a balanced bipartite pattern",
            len(data.red_index) == len(data.blue_index),
            red=len(data.red_index),
            blue=len(data.blue_index),
        )
    _transitivity_clause(report, x, config, expect=True)


def reproduce_cube_cover(config: ForgeConfig, report: RunReport) -> None:
    x = cube_cover_surface(max_cover_size=config.max_cover_size)
    _surface_clauses(report, x, config)


def reproduce_k5(config: ForgeConfig, report: RunReport) -> None:
    found = search_k5_gluings()
    report.add(
        "k5_gluing_found",
        "some twist-free gluing of five tetrahedral blocks closes every blue curve",
        bool(found),
        gluings=len(found),
    )
    if not found:
        return
    fixture = k5_matrix_fixture()
    chosen = found[0]
    x = chosen.surface
    report.add("k5_genus", "five tetrahedral blocks along K5 give genus 6", genus(x) == 6, genus=genus(x))
    curves = _surface_clauses(report, x, config)
    if curves is None:
        return
    report.add(
        "k5_systoles",
        "ten red and ten blue systoles",
        len(curves.red) == 10 and len(curves.blue) == 10,
        red=len(curves.red),
        blue=len(curves.blue),
    )
    data = intersection_data(x, curves)
    det_a = exact_determinant(data.matrix)
    report.add(
        "k5_matrix",
        "intersection matrix agrees with the fixture up to row and column order",
        permutation_equivalent(data.matrix, fixture.matrix),
        parities="".join(str(b) for b in chosen.parities),
        det_a=det_a,
    )
    report.add(
        "k5_det_a",
        "the red-by-blue intersection matrix has determinant 48 up to sign",
        abs(det_a) == int(fixture.determinant or 48),
        det_a=det_a,
    )
    critical = criticality_report(x, DEFORMATION_THETA, data=data)
    report.add(
        "k5_dimension",
        "equal-systole locus has codimension at most 19 and dimension at least 11",
        critical.det_dtilde == det_a * det_a
        and critical.codimension_bound == 19
        and critical.dimension_lower_bound == 11,
        det_dtilde=critical.det_dtilde,
        codimension=critical.codimension_bound,
        dimension=critical.dimension_lower_bound,
    )
    _transitivity_clause(report, x, config, expect=None)


def reproduce_tower(d: int, levels: int, config: ForgeConfig, report: RunReport) -> None:
    if d < 2 or levels < 1:
        raise ValueError("towers need a theta graph with d >= 2 and at least one level")
    try:
        steps = homology_tower(theta_graph(d), levels, max_cover_size=config.max_cover_size)
    except TooLarge as exc:
        report.add("tower_size", "tower fits under the cover size cap", False, error=exc)
        return
    top_girth = 0
    for level, step in enumerate(steps, start=1):
        try:
            certificate = certify_girth_doubling(step, max_girth=config.max_girth_cycles_length)
        except CertificationFailed as exc:
            report.add(
                f"tower_level_{level}",
                "each mod-2 homology cover doubles the girth",
                False,
                clause=exc.clause,
                error=exc,
            )
            return
        report.add(
            f"tower_level_{level}",
            "each mod-2 homology cover doubles the girth",
            certificate.strict_polygonal and certificate.isotropic,
            vertices=step.total.num_vertices,
            girth=certificate.total_girth,
            girth_cycles=certificate.girth_cycle_count,
            strict_polygonal=certificate.strict_polygonal,
            isotropic=certificate.isotropic,
        )
        top_girth = certificate.total_girth
    top = steps[-1].total
    report.add(
        "tower_girth",
        "the tower's top graph has girth 2^(levels + 1)",
        top_girth == 2 ** (levels + 1),
        vertices=top.num_vertices,
        girth=top_girth,
        expected_girth=2 ** (levels + 1),
    )


def reproduce(example: str | ExampleName, config: ForgeConfig | None = None) -> RunReport:
    config = config or ForgeConfig()
    name = parse_example(example) if isinstance(example, str) else example
    report = RunReport(command=f"reproduce {name}", inputs={"example": str(name)})
    started = time.perf_counter()
    if name.family == "chain":
        reproduce_chain(name.args[0], config, report)
    elif name.family == "beachball_theta":
        reproduce_beachball(name.args[0], config, report)
    elif name.family == "cube_cover":
        reproduce_cube_cover(config, report)
    elif name.family == "k5":
        reproduce_k5(config, report)
    else:
        reproduce_tower(name.args[0], name.args[1], config, report)
    report.timings["total_seconds"] = time.perf_counter() - started
    logger.info(
        "reproduced %s: %d clauses, %s",
        name,
        len(report.clauses),
        "all pass" if report.passed else "FAILED",
    )
    return report


def raise_for_failures(report: RunReport) -> None:
    for clause in report.clauses:
        if not clause.passed:
            raise ClauseFailed(clause.name)
