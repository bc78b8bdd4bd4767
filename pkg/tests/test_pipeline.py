# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

import json

import pytest

from systoleforge.config import ForgeConfig
from systoleforge.hyperbolic.polygon import DomainError
from systoleforge.maps.catalog import UnknownName
from systoleforge.pipeline.examples import ExampleName, beachball_surface, chain_surface, parse_example
from systoleforge.pipeline.export import export_object
from systoleforge.pipeline.lemmas import verify_lemmas
from systoleforge.pipeline.reproduce import ClauseFailed, raise_for_failures, reproduce
from systoleforge.storage.documents import CoverDocument
from systoleforge.storage.report_store import RunReport


def _statuses(report):
    return {clause.name: clause.status for clause in report.clauses}


def test_parse_example():
    assert parse_example("chain(4)") == ExampleName("chain", (4,))
    assert parse_example(" doubled_theta_tower(3, 2) ") == ExampleName("doubled_theta_tower", (3, 2))
    assert parse_example("k5") == ExampleName("k5", ())
    assert str(parse_example("beachball_theta(5)")) == "beachball_theta(5)"


def test_parse_example_rejects_bad_names():
    with pytest.raises(UnknownName):
        parse_example("torus(2)")
    with pytest.raises(UnknownName):
        parse_example("chain(")
    with pytest.raises(ValueError):
        parse_example("chain(2, 3)")


def test_chain_needs_genus_two():
    with pytest.raises(ValueError):
        chain_surface(1)


def test_beachball_matches_chain_genus():
    assert beachball_surface(5).graph.num_vertices == 2
    assert chain_surface(4).q == beachball_surface(5).q


def test_reproduce_chain():
    report = reproduce("chain(2)")
    statuses = _statuses(report)

    assert report.passed, report.clauses
    assert report.command == "reproduce chain(2)"
    for name in (
        "genus",
        "systole_count",
        "systoles_certified",
        "systoles_fill",
        "chain_systoles",
        "chain_determinant",
        "determinant_oracle",
        "chain_dimension",
        "chain_minus_two_fills",
        "filling_even_tree",
        "tiling_transitivity",
    ):
        assert statuses[name] == "pass"
    assert "total_seconds" in report.timings


def test_reproduce_odd_chain_skips_dimension():
    report = reproduce("chain(3)")
    statuses = _statuses(report)

    assert report.passed
    assert "chain_dimension" not in statuses
    assert statuses["chain_determinant"] == "pass"


def test_reproduce_beachball():
    report = reproduce("beachball_theta(4)")

    assert report.passed
    assert _statuses(report)["beachball_bipartite"] == "pass"


@pytest.mark.slow
def test_reproduce_k5():
    report = reproduce("k5")
    statuses = _statuses(report)

    assert report.passed, report.clauses
    for name in ("k5_gluing_found", "k5_genus", "k5_systoles", "k5_matrix", "k5_det_a", "k5_dimension"):
        assert statuses[name] == "pass"


def test_reproduce_tower():
    report = reproduce("doubled_theta_tower(3, 2)")

    assert report.passed
    assert _statuses(report)["tower_level_2"] == "pass"
    girth = next(c for c in report.clauses if c.name == "tower_girth")
    assert girth.values["girth"] == "8"


def test_reproduce_tower_reports_size_cap():
    report = reproduce("doubled_theta_tower(4, 3)", ForgeConfig(max_cover_size=100))

    assert not report.passed
    assert _statuses(report)["tower_size"] == "fail"


def test_reproduce_tower_needs_a_level():
    with pytest.raises(ValueError):
        reproduce("doubled_theta_tower(3, 0)")


def test_reproduce_is_deterministic():
    first = reproduce("chain(2)")
    second = reproduce("chain(2)")

    assert first.content_hash() == second.content_hash()


def test_raise_for_failures():
    report = RunReport(command="analyze")
    report.add("genus", "anchor", True)
    raise_for_failures(report)
    report.add("systole_count", "anchor", False)

    with pytest.raises(ClauseFailed) as excinfo:
        raise_for_failures(report)
    assert excinfo.value.clause == "systole_count"


def test_verify_lemmas():
    report = verify_lemmas(range(3, 13))
    statuses = _statuses(report)

    assert report.passed, report.clauses
    assert statuses["side_distances_q3"] == "pass"
    assert statuses["quadrilateral_relation_q12"] == "pass"
    assert report.inputs["q"] == "3,4,5,6,7,8,9,10,11,12"


def test_verify_lemmas_domain():
    with pytest.raises(DomainError):
        verify_lemmas([2, 3])
    with pytest.raises(DomainError):
        verify_lemmas([13])
    with pytest.raises(DomainError):
        verify_lemmas([])


def test_export_polygon_json():
    payload = json.loads(export_object("polygon:4", "json"))

    assert payload["q"] == 4
    assert len(payload["vertices"]) == 8


def test_export_surface_dot():
    text = export_object("surface:chain(2)", "dot")

    assert text.startswith('graph "gluing" {')
    assert text.count(" -- ") == 3


def test_export_intersections_json():
    payload = json.loads(export_object("intersections:chain(2)", "json"))

    assert len(payload["matrix"]) == 3
    assert payload["determinant"] is not None


def test_export_cover_json():
    payload = json.loads(export_object("cover:3", "json"))

    assert payload["total"]["vertices"] == 8
    assert payload["base"]["vertices"] == 2
    assert [pair[0] for pair in payload["dart_map"]] == list(range(24))


def test_export_rejects_unknown_targets():
    with pytest.raises(ValueError):
        export_object("polygon:4", "svg")
    with pytest.raises(ValueError):
        export_object("polygon:4", "dot")
    with pytest.raises(UnknownName):
        export_object("torus:2", "json")


def test_verify_lemmas_single_q():
    report = verify_lemmas([3])

    assert report.passed
    assert [c.name for c in report.clauses][-1] == "margin_trend"


def test_export_cover_round_trips():
    text = export_object("cover:3", "json")
    cover = CoverDocument.model_validate_json(text).to_cover()

    assert cover.total.num_vertices == 8
    assert cover.violations() == []
    assert export_object("cover:3", "json") == text


def test_export_odd_chain_report_has_singular_determinant():
    payload = json.loads(export_object("report:chain(3)", "json"))
    clauses = {clause["name"]: clause for clause in payload["clauses"]}

    assert clauses["chain_determinant"]["status"] == "pass"
    assert clauses["chain_determinant"]["values"]["det"] == "0"


@pytest.mark.slow
def test_export_k5_intersections_dot():
    text = export_object("intersections:k5", "dot")

    assert text.count("[label=") == 20
    assert text.count('color="red"') == 10
    assert text.count('color="blue"') == 10
