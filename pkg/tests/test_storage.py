# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""
Tests for the JSON documents and the report store.

Documents are written with sorted keys and UTF-8, so the same input gives
byte-identical files, and the report hash ignores wall-clock timings.
"""

import json
import logging

import pytest
from pydantic import ValidationError

from systoleforge.assembly.curves import trace_curves
from systoleforge.covers.coloring import ColoringImproper
from systoleforge.covers.homology import mod2_homology_cover
from systoleforge.graphs.halfedge import theta_graph
from systoleforge.hyperbolic.polygon import build_polygon
from systoleforge.maps.catalog import tetrahedron
from systoleforge.pipeline.examples import chain_surface, theta_gluing
from systoleforge.storage.documents import (
    ColoredGraphDocument,
    CoverDocument,
    GraphDocument,
    MapDocument,
    MatrixDocument,
    PolygonDocument,
    SurfaceDocument,
    dump_document,
    read_document,
    write_document,
)
from systoleforge.storage.report_store import (
    FAIL,
    PASS,
    ReportStore,
    RunReport,
    content_digest,
)


def test_map_document_restores_map(tmp_path):
    m = tetrahedron()
    path = tmp_path / "maps" / "tetrahedron.json"

    write_document(path, MapDocument.from_map(m))
    restored = read_document(path, MapDocument).to_map()

    assert restored.rotation == m.rotation
    assert restored.graph.theta == m.graph.theta
    assert path.read_text(encoding="utf-8").endswith("\n")


def test_cover_document_rejects_broken_dart_map():
    cover = mod2_homology_cover(theta_graph(3))
    document = CoverDocument.from_cover(cover)
    broken = document.model_copy(update={"dart_map": [(d, 0) for d, _ in document.dart_map]})

    assert document.to_cover().total.num_vertices == cover.total.num_vertices
    with pytest.raises(ValueError):
        broken.to_cover()


def test_colored_graph_document_checks_coloring():
    gluing = theta_gluing(3)
    document = ColoredGraphDocument.from_colored(gluing)

    assert document.to_colored().edge_color == gluing.edge_color
    bad = document.model_copy(update={"edge_color": [1] * len(document.edge_color)})
    with pytest.raises(ColoringImproper):
        bad.to_colored()


def test_graph_document_requires_a_vertex():
    with pytest.raises(ValidationError):
        GraphDocument(vertices=0, darts=[], theta=[])


def test_graph_document_reads_dart_pairs():
    text = json.dumps(
        {
            "vertices": 2,
            "darts": [[0, 0], [1, 1], [2, 0], [3, 1]],
            "theta": [[0, 1], [2, 3]],
            "vertex_labels": {},
            "edge_labels": {},
        }
    )

    graph = GraphDocument.model_validate_json(text).to_graph()

    assert graph.num_vertices == 2
    assert graph.vertex_of == (0, 1, 0, 1)
    assert graph.theta == (1, 0, 3, 2)
    assert graph.vertex_labels is None
    assert graph == theta_graph(2)


def test_graph_document_writes_pairs_and_label_maps():
    labelled = theta_graph(3).with_labels(vertex_labels=[5, 6], edge_labels=[1, 2, 3])

    payload = json.loads(dump_document(GraphDocument.from_graph(labelled)))

    assert payload["darts"] == [[0, 0], [1, 1], [2, 0], [3, 1], [4, 0], [5, 1]]
    assert payload["theta"] == [[0, 1], [2, 3], [4, 5]]
    assert payload["vertex_labels"] == {"0": 5, "1": 6}
    assert payload["edge_labels"] == {"0": 1, "1": 2, "2": 3}
    assert GraphDocument.model_validate(payload).to_graph() == labelled


@pytest.mark.parametrize(
    "fields",
    [
        {"vertices": 2, "darts": [[0, 0], [0, 1]], "theta": [[0, 1]]},
        {"vertices": 2, "darts": [[0, 0], [1, 2]], "theta": [[0, 1]]},
        {"vertices": 2, "darts": [[0, 0], [1, 1]], "theta": [[0, 0]]},
        {"vertices": 2, "darts": [[0, 0], [2, 1]], "theta": [[0, 2]]},
    ],
)
def test_graph_document_rejects_malformed_pairs(fields):
    with pytest.raises(ValidationError):
        GraphDocument.model_validate(fields)


def test_graph_document_rejects_partial_labels():
    document = GraphDocument(
        vertices=2, darts=[(0, 0), (1, 1)], theta=[(0, 1)], vertex_labels={0: 1}
    )

    with pytest.raises(ValueError, match="vertex_labels"):
        document.to_graph()


def test_map_document_writes_rotation_pairs():
    payload = json.loads(dump_document(MapDocument.from_map(tetrahedron())))

    assert payload["vertices"] == 4
    assert sorted(d for d, _ in payload["rotation"]) == list(range(12))
    assert MapDocument.model_validate(payload).to_map().rotation == tetrahedron().rotation


def test_polygon_document_floats_round_trip():
    polygon = build_polygon(4)
    text = dump_document(PolygonDocument.from_polygon(polygon))

    loaded = PolygonDocument.model_validate_json(text)

    assert loaded.side_length == polygon.side_length
    assert json.loads(text)["side_length"] == format(polygon.side_length, ".17g")
    assert json.loads(text)["theta"] == "1.5707963267948966"
    assert len(loaded.vertices) == 8


def test_surface_document_summary():
    x = chain_surface(2)
    document = SurfaceDocument.from_surface(x, trace_curves(x))

    assert document.genus == document.closed_form_genus == 2
    assert (document.p, document.q) == (2, 3)
    assert len(document.curves) == 6
    assert {c.color for c in document.curves} == {"red", "blue"}
    assert document.edge_color is not None


def test_documents_are_deterministic():
    first = dump_document(SurfaceDocument.from_surface(chain_surface(3)))
    second = dump_document(SurfaceDocument.from_surface(chain_surface(3)))

    assert first == second
    assert list(json.loads(first)) == sorted(json.loads(first))


def test_matrix_document_keeps_determinant_as_text():
    document = MatrixDocument(matrix=[[1, 0], [0, 1]], determinant="1")

    payload = json.loads(dump_document(document))

    assert payload["determinant"] == "1"
    assert payload["version"] == 1


def test_run_report_status():
    report = RunReport(command="reproduce chain(2)")
    report.add("genus", "genus matches", True, genus=2)

    assert report.passed
    assert report.clauses[0].status == PASS
    assert report.clauses[0].values == {"genus": "2"}


def test_run_report_failure_is_logged(caplog):
    report = RunReport(command="reproduce chain(2)")

    with caplog.at_level(logging.WARNING):
        report.add("genus", "genus matches", False, genus=3)

    assert not report.passed
    assert report.clauses[0].status == FAIL
    assert any("clause genus failed" in record.message for record in caplog.records)


def test_content_hash_ignores_timings():
    first = RunReport(command="verify-lemmas", inputs={"q": "3"})
    first.add("side_length_q3", "cosh L", True)
    second = first.model_copy(deep=True)
    second.timings["total_seconds"] = 12.5

    assert first.content_hash() == second.content_hash()
    second.add("extra", "anchor", True)
    assert first.content_hash() != second.content_hash()


def test_content_digest_is_sha256():
    assert content_digest("") == (
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
    )


def test_report_store_round_trip(tmp_path):
    store = ReportStore(tmp_path / "reports")
    report = RunReport(command="reproduce chain(2)", inputs={"example": "chain(2)"})
    report.add("genus", "genus matches", True, genus=2)

    path = store.save(report)
    loaded = store.load_all()

    assert path.name.startswith("reproduce-chain(2)-")
    assert len(loaded) == 1
    assert loaded[0].content_hash() == report.content_hash()


def test_report_store_skips_invalid_files(tmp_path, caplog):
    store = ReportStore(tmp_path)
    store.save(RunReport(command="analyze"))
    (tmp_path / "broken.json").write_text("{not json", encoding="utf-8")
    (tmp_path / "wrong.json").write_text(json.dumps({"clauses": 3}), encoding="utf-8")

    with caplog.at_level(logging.WARNING):
        loaded = store.load_all()

    assert len(loaded) == 1
    assert any("Skipped 2 invalid report file(s)" in record.message for record in caplog.records)


def test_report_store_utf8(tmp_path):
    store = ReportStore(tmp_path)
    report = RunReport(command="analyze", inputs={"note": "曲面 θ"})

    path = store.save(report)

    assert "曲面 θ" in path.read_text(encoding="utf-8")
