# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""JSON documents for graphs, maps, covers, polygons, matrices and surfaces.

Every document is a pydantic model. ``dump_document`` writes sorted keys with
two-space indentation, so equal inputs give byte-identical files. Reals are
written as decimal strings with 17 significant digits and exact integers from
analyses as decimal strings.

A graph document lists its darts as ``[dart, vertex]`` pairs and its edges as
``[dart, dart]`` pairs of the involution. Vertex labels are keyed by vertex and
edge labels by edge number, edges being numbered in order of their smaller
dart. Empty label mappings mean an unlabelled graph. Map documents extend graph
documents with ``[dart, next_dart]`` rotation pairs, and cover documents pair
each dart of the total graph with its image in the base.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Annotated, Optional, TypeVar

from pydantic import BaseModel, Field, PlainSerializer, model_validator

from systoleforge.assembly.curves import CurveSystem
from systoleforge.assembly.surface import AssembledSurface, surface_summary
from systoleforge.covers.coloring import ColoredGluingGraph, check_coloring
from systoleforge.covers.homology import CoveringMap
from systoleforge.graphs.halfedge import HalfEdgeGraph
from systoleforge.hyperbolic.polygon import PolygonMetric
from systoleforge.maps.rotation import RotationMap

Document = TypeVar("Document", bound=BaseModel)


def format_real(value: float) -> str:
    return format(value, ".17g")


Real = Annotated[float, PlainSerializer(format_real, return_type=str, when_used="json")]


def _pairs_to_array(pairs: list[tuple[int, int]], size: int, what: str) -> list[int]:
    array = [-1] * size
    for key, value in pairs:
        if not 0 <= key < size:
            raise ValueError(f"{what} names dart {key} outside 0..{size - 1}")
        if array[key] != -1:
            raise ValueError(f"{what} lists dart {key} twice")
        array[key] = value
    missing = [d for d, value in enumerate(array) if value == -1]
    if missing:
        raise ValueError(f"{what} has no entry for dart {missing[0]}")
    return array


def _labels(mapping: dict[int, int], size: int, what: str) -> tuple[int, ...] | None:
    if not mapping:
        return None
    if sorted(mapping) != list(range(size)):
        raise ValueError(f"{what} must label every one of the {size} entries")
    return tuple(mapping[i] for i in range(size))


class GraphDocument(BaseModel):
    vertices: int = Field(ge=1)
    darts: list[tuple[int, int]]
    theta: list[tuple[int, int]]
    vertex_labels: dict[int, int] = Field(default_factory=dict)
    edge_labels: dict[int, int] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_pairs(self) -> "GraphDocument":
        n = len(self.darts)
        vertex_of = _pairs_to_array(self.darts, n, "darts")
        if any(not 0 <= v < self.vertices for v in vertex_of):
            raise ValueError(f"darts must start at vertices 0..{self.vertices - 1}")
        flat = [d for pair in self.theta for d in pair]
        if sorted(flat) != list(range(n)):
            raise ValueError("theta must pair every dart exactly once")
        return self

    @classmethod
    def graph_fields(cls, graph: HalfEdgeGraph) -> dict[str, object]:
        return {
            "vertices": graph.num_vertices,
            "darts": [(d, graph.vertex_of[d]) for d in graph.darts()],
            "theta": [(d, e) for d, e in enumerate(graph.theta) if d < e],
            "vertex_labels": dict(enumerate(graph.vertex_labels or ())),
            "edge_labels": dict(enumerate(graph.edge_labels or ())),
        }

    @classmethod
    def from_graph(cls, graph: HalfEdgeGraph) -> "GraphDocument":
        return cls(**cls.graph_fields(graph))

    def to_graph(self) -> HalfEdgeGraph:
        n = len(self.darts)
        theta = [-1] * n
        for a, b in self.theta:
            theta[a], theta[b] = b, a
        return HalfEdgeGraph(
            num_vertices=self.vertices,
            vertex_of=tuple(_pairs_to_array(self.darts, n, "darts")),
            theta=tuple(theta),
            vertex_labels=_labels(self.vertex_labels, self.vertices, "vertex_labels"),
            edge_labels=_labels(self.edge_labels, len(self.theta), "edge_labels"),
        )


class MapDocument(GraphDocument):
    rotation: list[tuple[int, int]]

    @classmethod
    def from_map(cls, m: RotationMap) -> "MapDocument":
        return cls(
            **GraphDocument.graph_fields(m.graph),
            rotation=[(d, m.rotation[d]) for d in m.graph.darts()],
        )

    def to_map(self) -> RotationMap:
        rotation = _pairs_to_array(self.rotation, len(self.darts), "rotation")
        return RotationMap(graph=self.to_graph(), rotation=tuple(rotation))


class CoverDocument(BaseModel):
    total: GraphDocument
    base: GraphDocument
    dart_map: list[tuple[int, int]]

    @classmethod
    def from_cover(cls, cover: CoveringMap) -> "CoverDocument":
        return cls(
            total=GraphDocument.from_graph(cover.total),
            base=GraphDocument.from_graph(cover.base),
            dart_map=list(enumerate(cover.dart_map)),
        )

    def to_cover(self) -> CoveringMap:
        dart_map = _pairs_to_array(self.dart_map, len(self.total.darts), "dart_map")
        cover = CoveringMap(
            total=self.total.to_graph(), base=self.base.to_graph(), dart_map=tuple(dart_map)
        )
        broken = cover.violations()
        if broken:
            raise ValueError(f"dart map is not a covering: {broken[0]}")
        return cover


class ColoredGraphDocument(BaseModel):
    graph: GraphDocument
    vertex_sign: list[int]
    edge_color: list[int]

    @classmethod
    def from_colored(cls, gluing: ColoredGluingGraph) -> "ColoredGraphDocument":
        return cls(
            graph=GraphDocument.from_graph(gluing.graph),
            vertex_sign=list(gluing.vertex_sign),
            edge_color=list(gluing.edge_color),
        )

    def to_colored(self) -> ColoredGluingGraph:
        graph = self.graph.to_graph()
        check_coloring(graph, self.vertex_sign, self.edge_color)
        return ColoredGluingGraph(
            graph=graph, vertex_sign=tuple(self.vertex_sign), edge_color=tuple(self.edge_color)
        )


class PolygonDocument(BaseModel):
    q: int
    theta: Real
    side_length: Real
    vertices: list[list[Real]]

    @classmethod
    def from_polygon(cls, polygon: PolygonMetric) -> "PolygonDocument":
        return cls(
            q=polygon.q,
            theta=polygon.theta,
            side_length=polygon.side_length,
            vertices=[[float(c) for c in v] for v in polygon.vertices],
        )


class MatrixDocument(BaseModel):
    version: int = 1
    description: str = ""
    matrix: list[list[int]]
    determinant: Optional[str] = None


class CurveDocument(BaseModel):
    name: str
    color: str
    edges: list[int]


class SurfaceDocument(BaseModel):
    block: MapDocument
    gluing: GraphDocument
    signs: list[int]
    edge_color: Optional[list[int]] = None
    p: int
    q: int
    genus: int
    closed_form_genus: int
    tiles: int
    tiling_edges: int
    tiling_vertices: int
    curves: list[CurveDocument] = Field(default_factory=list)
    curve_length: Optional[Real] = None

    @classmethod
    def from_surface(
        cls, x: AssembledSurface, curves: CurveSystem | None = None
    ) -> "SurfaceDocument":
        summary = surface_summary(x)
        return cls(
            block=MapDocument.from_map(x.block.map),
            gluing=GraphDocument.from_graph(x.graph),
            signs=list(x.signs),
            edge_color=list(x.coloring.edge_color) if x.coloring is not None else None,
            p=summary.p,
            q=summary.q,
            genus=summary.genus,
            closed_form_genus=summary.closed_form_genus,
            tiles=summary.tiles,
            tiling_edges=summary.tiling_edges,
            tiling_vertices=summary.tiling_vertices,
            curves=[
                CurveDocument(name=c.name, color=c.color, edges=list(c.edges))
                for c in (curves.curves if curves is not None else ())
            ],
            curve_length=curves.length_per_curve if curves is not None else None,
        )


def dump_document(document: BaseModel) -> str:
    return json.dumps(
        document.model_dump(mode="json"), indent=2, sort_keys=True, ensure_ascii=False
    )


def write_document(path: Path, document: BaseModel) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_document(document) + "\n", encoding="utf-8")


def read_document(path: Path, model: type[Document]) -> Document:
    return model.model_validate_json(path.read_text(encoding="utf-8"))
