# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""Serialize named objects as JSON documents or DOT graphs.

Targets are written ``kind:argument``:

* ``surface:<example>`` the surface document with its curves (JSON) or the
  gluing graph (DOT);
* ``intersections:<example>`` the red-by-blue matrix (JSON) or the
  intersection graph (DOT);
* ``cover:<d>`` or ``cover:<d>:<levels>`` the theta graph's iterated mod-2
  homology cover;
* ``polygon:<q>`` the right-angled 2q-gon (JSON only);
* ``report:<example>`` the reproduction report (JSON only).
"""

from __future__ import annotations

import logging

from systoleforge.analysis.determinants import exact_determinant
from systoleforge.analysis.intersection import intersection_data
from systoleforge.assembly.curves import trace_curves
from systoleforge.config import ForgeConfig
from systoleforge.covers.homology import collapse_tower, homology_tower, identity_cover
from systoleforge.graphs.halfedge import theta_graph
from systoleforge.hyperbolic.polygon import build_polygon
from systoleforge.maps.catalog import UnknownName
from systoleforge.pipeline.examples import example_surface, parse_example
from systoleforge.pipeline.reproduce import reproduce
from systoleforge.render.dot import graph_to_dot, intersection_to_dot
from systoleforge.storage.documents import (
    CoverDocument,
    MatrixDocument,
    PolygonDocument,
    SurfaceDocument,
    dump_document,
)

logger = logging.getLogger(__name__)

FORMATS = ("json", "dot")


def export_object(target: str, fmt: str, config: ForgeConfig | None = None) -> str:
    config = config or ForgeConfig()
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
    kind, _, argument = target.partition(":")
    if kind == "surface":
        x = example_surface(parse_example(argument), max_cover_size=config.max_cover_size)
        if fmt == "dot":
            return graph_to_dot(
                x.graph.with_labels(
                    vertex_labels=[0 if s > 0 else 1 for s in x.signs],
                    edge_labels=x.coloring.edge_color if x.coloring is not None else None,
                ),
                name="gluing",
            )
        return dump_document(SurfaceDocument.from_surface(x, trace_curves(x)))
    if kind == "intersections":
        x = example_surface(parse_example(argument), max_cover_size=config.max_cover_size)
        data = intersection_data(x)
        if fmt == "dot":
            return intersection_to_dot(data)
        square = len(data.red_index) == len(data.blue_index)
        return dump_document(
            MatrixDocument(
                description=f"red-by-blue intersection matrix of {argument}",
                matrix=[list(row) for row in data.matrix],
                determinant=str(exact_determinant(data.matrix)) if square else None,
            )
        )
    if kind == "cover":
        parts = [int(p) for p in argument.split(":") if p]
        if not 1 <= len(parts) <= 2:
            raise ValueError("cover targets are cover:<d> or cover:<d>:<levels>")
        d, levels = parts[0], parts[1] if len(parts) == 2 else 1
        base = theta_graph(d)
        cover = (
            collapse_tower(homology_tower(base, levels, max_cover_size=config.max_cover_size))
            if levels
            else identity_cover(base)
        )
        if fmt == "dot":
            return graph_to_dot(
                cover.total.with_labels(vertex_labels=list(cover.vertex_map)), name="cover"
            )
        return dump_document(CoverDocument.from_cover(cover))
    if fmt == "dot":
        raise ValueError(f"{kind} targets have no DOT form")
    if kind == "polygon":
        return dump_document(PolygonDocument.from_polygon(build_polygon(int(argument))))
    if kind == "report":
        return dump_document(reproduce(argument, config))
    raise UnknownName(kind)
