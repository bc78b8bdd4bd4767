# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""Sign and colour labels pulled back from a theta graph."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from systoleforge.covers.homology import CoveringMap
from systoleforge.errors import ForgeError
from systoleforge.graphs.halfedge import HalfEdgeGraph

logger = logging.getLogger(__name__)


class BaseNotTheta(ForgeError):
    """The base of the covering is not two vertices joined by parallel edges."""


class ColoringImproper(ForgeError):
    def __init__(self, message: str, witness: object = None) -> None:
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class ColoredGluingGraph:
    graph: HalfEdgeGraph
    vertex_sign: tuple[int, ...]
    edge_color: tuple[int, ...]
    theta_cover: CoveringMap | None = None

    @property
    def colors(self) -> int:
        return max(self.edge_color, default=0)

    def dart_color(self, dart: int) -> int:
        return self.edge_color[self.graph.edge_of(dart)]

    def dart_at_color(self, vertex: int, color: int) -> int:
        for dart in self.graph.star(vertex):
            if self.dart_color(dart) == color:
                return dart
        raise KeyError(f"vertex {vertex} has no edge of colour {color}")


def check_coloring(
    graph: HalfEdgeGraph, vertex_sign: Sequence[int], edge_color: Sequence[int]
) -> None:
    """Raise ``ColoringImproper`` unless signs alternate and colours are proper."""
    if len(vertex_sign) != graph.num_vertices or len(edge_color) != graph.num_edges:
        raise ColoringImproper("label arrays do not match the graph")
    if any(sign not in (-1, 1) for sign in vertex_sign):
        raise ColoringImproper("vertex signs must be +1 or -1")
    for edge in range(graph.num_edges):
        u, v = graph.endpoints(edge)
        if vertex_sign[u] == vertex_sign[v]:
            raise ColoringImproper(f"edge {edge} joins vertices of equal sign", witness=edge)
    for vertex in graph.vertices():
        colours = [edge_color[graph.edge_of(d)] for d in graph.star(vertex)]
        if len(set(colours)) != len(colours):
            raise ColoringImproper(
                f"vertex {vertex} carries repeated colours {sorted(colours)}", witness=vertex
            )


def is_theta_graph(graph: HalfEdgeGraph) -> bool:
    return graph.num_vertices == 2 and all(
        graph.endpoints(e) == (0, 1) or graph.endpoints(e) == (1, 0)
        for e in range(graph.num_edges)
    )


def make_colored_gluing_graph(cover: CoveringMap) -> ColoredGluingGraph:
    base = cover.base
    if not is_theta_graph(base):
        raise BaseNotTheta(
            f"base has {base.num_vertices} vertices and {base.num_edges} edges, not a theta graph"
        )
    total = cover.total
    vertex_sign = tuple(1 if cover.vertex_map[v] == 0 else -1 for v in total.vertices())
    edge_color = tuple(base.edge_of(cover.dart_map[a]) + 1 for a, _ in total.edges)
    check_coloring(total, vertex_sign, edge_color)
    logger.debug(
        "coloured gluing graph: %d vertices, %d colours", total.num_vertices, base.num_edges
    )
    return ColoredGluingGraph(
        graph=total, vertex_sign=vertex_sign, edge_color=edge_color, theta_cover=cover
    )
