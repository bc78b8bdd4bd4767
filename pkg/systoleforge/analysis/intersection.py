# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""Red/blue intersection pattern of the traced systoles.

Every tiling vertex is a crossing of exactly one red and one blue curve, so the
red-by-blue matrix ``A`` is read off the corners. Curves are vertices of the
intersection graph in the order red curves, then blue curves.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import networkx as nx
import numpy as np

from systoleforge.assembly.curves import Curve, CurveSystem, trace_curves
from systoleforge.assembly.surface import AssembledSurface
from systoleforge.errors import ForgeError
from systoleforge.graphs.halfedge import HalfEdgeGraph

logger = logging.getLogger(__name__)

Matrix = tuple[tuple[int, ...], ...]


class MultipleIntersection(ForgeError):
    def __init__(self, red: str, blue: str, count: int) -> None:
        super().__init__(f"curves {red} and {blue} cross {count} times")
        self.red = red
        self.blue = blue
        self.count = count


@dataclass(frozen=True)
class IntersectionData:
    red_index: tuple[Curve, ...]
    blue_index: tuple[Curve, ...]
    matrix: Matrix
    graph: HalfEdgeGraph

    @property
    def size(self) -> int:
        return len(self.red_index) + len(self.blue_index)

    def names(self) -> list[str]:
        return [c.name for c in self.red_index + self.blue_index]


def intersection_graph(matrix: Sequence[Sequence[int]]) -> HalfEdgeGraph:
    """Bipartite multigraph with one edge per crossing, red vertices first."""
    rows = len(matrix)
    edges = [
        (r, rows + b)
        for r, row in enumerate(matrix)
        for b, count in enumerate(row)
        for _ in range(count)
    ]
    columns = len(matrix[0]) if rows else 0
    return HalfEdgeGraph.from_edges(
        rows + columns, edges, vertex_labels=[0] * rows + [1] * columns
    )


def intersection_data(x: AssembledSurface, curves: CurveSystem | None = None) -> IntersectionData:
    if curves is None:
        curves = trace_curves(x)
    complex_ = x.complex
    red_slot = {c.name: i for i, c in enumerate(curves.red)}
    blue_slot = {c.name: i for i, c in enumerate(curves.blue)}
    counts = [[0] * len(curves.blue) for _ in curves.red]
    by_edge = curves.curve_of_edge
    for corners in complex_.vertex_classes():
        corner = corners[0]
        # corner j sits between sides j - 1 and j, one of each colour
        here = by_edge[complex_.edge_of(corner)]
        before = by_edge[complex_.edge_of(complex_.step(corner, -1))]
        red, blue = (before, here) if here.color == "blue" else (here, before)
        counts[red_slot[red.name]][blue_slot[blue.name]] += 1
    for r, row in enumerate(counts):
        for b, count in enumerate(row):
            if count > 1:
                raise MultipleIntersection(curves.red[r].name, curves.blue[b].name, count)
    matrix = tuple(tuple(row) for row in counts)
    logger.debug("intersection matrix %dx%d", len(curves.red), len(curves.blue))
    return IntersectionData(
        red_index=curves.red,
        blue_index=curves.blue,
        matrix=matrix,
        graph=intersection_graph(matrix),
    )


def block_adjacency(matrix: Sequence[Sequence[int]]) -> Matrix:
    """The symmetric matrix ``[[0, A], [A^T, 0]]``."""
    rows = len(matrix)
    columns = len(matrix[0]) if rows else 0
    n = rows + columns
    out = [[0] * n for _ in range(n)]
    for r in range(rows):
        for b in range(columns):
            out[r][rows + b] = out[rows + b][r] = int(matrix[r][b])
    return tuple(tuple(row) for row in out)


def intersection_adjacency(data: IntersectionData) -> Matrix:
    return block_adjacency(data.matrix)


def adjacency_graph(adjacency: Sequence[Sequence[int]]) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(len(adjacency)))
    for i, row in enumerate(adjacency):
        for j in range(i + 1, len(row)):
            if row[j]:
                graph.add_edge(i, j)
    return graph


def twist_matrix(data: IntersectionData, theta: float) -> np.ndarray:
    """Length derivatives of each curve under the twist along each curve.

    Red rows carry ``cos(theta) * A``, blue rows ``-cos(theta) * A^T``.
    """
    a = np.array(data.matrix, dtype=float).reshape(len(data.red_index), len(data.blue_index))
    rows, columns = a.shape
    c = math.cos(theta)
    return np.block(
        [
            [np.zeros((rows, rows)), c * a],
            [-c * a.T, np.zeros((columns, columns))],
        ]
    )
