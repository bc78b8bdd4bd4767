# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""Combinatorics of a closed surface tiled by 2q-gons.

Every tile carries sides ``0..2q-1`` in counterclockwise order of one global
orientation; even sides are blue and odd sides red. Side ``j`` runs from corner
``j`` to corner ``j + 1``. Sides are addressed by a flat index
``tile * 2q + j``.

Every pairing glues the start of one side to the end of its partner, which is
what makes the glued surface oriented. Corner ``j`` of a tile therefore meets
corner ``k + 1`` of the tile across side ``j`` (``k`` the partner side), and
corner ``j + 1`` meets corner ``k``.

Subdividing each tile from its centre through side midpoints and corners gives
the quadrilateral tiling; halving each quadrilateral along its diagonal gives
the triangle tiling whose triangles ("chambers") are half-sides
``(tile, side, end)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import networkx as nx

logger = logging.getLogger(__name__)


def connected_classes(size: int, links: Iterable[tuple[int, int]]) -> tuple[tuple[int, ...], ...]:
    """Connected classes of ``0..size-1`` under ``links``, ordered by smallest member."""
    graph = nx.Graph()
    graph.add_nodes_from(range(size))
    graph.add_edges_from(links)
    return tuple(sorted(tuple(sorted(c)) for c in nx.connected_components(graph)))


def class_labels(classes: tuple[tuple[int, ...], ...], size: int) -> tuple[int, ...]:
    labels = [0] * size
    for index, members in enumerate(classes):
        for member in members:
            labels[member] = index
    return tuple(labels)


@dataclass(frozen=True)
class EulerCount:
    vertices: int
    edges: int
    faces: int

    @property
    def characteristic(self) -> int:
        return self.vertices - self.edges + self.faces


@dataclass(frozen=True, eq=False)
class TileComplex:
    q: int
    num_tiles: int
    partner: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.num_tiles * self.sides_per_tile
        if len(self.partner) != n:
            raise ValueError(f"expected {n} side partners, got {len(self.partner)}")
        for s, t in enumerate(self.partner):
            if not 0 <= t < n or t == s or self.partner[t] != s:
                raise ValueError(f"side pairing is not a fixed-point-free involution at {s}")
            if (s - t) % 2:
                raise ValueError(f"side {s} is glued to a side of the other colour")

    @classmethod
    def from_pairs(
        cls, q: int, num_tiles: int, pairs: Iterable[tuple[int, int]]
    ) -> "TileComplex":
        partner = [-1] * (num_tiles * 2 * q)
        for a, b in pairs:
            if partner[a] != -1 or partner[b] != -1:
                raise ValueError(f"side {a if partner[a] != -1 else b} is glued twice")
            partner[a], partner[b] = b, a
        missing = [s for s, t in enumerate(partner) if t == -1]
        if missing:
            raise ValueError(f"{len(missing)} sides are left unglued, first {missing[0]}")
        return cls(q=q, num_tiles=num_tiles, partner=tuple(partner))

    @property
    def sides_per_tile(self) -> int:
        return 2 * self.q

    @property
    def num_sides(self) -> int:
        return len(self.partner)

    def side(self, tile: int, j: int) -> int:
        return tile * self.sides_per_tile + j % self.sides_per_tile

    def split(self, side: int) -> tuple[int, int]:
        return divmod(side, self.sides_per_tile)

    def step(self, side: int, offset: int) -> int:
        """The side ``offset`` places further round the same tile."""
        tile, j = self.split(side)
        return self.side(tile, j + offset)

    @staticmethod
    def color(side: int) -> int:
        """0 for blue, 1 for red."""
        return side % 2

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((s, t) for s, t in enumerate(self.partner) if s < t)

    @cached_property
    def _edge_of(self) -> tuple[int, ...]:
        index = [0] * self.num_sides
        for e, (s, t) in enumerate(self.edges):
            index[s] = index[t] = e
        return tuple(index)

    def edge_of(self, side: int) -> int:
        return self._edge_of[side]

    @cached_property
    def _corner_classes(self) -> tuple[tuple[int, ...], ...]:
        # corner j of a tile shares the flat index of side j
        links = []
        for s, t in self.edges:
            links.append((s, self.step(t, 1)))
            links.append((self.step(s, 1), t))
        return connected_classes(self.num_sides, links)

    def vertex_classes(self) -> tuple[tuple[int, ...], ...]:
        """Tiling vertices as lists of corners, ordered by their smallest corner."""
        return self._corner_classes

    @cached_property
    def _vertex_of_corner(self) -> tuple[int, ...]:
        return class_labels(self._corner_classes, self.num_sides)

    def vertex_of_corner(self, corner: int) -> int:
        return self._vertex_of_corner[corner]

    def bad_vertices(self) -> list[tuple[int, ...]]:
        return [members for members in self._corner_classes if len(members) != 4]

    def polygon_euler(self) -> EulerCount:
        return EulerCount(
            vertices=len(self._corner_classes), edges=len(self.edges), faces=self.num_tiles
        )

    def quad_euler(self) -> EulerCount:
        """Cell counts of the quadrilateral subdivision."""
        n = self.sides_per_tile
        return EulerCount(
            vertices=self.num_tiles + len(self.edges) + len(self._corner_classes),
            edges=n * self.num_tiles + 2 * len(self.edges),
            faces=n * self.num_tiles,
        )

    @cached_property
    def tile_components(self) -> int:
        links = ((self.split(s)[0], self.split(t)[0]) for s, t in self.edges)
        return len(connected_classes(self.num_tiles, links))

    def next_passage(self, side: int) -> int:
        """Continue a geodesic running along ``side`` straight through its end corner.

        The tile on the left changes by crossing the following side; the curve
        carries on along the side after the partner.
        """
        return self.step(self.partner[self.step(side, 1)], 1)

    # chambers are numbered 2 * side + end, end 0 at the start of the side

    @property
    def num_chambers(self) -> int:
        return 2 * self.num_sides

    def spoke(self, chamber: int) -> int:
        return chamber ^ 1

    def diagonal(self, chamber: int) -> int:
        side, end = divmod(chamber, 2)
        if end == 1:
            return 2 * self.step(side, 1)
        return 2 * self.step(side, -1) + 1

    def across(self, chamber: int) -> int:
        side, end = divmod(chamber, 2)
        return 2 * self.partner[side] + (1 - end)

    def involutions(self) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
        chambers = range(self.num_chambers)
        return (
            tuple(self.spoke(c) for c in chambers),
            tuple(self.diagonal(c) for c in chambers),
            tuple(self.across(c) for c in chambers),
        )
