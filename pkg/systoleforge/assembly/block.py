# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""The block: one 2q-gon per vertex of a {p,q} map, glued along the map's edges.

Tile ``P_v`` lists its sides counterclockwise starting from the smallest dart
``d0`` of the star of ``v``: side ``2i`` is the blue side of dart
``rho^i(d0)`` and side ``2i + 1`` the red side that follows it. Blue sides of
darts ``d`` and ``theta(d)`` are glued start to end. What stays unglued are the
red sides, which close up into one boundary component per face.

A boundary component is an orbit ``d0, d1 = theta(rho(d0)), ...``. Its points
are numbered by position: red side ``red(dk)`` runs from point ``k`` to point
``k + 1`` and point ``k`` is where the blue arc of dart ``dk`` leaves the
boundary.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property

from systoleforge.errors import ForgeError
from systoleforge.hyperbolic.polygon import BLUE, RED
from systoleforge.maps.rotation import RotationMap, map_girth, map_type

logger = logging.getLogger(__name__)


class UnsupportedMapType(ForgeError, TypeError):
    """The map's vertices have valence below three, so no hyperbolic tiles exist."""


@dataclass(frozen=True)
class LocalSide:
    color: str
    dart: int


@dataclass(frozen=True)
class BoundaryComponent:
    index: int
    darts: tuple[int, ...]
    face: int

    @property
    def color(self) -> int:
        """Boundary label used by the edge colouring of a gluing graph (1-based)."""
        return self.index + 1

    def __len__(self) -> int:
        return len(self.darts)


@dataclass(frozen=True)
class Block:
    map: RotationMap
    p: int
    q: int
    components: tuple[BoundaryComponent, ...]

    @property
    def num_tiles(self) -> int:
        return self.map.graph.num_vertices

    @property
    def num_components(self) -> int:
        return len(self.components)

    @cached_property
    def _tile_sides(self) -> tuple[tuple[LocalSide, ...], ...]:
        tiles = []
        for v in self.map.graph.vertices():
            sides: list[LocalSide] = []
            for dart in self.map.rotation_from(min(self.map.graph.star(v))):
                sides.append(LocalSide(BLUE, dart))
                sides.append(LocalSide(RED, dart))
            tiles.append(tuple(sides))
        return tuple(tiles)

    def tile_sides(self, vertex: int) -> tuple[LocalSide, ...]:
        return self._tile_sides[vertex]

    @cached_property
    def _side_index(self) -> dict[tuple[str, int], int]:
        index = {}
        for sides in self._tile_sides:
            for position, side in enumerate(sides):
                index[(side.color, side.dart)] = position
        return index

    def side_index(self, color: str, dart: int) -> int:
        """Position of the side of ``dart`` with ``color`` in its tile."""
        return self._side_index[(color, dart)]

    @cached_property
    def _position(self) -> dict[int, tuple[int, int]]:
        return {
            dart: (component.index, k)
            for component in self.components
            for k, dart in enumerate(component.darts)
        }

    def component_of(self, dart: int) -> tuple[int, int]:
        """(component index, position) of the red side of ``dart``."""
        return self._position[dart]

    def blue_arc_end(self, component: int, position: int) -> tuple[int, int]:
        """The boundary point at the other end of the blue arc leaving a point."""
        dart = self.components[component].darts[position]
        return self.component_of(self.map.graph.theta[dart])

    def point_neighbors(self, component: int) -> tuple[int, ...]:
        """For each point of a component, the component its blue arc leads to."""
        return tuple(
            self.blue_arc_end(component, k)[0]
            for k in range(len(self.components[component]))
        )


def _boundary_components(m: RotationMap) -> tuple[BoundaryComponent, ...]:
    theta, rotation = m.graph.theta, m.rotation
    seen: set[int] = set()
    components = []
    for start in m.graph.darts():
        if start in seen:
            continue
        darts = [start]
        seen.add(start)
        nxt = theta[rotation[start]]
        while nxt != start:
            darts.append(nxt)
            seen.add(nxt)
            nxt = theta[rotation[nxt]]
        components.append(
            BoundaryComponent(
                index=len(components), darts=tuple(darts), face=m.face_of[theta[start]]
            )
        )
    return tuple(components)


def build_block(m: RotationMap) -> Block:
    kind = map_type(m)
    if kind.q < 3:
        raise UnsupportedMapType(f"vertex valence {kind.q} is below 3")
    found = map_girth(m)
    if not found.equals_p:
        logger.warning(
            "map girth %d is below face length %d; boundary curves need not be systoles",
            found.length,
            kind.p,
        )
    components = _boundary_components(m)
    logger.debug(
        "block of type {%d,%d}: %d tiles, %d boundary components",
        kind.p,
        kind.q,
        m.graph.num_vertices,
        len(components),
    )
    return Block(map=m, p=kind.p, q=kind.q, components=components)
