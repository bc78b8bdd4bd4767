# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""Symmetry of the quadrilateral and triangle tilings.

The combinatorial isometries of the surface are the permutations of chambers
that commute with the spoke, diagonal and side involutions. On a connected
surface such a map is fixed by the image of a single chamber, so every
candidate image of chamber 0 is extended and kept when it is consistent.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from systoleforge.assembly.surface import AssembledSurface
from systoleforge.assembly.tiling import TileComplex
from systoleforge.errors import TooLarge
from systoleforge.graphs.automorphisms import orbit_partition

logger = logging.getLogger(__name__)

DEFAULT_MAX_CHAMBERS = 200_000


@dataclass(frozen=True)
class QuadTransitivity:
    quad_transitive: bool
    triangle_transitive: bool
    group_order: int
    color_preserving_order: int
    quad_orbits: int
    triangle_orbits: int
    color_quad_orbits: int
    color_triangle_orbits: int


def _extend(
    involutions: tuple[tuple[int, ...], ...], size: int, target: int
) -> tuple[int, ...] | None:
    image = [-1] * size
    image[0] = target
    queue = [0]
    for chamber in queue:
        mapped = image[chamber]
        for inv in involutions:
            nxt, nxt_image = inv[chamber], inv[mapped]
            if image[nxt] == -1:
                image[nxt] = nxt_image
                queue.append(nxt)
            elif image[nxt] != nxt_image:
                return None
    if len(queue) != size:
        raise ValueError("chamber system is not connected")
    if len(set(image)) != size:
        return None
    return tuple(image)


def chamber_automorphisms(
    complex_: TileComplex, *, max_chambers: int = DEFAULT_MAX_CHAMBERS
) -> list[tuple[int, ...]]:
    size = complex_.num_chambers
    if size > max_chambers:
        raise TooLarge("chamber system", size, max_chambers)
    involutions = complex_.involutions()
    found = []
    for target in range(size):
        candidate = _extend(involutions, size, target)
        if candidate is not None:
            found.append(candidate)
    logger.debug("%d chambers, %d automorphisms", size, len(found))
    return found


def _preserves_color(automorphism: tuple[int, ...]) -> bool:
    # colours alternate round each tile, so one chamber decides
    return (automorphism[0] // 2) % 2 == 0


def quad_transitivity(
    x: AssembledSurface, *, max_chambers: int = DEFAULT_MAX_CHAMBERS
) -> QuadTransitivity:
    complex_ = x.complex
    size = complex_.num_chambers
    group = chamber_automorphisms(complex_, max_chambers=max_chambers)
    colored = [f for f in group if _preserves_color(f)]
    diagonal = complex_.involutions()[1]

    def counts(maps: list[tuple[int, ...]]) -> tuple[int, int]:
        triangles = len(orbit_partition(size, maps))
        quads = len(orbit_partition(size, [*maps, diagonal]))
        return quads, triangles

    quads, triangles = counts(group)
    color_quads, color_triangles = counts(colored)
    result = QuadTransitivity(
        quad_transitive=quads == 1,
        triangle_transitive=triangles == 1,
        group_order=len(group),
        color_preserving_order=len(colored),
        quad_orbits=quads,
        triangle_orbits=triangles,
        color_quad_orbits=color_quads,
        color_triangle_orbits=color_triangles,
    )
    logger.info(
        "isometry group of order %d: %d quad orbits, %d triangle orbits",
        result.group_order,
        quads,
        triangles,
    )
    return result
