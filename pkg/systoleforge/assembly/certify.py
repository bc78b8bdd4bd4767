# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""Certificate that the red and blue curves are the systoles of a glued surface.

The clauses run in order and the first failure raises ``HypothesisFailed``:

* ``map_girth``: the block's map has girth equal to its face length p;
* ``gluing_girth``: the gluing graph has girth p;
* ``polygonal_theta_cover``: the gluing graph is strict polygonal and each of
  its girth cycles alternates two colours, i.e. covers a bigon of the theta
  graph (waived for trusted hand-made gluings);
* ``side_distance_margins``: in the right-angled 2q-gon, sides one apart are
  exactly L apart and sides further apart are strictly more than L apart;
* ``tile_path_lengths``: every closed, non-backtracking tile path with at most
  p crossings that develops to a hyperbolic isometry has translation length at
  least pL.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from systoleforge.assembly.holonomy import Developer
from systoleforge.assembly.surface import AssembledSurface
from systoleforge.covers.certify import ClauseCheck
from systoleforge.errors import ForgeError
from systoleforge.graphs.girth import girth, girth_length, is_strict_polygonal
from systoleforge.hyperbolic.isometry import NotHyperbolic, length_from_trace
from systoleforge.hyperbolic.polygon import build_polygon, side_distance_margins
from systoleforge.maps.rotation import map_girth

logger = logging.getLogger(__name__)

# developed products this close to the identity are null-homotopic loops
_TRIVIAL_TRACE = 1e-6


class HypothesisFailed(ForgeError):
    def __init__(self, clause: str, message: str, witness: object = None) -> None:
        super().__init__(f"{clause}: {message}")
        self.clause = clause
        self.witness = witness


@dataclass(frozen=True)
class SystoleCertificate:
    p: int
    q: int
    systole_length: float
    shortest_path_length: float
    paths_checked: int
    clauses: tuple[ClauseCheck, ...]


def tile_paths(
    x: AssembledSurface, max_crossings: int, *, start_tiles: Sequence[int] | None = None
) -> Iterator[tuple[int, ...]]:
    """Closed tile paths as sequences of crossed sides.

    A path never crosses straight back over the side it just came through and
    never ends by re-entering through the side it left by. Paths start from
    every tile unless ``start_tiles`` narrows the origins.
    """
    complex_ = x.complex
    n = complex_.sides_per_tile
    if start_tiles is None:
        start_tiles = range(complex_.num_tiles)
    for origin in start_tiles:
        stack: list[tuple[int, ...]] = [(complex_.side(origin, j),) for j in range(n)]
        while stack:
            path = stack.pop()
            entered = complex_.partner[path[-1]]
            tile = complex_.split(entered)[0]
            if tile == origin and entered != path[0]:
                yield path
            if len(path) == max_crossings:
                continue
            for j in range(n):
                side = complex_.side(tile, j)
                if side != entered:
                    stack.append(path + (side,))


def _check_polygonal_theta_cover(x: AssembledSurface) -> ClauseCheck:
    name = "polygonal_theta_cover"
    if x.coloring is None or x.coloring.theta_cover is None:
        if x.trusted:
            return ClauseCheck(name, "waived", "hand-made gluing marked trusted")
        raise HypothesisFailed(name, "gluing graph carries no theta-graph cover")
    result = girth(x.graph)
    verdict = is_strict_polygonal(x.graph, result)
    if not verdict.strict:
        raise HypothesisFailed(
            name, f"2-path lies in {verdict.count} girth cycles", verdict.witness
        )
    for cycle in result.witnesses:
        colours = [x.coloring.dart_color(d) for d in cycle.darts]
        alternating = len(set(colours[0::2])) == 1 and len(set(colours[1::2])) == 1
        if len(cycle) % 2 or not alternating:
            raise HypothesisFailed(
                name, f"girth cycle has colour sequence {colours}", cycle.darts
            )
    return ClauseCheck(name, "pass", f"{len(result.witnesses)} girth cycles alternate two colours")


def certify_systoles(
    x: AssembledSurface,
    *,
    margin: float = 1e-6,
    start_tiles: Sequence[int] | None = None,
) -> SystoleCertificate:
    p, q = x.p, x.q
    clauses: list[ClauseCheck] = []

    found = map_girth(x.block.map)
    if not found.equals_p:
        raise HypothesisFailed("map_girth", f"map girth {found.length} differs from p={p}")
    clauses.append(ClauseCheck("map_girth", "pass", f"girth {found.length} = p"))

    gluing_girth = girth_length(x.graph)
    if gluing_girth != p:
        raise HypothesisFailed(
            "gluing_girth", f"gluing graph girth {gluing_girth} differs from p={p}"
        )
    clauses.append(ClauseCheck("gluing_girth", "pass", f"girth {gluing_girth} = p"))

    clauses.append(_check_polygonal_theta_cover(x))

    polygon = build_polygon(q)
    margins = side_distance_margins(polygon)
    if margins.equality_residual > 1e-9 or not margins.strict_margin > margin:
        raise HypothesisFailed(
            "side_distance_margins",
            f"residual {margins.equality_residual:.3g}, margin {margins.strict_margin:.3g}",
        )
    clauses.append(
        ClauseCheck(
            "side_distance_margins",
            "pass",
            f"residual {margins.equality_residual:.3g}, margin {margins.strict_margin:.6g}",
        )
    )

    systole = p * polygon.side_length
    developer = Developer(polygon)
    shortest = math.inf
    checked = 0
    for path in tile_paths(x, p, start_tiles=start_tiles):
        checked += 1
        try:
            length = length_from_trace(developer.develop(x, path), tolerance=_TRIVIAL_TRACE)
        except NotHyperbolic:
            continue
        if length < systole - margin:
            raise HypothesisFailed(
                "tile_path_lengths",
                f"closed path of length {length:.12g} is shorter than {systole:.12g}",
                path,
            )
        shortest = min(shortest, length)
    logger.debug("checked %d closed tile paths, shortest %.12g", checked, shortest)
    clauses.append(
        ClauseCheck(
            "tile_path_lengths", "pass", f"{checked} paths, shortest {shortest:.12g}"
        )
    )
    logger.info("certified systole length %.12g for p=%d q=%d", systole, p, q)
    return SystoleCertificate(
        p=p,
        q=q,
        systole_length=systole,
        shortest_path_length=shortest,
        paths_checked=checked,
        clauses=tuple(clauses),
    )
