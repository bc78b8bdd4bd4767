# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""Five tetrahedral blocks glued along the complete graph K5.

Block ``u`` gives its four boundary components to the four other vertices in
increasing order, except that a parity bit swaps the last two. Each boundary
point is labelled by the vertex whose component its blue arc runs to, and a
gluing is twist-free when it matches equal labels. All copies keep the same
orientation, so every twist-free gluing must reverse the cyclic order of the
points; parity choices where it does not, or where some blue curve fails to
close after three arcs, are discarded. Fixing the first parity leaves 16
candidates.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

from systoleforge.assembly.block import Block, build_block
from systoleforge.assembly.curves import BlueCurveDoesNotClose, CurveSystem, trace_curves
from systoleforge.assembly.surface import (
    AssembledSurface,
    NonOrientableGluing,
    RedGluing,
    assemble_bespoke,
)
from systoleforge.graphs.halfedge import complete_graph
from systoleforge.maps.catalog import tetrahedron

logger = logging.getLogger(__name__)

K5_VERTICES = 5


@dataclass(frozen=True, eq=False)
class K5Gluing:
    parities: tuple[int, ...]
    surface: AssembledSurface
    curves: CurveSystem


def component_assignment(parities: tuple[int, ...]) -> list[dict[int, int]]:
    """For each vertex, the boundary component it gives to each neighbour."""
    assignment = []
    for u in range(K5_VERTICES):
        neighbours = [w for w in range(K5_VERTICES) if w != u]
        components = [0, 1, 2, 3] if parities[u] == 0 else [0, 1, 3, 2]
        assignment.append(dict(zip(neighbours, components)))
    return assignment


def _point_labels(block: Block, owner: dict[int, int], component: int) -> tuple[int, ...]:
    by_component = {c: w for w, c in owner.items()}
    return tuple(by_component[c] for c in block.point_neighbors(component))


def twist_free_gluings(block: Block, parities: tuple[int, ...]) -> list[RedGluing]:
    """Match equally labelled points on every K5 edge; raises when a match keeps the cyclic order."""
    assignment = component_assignment(parities)
    gluings = []
    for u, w in itertools.combinations(range(K5_VERTICES), 2):
        first, second = assignment[u][w], assignment[w][u]
        source = _point_labels(block, assignment[u], first)
        target = _point_labels(block, assignment[w], second)
        if sorted(source) != sorted(target):
            raise ValueError(f"labels {source} and {target} on edge {u}-{w} differ")
        point_map = tuple(target.index(label) for label in source)
        gluings.append(
            RedGluing(first=(u, first), second=(w, second), point_map=point_map, reverse=True)
        )
    return gluings


def search_k5_gluings() -> list[K5Gluing]:
    block = build_block(tetrahedron())
    graph = complete_graph(K5_VERTICES)
    signs = (1,) * K5_VERTICES
    found = []
    for rest in itertools.product((0, 1), repeat=K5_VERTICES - 1):
        parities = (0, *rest)
        try:
            gluings = twist_free_gluings(block, parities)
            surface = assemble_bespoke(block, graph, signs, gluings, trusted=True)
            curves = trace_curves(surface)
        except (ValueError, NonOrientableGluing, BlueCurveDoesNotClose) as exc:
            logger.debug("parities %s rejected: %s", parities, exc)
            continue
        found.append(K5Gluing(parities=parities, surface=surface, curves=curves))
    logger.info("%d of 16 twist-free K5 gluings close every blue curve", len(found))
    return found
