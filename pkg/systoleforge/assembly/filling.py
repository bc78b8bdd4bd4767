# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""Cut the surface along a set of curves and classify what is left."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable

from systoleforge.assembly.curves import Curve
from systoleforge.assembly.surface import AssembledSurface
from systoleforge.assembly.tiling import class_labels, connected_classes

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ComplementComponent:
    tiles: tuple[int, ...]
    euler_characteristic: int
    boundary_cycles: int

    @property
    def is_disk(self) -> bool:
        return self.euler_characteristic == 1 and self.boundary_cycles == 1


@dataclass(frozen=True)
class FillReport:
    fills: bool
    components: tuple[ComplementComponent, ...]


def _boundary_successor(x: AssembledSurface, cut: set[int], side: int) -> int:
    """Next cut side along the component boundary, turning round the end corner."""
    complex_ = x.complex
    candidate = complex_.step(side, 1)
    while candidate not in cut:
        candidate = complex_.step(complex_.partner[candidate], 1)
    return candidate


def fills_check(x: AssembledSurface, subset: Iterable[Curve]) -> FillReport:
    complex_ = x.complex
    cut_edges = {edge for curve in subset for edge in curve.edges}
    cut = {s for s in range(complex_.num_sides) if complex_.edge_of(s) in cut_edges}

    links = (
        (complex_.split(s)[0], complex_.split(t)[0])
        for edge, (s, t) in enumerate(complex_.edges)
        if edge not in cut_edges
    )
    classes = connected_classes(complex_.num_tiles, links)
    label = class_labels(classes, complex_.num_tiles)

    chi = [len(members) for members in classes]
    cycles = [0] * len(classes)
    for edge, (s, _) in enumerate(complex_.edges):
        if edge not in cut_edges:
            chi[label[complex_.split(s)[0]]] -= 1
    on_cut = {complex_.vertex_of_corner(s) for s in cut} | {
        complex_.vertex_of_corner(complex_.step(s, 1)) for s in cut
    }
    for v, corners in enumerate(complex_.vertex_classes()):
        if v not in on_cut:
            chi[label[complex_.split(corners[0])[0]]] += 1
    seen: set[int] = set()
    for start in sorted(cut):
        if start in seen:
            continue
        cycles[label[complex_.split(start)[0]]] += 1
        side = start
        while side not in seen:
            seen.add(side)
            side = _boundary_successor(x, cut, side)

    components = tuple(
        ComplementComponent(
            tiles=classes[c], euler_characteristic=chi[c], boundary_cycles=cycles[c]
        )
        for c in range(len(classes))
    )
    fills = bool(cut_edges) and all(component.is_disk for component in components)
    logger.debug(
        "cut along %d tiling edges: %d components, fills=%s",
        len(cut_edges),
        len(components),
        fills,
    )
    return FillReport(fills=fills, components=components)
