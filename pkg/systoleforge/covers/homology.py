# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""Covering maps and the mod-2 homology cover.

A covering is recorded at the dart level: ``dart_map`` sends every dart of the
total graph to a dart of the base, commuting with both involutions and bijective
on each star. The mod-2 homology cover fixes a breadth-first spanning tree; its
sheets are the vectors of GF(2)^r, r = E - V + 1, stored as machine words, and
crossing the i-th non-tree edge (in edge order) flips bit i.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from systoleforge.errors import ForgeError, TooLarge
from systoleforge.graphs.automorphisms import Isomorphism, is_automorphism
from systoleforge.graphs.halfedge import HalfEdgeGraph

logger = logging.getLogger(__name__)

DEFAULT_MAX_COVER_SIZE = 1_000_000


class NotLiftable(ForgeError):
    """No automorphism of the total graph lies over the given base automorphism."""


@dataclass(frozen=True)
class CoveringMap:
    total: HalfEdgeGraph
    base: HalfEdgeGraph
    dart_map: tuple[int, ...]
    voltages: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if len(self.dart_map) != self.total.num_darts:
            raise ValueError("dart_map must cover every dart of the total graph")
        if self.total.num_vertices % self.base.num_vertices:
            raise ValueError("total vertex count is not a multiple of the base vertex count")

    @property
    def degree(self) -> int:
        return self.total.num_vertices // self.base.num_vertices

    @cached_property
    def vertex_map(self) -> tuple[int, ...]:
        return tuple(
            self.base.vertex_of[self.dart_map[self.total.star(v)[0]]]
            for v in self.total.vertices()
        )

    @cached_property
    def fibers(self) -> tuple[tuple[int, ...], ...]:
        fibers: list[list[int]] = [[] for _ in self.base.vertices()]
        for v, image in enumerate(self.vertex_map):
            fibers[image].append(v)
        return tuple(tuple(f) for f in fibers)

    def fiber(self, vertex: int) -> tuple[int, ...]:
        return self.fibers[vertex]

    @cached_property
    def _star_lookup(self) -> tuple[dict[int, int], ...]:
        return tuple(
            {self.dart_map[d]: d for d in self.total.star(v)} for v in self.total.vertices()
        )

    def lift_dart(self, vertex: int, base_dart: int) -> int:
        """The total dart at ``vertex`` lying over ``base_dart``."""
        return self._star_lookup[vertex][base_dart]

    def violations(self) -> list[str]:
        """Covering-map invariants that fail, as readable messages."""
        problems: list[str] = []
        total, base = self.total, self.base
        for dart in total.darts():
            image = self.dart_map[dart]
            if self.dart_map[total.theta[dart]] != base.theta[image]:
                problems.append(f"dart {dart}: dart_map does not commute with theta")
            if base.vertex_of[image] != self.vertex_map[total.vertex_of[dart]]:
                problems.append(f"dart {dart}: vertex map is not induced")
        for v in total.vertices():
            images = sorted(self.dart_map[d] for d in total.star(v))
            if images != list(base.star(self.vertex_map[v])):
                problems.append(f"vertex {v}: star is not mapped bijectively")
        sizes = {len(f) for f in self.fibers}
        if sizes != {self.degree}:
            problems.append(f"fiber sizes {sorted(sizes)} differ from degree {self.degree}")
        return problems


def identity_cover(graph: HalfEdgeGraph) -> CoveringMap:
    return CoveringMap(total=graph, base=graph, dart_map=tuple(graph.darts()))


def compose_covers(upper: CoveringMap, lower: CoveringMap) -> CoveringMap:
    """``lower`` after ``upper``; the base of ``upper`` must be the total graph of ``lower``."""
    if upper.base != lower.total:
        raise ValueError("covers do not compose: upper base differs from lower total")
    return CoveringMap(
        total=upper.total,
        base=lower.base,
        dart_map=tuple(lower.dart_map[d] for d in upper.dart_map),
    )


def spanning_tree_edges(graph: HalfEdgeGraph) -> set[int]:
    """Edges of the breadth-first spanning tree rooted at vertex 0."""
    seen = {0}
    queue = [0]
    tree: set[int] = set()
    for vertex in queue:
        for dart in graph.star(vertex):
            head = graph.head(dart)
            if head not in seen:
                seen.add(head)
                tree.add(graph.edge_of(dart))
                queue.append(head)
    if len(seen) != graph.num_vertices:
        raise ValueError("graph must be connected")
    return tree


def mod2_homology_cover(
    graph: HalfEdgeGraph, *, max_cover_size: int = DEFAULT_MAX_COVER_SIZE
) -> CoveringMap:
    tree = spanning_tree_edges(graph)
    rank = graph.num_edges - graph.num_vertices + 1
    sheets = 1 << rank
    size = sheets * graph.num_vertices
    if size > max_cover_size:
        raise TooLarge("mod-2 homology cover", size, max_cover_size)
    flips = [0] * graph.num_darts
    bit = 0
    for edge, (a, b) in enumerate(graph.edges):
        if edge in tree:
            continue
        flips[a] = flips[b] = 1 << bit
        bit += 1
    vertex_of: list[int] = []
    theta: list[int] = []
    dart_map: list[int] = []
    for dart in graph.darts():
        for x in range(sheets):
            vertex_of.append(graph.vertex_of[dart] * sheets + x)
            theta.append(graph.theta[dart] * sheets + (x ^ flips[dart]))
            dart_map.append(dart)
    total = HalfEdgeGraph(
        num_vertices=size, vertex_of=tuple(vertex_of), theta=tuple(theta)
    )
    logger.info(
        "mod-2 homology cover of degree %d: %d vertices, %d edges",
        sheets,
        total.num_vertices,
        total.num_edges,
    )
    return CoveringMap(
        total=total, base=graph, dart_map=tuple(dart_map), voltages=tuple(flips)
    )


def homology_tower(
    base: HalfEdgeGraph, levels: int, *, max_cover_size: int = DEFAULT_MAX_COVER_SIZE
) -> list[CoveringMap]:
    """Iterated mod-2 homology covers; entry ``i`` covers the total graph of entry ``i - 1``."""
    steps: list[CoveringMap] = []
    graph = base
    for _ in range(levels):
        step = mod2_homology_cover(graph, max_cover_size=max_cover_size)
        steps.append(step)
        graph = step.total
    return steps


def collapse_tower(steps: Sequence[CoveringMap]) -> CoveringMap:
    """Compose a tower into one covering of its bottom graph."""
    if not steps:
        raise ValueError("empty tower")
    current = steps[0]
    for step in steps[1:]:
        current = compose_covers(step, current)
    return current


def lift_closed_walk(
    cover: CoveringMap, walk: Sequence[int], start: int
) -> tuple[int, ...]:
    """Lift a base walk starting at total vertex ``start``."""
    lifted: list[int] = []
    vertex = start
    for dart in walk:
        total_dart = cover.lift_dart(vertex, dart)
        lifted.append(total_dart)
        vertex = cover.total.head(total_dart)
    return tuple(lifted)


def _propagate(cover: CoveringMap, psi: Isomorphism, source: int, target: int) -> Isomorphism | None:
    total = cover.total
    vertex_map: list[int | None] = [None] * total.num_vertices
    dart_map: list[int | None] = [None] * total.num_darts
    vertex_map[source] = target
    queue = [source]
    for vertex in queue:
        image = vertex_map[vertex]
        assert image is not None
        for dart in total.star(vertex):
            wanted = psi.dart_map[cover.dart_map[dart]]
            mapped = cover.lift_dart(image, wanted)
            dart_map[dart] = mapped
            head = total.head(dart)
            head_image = total.head(mapped)
            if vertex_map[head] is None:
                vertex_map[head] = head_image
                queue.append(head)
            elif vertex_map[head] != head_image:
                return None
    if any(v is None for v in vertex_map):
        raise NotLiftable("total graph is disconnected; lifts are not determined by one vertex")
    candidate = Isomorphism(
        vertex_map=tuple(v for v in vertex_map if v is not None),
        dart_map=tuple(d for d in dart_map if d is not None),
    )
    return candidate if is_automorphism(total, candidate) else None


def lift_automorphism(cover: CoveringMap, psi: Isomorphism) -> Isomorphism:
    """Lift ``psi``; the basepoint (first vertex over base vertex 0) goes to the first fibre element that works."""
    base_vertex = cover.vertex_map[0]
    fiber = cover.fiber(psi.vertex_map[base_vertex])
    for target in fiber:
        lifted = _propagate(cover, psi, 0, target)
        if lifted is not None:
            return lifted
    raise NotLiftable("no lift of the base automorphism exists")


def deck_transformations(cover: CoveringMap) -> list[Isomorphism]:
    """Deck transformations, one per basepoint image that admits a lift of the identity."""
    identity = Isomorphism.identity(cover.base)
    found: list[Isomorphism] = []
    for target in cover.fiber(cover.vertex_map[0]):
        lifted = _propagate(cover, identity, 0, target)
        if lifted is not None:
            found.append(lifted)
    return found
