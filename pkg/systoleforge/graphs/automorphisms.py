# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""Automorphisms and isomorphisms of half-edge graphs.

The search individualizes one vertex at a time and refines both colourings in
lockstep until they are stable; a discrete colouring is accepted once a dart
bijection compatible with it exists. Parallel edges and loops are handled at the
dart level only: the group of automorphisms fixing every vertex is a product of
symmetric groups (and sign flips for loops) and is accounted for in closed form.
"""

from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from systoleforge.graphs.halfedge import HalfEdgeGraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Isomorphism:
    """Vertex and dart bijections between two graphs (an automorphism when both are the same)."""

    vertex_map: tuple[int, ...]
    dart_map: tuple[int, ...]

    def compose(self, inner: "Isomorphism") -> "Isomorphism":
        """``self`` after ``inner``."""
        return Isomorphism(
            vertex_map=tuple(self.vertex_map[v] for v in inner.vertex_map),
            dart_map=tuple(self.dart_map[d] for d in inner.dart_map),
        )

    def inverse(self) -> "Isomorphism":
        vertex_map = [0] * len(self.vertex_map)
        for v, w in enumerate(self.vertex_map):
            vertex_map[w] = v
        dart_map = [0] * len(self.dart_map)
        for d, e in enumerate(self.dart_map):
            dart_map[e] = d
        return Isomorphism(vertex_map=tuple(vertex_map), dart_map=tuple(dart_map))

    def is_identity(self) -> bool:
        return all(v == w for v, w in enumerate(self.vertex_map)) and all(
            d == e for d, e in enumerate(self.dart_map)
        )

    @classmethod
    def identity(cls, graph: HalfEdgeGraph) -> "Isomorphism":
        return cls(vertex_map=tuple(graph.vertices()), dart_map=tuple(graph.darts()))


def is_isomorphism(
    source: HalfEdgeGraph,
    target: HalfEdgeGraph,
    iso: Isomorphism,
    *,
    respect_labels: bool = False,
) -> bool:
    if len(iso.dart_map) != source.num_darts or len(iso.vertex_map) != source.num_vertices:
        return False
    if sorted(iso.dart_map) != list(target.darts()):
        return False
    if sorted(iso.vertex_map) != list(target.vertices()):
        return False
    for dart in source.darts():
        image = iso.dart_map[dart]
        if iso.dart_map[source.theta[dart]] != target.theta[image]:
            return False
        if iso.vertex_map[source.vertex_of[dart]] != target.vertex_of[image]:
            return False
        if respect_labels and source.dart_label(dart) != target.dart_label(image):
            return False
    if respect_labels:
        return all(
            source.vertex_label(v) == target.vertex_label(iso.vertex_map[v])
            for v in source.vertices()
        )
    return True


def is_automorphism(
    graph: HalfEdgeGraph, iso: Isomorphism, *, respect_labels: bool = False
) -> bool:
    return is_isomorphism(graph, graph, iso, respect_labels=respect_labels)


Colouring = list[int]


class _IsomorphismSearch:
    def __init__(
        self,
        source: HalfEdgeGraph,
        target: HalfEdgeGraph,
        *,
        respect_labels: bool,
        prescribed_darts: Mapping[int, int],
    ) -> None:
        self.source = source
        self.target = target
        self.respect_labels = respect_labels
        self.prescribed_darts = dict(prescribed_darts)
        self.nodes = 0

    def _dart_label(self, graph: HalfEdgeGraph, dart: int) -> int:
        return graph.dart_label(dart) if self.respect_labels else 0

    def initial_colours(self) -> tuple[Colouring, Colouring] | None:
        def key(graph: HalfEdgeGraph, v: int) -> tuple[int, int]:
            label = graph.vertex_label(v) if self.respect_labels else 0
            return (label, graph.valence(v))

        keys_a = [key(self.source, v) for v in self.source.vertices()]
        keys_b = [key(self.target, v) for v in self.target.vertices()]
        if sorted(keys_a) != sorted(keys_b):
            return None
        index = {k: i for i, k in enumerate(sorted(set(keys_a)))}
        return [index[k] for k in keys_a], [index[k] for k in keys_b]

    def _signatures(self, graph: HalfEdgeGraph, colours: Colouring) -> list[tuple]:
        return [
            (
                colours[v],
                tuple(
                    sorted(
                        (colours[graph.head(d)], self._dart_label(graph, d))
                        for d in graph.star(v)
                    )
                ),
            )
            for v in graph.vertices()
        ]

    def refine(
        self, colours_a: Colouring, colours_b: Colouring
    ) -> tuple[Colouring, Colouring] | None:
        while True:
            count = len(set(colours_a))
            sig_a = self._signatures(self.source, colours_a)
            sig_b = self._signatures(self.target, colours_b)
            if sorted(sig_a) != sorted(sig_b):
                return None
            index = {s: i for i, s in enumerate(sorted(set(sig_a)))}
            colours_a = [index[s] for s in sig_a]
            colours_b = [index[s] for s in sig_b]
            if len(index) == count:
                return colours_a, colours_b

    @staticmethod
    def individualize(
        colours_a: Colouring, colours_b: Colouring, x: int, y: int
    ) -> tuple[Colouring, Colouring] | None:
        if colours_a[x] != colours_b[y]:
            return None
        fresh = max(colours_a) + 1
        colours_a = list(colours_a)
        colours_b = list(colours_b)
        colours_a[x] = fresh
        colours_b[y] = fresh
        return colours_a, colours_b

    def seeded(
        self, pairs: Iterable[tuple[int, int]]
    ) -> tuple[Colouring, Colouring] | None:
        start = self.initial_colours()
        if start is None:
            return None
        colours_a, colours_b = start
        forward: dict[int, int] = {}
        backward: dict[int, int] = {}
        for x, y in pairs:
            if forward.get(x, y) != y or backward.get(y, x) != x:
                return None
            if x in forward:
                continue
            forward[x] = y
            backward[y] = x
            step = self.individualize(colours_a, colours_b, x, y)
            if step is None:
                return None
            colours_a, colours_b = step
        return colours_a, colours_b

    def search(self, colours_a: Colouring, colours_b: Colouring) -> Isomorphism | None:
        self.nodes += 1
        refined = self.refine(colours_a, colours_b)
        if refined is None:
            return None
        colours_a, colours_b = refined
        cells_a: dict[int, list[int]] = defaultdict(list)
        cells_b: dict[int, list[int]] = defaultdict(list)
        for v, c in enumerate(colours_a):
            cells_a[c].append(v)
        for v, c in enumerate(colours_b):
            cells_b[c].append(v)
        if len(cells_a) == self.source.num_vertices:
            vertex_map = tuple(cells_b[colours_a[v]][0] for v in self.source.vertices())
            return self._complete(vertex_map)
        colour = min(
            (c for c, cell in cells_a.items() if len(cell) > 1),
            key=lambda c: (len(cells_a[c]), c),
        )
        x = cells_a[colour][0]
        for y in cells_b[colour]:
            step = self.individualize(colours_a, colours_b, x, y)
            if step is None:
                continue
            found = self.search(*step)
            if found is not None:
                return found
        return None

    def _complete(self, vertex_map: tuple[int, ...]) -> Isomorphism | None:
        """Extend a vertex bijection to darts, honouring prescribed dart images."""
        source, target = self.source, self.target
        pools: dict[tuple[int, int, int], list[int]] = defaultdict(list)
        for dart in target.darts():
            key = (target.vertex_of[dart], target.head(dart), self._dart_label(target, dart))
            pools[key].append(dart)
        dart_map: list[int | None] = [None] * source.num_darts
        used = [False] * target.num_darts

        def assign(a: int, b: int) -> bool:
            if dart_map[a] is not None:
                return dart_map[a] == b
            if used[b] or used[target.theta[b]]:
                return False
            if target.vertex_of[b] != vertex_map[source.vertex_of[a]]:
                return False
            if target.head(b) != vertex_map[source.head(a)]:
                return False
            if self._dart_label(target, b) != self._dart_label(source, a):
                return False
            dart_map[a] = b
            dart_map[source.theta[a]] = target.theta[b]
            used[b] = True
            used[target.theta[b]] = True
            return True

        for a, b in sorted(self.prescribed_darts.items()):
            if not assign(a, b):
                return None
        for a in source.darts():
            if dart_map[a] is not None:
                continue
            key = (
                vertex_map[source.vertex_of[a]],
                vertex_map[source.head(a)],
                self._dart_label(source, a),
            )
            candidate = next((b for b in pools.get(key, ()) if not used[b]), None)
            if candidate is None or not assign(a, candidate):
                return None
        return Isomorphism(
            vertex_map=vertex_map, dart_map=tuple(d for d in dart_map if d is not None)
        )

    def run(self, pairs: Iterable[tuple[int, int]]) -> Isomorphism | None:
        implied = list(pairs)
        for a, b in sorted(self.prescribed_darts.items()):
            implied.append((self.source.vertex_of[a], self.target.vertex_of[b]))
            implied.append((self.source.head(a), self.target.head(b)))
        start = self.seeded(implied)
        if start is None:
            return None
        return self.search(*start)


def find_isomorphism(
    source: HalfEdgeGraph,
    target: HalfEdgeGraph,
    *,
    respect_labels: bool = False,
    fixed: Sequence[tuple[int, int]] = (),
    prescribed_darts: Mapping[int, int] | None = None,
) -> Isomorphism | None:
    """Find an isomorphism ``source -> target`` sending each ``fixed`` vertex pair and prescribed dart as given."""
    if (
        source.num_vertices != target.num_vertices
        or source.num_darts != target.num_darts
    ):
        return None
    search = _IsomorphismSearch(
        source,
        target,
        respect_labels=respect_labels,
        prescribed_darts=prescribed_darts or {},
    )
    found = search.run(fixed)
    logger.debug(
        "isomorphism search on %d vertices visited %d nodes (%s)",
        source.num_vertices,
        search.nodes,
        "found" if found is not None else "none",
    )
    return found


def find_automorphism(
    graph: HalfEdgeGraph,
    *,
    respect_labels: bool = False,
    fixed: Sequence[tuple[int, int]] = (),
    prescribed_darts: Mapping[int, int] | None = None,
) -> Isomorphism | None:
    return find_isomorphism(
        graph,
        graph,
        respect_labels=respect_labels,
        fixed=fixed,
        prescribed_darts=prescribed_darts,
    )


def orbit(start: Iterable[int], maps: Sequence[Sequence[int]]) -> set[int]:
    """Closure of ``start`` under a list of point maps."""
    seen = set(start)
    frontier = list(seen)
    while frontier:
        point = frontier.pop()
        for perm in maps:
            image = perm[point]
            if image not in seen:
                seen.add(image)
                frontier.append(image)
    return seen


def orbit_partition(size: int, maps: Sequence[Sequence[int]]) -> list[list[int]]:
    remaining = set(range(size))
    orbits: list[list[int]] = []
    for point in range(size):
        if point not in remaining:
            continue
        members = orbit([point], maps)
        remaining -= members
        orbits.append(sorted(members))
    return orbits


@dataclass(frozen=True)
class AutomorphismGroup:
    generators: tuple[Isomorphism, ...]
    order: int

    def vertex_orbits(self, graph: HalfEdgeGraph) -> list[list[int]]:
        return orbit_partition(graph.num_vertices, [g.vertex_map for g in self.generators])

    def dart_orbits(self, graph: HalfEdgeGraph) -> list[list[int]]:
        return orbit_partition(graph.num_darts, [g.dart_map for g in self.generators])


def _vertex_fixing_generators(
    graph: HalfEdgeGraph, respect_labels: bool
) -> tuple[list[Isomorphism], int]:
    """Generators and order of the automorphisms that fix every vertex."""
    classes: dict[tuple[int, int, int], list[int]] = defaultdict(list)
    for a, b in graph.edges:
        u, v = graph.vertex_of[a], graph.vertex_of[b]
        label = graph.dart_label(a) if respect_labels else 0
        # orient every dart list from the smaller endpoint
        classes[(min(u, v), max(u, v), label)].append(a if u <= v else b)
    identity = list(graph.darts())
    vertices = tuple(graph.vertices())
    generators: list[Isomorphism] = []
    order = 1
    theta = graph.theta
    for (u, v, _), darts in sorted(classes.items()):
        darts.sort()
        order *= math.factorial(len(darts))
        if u == v:
            order *= 2 ** len(darts)
            for a in darts:
                perm = list(identity)
                perm[a], perm[theta[a]] = theta[a], a
                generators.append(Isomorphism(vertices, tuple(perm)))
        for a, b in zip(darts, darts[1:]):
            perm = list(identity)
            perm[a], perm[b] = b, a
            perm[theta[a]], perm[theta[b]] = theta[b], theta[a]
            generators.append(Isomorphism(vertices, tuple(perm)))
    return generators, order


def automorphism_group(
    graph: HalfEdgeGraph, *, respect_labels: bool = False
) -> AutomorphismGroup:
    """Exact order and a generating set of the dart-level automorphism group.

    The vertex action is handled with a stabilizer chain: at each level the
    orbit of a base vertex under the pointwise stabilizer of the earlier base
    vertices is grown from the automorphisms found so far, and every cell
    member still outside it is tested directly.
    """
    search = _IsomorphismSearch(
        graph, graph, respect_labels=respect_labels, prescribed_darts={}
    )
    base: list[tuple[int, int]] = []
    found: list[Isomorphism] = []
    order = 1
    while True:
        seeded = search.seeded(base)
        refined = search.refine(*seeded) if seeded is not None else None
        if refined is None:
            raise RuntimeError("refinement of a graph against itself cannot fail")
        colours, _ = refined
        cells: dict[int, list[int]] = defaultdict(list)
        for v, c in enumerate(colours):
            cells[c].append(v)
        open_cells = [cell for cell in cells.values() if len(cell) > 1]
        if not open_cells:
            break
        cell = min(open_cells, key=lambda members: (len(members), members[0]))
        x = cell[0]
        level: list[Isomorphism] = []
        reached = {x}
        for y in cell:
            if y in reached:
                continue
            iso = find_isomorphism(
                graph, graph, respect_labels=respect_labels, fixed=base + [(x, y)]
            )
            if iso is not None:
                level.append(iso)
                reached = orbit({x}, [g.vertex_map for g in level])
        logger.debug("base vertex %d has stabilizer orbit of size %d", x, len(reached))
        order *= len(reached)
        found.extend(level)
        base.append((x, x))
    kernel, kernel_order = _vertex_fixing_generators(graph, respect_labels)
    generators = sorted(found + kernel, key=lambda g: (g.vertex_map, g.dart_map))
    logger.debug(
        "automorphism group of order %d with %d generators", order * kernel_order, len(generators)
    )
    return AutomorphismGroup(generators=tuple(generators), order=order * kernel_order)
