# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""Girth, girth cycles and strict polygonality."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass

from systoleforge.errors import ForgeError
from systoleforge.graphs.halfedge import Cycle, HalfEdgeGraph

logger = logging.getLogger(__name__)

DEFAULT_MAX_GIRTH = 64


class NoCycle(ForgeError):
    """The graph is a forest."""


class GirthTooLarge(ForgeError):
    def __init__(self, length: int, cap: int) -> None:
        super().__init__(f"girth {length} exceeds the enumeration cap {cap}")
        self.length = length
        self.cap = cap


def girth_length(graph: HalfEdgeGraph) -> int:
    """Length of the shortest non-trivial cycle, by breadth-first search from every vertex."""
    best: int | None = None
    theta = graph.theta
    for root in graph.vertices():
        dist: list[int | None] = [None] * graph.num_vertices
        arrival: list[int | None] = [None] * graph.num_vertices
        dist[root] = 0
        queue = [root]
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            dx = dist[x]
            assert dx is not None
            if best is not None and 2 * dx + 1 >= best:
                break
            back = arrival[x]
            for dart in graph.star(x):
                if back is not None and dart == theta[back]:
                    continue
                y = graph.head(dart)
                dy = dist[y]
                if dy is None:
                    dist[y] = dx + 1
                    arrival[y] = dart
                    queue.append(y)
                else:
                    candidate = dx + dy + 1
                    if best is None or candidate < best:
                        best = candidate
    if best is None:
        raise NoCycle("graph has no cycles")
    return best


def embedded_cycles(
    graph: HalfEdgeGraph, max_length: int, *, exact: bool = False
) -> list[Cycle]:
    """All embedded cycles of length at most ``max_length`` (or exactly, with ``exact``).

    Each cycle is grown from its smallest vertex through larger vertices only,
    so the search visits every cycle in its two orientations and nothing else.
    """
    theta = graph.theta
    found: set[Cycle] = set()

    def keep(walk: tuple[int, ...]) -> None:
        if not exact or len(walk) == max_length:
            found.add(Cycle.from_walk(graph, walk))

    for start in graph.vertices():

        def extend(path: list[int], visited: set[int]) -> None:
            last = path[-1]
            x = graph.head(last)
            for dart in graph.star(x):
                if dart == theta[last]:
                    continue
                y = graph.head(dart)
                if y == start:
                    if dart != theta[path[0]] and len(path) + 1 <= max_length:
                        keep(tuple(path) + (dart,))
                    continue
                if y < start or y in visited or len(path) + 1 >= max_length:
                    continue
                path.append(dart)
                visited.add(y)
                extend(path, visited)
                visited.discard(y)
                path.pop()

        for first in graph.star(start):
            y = graph.head(first)
            if y == start:
                keep((first,))
            elif y > start and max_length >= 2:
                extend([first], {y})
    return sorted(found, key=lambda cycle: (len(cycle), cycle.darts))


@dataclass(frozen=True)
class GirthResult:
    length: int
    witnesses: tuple[Cycle, ...]


def girth(graph: HalfEdgeGraph, *, max_length: int = DEFAULT_MAX_GIRTH) -> GirthResult:
    length = girth_length(graph)
    if length > max_length:
        raise GirthTooLarge(length, max_length)
    witnesses = tuple(embedded_cycles(graph, length, exact=True))
    logger.debug(
        "girth %d with %d girth cycles on %d vertices",
        length,
        len(witnesses),
        graph.num_vertices,
    )
    return GirthResult(length=length, witnesses=witnesses)


def canonical_two_path(graph: HalfEdgeGraph, first: int, second: int) -> tuple[int, int]:
    theta = graph.theta
    return min((first, second), (theta[second], theta[first]))


def embedded_two_paths(graph: HalfEdgeGraph) -> list[tuple[int, int]]:
    """Backtrack-free paths of two distinct non-loop edges, up to reversal.

    Both endpoints may coincide, as in the theta graph where every pair of
    parallel edges forms such a path through either vertex.
    """
    theta = graph.theta
    paths: set[tuple[int, int]] = set()
    for middle in graph.vertices():
        star = [d for d in graph.star(middle) if not graph.is_loop(d)]
        for a in star:
            for b in star:
                if graph.edge_of(a) == graph.edge_of(b):
                    continue
                paths.add(canonical_two_path(graph, theta[a], b))
    return sorted(paths)


def cycle_two_paths(graph: HalfEdgeGraph, cycle: Cycle) -> set[tuple[int, int]]:
    walk = cycle.darts
    k = len(walk)
    paths: set[tuple[int, int]] = set()
    for i in range(k):
        first, second = walk[i], walk[(i + 1) % k]
        if graph.edge_of(first) == graph.edge_of(second):
            continue
        paths.add(canonical_two_path(graph, first, second))
    return paths


@dataclass(frozen=True)
class PolygonalityVerdict:
    strict: bool
    witness: tuple[int, int] | None = None
    count: int | None = None


def is_strict_polygonal(
    graph: HalfEdgeGraph, girth_result: GirthResult | None = None
) -> PolygonalityVerdict:
    """Check that every embedded 2-path lies in exactly one girth cycle."""
    result = girth_result if girth_result is not None else girth(graph)
    counts: Counter[tuple[int, int]] = Counter()
    for cycle in result.witnesses:
        counts.update(cycle_two_paths(graph, cycle))
    for path in embedded_two_paths(graph):
        if counts[path] != 1:
            logger.debug("2-path %s lies in %d girth cycles", path, counts[path])
            return PolygonalityVerdict(strict=False, witness=path, count=counts[path])
    return PolygonalityVerdict(strict=True)
