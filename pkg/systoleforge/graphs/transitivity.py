# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""Vertex transitivity, local symmetry and isotropy."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from systoleforge.graphs.automorphisms import Isomorphism, find_automorphism, orbit
from systoleforge.graphs.halfedge import HalfEdgeGraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StarInjection:
    """An injection ``star(source) -> star(target)`` given as dart pairs."""

    source: int
    target: int
    pairs: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class IsotropyVerdict:
    isotropic: bool
    failing_injection: StarInjection | None = None


def vertex_orbit(
    graph: HalfEdgeGraph, vertex: int = 0, *, respect_labels: bool = False
) -> tuple[set[int], list[Isomorphism]]:
    """Orbit of ``vertex`` and the automorphisms that were found to reach it."""
    found: list[Isomorphism] = []
    reached = {vertex}
    for other in graph.vertices():
        if other in reached:
            continue
        iso = find_automorphism(graph, respect_labels=respect_labels, fixed=[(vertex, other)])
        if iso is not None:
            found.append(iso)
            reached = orbit({vertex}, [g.vertex_map for g in found])
    return reached, found


def is_vertex_transitive(graph: HalfEdgeGraph, *, respect_labels: bool = False) -> bool:
    reached, _ = vertex_orbit(graph, 0, respect_labels=respect_labels)
    return len(reached) == graph.num_vertices


def extend_star_map(
    graph: HalfEdgeGraph, source: int, target: int, pairs: dict[int, int]
) -> Isomorphism | None:
    return find_automorphism(graph, fixed=[(source, target)], prescribed_darts=pairs)


def _positional_injection(graph: HalfEdgeGraph, u: int, v: int) -> StarInjection:
    if graph.valence(u) > graph.valence(v):
        u, v = v, u
    return StarInjection(source=u, target=v, pairs=tuple(zip(graph.star(u), graph.star(v))))


def local_symmetry_failure(graph: HalfEdgeGraph, vertex: int) -> StarInjection | None:
    """First adjacent transposition of ``star(vertex)`` that no automorphism realizes.

    Adjacent transpositions generate the symmetric group of the star, so the
    vertex is locally symmetric exactly when this returns ``None``.
    """
    star = graph.star(vertex)
    for i in range(len(star) - 1):
        image = list(star)
        image[i], image[i + 1] = image[i + 1], image[i]
        pairs = dict(zip(star, image))
        if extend_star_map(graph, vertex, vertex, pairs) is None:
            return StarInjection(source=vertex, target=vertex, pairs=tuple(sorted(pairs.items())))
    return None


def is_isotropic(graph: HalfEdgeGraph) -> IsotropyVerdict:
    """Vertex transitivity plus local symmetry at vertex 0."""
    reached, _ = vertex_orbit(graph, 0)
    missing = [v for v in graph.vertices() if v not in reached]
    if missing:
        logger.debug("vertex %d is outside the orbit of vertex 0", missing[0])
        return IsotropyVerdict(
            isotropic=False, failing_injection=_positional_injection(graph, 0, missing[0])
        )
    failure = local_symmetry_failure(graph, 0)
    if failure is not None:
        logger.debug("star permutation %s does not extend", failure.pairs)
        return IsotropyVerdict(isotropic=False, failing_injection=failure)
    return IsotropyVerdict(isotropic=True)
