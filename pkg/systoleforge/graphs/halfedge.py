# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""Half-edge (dart) multigraphs.

A graph is a set of darts ``0..n-1`` with a fixed-point-free involution
``theta`` pairing darts into edges and a map ``vertex_of`` sending each dart to
the vertex it starts at. Loops and parallel edges are ordinary edges, so the
two-vertex theta graph and one-vertex bouquets are representable.

Edges are numbered by their smaller dart, which makes ``from_edges`` number
edge ``i`` with darts ``2i`` (at the first endpoint) and ``2i + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx


@dataclass(frozen=True)
class HalfEdgeGraph:
    num_vertices: int
    vertex_of: tuple[int, ...]
    theta: tuple[int, ...]
    vertex_labels: tuple[int, ...] | None = None
    edge_labels: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        n = len(self.vertex_of)
        if len(self.theta) != n:
            raise ValueError("theta and vertex_of must cover the same darts")
        for dart, partner in enumerate(self.theta):
            if not 0 <= partner < n:
                raise ValueError(f"theta({dart}) = {partner} is not a dart")
            if partner == dart:
                raise ValueError(f"theta fixes dart {dart}; edges need two darts")
            if self.theta[partner] != dart:
                raise ValueError(f"theta is not an involution at dart {dart}")
        seen = [0] * self.num_vertices
        for dart, vertex in enumerate(self.vertex_of):
            if not 0 <= vertex < self.num_vertices:
                raise ValueError(f"dart {dart} starts at unknown vertex {vertex}")
            seen[vertex] += 1
        isolated = [v for v, count in enumerate(seen) if count == 0]
        if isolated:
            raise ValueError(f"vertices without darts: {isolated}")
        if self.vertex_labels is not None and len(self.vertex_labels) != self.num_vertices:
            raise ValueError("vertex_labels must have one entry per vertex")
        if self.edge_labels is not None and len(self.edge_labels) != n // 2:
            raise ValueError("edge_labels must have one entry per edge")

    @classmethod
    def from_edges(
        cls,
        num_vertices: int,
        edges: Iterable[tuple[int, int]],
        *,
        vertex_labels: Sequence[int] | None = None,
        edge_labels: Sequence[int] | None = None,
    ) -> "HalfEdgeGraph":
        vertex_of: list[int] = []
        theta: list[int] = []
        for u, v in edges:
            base = len(vertex_of)
            vertex_of.extend((u, v))
            theta.extend((base + 1, base))
        return cls(
            num_vertices=num_vertices,
            vertex_of=tuple(vertex_of),
            theta=tuple(theta),
            vertex_labels=tuple(vertex_labels) if vertex_labels is not None else None,
            edge_labels=tuple(edge_labels) if edge_labels is not None else None,
        )

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "HalfEdgeGraph":
        """Number nodes in sorted order; multigraph edges keep their multiplicity."""
        index = {node: i for i, node in enumerate(sorted(graph.nodes))}
        edges = sorted(
            (min(index[u], index[v]), max(index[u], index[v])) for u, v in graph.edges()
        )
        return cls.from_edges(len(index), edges)

    @property
    def num_darts(self) -> int:
        return len(self.vertex_of)

    @property
    def num_edges(self) -> int:
        return len(self.vertex_of) // 2

    def darts(self) -> range:
        return range(len(self.vertex_of))

    def vertices(self) -> range:
        return range(self.num_vertices)

    def head(self, dart: int) -> int:
        return self.vertex_of[self.theta[dart]]

    @cached_property
    def _stars(self) -> tuple[tuple[int, ...], ...]:
        stars: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for dart, vertex in enumerate(self.vertex_of):
            stars[vertex].append(dart)
        return tuple(tuple(star) for star in stars)

    def star(self, vertex: int) -> tuple[int, ...]:
        return self._stars[vertex]

    def valence(self, vertex: int) -> int:
        return len(self._stars[vertex])

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (dart, partner) for dart, partner in enumerate(self.theta) if dart < partner
        )

    @cached_property
    def _edge_of(self) -> tuple[int, ...]:
        index = [0] * self.num_darts
        for edge, (a, b) in enumerate(self.edges):
            index[a] = edge
            index[b] = edge
        return tuple(index)

    def edge_of(self, dart: int) -> int:
        return self._edge_of[dart]

    def endpoints(self, edge: int) -> tuple[int, int]:
        a, b = self.edges[edge]
        return self.vertex_of[a], self.vertex_of[b]

    def vertex_label(self, vertex: int) -> int:
        return 0 if self.vertex_labels is None else self.vertex_labels[vertex]

    def edge_label(self, edge: int) -> int:
        return 0 if self.edge_labels is None else self.edge_labels[edge]

    def dart_label(self, dart: int) -> int:
        return self.edge_label(self._edge_of[dart])

    def is_loop(self, dart: int) -> bool:
        return self.vertex_of[dart] == self.head(dart)

    def is_simple(self) -> bool:
        seen: set[tuple[int, int]] = set()
        for a, b in self.edges:
            u, v = self.vertex_of[a], self.vertex_of[b]
            if u == v:
                return False
            key = (min(u, v), max(u, v))
            if key in seen:
                return False
            seen.add(key)
        return True

    def with_labels(
        self,
        *,
        vertex_labels: Sequence[int] | None = None,
        edge_labels: Sequence[int] | None = None,
    ) -> "HalfEdgeGraph":
        return HalfEdgeGraph(
            num_vertices=self.num_vertices,
            vertex_of=self.vertex_of,
            theta=self.theta,
            vertex_labels=tuple(vertex_labels) if vertex_labels is not None else None,
            edge_labels=tuple(edge_labels) if edge_labels is not None else None,
        )

    def to_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.vertices())
        for edge, (a, b) in enumerate(self.edges):
            graph.add_edge(self.vertex_of[a], self.vertex_of[b], key=edge)
        return graph

    def is_connected(self) -> bool:
        return nx.is_connected(self.to_networkx())


def reverse_walk(graph: HalfEdgeGraph, darts: Sequence[int]) -> tuple[int, ...]:
    return tuple(graph.theta[d] for d in reversed(darts))


def is_closed_walk(graph: HalfEdgeGraph, darts: Sequence[int]) -> bool:
    if not darts:
        return False
    return all(
        graph.head(darts[i]) == graph.vertex_of[darts[(i + 1) % len(darts)]]
        for i in range(len(darts))
    )


def is_cyclically_reduced(graph: HalfEdgeGraph, darts: Sequence[int]) -> bool:
    k = len(darts)
    return all(darts[(i + 1) % k] != graph.theta[darts[i]] for i in range(k))


def _min_rotation(seq: tuple[int, ...]) -> tuple[int, ...]:
    return min(seq[i:] + seq[:i] for i in range(len(seq)))


@dataclass(frozen=True)
class Cycle:
    """A non-trivial closed walk, stored in canonical form.

    The canonical form is the lexicographically smallest rotation of either the
    walk or its reversal, so two cycles are equal exactly when they agree up to
    cyclic permutation and orientation.
    """

    darts: tuple[int, ...]

    @classmethod
    def from_walk(cls, graph: HalfEdgeGraph, darts: Sequence[int]) -> "Cycle":
        walk = tuple(darts)
        if not is_closed_walk(graph, walk):
            raise ValueError(f"darts {walk} do not form a closed walk")
        if not is_cyclically_reduced(graph, walk):
            raise ValueError(f"closed walk {walk} contains a backtrack")
        forward = _min_rotation(walk)
        backward = _min_rotation(reverse_walk(graph, walk))
        return cls(darts=min(forward, backward))

    def __len__(self) -> int:
        return len(self.darts)

    def vertices(self, graph: HalfEdgeGraph) -> tuple[int, ...]:
        return tuple(graph.vertex_of[d] for d in self.darts)

    def edges(self, graph: HalfEdgeGraph) -> tuple[int, ...]:
        return tuple(graph.edge_of(d) for d in self.darts)

    def consecutive_pairs(self, graph: HalfEdgeGraph) -> set[tuple[int, int]]:
        """Directed 2-paths along the cycle in both orientations."""
        pairs: set[tuple[int, int]] = set()
        for walk in (self.darts, reverse_walk(graph, self.darts)):
            k = len(walk)
            for i in range(k):
                pairs.add((walk[i], walk[(i + 1) % k]))
        return pairs


def theta_graph(d: int) -> HalfEdgeGraph:
    """Two vertices joined by ``d`` parallel edges."""
    if d < 1:
        raise ValueError("theta graph needs at least one edge")
    return HalfEdgeGraph.from_edges(2, [(0, 1)] * d)


def complete_graph(n: int) -> HalfEdgeGraph:
    return HalfEdgeGraph.from_edges(
        n, [(u, v) for u in range(n) for v in range(u + 1, n)]
    )


def cycle_graph(n: int) -> HalfEdgeGraph:
    return HalfEdgeGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def petersen_graph() -> HalfEdgeGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return HalfEdgeGraph.from_edges(10, outer + spokes + inner)


def bouquet(loops: int) -> HalfEdgeGraph:
    return HalfEdgeGraph.from_edges(1, [(0, 0)] * loops)
