# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""Oriented maps as rotation systems.

``rotation[d]`` is the next dart counterclockwise around the vertex of ``d``.
Faces are the orbits of ``d -> rotation[theta[d]]``; a dart belongs to the face
on its left. Orientation-reversing map automorphisms conjugate the rotation to
its inverse.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from systoleforge.errors import ForgeError
from systoleforge.graphs.automorphisms import orbit_partition
from systoleforge.graphs.girth import girth_length
from systoleforge.graphs.halfedge import HalfEdgeGraph

logger = logging.getLogger(__name__)


class NotUniformType(ForgeError):
    def __init__(self, face_lengths: Sequence[int], valences: Sequence[int]) -> None:
        super().__init__(
            f"map is not uniform: face lengths {sorted(set(face_lengths))}, "
            f"valences {sorted(set(valences))}"
        )
        self.face_lengths = tuple(face_lengths)
        self.valences = tuple(valences)


def _cycles(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(perm)
    cycles: list[tuple[int, ...]] = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycle = []
        x = start
        while not seen[x]:
            seen[x] = True
            cycle.append(x)
            x = perm[x]
        cycles.append(tuple(cycle))
    return cycles


@dataclass(frozen=True)
class RotationMap:
    graph: HalfEdgeGraph
    rotation: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.rotation) != list(self.graph.darts()):
            raise ValueError("rotation must be a permutation of the darts")
        for cycle in _cycles(self.rotation):
            vertex = self.graph.vertex_of[cycle[0]]
            if len(cycle) != self.graph.valence(vertex) or any(
                self.graph.vertex_of[d] != vertex for d in cycle
            ):
                raise ValueError(f"rotation is not one cycle on the star of vertex {vertex}")

    @classmethod
    def from_permutations(
        cls, rotation: Sequence[int], theta: Sequence[int]
    ) -> "RotationMap":
        """Vertices are the rotation cycles, numbered by their smallest dart."""
        vertex_of = [0] * len(rotation)
        for index, cycle in enumerate(_cycles(rotation)):
            for dart in cycle:
                vertex_of[dart] = index
        graph = HalfEdgeGraph(
            num_vertices=len(_cycles(rotation)),
            vertex_of=tuple(vertex_of),
            theta=tuple(theta),
        )
        return cls(graph=graph, rotation=tuple(rotation))

    @classmethod
    def from_faces(cls, faces: Sequence[Sequence[int]]) -> "RotationMap":
        """Build a simple map from consistently oriented vertex cycles.

        Every edge ``u -> v`` of one face must appear as ``v -> u`` in another.
        Edges are numbered in order of first appearance.
        """
        dart_of: dict[tuple[int, int], int] = {}
        vertex_of: list[int] = []
        theta: list[int] = []
        for face in faces:
            for i, u in enumerate(face):
                v = face[(i + 1) % len(face)]
                if (u, v) in dart_of:
                    continue
                base = len(vertex_of)
                dart_of[(u, v)] = base
                dart_of[(v, u)] = base + 1
                vertex_of.extend((u, v))
                theta.extend((base + 1, base))
        face_next = [-1] * len(vertex_of)
        seen: set[tuple[int, int]] = set()
        for face in faces:
            k = len(face)
            for i in range(k):
                step = (face[i], face[(i + 1) % k])
                if step in seen:
                    raise ValueError(f"edge {step[0]}->{step[1]} lies on two faces in one direction")
                seen.add(step)
                following = (face[(i + 1) % k], face[(i + 2) % k])
                face_next[dart_of[step]] = dart_of[following]
        if len(seen) != len(vertex_of):
            raise ValueError("faces do not close up into a surface")
        rotation = tuple(face_next[theta[d]] for d in range(len(vertex_of)))
        graph = HalfEdgeGraph(
            num_vertices=max(vertex_of) + 1, vertex_of=tuple(vertex_of), theta=tuple(theta)
        )
        return cls(graph=graph, rotation=rotation)

    @cached_property
    def face_permutation(self) -> tuple[int, ...]:
        return tuple(self.rotation[self.graph.theta[d]] for d in self.graph.darts())

    @cached_property
    def inverse_rotation(self) -> tuple[int, ...]:
        inverse = [0] * len(self.rotation)
        for d, e in enumerate(self.rotation):
            inverse[e] = d
        return tuple(inverse)

    @cached_property
    def _faces(self) -> tuple[tuple[int, ...], ...]:
        return tuple(_cycles(self.face_permutation))

    def faces(self) -> tuple[tuple[int, ...], ...]:
        """Face dart cycles, ordered by and starting at their smallest dart."""
        return self._faces

    @cached_property
    def face_of(self) -> tuple[int, ...]:
        index = [0] * self.graph.num_darts
        for f, face in enumerate(self._faces):
            for dart in face:
                index[dart] = f
        return tuple(index)

    @property
    def num_faces(self) -> int:
        return len(self._faces)

    def euler_characteristic(self) -> int:
        return self.graph.num_vertices - self.graph.num_edges + self.num_faces

    def rotation_from(self, dart: int) -> tuple[int, ...]:
        """Star of the vertex of ``dart`` in counterclockwise order starting at ``dart``."""
        ordered = [dart]
        x = self.rotation[dart]
        while x != dart:
            ordered.append(x)
            x = self.rotation[x]
        return tuple(ordered)

    def mirror(self) -> "RotationMap":
        return RotationMap(graph=self.graph, rotation=self.inverse_rotation)


def dual(m: RotationMap) -> RotationMap:
    """The dual map: faces become vertices, darts keep their ids and pairing."""
    return RotationMap.from_permutations(m.face_permutation, m.graph.theta)


@dataclass(frozen=True)
class MapType:
    p: int
    q: int


def map_type(m: RotationMap) -> MapType:
    face_lengths = [len(face) for face in m.faces()]
    valences = [m.graph.valence(v) for v in m.graph.vertices()]
    if len(set(face_lengths)) != 1 or len(set(valences)) != 1:
        raise NotUniformType(face_lengths, valences)
    return MapType(p=face_lengths[0], q=valences[0])


def map_genus(m: RotationMap) -> int:
    chi = m.euler_characteristic()
    if chi % 2:
        raise ValueError(f"Euler characteristic {chi} is odd; graph is not connected")
    return (2 - chi) // 2


@dataclass(frozen=True)
class MapGirth:
    length: int
    p: int | None
    equals_p: bool


def map_girth(m: RotationMap) -> MapGirth:
    length = girth_length(m.graph)
    try:
        p: int | None = map_type(m).p
    except NotUniformType:
        p = None
    return MapGirth(length=length, p=p, equals_p=p == length)


@dataclass(frozen=True)
class MapAutomorphism:
    dart_map: tuple[int, ...]
    reversing: bool


def _extend_map_automorphism(
    m: RotationMap, source: int, target: int, reversing: bool
) -> MapAutomorphism | None:
    theta = m.graph.theta
    turn = m.inverse_rotation if reversing else m.rotation
    image: list[int | None] = [None] * m.graph.num_darts
    image[source] = target
    queue = [source]
    for dart in queue:
        mapped = image[dart]
        assert mapped is not None
        for nxt, nxt_image in (
            (m.rotation[dart], turn[mapped]),
            (theta[dart], theta[mapped]),
        ):
            if image[nxt] is None:
                image[nxt] = nxt_image
                queue.append(nxt)
            elif image[nxt] != nxt_image:
                return None
    if any(x is None for x in image):
        raise ValueError("map automorphisms are only computed for connected maps")
    dart_map = tuple(x for x in image if x is not None)
    if len(set(dart_map)) != len(dart_map):
        return None
    return MapAutomorphism(dart_map=dart_map, reversing=reversing)


def map_automorphisms(m: RotationMap) -> list[MapAutomorphism]:
    """All map automorphisms, orientation-reversing ones included.

    A map automorphism of a connected map is fixed by the image of one dart and
    whether it reverses orientation, so at most ``2 * |darts|`` candidates exist.
    """
    found: list[MapAutomorphism] = []
    for reversing in (False, True):
        for target in m.graph.darts():
            candidate = _extend_map_automorphism(m, 0, target, reversing)
            if candidate is not None:
                found.append(candidate)
    return found


@dataclass(frozen=True)
class Flag:
    """Vertex, edge and face incident in the map.

    ``side`` 0 takes the face on the left of ``dart``; side 1 the face on the
    left of its reverse.
    """

    vertex: int
    dart: int
    face: int
    side: int


def flags(m: RotationMap) -> list[Flag]:
    theta = m.graph.theta
    return [
        Flag(
            vertex=m.graph.vertex_of[d],
            dart=d,
            face=m.face_of[d] if side == 0 else m.face_of[theta[d]],
            side=side,
        )
        for d in m.graph.darts()
        for side in (0, 1)
    ]


@dataclass(frozen=True)
class FlagTransitivity:
    flag_transitive: bool
    orbit_count: int
    group_order: int


def is_flag_transitive(m: RotationMap) -> FlagTransitivity:
    automorphisms = map_automorphisms(m)
    size = 2 * m.graph.num_darts
    actions = []
    for auto in automorphisms:
        perm = [0] * size
        for dart in m.graph.darts():
            for side in (0, 1):
                new_side = 1 - side if auto.reversing else side
                perm[2 * dart + side] = 2 * auto.dart_map[dart] + new_side
        actions.append(perm)
    orbits = orbit_partition(size, actions)
    logger.debug(
        "map with %d darts: %d automorphisms, %d flag orbits",
        m.graph.num_darts,
        len(automorphisms),
        len(orbits),
    )
    return FlagTransitivity(
        flag_transitive=len(orbits) == 1,
        orbit_count=len(orbits),
        group_order=len(automorphisms),
    )
