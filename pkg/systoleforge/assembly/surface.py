# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""Closed surfaces glued from copies of a block.

Block copy ``x`` sits at vertex ``x`` of a gluing graph with orientation sign
``sigma(x)``. Tile ``(x, v)`` gets the flat index ``x * |V(M)| + v``. Copies
with sign -1 are mirrored: their side list is reversed and rotated so that
global side ``j`` is local side ``(2q - 2 - j) mod 2q``, which keeps every even
side blue. All tiles then share one counterclockwise orientation and one
metric polygon.

Red gluings identify boundary points by position. A gluing that preserves the
cyclic order of the points glues red sides start to start in the blocks' own
orientations and needs opposite signs; an order-reversing one glues start to
end and needs equal signs. Anything else cannot be oriented and raises
``NonOrientableGluing``.

The gluing graph must be connected, so the surface is; genus and systole
counts are stated for one closed surface.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import networkx as nx

from systoleforge.assembly.block import Block
from systoleforge.assembly.tiling import TileComplex
from systoleforge.covers.coloring import ColoredGluingGraph, check_coloring
from systoleforge.errors import ForgeError
from systoleforge.graphs.halfedge import HalfEdgeGraph
from systoleforge.hyperbolic.polygon import BLUE, RED

logger = logging.getLogger(__name__)


class ValenceMismatch(ForgeError):
    def __init__(self, vertex: int, valence: int, components: int) -> None:
        super().__init__(
            f"gluing vertex {vertex} has valence {valence} but the block has "
            f"{components} boundary components"
        )
        self.vertex = vertex
        self.valence = valence
        self.components = components


class NonOrientableGluing(ForgeError):
    def __init__(self, message: str, witness: object = None) -> None:
        super().__init__(message)
        self.witness = witness


class DisconnectedGluing(ForgeError):
    def __init__(self, components: int) -> None:
        super().__init__(f"gluing graph has {components} connected components; surfaces are glued from one")
        self.components = components


@dataclass(frozen=True)
class RedGluing:
    """Boundary ``first`` of one block copy glued to boundary ``second`` of another.

    Both ends are ``(block copy, component index)``; ``point_map[k]`` is the
    position on ``second`` that point ``k`` of ``first`` lands on.
    """

    first: tuple[int, int]
    second: tuple[int, int]
    point_map: tuple[int, ...]
    reverse: bool = False

    def __post_init__(self) -> None:
        p = len(self.point_map)
        if sorted(self.point_map) != list(range(p)):
            raise ValueError(f"point map {self.point_map} is not a permutation")
        step = -1 if self.reverse else 1
        for k in range(p):
            if self.point_map[(k + 1) % p] != (self.point_map[k] + step) % p:
                raise ValueError(
                    f"point map {self.point_map} does not "
                    f"{'reverse' if self.reverse else 'preserve'} the cyclic order"
                )


@dataclass(frozen=True)
class Tile:
    block: int
    vertex: int


@dataclass(frozen=True, eq=False)
class AssembledSurface:
    block: Block
    graph: HalfEdgeGraph
    signs: tuple[int, ...]
    red_gluings: tuple[RedGluing, ...]
    complex: TileComplex
    coloring: ColoredGluingGraph | None = None
    trusted: bool = False

    @property
    def p(self) -> int:
        return self.block.p

    @property
    def q(self) -> int:
        return self.block.q

    @property
    def num_tiles(self) -> int:
        return self.complex.num_tiles

    def tile(self, index: int) -> Tile:
        x, v = divmod(index, self.block.num_tiles)
        return Tile(block=x, vertex=v)

    def tile_index(self, block: int, vertex: int) -> int:
        return block * self.block.num_tiles + vertex

    def local_side(self, side: int) -> int:
        """Index of a global side within its tile's block-local side list."""
        tile, j = self.complex.split(side)
        return _local_index(self.signs[self.tile(tile).block], j, self.q)

    def side_dart(self, side: int) -> int:
        """The map dart labelling a global side."""
        tile = self.tile(self.complex.split(side)[0])
        return self.block.tile_sides(tile.vertex)[self.local_side(side)].dart

    @cached_property
    def red_gluing_of(self) -> dict[tuple[int, int], int]:
        index = {}
        for i, gluing in enumerate(self.red_gluings):
            index[gluing.first] = i
            index[gluing.second] = i
        return index


def _local_index(sign: int, j: int, q: int) -> int:
    n = 2 * q
    return j % n if sign > 0 else (n - 2 - j) % n


def _global_side(
    block: Block, signs: Sequence[int], x: int, color: str, dart: int
) -> tuple[int, bool]:
    """Flat side index and whether the block-local start is the global start."""
    q = block.q
    vertex = block.map.graph.vertex_of[dart]
    local = block.side_index(color, dart)
    # the local/global index map is an involution
    j = _local_index(signs[x], local, q)
    return (x * block.num_tiles + vertex) * 2 * q + j, signs[x] > 0


def _orientable_pair(
    a: tuple[int, bool], b: tuple[int, bool], local_start_to_end: bool, witness: object
) -> tuple[int, int]:
    side_a, a_start_is_start = a
    side_b, b_start_is_start = b
    # where the local start of side a lands on side b, in global terms
    lands_on_start = b_start_is_start != local_start_to_end
    if a_start_is_start == lands_on_start:
        raise NonOrientableGluing(
            f"sides {side_a} and {side_b} would be glued start to start", witness
        )
    return side_a, side_b


def _build_complex(
    block: Block, graph: HalfEdgeGraph, signs: Sequence[int], red_gluings: Sequence[RedGluing]
) -> TileComplex:
    m = block.map.graph
    pairs: list[tuple[int, int]] = []
    for x in graph.vertices():
        for d, e in m.edges:
            pairs.append(
                _orientable_pair(
                    _global_side(block, signs, x, BLUE, d),
                    _global_side(block, signs, x, BLUE, e),
                    True,
                    ("blue", x, d),
                )
            )
    glued: set[tuple[int, int]] = set()
    for gluing in red_gluings:
        for end in (gluing.first, gluing.second):
            if end in glued:
                raise ValueError(f"boundary {end} is glued twice")
            glued.add(end)
        (x, i), (y, j) = gluing.first, gluing.second
        source, target = block.components[i], block.components[j]
        p = len(source)
        if len(gluing.point_map) != p or len(target) != p:
            raise ValueError(f"gluing {gluing.first}->{gluing.second} has the wrong length")
        for k, dart in enumerate(source.darts):
            if gluing.reverse:
                other = target.darts[gluing.point_map[(k + 1) % p]]
            else:
                other = target.darts[gluing.point_map[k]]
            pairs.append(
                _orientable_pair(
                    _global_side(block, signs, x, RED, dart),
                    _global_side(block, signs, y, RED, other),
                    gluing.reverse,
                    ("red", gluing.first, gluing.second, k),
                )
            )
    expected = {(x, c.index) for x in graph.vertices() for c in block.components}
    if glued != expected:
        missing = sorted(expected - glued)
        raise ValueError(f"boundary components left open: {missing[:5]}")
    tiles = graph.num_vertices * block.num_tiles
    return TileComplex.from_pairs(block.q, tiles, pairs)


def assemble_bespoke(
    block: Block,
    graph: HalfEdgeGraph,
    signs: Sequence[int],
    red_gluings: Sequence[RedGluing],
    *,
    trusted: bool = True,
    coloring: ColoredGluingGraph | None = None,
) -> AssembledSurface:
    """Glue block copies along explicitly given boundary identifications."""
    if len(signs) != graph.num_vertices or any(s not in (-1, 1) for s in signs):
        raise ValueError("one sign of +1 or -1 is needed per gluing vertex")
    components = nx.number_connected_components(graph.to_networkx())
    if components != 1:
        raise DisconnectedGluing(components)
    complex_ = _build_complex(block, graph, signs, red_gluings)
    bad = complex_.bad_vertices()
    if bad:
        raise NonOrientableGluing(
            f"tiling vertex with {len(bad[0])} corners instead of 4", bad[0]
        )
    surface = AssembledSurface(
        block=block,
        graph=graph,
        signs=tuple(signs),
        red_gluings=tuple(red_gluings),
        complex=complex_,
        coloring=coloring,
        trusted=trusted,
    )
    logger.info(
        "assembled %d block copies into %d tiles, genus %d",
        graph.num_vertices,
        complex_.num_tiles,
        genus(surface),
    )
    return surface


def assemble(block: Block, gluing: ColoredGluingGraph) -> AssembledSurface:
    """Glue boundary ``j`` of ``B_u`` to boundary ``j`` of ``B_v`` by the identity along each edge of colour ``j``."""
    graph = gluing.graph
    for v in graph.vertices():
        if graph.valence(v) != block.num_components:
            raise ValenceMismatch(v, graph.valence(v), block.num_components)
    check_coloring(graph, gluing.vertex_sign, gluing.edge_color)
    gluings = []
    for edge, (a, b) in enumerate(graph.edges):
        component = gluing.edge_color[edge] - 1
        if not 0 <= component < block.num_components:
            raise ValenceMismatch(graph.vertex_of[a], gluing.edge_color[edge], block.num_components)
        p = len(block.components[component])
        gluings.append(
            RedGluing(
                first=(graph.vertex_of[a], component),
                second=(graph.vertex_of[b], component),
                point_map=tuple(range(p)),
            )
        )
    return assemble_bespoke(
        block, graph, gluing.vertex_sign, gluings, trusted=False, coloring=gluing
    )


def genus(x: AssembledSurface) -> int:
    chi = x.complex.quad_euler().characteristic
    if chi % 2:
        raise ValueError(f"odd Euler characteristic {chi}")
    return (2 * x.complex.tile_components - chi) // 2


def closed_form_genus(x: AssembledSurface) -> int:
    value = 1 + Fraction(x.graph.num_vertices * x.block.num_tiles * (x.q - 2), 4)
    if value.denominator != 1:
        raise ValueError(f"closed-form genus {value} is not an integer")
    return int(value)


@dataclass(frozen=True)
class SurfaceSummary:
    p: int
    q: int
    genus: int
    closed_form_genus: int
    tiles: int
    tiling_edges: int
    tiling_vertices: int
    blocks: int
    red_gluings: int
    connected: bool


def surface_summary(x: AssembledSurface) -> SurfaceSummary:
    euler = x.complex.polygon_euler()
    return SurfaceSummary(
        p=x.p,
        q=x.q,
        genus=genus(x),
        closed_form_genus=closed_form_genus(x),
        tiles=euler.faces,
        tiling_edges=euler.edges,
        tiling_vertices=euler.vertices,
        blocks=x.graph.num_vertices,
        red_gluings=len(x.red_gluings),
        connected=x.complex.tile_components == 1,
    )
