# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""Named example surfaces and how to parse their identifiers.

Identifiers look like ``chain(2)``, ``k5``, ``beachball_theta(3)``,
``cube_cover`` or ``doubled_theta_tower(3, 2)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources

from systoleforge.assembly.block import build_block
from systoleforge.assembly.k5 import search_k5_gluings
from systoleforge.assembly.surface import AssembledSurface, assemble
from systoleforge.covers.coloring import ColoredGluingGraph, make_colored_gluing_graph
from systoleforge.covers.homology import (
    DEFAULT_MAX_COVER_SIZE,
    collapse_tower,
    homology_tower,
    identity_cover,
)
from systoleforge.graphs.halfedge import theta_graph
from systoleforge.maps.catalog import UnknownName, beach_ball, cube, theta_map
from systoleforge.storage.documents import MatrixDocument

_IDENTIFIER = re.compile(r"^\s*([a-z_0-9]+)\s*(?:\(([\d,\s]*)\))?\s*$")

EXAMPLES = ("chain", "k5", "beachball_theta", "cube_cover", "doubled_theta_tower")


@dataclass(frozen=True)
class ExampleName:
    family: str
    args: tuple[int, ...]

    def __str__(self) -> str:
        if not self.args:
            return self.family
        return f"{self.family}({', '.join(str(a) for a in self.args)})"


def parse_example(text: str) -> ExampleName:
    match = _IDENTIFIER.match(text)
    if match is None:
        raise UnknownName(text)
    family, raw = match.group(1), match.group(2)
    if family not in EXAMPLES:
        raise UnknownName(family)
    args = tuple(int(part) for part in raw.split(",") if part.strip()) if raw else ()
    expected = {"chain": 1, "k5": 0, "beachball_theta": 1, "cube_cover": 0, "doubled_theta_tower": 2}
    if len(args) != expected[family]:
        raise ValueError(f"{family} takes {expected[family]} argument(s), got {len(args)}")
    return ExampleName(family=family, args=args)


def theta_gluing(d: int, levels: int = 0, *, max_cover_size: int = DEFAULT_MAX_COVER_SIZE) -> ColoredGluingGraph:
    """Theta graph with ``d`` edges, or its ``levels``-fold iterated mod-2 homology cover."""
    base = theta_graph(d)
    if levels == 0:
        return make_colored_gluing_graph(identity_cover(base))
    steps = homology_tower(base, levels, max_cover_size=max_cover_size)
    return make_colored_gluing_graph(collapse_tower(steps))


def chain_surface(g: int) -> AssembledSurface:
    """The double of the block of the beach ball with g + 1 bigons."""
    if g < 2:
        raise ValueError("chain surfaces need genus at least 2")
    return assemble(build_block(theta_map(g + 1)), theta_gluing(g + 1))


def beachball_surface(q: int) -> AssembledSurface:
    return assemble(build_block(beach_ball(q)), theta_gluing(q))


def cube_cover_surface(*, max_cover_size: int = DEFAULT_MAX_COVER_SIZE) -> AssembledSurface:
    """Cube blocks glued along the mod-2 homology cover of the six-edge theta graph."""
    return assemble(build_block(cube()), theta_gluing(6, 1, max_cover_size=max_cover_size))


def k5_matrix_fixture() -> MatrixDocument:
    text = (
        resources.files("systoleforge")
        .joinpath("fixtures/k5_intersection_v1.json")
        .read_text(encoding="utf-8")
    )
    return MatrixDocument.model_validate_json(text)


def example_surface(name: ExampleName, *, max_cover_size: int = DEFAULT_MAX_COVER_SIZE) -> AssembledSurface:
    if name.family == "chain":
        return chain_surface(name.args[0])
    if name.family == "beachball_theta":
        return beachball_surface(name.args[0])
    if name.family == "cube_cover":
        return cube_cover_surface(max_cover_size=max_cover_size)
    if name.family == "k5":
        found = search_k5_gluings()
        if not found:
            raise ValueError("no twist-free K5 gluing closes every blue curve")
        return found[0].surface
    raise ValueError(f"{name} does not name a surface")
