# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""Named flag-transitive maps with fixed dart numbering."""

from __future__ import annotations

from typing import Callable

from systoleforge.errors import ForgeError
from systoleforge.maps.rotation import RotationMap, dual


class UnknownName(ForgeError):
    def __init__(self, name: str) -> None:
        super().__init__(f"unknown catalog map {name!r}; known: {', '.join(sorted(CATALOG))}")
        self.name = name


def tetrahedron() -> RotationMap:
    return RotationMap.from_faces([(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)])


def octahedron() -> RotationMap:
    return RotationMap.from_faces(
        [
            (0, 1, 2),
            (0, 2, 3),
            (0, 3, 4),
            (0, 4, 1),
            (5, 2, 1),
            (5, 3, 2),
            (5, 4, 3),
            (5, 1, 4),
        ]
    )


def icosahedron() -> RotationMap:
    def upper(i: int) -> int:
        return 1 + i % 5

    def lower(i: int) -> int:
        return 6 + i % 5

    faces: list[tuple[int, int, int]] = []
    for i in range(5):
        faces.append((0, upper(i), upper(i + 1)))
        faces.append((upper(i + 1), upper(i), lower(i)))
        faces.append((upper(i + 1), lower(i), lower(i + 1)))
        faces.append((11, lower(i + 1), lower(i)))
    return RotationMap.from_faces(faces)


def cube() -> RotationMap:
    return dual(octahedron())


def dodecahedron() -> RotationMap:
    return dual(icosahedron())


def theta_map(d: int) -> RotationMap:
    """Two vertices joined by ``d`` edges, drawn as a beach ball of ``d`` bigons.

    Edge ``i`` is darts ``2i`` (north) and ``2i + 1`` (south).
    """
    if d < 2:
        raise ValueError("a beach ball needs at least two bigons")
    rotation: list[int] = []
    theta: list[int] = []
    for i in range(d):
        rotation.extend((2 * ((i + 1) % d), 2 * ((i - 1) % d) + 1))
        theta.extend((2 * i + 1, 2 * i))
    return RotationMap.from_permutations(rotation, theta)


def beach_ball(q: int) -> RotationMap:
    return theta_map(q)


def torus_grid(n: int) -> RotationMap:
    """The ``n x n`` square grid on the torus, type {4,4}."""
    if n < 3:
        raise ValueError("torus grids need n >= 3 to stay simple")

    def vertex(x: int, y: int) -> int:
        return (y % n) * n + x % n

    faces = [
        (vertex(x, y), vertex(x + 1, y), vertex(x + 1, y + 1), vertex(x, y + 1))
        for y in range(n)
        for x in range(n)
    ]
    return RotationMap.from_faces(faces)


CATALOG: dict[str, Callable[..., RotationMap]] = {
    "tetrahedron": tetrahedron,
    "cube": cube,
    "octahedron": octahedron,
    "dodecahedron": dodecahedron,
    "icosahedron": icosahedron,
    "beach_ball": beach_ball,
    "theta_map": theta_map,
    "torus_grid": torus_grid,
}


def catalog(name: str, *args: int, **params: int) -> RotationMap:
    try:
        factory = CATALOG[name]
    except KeyError:
        raise UnknownName(name) from None
    return factory(*args, **params)
