# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""Equilateral 2q-gons with angles alternating theta and pi - theta.

The polygon is centred at the origin with vertex ``k`` at polar angle
``k * pi / q``. Side ``k`` runs from vertex ``k`` to vertex ``k + 1``; even
sides are blue and odd sides red, so odd vertices (blue side then red side,
counterclockwise) carry the angle ``theta`` and even vertices ``pi - theta``.
``theta = pi / 2`` gives the regular right-angled polygon.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from systoleforge.errors import ForgeError
from systoleforge.hyperbolic.isometry import (
    ORIGIN,
    Isometry,
    angle_at,
    frame,
    hyperbolic_distance,
    midpoint,
    minkowski,
    normalize_spacelike,
    point_at,
    polar_vector,
    unit_tangent,
)

logger = logging.getLogger(__name__)

BLUE = "blue"
RED = "red"


class DomainError(ForgeError):
    """Parameters outside the range where the polygon exists."""


class SidesAdjacent(ForgeError):
    def __init__(self, i: int, j: int) -> None:
        super().__init__(f"sides {i} and {j} share a vertex")
        self.sides = (i, j)


class ConstructionFailed(ForgeError):
    def __init__(self, residual: float, tolerance: float) -> None:
        super().__init__(f"polygon residual {residual:.3g} exceeds tolerance {tolerance:.3g}")
        self.residual = residual


def _check(q: int, theta: float = math.pi / 2) -> None:
    if q < 3:
        raise DomainError(f"q must be at least 3, got {q}")
    if not 0.0 < theta < math.pi:
        raise DomainError(f"theta must lie in (0, pi), got {theta}")


def regular_side_length(q: int) -> float:
    _check(q)
    return 2.0 * math.acosh(math.sqrt(2.0) * math.cos(math.pi / (2 * q)))


def deformed_side_length(q: int, theta: float) -> float:
    """Side opposite the angle pi/q in the triangle (pi/q, theta/2, (pi - theta)/2)."""
    _check(q, theta)
    beta, gamma = theta / 2.0, (math.pi - theta) / 2.0
    cosh_s = (math.cos(beta) * math.cos(gamma) + math.cos(math.pi / q)) / (
        math.sin(beta) * math.sin(gamma)
    )
    return math.acosh(cosh_s)


def deformed_side_length_derivative(q: int, theta: float) -> float:
    """d s / d theta, using cosh s = 1 + 2 cos(pi/q) / sin(theta)."""
    _check(q, theta)
    s = deformed_side_length(q, theta)
    d_cosh = -2.0 * math.cos(math.pi / q) * math.cos(theta) / math.sin(theta) ** 2
    return d_cosh / math.sinh(s)


def side_color(side: int) -> str:
    return BLUE if side % 2 == 0 else RED


@dataclass(frozen=True, eq=False)
class PolygonMetric:
    q: int
    theta: float
    side_length: float
    vertices: np.ndarray

    @property
    def num_sides(self) -> int:
        return 2 * self.q

    def vertex(self, k: int) -> np.ndarray:
        return self.vertices[k % self.num_sides]

    def side(self, k: int) -> tuple[np.ndarray, np.ndarray]:
        return self.vertex(k), self.vertex(k + 1)

    @cached_property
    def polar_vectors(self) -> tuple[np.ndarray, ...]:
        """Side normals, oriented to point away from the centre."""
        normals = []
        for k in range(self.num_sides):
            n = polar_vector(*self.side(k))
            normals.append(n if minkowski(n, ORIGIN) < 0 else -n)
        return tuple(normals)

    def interior_angles(self) -> list[float]:
        return [
            angle_at(self.vertex(k), self.vertex(k - 1), self.vertex(k + 1))
            for k in range(self.num_sides)
        ]

    def side_lengths(self) -> list[float]:
        return [hyperbolic_distance(*self.side(k)) for k in range(self.num_sides)]

    def side_frame(self, k: int, *, at_end: bool, outward: bool) -> np.ndarray:
        """Frame at an endpoint of side ``k``: tangent along the side, normal across it."""
        start, end = self.side(k)
        point, other = (end, start) if at_end else (start, end)
        tangent = unit_tangent(point, other)
        normal = self.polar_vectors[k]
        normal = normalize_spacelike(normal - minkowski(normal, point) * point)
        if not outward:
            normal = -normal
        return frame(point, tangent, normal)


def build_polygon(
    q: int, theta: float = math.pi / 2, *, tolerance: float = 1e-8
) -> PolygonMetric:
    """Place the 2q vertices by reflecting the seed triangle about the centre."""
    _check(q, theta)
    alpha, beta, gamma = math.pi / q, theta / 2.0, (math.pi - theta) / 2.0
    radius_theta = math.acosh(
        (math.cos(gamma) + math.cos(alpha) * math.cos(beta)) / (math.sin(alpha) * math.sin(beta))
    )
    radius_other = math.acosh(
        (math.cos(beta) + math.cos(alpha) * math.cos(gamma)) / (math.sin(alpha) * math.sin(gamma))
    )
    vertices = np.array(
        [
            point_at(radius_theta if k % 2 else radius_other, k * alpha)
            for k in range(2 * q)
        ]
    )
    polygon = PolygonMetric(
        q=q, theta=theta, side_length=deformed_side_length(q, theta), vertices=vertices
    )
    expected = [theta if k % 2 else math.pi - theta for k in range(2 * q)]
    residual = max(
        max(abs(length - polygon.side_length) for length in polygon.side_lengths()),
        max(abs(a - b) for a, b in zip(polygon.interior_angles(), expected)),
    )
    if residual > tolerance:
        raise ConstructionFailed(residual, tolerance)
    logger.debug("built 2q-gon q=%d theta=%.6f residual %.3g", q, theta, residual)
    return polygon


def side_distance(polygon: PolygonMetric, i: int, j: int) -> float:
    """Length of the common perpendicular of the lines through sides ``i`` and ``j``; 0 if they meet."""
    n = polygon.num_sides
    i, j = i % n, j % n
    if i == j:
        return 0.0
    if (i - j) % n in (1, n - 1):
        raise SidesAdjacent(i, j)
    c = abs(minkowski(polygon.polar_vectors[i], polygon.polar_vectors[j]))
    if c <= 1.0:
        return 0.0
    return math.acosh(c)


def side_separation(num_sides: int, i: int, j: int) -> int:
    """Number of sides strictly between ``i`` and ``j`` along the shorter way round."""
    gap = (j - i) % num_sides
    return min(gap, num_sides - gap) - 1


def side_pairing(
    source: PolygonMetric,
    source_side: int,
    target: PolygonMetric,
    target_side: int,
    *,
    flip: bool,
) -> Isometry:
    """Isometry gluing ``source_side`` onto ``target_side`` with the polygons on opposite sides.

    With ``flip`` the start of the source side lands on the end of the target
    side, which is the orientation-preserving gluing of two counterclockwise
    polygons.
    """
    src = source.side_frame(source_side, at_end=False, outward=False)
    dst = target.side_frame(target_side, at_end=flip, outward=True)
    return Isometry.from_frames(src, dst)


def quadrilateral_sides(polygon: PolygonMetric, k: int) -> tuple[float, float]:
    """Sides (a, b) away from the centre in the quadrilateral (centre, m_k, v_(k+1), m_(k+1))."""
    m_k = midpoint(*polygon.side(k))
    m_next = midpoint(*polygon.side(k + 1))
    corner = polygon.vertex(k + 1)
    return hyperbolic_distance(m_k, corner), hyperbolic_distance(corner, m_next)


def quad_relation_check(a: float, b: float, q: int) -> float:
    return math.sinh(a) * math.sinh(b) - math.cos(math.pi / q)


def quad_partner_length(q: int, a: float) -> float:
    """The side b completing a (2,2,2,q)-quadrilateral with side a."""
    _check(q)
    if a <= 0:
        raise DomainError("quadrilateral sides must be positive")
    return math.asinh(math.cos(math.pi / q) / math.sinh(a))


def quad_partner_derivative(q: int, a: float) -> float:
    """db/da along the family sinh a sinh b = cos(pi/q)."""
    b = quad_partner_length(q, a)
    return -(math.cosh(a) * math.sinh(b)) / (math.sinh(a) * math.cosh(b))


@dataclass(frozen=True)
class SideDistanceMargins:
    """How closely non-adjacent sides approach the side length.

    ``equality_residual`` is the largest deviation from the side length over
    sides one apart; ``strict_margin`` is the smallest excess over the side
    length among sides further apart (infinite when there are none).
    """

    q: int
    equality_residual: float
    strict_margin: float


def side_distance_margins(polygon: PolygonMetric) -> SideDistanceMargins:
    n = polygon.num_sides
    residual = 0.0
    margin = math.inf
    for i in range(n):
        for j in range(i + 2, n):
            separation = side_separation(n, i, j)
            if separation < 1:
                continue
            excess = side_distance(polygon, i, j) - polygon.side_length
            if separation == 1:
                residual = max(residual, abs(excess))
            else:
                margin = min(margin, excess)
    return SideDistanceMargins(q=polygon.q, equality_residual=residual, strict_margin=margin)
