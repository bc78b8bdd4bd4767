# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""Hyperboloid model of the hyperbolic plane.

Points are unit timelike vectors ``(t, x, y)`` with ``t > 0`` for the form
``J = diag(-1, 1, 1)``; geodesics are represented by unit spacelike polar
vectors; isometries are 3x3 matrices with ``M.T @ J @ M == J``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from systoleforge.errors import ForgeError

J = np.diag([-1.0, 1.0, 1.0])
ORIGIN = np.array([1.0, 0.0, 0.0])


class NotHyperbolic(ForgeError):
    def __init__(self, value: float) -> None:
        super().__init__(f"isometry is elliptic or parabolic (half trace quantity {value:.12g})")
        self.value = value


def minkowski(a: np.ndarray, b: np.ndarray) -> float:
    return float(-a[0] * b[0] + a[1] * b[1] + a[2] * b[2])


def normalize_point(v: np.ndarray) -> np.ndarray:
    norm = -minkowski(v, v)
    if norm <= 0:
        raise ValueError("vector is not timelike")
    v = v / math.sqrt(norm)
    return v if v[0] > 0 else -v


def normalize_spacelike(v: np.ndarray) -> np.ndarray:
    norm = minkowski(v, v)
    if norm <= 0:
        raise ValueError("vector is not spacelike")
    return v / math.sqrt(norm)


def point_at(radius: float, angle: float) -> np.ndarray:
    """Point at hyperbolic distance ``radius`` from the origin in direction ``angle``."""
    return np.array(
        [math.cosh(radius), math.sinh(radius) * math.cos(angle), math.sinh(radius) * math.sin(angle)]
    )


def hyperbolic_distance(a: np.ndarray, b: np.ndarray) -> float:
    return math.acosh(max(1.0, -minkowski(a, b)))


def midpoint(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return normalize_point(a + b)


def unit_tangent(at: np.ndarray, towards: np.ndarray) -> np.ndarray:
    """Unit tangent vector at ``at`` pointing along the geodesic to ``towards``."""
    return normalize_spacelike(towards + minkowski(towards, at) * at)


def angle_at(vertex: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    u = unit_tangent(vertex, a)
    v = unit_tangent(vertex, b)
    return math.acos(max(-1.0, min(1.0, minkowski(u, v))))


def polar_vector(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Unit spacelike normal of the geodesic through ``a`` and ``b``."""
    return normalize_spacelike(J @ np.cross(a, b))


@dataclass(frozen=True, eq=False)
class Isometry:
    matrix: np.ndarray

    @classmethod
    def identity(cls) -> "Isometry":
        return cls(np.eye(3))

    @classmethod
    def reflection(cls, normal: np.ndarray) -> "Isometry":
        """Reflection in the geodesic with unit polar vector ``normal``."""
        return cls(np.eye(3) - 2.0 * np.outer(normal, normal) @ J)

    @classmethod
    def boost(cls, rapidity: float) -> "Isometry":
        """Translation by ``rapidity`` along the x-axis geodesic."""
        c, s = math.cosh(rapidity), math.sinh(rapidity)
        return cls(np.array([[c, s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]))

    @classmethod
    def rotation(cls, angle: float) -> "Isometry":
        c, s = math.cos(angle), math.sin(angle)
        return cls(np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]]))

    @classmethod
    def from_frames(cls, source: np.ndarray, target: np.ndarray) -> "Isometry":
        """The isometry taking one orthonormal frame to another.

        A frame is a 3x3 matrix whose columns are a point followed by two
        orthonormal tangent vectors at it.
        """
        return cls(target @ np.linalg.inv(source))

    @property
    def orientation(self) -> int:
        return 1 if np.linalg.det(self.matrix) > 0 else -1

    def compose(self, inner: "Isometry") -> "Isometry":
        """``self`` after ``inner``."""
        return Isometry(self.matrix @ inner.matrix)

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ v

    def form_residual(self) -> float:
        return float(np.max(np.abs(self.matrix.T @ J @ self.matrix - J)))

    def is_isometry(self, tolerance: float = 1e-8) -> bool:
        return self.form_residual() <= tolerance


def frame(point: np.ndarray, tangent: np.ndarray, normal: np.ndarray) -> np.ndarray:
    return np.column_stack([point, tangent, normal])


def length_from_trace(m: Isometry, *, tolerance: float = 1e-12) -> float:
    """Translation length of a hyperbolic (or glide-reflection) isometry.

    The eigenvalues are ``e^l, det, e^-l``, so ``cosh l = (trace - det) / 2``.
    """
    det = float(np.linalg.det(m.matrix))
    value = (float(np.trace(m.matrix)) - det) / 2.0
    if value <= 1.0 + tolerance:
        raise NotHyperbolic(value)
    return math.acosh(value)
