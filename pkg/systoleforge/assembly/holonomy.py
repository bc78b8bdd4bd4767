# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""Develop tile sequences into the hyperboloid and read off translation lengths."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from systoleforge.assembly.curves import Curve
from systoleforge.assembly.surface import AssembledSurface
from systoleforge.hyperbolic.isometry import Isometry, length_from_trace
from systoleforge.hyperbolic.polygon import PolygonMetric, build_polygon, side_pairing


@dataclass(frozen=True, eq=False)
class Developer:
    """Side-pairing isometries of one metric polygon used by every tile."""

    polygon: PolygonMetric

    @cached_property
    def _pairings(self) -> tuple[tuple[Isometry, ...], ...]:
        n = self.polygon.num_sides
        return tuple(
            tuple(
                side_pairing(self.polygon, source, self.polygon, target, flip=True)
                for target in range(n)
            )
            for source in range(n)
        )

    def crossing(self, x: AssembledSurface, side: int) -> Isometry:
        """Map the tile across ``side`` into the coordinates of the tile containing it."""
        n = self.polygon.num_sides
        return self._pairings[x.complex.partner[side] % n][side % n]

    def develop(self, x: AssembledSurface, crossings: Sequence[int]) -> Isometry:
        total = Isometry.identity()
        for side in crossings:
            total = total.compose(self.crossing(x, side))
        return total


def curve_crossings(x: AssembledSurface, curve: Curve) -> tuple[int, ...]:
    """Sides crossed by the tile on the curve's left as it runs once round."""
    return tuple(x.complex.step(side, 1) for side in curve.passages)


def holonomy_length(
    x: AssembledSurface,
    curve: Curve,
    theta: float = math.pi / 2,
    *,
    developer: Developer | None = None,
    tolerance: float = 1e-8,
) -> float:
    if developer is None or developer.polygon.theta != theta:
        developer = Developer(build_polygon(x.q, theta))
    holonomy = developer.develop(x, curve_crossings(x, curve))
    return length_from_trace(holonomy, tolerance=tolerance)
