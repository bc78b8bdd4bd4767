# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""Red and blue closed geodesics traced through the tiling.

A passage is a side seen from the tile on its left. Following passages through
corners walks a curve; each curve shows up as two passage orbits, one per
side, and is identified by the canonical rotation of its tiling-edge sequence.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from systoleforge.assembly.surface import AssembledSurface, genus
from systoleforge.errors import ForgeError
from systoleforge.hyperbolic.polygon import BLUE, RED, regular_side_length

logger = logging.getLogger(__name__)


class BlueCurveDoesNotClose(ForgeError):
    def __init__(self, arc: int, steps: int, p: int) -> None:
        super().__init__(
            f"blue curve through tiling edge {arc} closes after {steps} arcs, expected {p}"
        )
        self.arc = arc
        self.steps = steps


class FormulaMismatch(ForgeError):
    def __init__(self, expected: object, found: object) -> None:
        super().__init__(f"curve count formula gives {expected}, tracing found {found}")
        self.expected = expected
        self.found = found


@dataclass(frozen=True)
class Curve:
    color: str
    index: int
    edges: tuple[int, ...]
    passages: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def name(self) -> str:
        return f"{self.color}{self.index}"


@dataclass(frozen=True)
class CurveSystem:
    red: tuple[Curve, ...]
    blue: tuple[Curve, ...]
    length_per_curve: float

    @property
    def curves(self) -> tuple[Curve, ...]:
        return self.red + self.blue

    def __len__(self) -> int:
        return len(self.red) + len(self.blue)

    @cached_property
    def curve_of_edge(self) -> dict[int, Curve]:
        return {edge: curve for curve in self.curves for edge in curve.edges}

    def by_name(self, name: str) -> Curve:
        for curve in self.curves:
            if curve.name == name:
                return curve
        raise KeyError(name)


def _canonical(sequence: tuple[int, ...]) -> tuple[int, ...]:
    rotations = []
    for seq in (sequence, tuple(reversed(sequence))):
        rotations.extend(seq[i:] + seq[:i] for i in range(len(seq)))
    return min(rotations)


def trace_curves(x: AssembledSurface) -> CurveSystem:
    complex_ = x.complex
    visited = [False] * complex_.num_sides
    found: dict[tuple[int, ...], tuple[int, tuple[int, ...]]] = {}
    for start in range(complex_.num_sides):
        if visited[start]:
            continue
        orbit = [start]
        visited[start] = True
        side = complex_.next_passage(start)
        while side != start:
            visited[side] = True
            orbit.append(side)
            side = complex_.next_passage(side)
        edges = tuple(complex_.edge_of(s) for s in orbit)
        if len(orbit) != x.p:
            if complex_.color(start) == 0:
                raise BlueCurveDoesNotClose(min(edges), len(orbit), x.p)
            raise RuntimeError(f"red curve through edge {min(edges)} has {len(orbit)} sides")
        key = _canonical(edges)
        found.setdefault(key, (complex_.color(start), tuple(orbit)))
    red, blue = [], []
    for key in sorted(found):
        color, passages = found[key]
        bucket, name = (blue, BLUE) if color == 0 else (red, RED)
        bucket.append(Curve(color=name, index=len(bucket), edges=key, passages=passages))
    system = CurveSystem(
        red=tuple(red),
        blue=tuple(blue),
        length_per_curve=x.p * regular_side_length(x.q),
    )
    logger.info("traced %d red and %d blue curves", len(red), len(blue))
    return system


def expected_systole_count(x: AssembledSurface) -> int:
    value = Fraction(4 * x.q * (genus(x) - 1), (x.q - 2) * x.p)
    if value.denominator != 1:
        raise FormulaMismatch(value, "a non-integral count")
    return int(value)


def systole_count(x: AssembledSurface, curves: CurveSystem | None = None) -> int:
    """The closed-form count, checked against the traced curves."""
    expected = expected_systole_count(x)
    if curves is None:
        curves = trace_curves(x)
    if len(curves) != expected:
        raise FormulaMismatch(expected, len(curves))
    return expected
