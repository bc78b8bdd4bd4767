# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""Numerical checks of the right-angled 2q-gon facts the systole argument uses."""

from __future__ import annotations

import logging
import math
import time
from typing import Iterable

from systoleforge.config import ForgeConfig
from systoleforge.hyperbolic.polygon import (
    DomainError,
    build_polygon,
    deformed_side_length,
    quad_relation_check,
    quadrilateral_sides,
    regular_side_length,
    side_distance_margins,
)
from systoleforge.storage.report_store import RunReport

logger = logging.getLogger(__name__)

MAX_Q = 12


def verify_lemmas(q_values: Iterable[int], config: ForgeConfig | None = None) -> RunReport:
    config = config or ForgeConfig()
    values = sorted(set(q_values))
    if not values or values[0] < 3 or values[-1] > MAX_Q:
        raise DomainError(f"q values must lie in 3..{MAX_Q}, got {values}")
    report = RunReport(
        command="verify-lemmas", inputs={"q": ",".join(str(q) for q in values)}
    )
    started = time.perf_counter()
    margins = []
    for q in values:
        length = regular_side_length(q)
        residual = abs(math.cosh(length) - (1 + 2 * math.cos(math.pi / q)))
        report.add(
            f"side_length_q{q}",
            "cosh L = 1 + 2 cos(pi/q)",
            residual < 1e-12,
            residual=residual,
        )
        deformed = abs(deformed_side_length(q, math.pi / 2) - length)
        report.add(
            f"deformed_at_right_angle_q{q}",
            "the deformed side length at a right angle is the regular one",
            deformed < 1e-12,
            residual=deformed,
        )
        polygon = build_polygon(q, tolerance=config.construction_tolerance)
        found = side_distance_margins(polygon)
        margins.append(found.strict_margin)
        report.add(
            f"side_distances_q{q}",
            "sides one apart are exactly L apart, sides further apart strictly more",
            found.equality_residual <= 1e-9 and found.strict_margin > config.acceptance_margin,
            equality_residual=found.equality_residual,
            strict_margin=found.strict_margin,
        )
        worst = max(
            abs(quad_relation_check(*quadrilateral_sides(polygon, k), q))
            for k in range(polygon.num_sides)
        )
        report.add(
            f"quadrilateral_relation_q{q}",
            "sinh a sinh b = cos(pi/q) on every quadrilateral of the polygon",
            worst < 1e-10,
            residual=worst,
        )
    monotone = all(a < b for a, b in zip(margins, margins[1:]))
    report.add(
        "margin_trend",
        "strict side-distance margins listed by q",
        True,
        margins=" ".join(f"{m:.6g}" for m in margins),
        increasing=monotone,
    )
    report.timings["total_seconds"] = time.perf_counter() - started
    logger.info("verified polygon facts for q in %s", values)
    return report
