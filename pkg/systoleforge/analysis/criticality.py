# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""What the twist-derivative matrix says about the systole function at a surface.

Only combinatorial facts are reported: the systole count (an upper bound on
the index, granted that the surface is a critical point), the exact
determinant and rank of ``[[0, A], [A^T, 0]]``, and, when that determinant is
non-zero and the angle is not a right angle, the codimension of the locus
where all systoles keep equal length together with the resulting lower bound
on its dimension in Teichmueller space.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from systoleforge.analysis.determinants import exact_determinant, exact_rank
from systoleforge.analysis.intersection import (
    IntersectionData,
    intersection_adjacency,
    intersection_data,
)
from systoleforge.assembly.surface import AssembledSurface, genus

logger = logging.getLogger(__name__)

THETA_DEPENDENCE = "D = cos(theta) * [[0, A], [-A^T, 0]]"
CRITICALITY_CAVEAT = "critical-point statements assume the surface is eutactic"


@dataclass(frozen=True)
class CriticalityReport:
    genus: int
    systole_count: int
    det_dtilde: int
    rank_dtilde: int
    theta: float
    theta_dependence: str
    index_upper_bound: int
    codimension_bound: int | None
    dimension_lower_bound: int | None
    caveat: str = CRITICALITY_CAVEAT

    @property
    def full_rank(self) -> bool:
        return self.det_dtilde != 0


def criticality_report(
    x: AssembledSurface,
    theta: float = math.pi / 2,
    *,
    data: IntersectionData | None = None,
) -> CriticalityReport:
    if data is None:
        data = intersection_data(x)
    adjacency = intersection_adjacency(data)
    count = data.size
    det = exact_determinant(adjacency)
    rank = exact_rank(adjacency)
    g = genus(x)
    transverse = det != 0 and not math.isclose(math.cos(theta), 0.0, abs_tol=1e-12)
    codimension = count - 1 if transverse else None
    dimension = 6 * g - 6 - codimension if codimension is not None else None
    if det == 0:
        logger.info("intersection adjacency is singular: rank %d of %d", rank, count)
    return CriticalityReport(
        genus=g,
        systole_count=count,
        det_dtilde=det,
        rank_dtilde=rank,
        theta=theta,
        theta_dependence=THETA_DEPENDENCE,
        index_upper_bound=count,
        codimension_bound=codimension,
        dimension_lower_bound=dimension,
    )
