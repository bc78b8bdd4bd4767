# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""Per-instance certificate that a covering doubles the girth.

Three facts are checked, in this order, and the first one that fails raises
``CertificationFailed`` with the offending witness:

* ``girth_doubled``: the total girth is twice the base girth;
* ``girth_cycles_project_to_squares``: every girth cycle of the total graph maps
  to a girth cycle of the base traversed exactly twice;
* ``polygonal_and_isotropic_preserved``: strict polygonality and isotropy of the
  base carry over to the total graph.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

from systoleforge.covers.homology import CoveringMap
from systoleforge.errors import ForgeError
from systoleforge.graphs.girth import DEFAULT_MAX_GIRTH, girth, is_strict_polygonal
from systoleforge.graphs.halfedge import is_closed_walk, is_cyclically_reduced
from systoleforge.graphs.transitivity import is_isotropic

logger = logging.getLogger(__name__)


class CertificationFailed(ForgeError):
    def __init__(self, clause: str, witness: Any, message: str) -> None:
        super().__init__(f"{clause}: {message}")
        self.clause = clause
        self.witness = witness


@dataclass(frozen=True)
class ClauseCheck:
    name: str
    status: str
    detail: str


@dataclass(frozen=True)
class DoublingCertificate:
    base_girth: int
    total_girth: int
    girth_cycle_count: int
    strict_polygonal: bool
    isotropic: bool
    clauses: tuple[ClauseCheck, ...]


def certify_girth_doubling(
    cover: CoveringMap, *, max_girth: int = DEFAULT_MAX_GIRTH
) -> DoublingCertificate:
    base_result = girth(cover.base, max_length=max_girth)
    total_result = girth(cover.total, max_length=max_girth)
    clauses: list[ClauseCheck] = []

    if total_result.length != 2 * base_result.length:
        raise CertificationFailed(
            "girth_doubled",
            (base_result.length, total_result.length),
            f"total girth {total_result.length} is not twice base girth {base_result.length}",
        )
    clauses.append(
        ClauseCheck(
            "girth_doubled",
            "pass",
            f"{base_result.length} -> {total_result.length}",
        )
    )

    half = base_result.length
    for cycle in total_result.witnesses:
        image = tuple(cover.dart_map[d] for d in cycle.darts)
        first, second = image[:half], image[half:]
        if (
            first != second
            or not is_closed_walk(cover.base, first)
            or not is_cyclically_reduced(cover.base, first)
        ):
            raise CertificationFailed(
                "girth_cycles_project_to_squares",
                cycle.darts,
                f"girth cycle {cycle.darts} projects to {image}",
            )
    clauses.append(
        ClauseCheck(
            "girth_cycles_project_to_squares",
            "pass",
            f"{len(total_result.witnesses)} girth cycles checked",
        )
    )

    base_polygonal = is_strict_polygonal(cover.base, base_result).strict
    base_isotropic = is_isotropic(cover.base).isotropic
    total_polygonal = is_strict_polygonal(cover.total, total_result)
    total_isotropic = is_isotropic(cover.total)
    if base_polygonal and not total_polygonal.strict:
        raise CertificationFailed(
            "polygonal_and_isotropic_preserved",
            total_polygonal.witness,
            f"2-path {total_polygonal.witness} lies in {total_polygonal.count} girth cycles",
        )
    if base_isotropic and not total_isotropic.isotropic:
        raise CertificationFailed(
            "polygonal_and_isotropic_preserved",
            total_isotropic.failing_injection,
            "star injection does not extend to an automorphism",
        )
    preserved = base_polygonal and base_isotropic
    clauses.append(
        ClauseCheck(
            "polygonal_and_isotropic_preserved",
            "pass" if preserved else "not applicable",
            f"strict polygonal {total_polygonal.strict}, isotropic {total_isotropic.isotropic}",
        )
    )
    logger.info(
        "certified girth doubling %d -> %d over %d girth cycles",
        base_result.length,
        total_result.length,
        len(total_result.witnesses),
    )
    return DoublingCertificate(
        base_girth=base_result.length,
        total_girth=total_result.length,
        girth_cycle_count=len(total_result.witnesses),
        strict_polygonal=total_polygonal.strict,
        isotropic=total_isotropic.isotropic,
        clauses=tuple(clauses),
    )
