# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""Searches over systole subsets and matrix equivalence."""

from __future__ import annotations

import logging
from typing import Callable, Sequence

from systoleforge.analysis.intersection import (
    IntersectionData,
    adjacency_graph,
    intersection_adjacency,
    intersection_graph,
)
from systoleforge.assembly.curves import Curve
from systoleforge.assembly.filling import fills_check
from systoleforge.assembly.surface import AssembledSurface
from systoleforge.errors import TooLarge
from systoleforge.graphs.automorphisms import find_isomorphism

logger = logging.getLogger(__name__)

DEFAULT_MAX_SUBSET_CANDIDATES = 200_000

FillTest = Callable[[Sequence[Curve]], bool]


def induced_subtrees(
    adjacency: Sequence[Sequence[int]], *, max_candidates: int = DEFAULT_MAX_SUBSET_CANDIDATES
) -> list[tuple[int, ...]]:
    """All vertex sets inducing a tree, largest first, then lexicographic."""
    graph = adjacency_graph(adjacency)
    seen: set[frozenset[int]] = {frozenset([v]) for v in graph.nodes}
    frontier = list(seen)
    while frontier:
        current = frontier.pop()
        boundary = {w for v in current for w in graph.neighbors(v)} - current
        for w in boundary:
            if sum(1 for u in graph.neighbors(w) if u in current) != 1:
                continue
            grown = current | {w}
            if grown not in seen:
                seen.add(grown)
                frontier.append(grown)
                if len(seen) > max_candidates:
                    raise TooLarge("induced subtree enumeration", len(seen), max_candidates)
    trees = [tuple(sorted(s)) for s in seen]
    trees.sort(key=lambda s: (-len(s), s))
    return trees


def tree_subset_search(
    data: IntersectionData,
    x: AssembledSurface,
    *,
    fills: FillTest | None = None,
    max_candidates: int = DEFAULT_MAX_SUBSET_CANDIDATES,
) -> tuple[Curve, ...] | None:
    """First even induced subtree of the intersection graph whose curves fill.

    Candidates are tried in canonical order: more curves first, then the
    lexicographic order of their positions in the red curves followed by the
    blue curves. Returns None when no candidate fills.
    """
    if data.size == 0:
        return None
    if fills is None:
        def fills(subset: Sequence[Curve]) -> bool:
            return fills_check(x, subset).fills

    curves = data.red_index + data.blue_index
    candidates = [
        s
        for s in induced_subtrees(intersection_adjacency(data), max_candidates=max_candidates)
        if len(s) % 2 == 0
    ]
    logger.debug("%d even induced subtrees to test", len(candidates))
    for candidate in candidates:
        subset = tuple(curves[i] for i in candidate)
        if fills(subset):
            logger.info("curves %s fill", ", ".join(c.name for c in subset))
            return subset
    return None


def chain_subset(data: IntersectionData) -> tuple[Curve, ...]:
    """All curves except the first red curve and the first blue curve crossing it."""
    if not data.red_index:
        raise ValueError("no red curves")
    row = data.matrix[0]
    blue = next((b for b, count in enumerate(row) if count), None)
    if blue is None:
        raise ValueError(f"{data.red_index[0].name} crosses no blue curve")
    return data.red_index[1:] + data.blue_index[:blue] + data.blue_index[blue + 1 :]


def _strip(matrix: Sequence[Sequence[int]]) -> tuple[list[list[int]], int, int]:
    rows = [list(row) for row in matrix if any(row)]
    if not rows:
        return [], len(matrix), len(matrix[0]) if matrix else 0
    columns = [j for j in range(len(rows[0])) if any(row[j] for row in rows)]
    width = len(matrix[0])
    return [[row[j] for j in columns] for row in rows], len(matrix) - len(rows), width - len(columns)


def permutation_equivalent(
    a: Sequence[Sequence[int]],
    b: Sequence[Sequence[int]],
    *,
    allow_transpose: bool = True,
) -> bool:
    """Whether ``b`` is ``a`` with rows and columns permuted (optionally transposed)."""
    stripped_a, zero_rows_a, zero_cols_a = _strip(a)
    candidates = [b]
    if allow_transpose and b:
        candidates.append([list(col) for col in zip(*b)])
    for other in candidates:
        stripped_b, zero_rows_b, zero_cols_b = _strip(other)
        if (zero_rows_a, zero_cols_a) != (zero_rows_b, zero_cols_b):
            continue
        if len(stripped_a) != len(stripped_b):
            continue
        if not stripped_a:
            return True
        if len(stripped_a[0]) != len(stripped_b[0]):
            continue
        found = find_isomorphism(
            intersection_graph(stripped_a),
            intersection_graph(stripped_b),
            respect_labels=True,
        )
        if found is not None:
            return True
    return False
