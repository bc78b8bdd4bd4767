# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

"""Exact integer determinants and ranks.

``exact_determinant`` and ``exact_rank`` use fraction-free (Bareiss)
elimination on Python integers, so every intermediate entry is a minor of the
input and the divisions are exact. ``elementary_subgraph_determinant`` expands
the adjacency determinant of a simple graph over its elementary spanning
subgraphs and serves as an independent oracle on small graphs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import networkx as nx
import numpy as np

from systoleforge.errors import TooLarge

logger = logging.getLogger(__name__)

DEFAULT_MAX_ELEMENTARY_VERTICES = 16
DEFAULT_ORACLE_SAMPLES = 32


def _copy(matrix: Sequence[Sequence[int]]) -> list[list[int]]:
    rows = [[int(v) for v in row] for row in matrix]
    width = len(rows[0]) if rows else 0
    if any(len(row) != width for row in rows):
        raise ValueError("matrix rows have different lengths")
    return rows


def exact_determinant(matrix: Sequence[Sequence[int]]) -> int:
    m = _copy(matrix)
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    previous = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // previous
            m[i][k] = 0
        previous = m[k][k]
    return sign * m[n - 1][n - 1]


def exact_rank(matrix: Sequence[Sequence[int]]) -> int:
    m = _copy(matrix)
    if not m:
        return 0
    rows, columns = len(m), len(m[0])
    rank = 0
    previous = 1
    for col in range(columns):
        pivot = next((i for i in range(rank, rows) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(rank + 1, rows):
            for j in range(col + 1, columns):
                m[i][j] = (m[i][j] * m[rank][col] - m[i][col] * m[rank][j]) // previous
            m[i][col] = 0
        previous = m[rank][col]
        rank += 1
        if rank == rows:
            break
    return rank


def elementary_subgraph_determinant(
    graph: nx.Graph, *, max_vertices: int = DEFAULT_MAX_ELEMENTARY_VERTICES
) -> int:
    """Sum of ``(-1)^(even components) * 2^(cycles)`` over elementary spanning subgraphs.

    An elementary subgraph has only single edges and embedded cycles as
    components. Vertices are covered in sorted order: the smallest uncovered
    vertex is matched along an edge or threaded on a cycle through larger
    uncovered vertices, each cycle counted in one direction.
    """
    nodes = sorted(graph.nodes)
    n = len(nodes)
    if n > max_vertices:
        raise TooLarge("elementary subgraph expansion", n, max_vertices)
    if any(graph.has_edge(v, v) for v in nodes):
        raise ValueError("graph has loops")
    index = {v: i for i, v in enumerate(nodes)}
    neighbours = [sorted(index[w] for w in graph.neighbors(v)) for v in nodes]
    total = 0
    terms = 0

    def cycles_from(start: int, free: int) -> list[int]:
        """Vertex masks of cycles of length >= 3 through ``start`` inside ``free``."""
        found = []

        def extend(current: int, used: int, length: int, second: int) -> None:
            for w in neighbours[current]:
                if w == start and length >= 3 and second < current:
                    found.append(used)
                elif w > start and free >> w & 1 and not used >> w & 1:
                    extend(w, used | 1 << w, length + 1, second if length > 1 else w)

        extend(start, 1 << start, 1, -1)
        return found

    def cover(free: int, sign: int, weight: int) -> None:
        nonlocal total, terms
        if free == 0:
            total += sign * weight
            terms += 1
            return
        v = (free & -free).bit_length() - 1
        rest = free & ~(1 << v)
        for w in neighbours[v]:
            if rest >> w & 1:
                cover(rest & ~(1 << w), -sign, weight)
        for mask in cycles_from(v, free):
            even = bin(mask).count("1") % 2 == 0
            cover(free & ~mask, -sign if even else sign, 2 * weight)

    cover((1 << n) - 1, 1, 1)
    logger.debug("%d elementary spanning subgraphs on %d vertices", terms, n)
    return total


@dataclass(frozen=True)
class SampledOracle:
    seed: int
    subsets: tuple[tuple[int, ...], ...]
    mismatches: tuple[tuple[int, ...], ...]


def sampled_oracle_check(
    graph: nx.Graph,
    *,
    seed: int,
    samples: int = DEFAULT_ORACLE_SAMPLES,
    max_vertices: int = DEFAULT_MAX_ELEMENTARY_VERTICES,
) -> SampledOracle:
    """Compare both determinants on induced subgraphs over random vertex subsets.

    Subset sizes and members are drawn from ``numpy.random.default_rng(seed)``,
    so a seed fixes the sample.
    """
    nodes = sorted(graph.nodes)
    rng = np.random.default_rng(seed)
    subsets: list[tuple[int, ...]] = []
    mismatches: list[tuple[int, ...]] = []
    largest = min(len(nodes), max_vertices)
    for _ in range(samples if largest else 0):
        size = int(rng.integers(1, largest + 1))
        chosen = tuple(sorted(int(v) for v in rng.choice(nodes, size=size, replace=False)))
        sub = graph.subgraph(chosen)
        matrix = nx.to_numpy_array(sub, nodelist=list(chosen), dtype=int).tolist()
        if exact_determinant(matrix) != elementary_subgraph_determinant(sub, max_vertices=max_vertices):
            mismatches.append(chosen)
        subsets.append(chosen)
    if mismatches:
        logger.warning("determinants disagree on %d of %d sampled subgraphs", len(mismatches), samples)
    return SampledOracle(seed=seed, subsets=tuple(subsets), mismatches=tuple(mismatches))
