# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from jinja2 import Environment, FileSystemLoader, select_autoescape

from systoleforge.analysis.intersection import IntersectionData
from systoleforge.graphs.halfedge import HalfEdgeGraph

TEMPLATE_DIR = Path(__file__).parent / "templates"

_PALETTE = ("black", "red", "blue", "darkgreen", "orange", "purple", "brown", "gray")


@dataclass(frozen=True)
class DotNode:
    id: str
    label: str
    color: str


@dataclass(frozen=True)
class DotEdge:
    source: str
    target: str
    label: str = ""


def dot_id(value: object) -> str:
    text = str(value).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{text}"'


def build_environment(template_dir: Path = TEMPLATE_DIR) -> Environment:
    # DOT is not HTML; only .html templates would be escaped
    env = Environment(
        loader=FileSystemLoader(str(template_dir)),
        autoescape=select_autoescape(["html"]),
        keep_trailing_newline=True,
    )
    env.filters["dot_id"] = dot_id
    return env


def render_dot(name: str, nodes: Sequence[DotNode], edges: Sequence[DotEdge]) -> str:
    template = build_environment().get_template("graph.dot.j2")
    return template.render(name=name, nodes=nodes, edges=edges)


def graph_to_dot(graph: HalfEdgeGraph, *, name: str = "G") -> str:
    """One DOT edge per graph edge; vertex labels pick node colours, edge labels edge labels."""
    nodes = [
        DotNode(
            id=str(v),
            label=str(v),
            color=_PALETTE[graph.vertex_label(v) % len(_PALETTE)],
        )
        for v in graph.vertices()
    ]
    edges = []
    for e in range(graph.num_edges):
        u, v = graph.endpoints(e)
        label = str(graph.edge_label(e)) if graph.edge_labels is not None else ""
        edges.append(DotEdge(source=str(u), target=str(v), label=label))
    return render_dot(name, nodes, edges)


def intersection_to_dot(data: IntersectionData, *, name: str = "intersections") -> str:
    names = data.names()
    nodes = [
        DotNode(id=n, label=n, color="red" if i < len(data.red_index) else "blue")
        for i, n in enumerate(names)
    ]
    edges = [
        DotEdge(source=names[data.graph.vertex_of[a]], target=names[data.graph.vertex_of[b]])
        for a, b in data.graph.edges
    ]
    return render_dot(name, nodes, edges)
