# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional

import typer
import yaml
from pydantic import ValidationError

from systoleforge.analysis.criticality import criticality_report
from systoleforge.analysis.determinants import exact_determinant, sampled_oracle_check
from systoleforge.analysis.intersection import (
    adjacency_graph,
    intersection_adjacency,
    intersection_data,
)
from systoleforge.assembly.block import build_block
from systoleforge.assembly.curves import expected_systole_count, trace_curves
from systoleforge.assembly.surface import AssembledSurface, assemble
from systoleforge.config import ForgeConfig, default_config_path
from systoleforge.covers.certify import CertificationFailed, certify_girth_doubling
from systoleforge.covers.coloring import ColoredGluingGraph
from systoleforge.covers.homology import collapse_tower, homology_tower, mod2_homology_cover
from systoleforge.errors import ForgeError
from systoleforge.graphs.halfedge import theta_graph
from systoleforge.maps.catalog import catalog
from systoleforge.maps.rotation import RotationMap, map_genus, map_type
from systoleforge.pipeline.examples import theta_gluing
from systoleforge.pipeline.export import export_object
from systoleforge.pipeline.lemmas import verify_lemmas
from systoleforge.pipeline.reproduce import reproduce as run_reproduction
from systoleforge.storage.documents import (
    ColoredGraphDocument,
    CoverDocument,
    GraphDocument,
    MapDocument,
    SurfaceDocument,
    dump_document,
    format_real,
    read_document,
    write_document,
)
from systoleforge.storage.report_store import ReportStore, RunReport, content_digest

app = typer.Typer(help="Build hyperbolic surfaces with many systoles and analyse them")
maps_app = typer.Typer(help="Emit maps from the catalog")
cover_app = typer.Typer(help="Build and certify girth-doubling covers")
app.add_typer(maps_app, name="maps")
app.add_typer(cover_app, name="cover")

logger = logging.getLogger(__name__)


def _load_config(path: Optional[Path]) -> ForgeConfig:
    config_path = path or default_config_path()
    if path is None and not config_path.exists():
        return ForgeConfig()
    try:
        return ForgeConfig.load(config_path)
    except FileNotFoundError as exc:
        raise typer.BadParameter(str(exc)) from exc
    except (ValueError, yaml.YAMLError) as exc:
        raise typer.BadParameter(
            f"Failed to load config '{config_path}': {exc}"
        ) from exc


def _with_overrides(config: ForgeConfig, **flags: object) -> ForgeConfig:
    update = {key: value for key, value in flags.items() if value is not None}
    return config.model_copy(update=update) if update else config


def _configure_logging(
    *, debug: bool, info: bool, warn: bool, logfile: Optional[Path]
) -> None:
    if debug:
        level = logging.DEBUG
    elif info:
        level = logging.INFO
    elif warn:
        level = logging.WARNING
    else:
        level = logging.INFO
    handlers: list[logging.Handler] = []
    if logfile:
        handlers.append(logging.FileHandler(logfile))
    else:
        handlers.append(logging.StreamHandler())
    logging.basicConfig(
        level=level,
        handlers=handlers,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        typer.echo(text)
        return
    try:
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(text + "\n", encoding="utf-8")
    except OSError as exc:
        raise typer.BadParameter(f"cannot write {output}: {exc}") from exc


def _finish(report: RunReport, path: Optional[Path], config: ForgeConfig) -> None:
    """Write the report, then exit 1 if any clause failed."""
    try:
        if path is not None:
            write_document(path, report)
            written = path
        else:
            written = ReportStore(config.report_directory).save(report)
    except OSError as exc:
        raise typer.BadParameter(f"cannot write report: {exc}") from exc
    logger.info("report written to %s", written)
    for clause in report.clauses:
        typer.echo(f"{clause.status:>6}  {clause.name}  {clause.anchor}")
    if not report.passed:
        raise typer.Exit(code=1)


def _parse_map(spec: str) -> RotationMap:
    path = Path(spec)
    if path.suffix == ".json":
        if not path.exists():
            raise typer.BadParameter(f"map file not found: {path}")
        try:
            return read_document(path, MapDocument).to_map()
        except (OSError, ValidationError, ValueError) as exc:
            raise typer.BadParameter(f"invalid map document '{path}': {exc}") from exc
    name, _, raw = spec.partition(":")
    try:
        args = [int(a) for a in raw.split(":") if a]
        return catalog(name, *args)
    except (ForgeError, ValueError) as exc:
        raise typer.BadParameter(f"unknown map '{spec}': {exc}") from exc


def _parse_gluing(spec: str, config: ForgeConfig) -> ColoredGluingGraph:
    path = Path(spec)
    if path.suffix == ".json":
        if not path.exists():
            raise typer.BadParameter(f"graph file not found: {path}")
        try:
            return read_document(path, ColoredGraphDocument).to_colored()
        except (OSError, ValidationError, ValueError, ForgeError) as exc:
            raise typer.BadParameter(f"invalid gluing document '{path}': {exc}") from exc
    kind, _, raw = spec.partition(":")
    if kind != "theta":
        raise typer.BadParameter(f"gluing graphs are theta:<d>[:<levels>] or a JSON file, got '{spec}'")
    try:
        parts = [int(a) for a in raw.split(":") if a]
        d, levels = parts[0], parts[1] if len(parts) > 1 else 0
        return theta_gluing(d, levels, max_cover_size=config.max_cover_size)
    except (IndexError, ValueError, ForgeError) as exc:
        raise typer.BadParameter(f"invalid gluing '{spec}': {exc}") from exc


def _assemble(map_spec: str, graph_spec: str, config: ForgeConfig) -> AssembledSurface:
    block = build_block(_parse_map(map_spec))
    return assemble(block, _parse_gluing(graph_spec, config))


@maps_app.command("emit")
def maps_emit(
    name: str = typer.Argument(..., help="Catalog name, optionally with ':' arguments"),
    output: Optional[Path] = typer.Option(None, "--output"),
    debug: bool = typer.Option(False, "--debug"),
    info: bool = typer.Option(False, "--info"),
    warn: bool = typer.Option(False, "--warn"),
    logfile: Optional[Path] = typer.Option(None, "--logfile"),
) -> None:
    """Write a catalog map as a JSON map document."""
    _configure_logging(debug=debug, info=info, warn=warn, logfile=logfile)
    m = _parse_map(name)
    kind = map_type(m)
    logger.info("map %s: type {%d,%d}, genus %d", name, kind.p, kind.q, map_genus(m))
    _emit(dump_document(MapDocument.from_map(m)), output)


@cover_app.command("double")
def cover_double(
    theta: Optional[int] = typer.Option(None, "--theta", help="Start from the theta graph with this many edges"),
    graph: Optional[Path] = typer.Option(None, "--graph", help="Start from a JSON graph document"),
    levels: int = typer.Option(1, "--levels", min=1),
    output: Optional[Path] = typer.Option(None, "--output"),
    config: Optional[Path] = typer.Option(None, "--config"),
    max_cover_size: Optional[int] = typer.Option(None, "--max-cover-size"),
    debug: bool = typer.Option(False, "--debug"),
    info: bool = typer.Option(False, "--info"),
    warn: bool = typer.Option(False, "--warn"),
    logfile: Optional[Path] = typer.Option(None, "--logfile"),
) -> None:
    """Build iterated mod-2 homology covers."""
    _configure_logging(debug=debug, info=info, warn=warn, logfile=logfile)
    site = _with_overrides(_load_config(config), max_cover_size=max_cover_size)
    if (theta is None) == (graph is None):
        raise typer.BadParameter("give exactly one of --theta and --graph")
    if graph is not None:
        try:
            base = read_document(graph, GraphDocument).to_graph()
        except (OSError, ValidationError, ValueError) as exc:
            raise typer.BadParameter(f"invalid graph document '{graph}': {exc}") from exc
    else:
        base = theta_graph(theta)
    if levels == 1:
        cover = mod2_homology_cover(base, max_cover_size=site.max_cover_size)
    else:
        cover = collapse_tower(homology_tower(base, levels, max_cover_size=site.max_cover_size))
    _emit(dump_document(CoverDocument.from_cover(cover)), output)


@cover_app.command("certify")
def cover_certify(
    cover_path: Path = typer.Option(..., "--cover", help="JSON cover document"),
    report: Optional[Path] = typer.Option(None, "--report"),
    config: Optional[Path] = typer.Option(None, "--config"),
    debug: bool = typer.Option(False, "--debug"),
    info: bool = typer.Option(False, "--info"),
    warn: bool = typer.Option(False, "--warn"),
    logfile: Optional[Path] = typer.Option(None, "--logfile"),
) -> None:
    """Certify that a covering doubles the girth."""
    _configure_logging(debug=debug, info=info, warn=warn, logfile=logfile)
    site = _load_config(config)
    try:
        raw = cover_path.read_text(encoding="utf-8")
        cover = CoverDocument.model_validate_json(raw).to_cover()
    except (OSError, ValidationError, ValueError) as exc:
        raise typer.BadParameter(f"invalid cover document '{cover_path}': {exc}") from exc
    result = RunReport(command="cover certify", inputs={"cover": content_digest(raw)})
    anchor = "girth cycles of the cover project to squares of base girth cycles"
    try:
        certificate = certify_girth_doubling(cover, max_girth=site.max_girth_cycles_length)
    except CertificationFailed as exc:
        result.add(exc.clause, anchor, False, witness=exc.witness, error=exc)
    else:
        for clause in certificate.clauses:
            result.add(
                clause.name,
                anchor,
                True,
                witness=clause.detail,
                waived=clause.status != "pass",
            )
    _finish(result, report, site)


@app.command("assemble")
def assemble_command(
    map_spec: str = typer.Option(..., "--map", help="Catalog name or JSON map document"),
    graph_spec: str = typer.Option(..., "--graph", help="theta:<d>[:<levels>] or JSON gluing document"),
    output: Optional[Path] = typer.Option(None, "--report", "--output", help="Surface document path"),
    config: Optional[Path] = typer.Option(None, "--config"),
    max_cover_size: Optional[int] = typer.Option(None, "--max-cover-size"),
    debug: bool = typer.Option(False, "--debug"),
    info: bool = typer.Option(False, "--info"),
    warn: bool = typer.Option(False, "--warn"),
    logfile: Optional[Path] = typer.Option(None, "--logfile"),
) -> None:
    """Glue block copies along a coloured gluing graph and write the surface document."""
    _configure_logging(debug=debug, info=info, warn=warn, logfile=logfile)
    site = _with_overrides(_load_config(config), max_cover_size=max_cover_size)
    try:
        x = _assemble(map_spec, graph_spec, site)
        curves = trace_curves(x)
    except ForgeError as exc:
        raise typer.BadParameter(str(exc)) from exc
    _emit(dump_document(SurfaceDocument.from_surface(x, curves)), output)


@app.command("analyze")
def analyze(
    map_spec: str = typer.Option(..., "--map"),
    graph_spec: str = typer.Option(..., "--graph"),
    theta: Optional[float] = typer.Option(None, "--theta"),
    tolerance: Optional[float] = typer.Option(None, "--tolerance"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    max_cover_size: Optional[int] = typer.Option(None, "--max-cover-size"),
    report: Optional[Path] = typer.Option(None, "--report"),
    config: Optional[Path] = typer.Option(None, "--config"),
    debug: bool = typer.Option(False, "--debug"),
    info: bool = typer.Option(False, "--info"),
    warn: bool = typer.Option(False, "--warn"),
    logfile: Optional[Path] = typer.Option(None, "--logfile"),
) -> None:
    """Intersection matrix, exact determinants and criticality bounds of a surface."""
    _configure_logging(debug=debug, info=info, warn=warn, logfile=logfile)
    site = _with_overrides(
        _load_config(config),
        theta=theta,
        tolerance=tolerance,
        seed=seed,
        max_cover_size=max_cover_size,
    )
    try:
        m = _parse_map(map_spec)
        gluing = _parse_gluing(graph_spec, site)
        x = assemble(build_block(m), gluing)
        curves = trace_curves(x)
        data = intersection_data(x, curves)
    except ForgeError as exc:
        raise typer.BadParameter(str(exc)) from exc
    critical = criticality_report(x, site.theta, data=data)
    result = RunReport(
        command="analyze",
        inputs={
            "map": content_digest(dump_document(MapDocument.from_map(m))),
            "graph": content_digest(dump_document(ColoredGraphDocument.from_colored(gluing))),
            "theta": format_real(site.theta),
            "seed": str(site.seed),
        },
    )
    result.add(
        "systole_count",
        "traced red and blue curves match the count formula",
        len(curves) == expected_systole_count(x),
        red=len(curves.red),
        blue=len(curves.blue),
    )
    if len(curves.red) == len(curves.blue):
        result.add(
            "det_a",
            "exact determinant of the red-by-blue intersection matrix",
            True,
            det_a=exact_determinant(data.matrix),
        )
    result.add(
        "criticality",
        critical.caveat,
        True,
        genus=critical.genus,
        det_dtilde=critical.det_dtilde,
        rank_dtilde=critical.rank_dtilde,
        index_upper_bound=critical.index_upper_bound,
        codimension_bound=critical.codimension_bound,
        dimension_lower_bound=critical.dimension_lower_bound,
        theta_dependence=critical.theta_dependence,
    )
    sample = sampled_oracle_check(
        adjacency_graph(intersection_adjacency(data)),
        seed=site.seed,
        max_vertices=site.max_elementary_vertices,
    )
    result.add(
        "sampled_determinant_oracle",
        "elementary subgraph expansion agrees with elimination on random induced subgraphs",
        not sample.mismatches,
        witness=sample.mismatches[0] if sample.mismatches else "",
        seed=sample.seed,
        samples=len(sample.subsets),
        mismatches=len(sample.mismatches),
    )
    _finish(result, report, site)


@app.command("reproduce")
def reproduce(
    example: str = typer.Argument(..., help="chain(g), k5, beachball_theta(q), cube_cover or doubled_theta_tower(d, n)"),
    report: Optional[Path] = typer.Option(None, "--report"),
    config: Optional[Path] = typer.Option(None, "--config"),
    tolerance: Optional[float] = typer.Option(None, "--tolerance"),
    max_cover_size: Optional[int] = typer.Option(None, "--max-cover-size"),
    debug: bool = typer.Option(False, "--debug"),
    info: bool = typer.Option(False, "--info"),
    warn: bool = typer.Option(False, "--warn"),
    logfile: Optional[Path] = typer.Option(None, "--logfile"),
) -> None:
    """Run the full pipeline on a named example and check its known numbers."""
    _configure_logging(debug=debug, info=info, warn=warn, logfile=logfile)
    site = _with_overrides(
        _load_config(config), tolerance=tolerance, max_cover_size=max_cover_size
    )
    try:
        result = run_reproduction(example, site)
    except (ForgeError, ValueError) as exc:
        raise typer.BadParameter(str(exc)) from exc
    _finish(result, report, site)


@app.command("verify-lemmas")
def verify_lemmas_command(
    q_min: int = typer.Option(3, "--q-min"),
    q_max: int = typer.Option(12, "--q-max"),
    report: Optional[Path] = typer.Option(None, "--report"),
    config: Optional[Path] = typer.Option(None, "--config"),
    debug: bool = typer.Option(False, "--debug"),
    info: bool = typer.Option(False, "--info"),
    warn: bool = typer.Option(False, "--warn"),
    logfile: Optional[Path] = typer.Option(None, "--logfile"),
) -> None:
    """Numerically check the right-angled polygon facts for q in a range."""
    _configure_logging(debug=debug, info=info, warn=warn, logfile=logfile)
    site = _load_config(config)
    try:
        result = verify_lemmas(range(q_min, q_max + 1), site)
    except ForgeError as exc:
        raise typer.BadParameter(str(exc)) from exc
    _finish(result, report, site)


@app.command("export")
def export(
    target: str = typer.Argument(..., help="surface:<example>, intersections:<example>, cover:<d>[:<levels>], polygon:<q> or report:<example>"),
    fmt: str = typer.Option("json", "--format"),
    output: Optional[Path] = typer.Option(None, "--output"),
    config: Optional[Path] = typer.Option(None, "--config"),
    debug: bool = typer.Option(False, "--debug"),
    info: bool = typer.Option(False, "--info"),
    warn: bool = typer.Option(False, "--warn"),
    logfile: Optional[Path] = typer.Option(None, "--logfile"),
) -> None:
    """Write a named object as JSON or DOT."""
    _configure_logging(debug=debug, info=info, warn=warn, logfile=logfile)
    site = _load_config(config)
    try:
        text = export_object(target, fmt, site)
    except (ForgeError, ValueError) as exc:
        raise typer.BadParameter(str(exc)) from exc
    _emit(text, output)


if __name__ == "__main__":
    app()
