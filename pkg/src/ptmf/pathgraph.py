"""Weighted multipartite path graph and file exports (DOT, heatmap CSV, bundle).

Stage order is fixed: actor, surface, then the seven tactics. Edges join an
actor's cells across consecutive populated stages; the weight of an edge is
the cell count of its downstream node for that actor (per-stage frequencies;
joint frequencies would need raw co-selection data). All exports are
deterministic: identical inputs produce byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from importlib import resources

import jsonschema

from .analysis import CriticalPathSet, CumulativeReport, FrequencyMatrix, critical_top_actors
from .errors import DocumentFormatError, MismatchedThreatError, ValidationError
from .taxonomy import SURFACE_GROUP, Taxonomy

# Rank colors for the critical top 3, then fixed per-actor colors.
RANK_TOKENS = ("gray", "green", "blue")
FIXED_TOKENS = {
    "government_authority": "orange",
    "security_agent": "purple",
    "skilled_insider": "pink",
    "third_party_provider": "peach",
    "unskilled_insider": "yellow",
}
FALLBACK_TOKEN = "slate"

TOKEN_HEX = {
    "gray": "#9e9e9e",
    "green": "#4caf50",
    "blue": "#2196f3",
    "orange": "#ff9800",
    "purple": "#9c27b0",
    "pink": "#f48fb1",
    "peach": "#ffcc99",
    "yellow": "#fdd835",
    "slate": "#78909c",
}


def actor_colors(ranking: list[str], tax: Taxonomy) -> dict[str, str]:
    """Color token per actor: rank colors for the top 3, fixed colors after."""
    colors = {}
    for actor, token in zip(ranking[: len(RANK_TOKENS)], RANK_TOKENS):
        colors[actor] = token
    for actor in tax.actor_ids():
        if actor not in colors:
            colors[actor] = FIXED_TOKENS.get(actor, FALLBACK_TOKEN)
    return colors


@dataclass(frozen=True)
class GraphNode:
    id: str  # qualified id; actors use "actor/<id>"
    kind: str  # actor | surface | technique | collection | impact
    label: str
    tactic_id: str | None = None  # set for technique/collection/impact nodes


@dataclass(frozen=True)
class GraphEdge:
    src: str
    dst: str
    weight: int
    actor_id: str
    critical: bool


@dataclass(frozen=True)
class PathGraph:
    threat_id: str
    nodes: tuple[GraphNode, ...]
    edges: tuple[GraphEdge, ...]


@dataclass(frozen=True)
class HeatmapExport:
    threat_id: str
    rows: tuple[str, ...]  # actor ids
    cols: tuple[str, ...]  # qualified ids, taxonomy order
    cells: dict[tuple[str, str], int]
    annotations: frozenset[tuple[str, str]]  # starred (actor, column)
    actor_colors: dict[str, str]


def _node_kind(column: str) -> str:
    group = column.split("/", 1)[0]
    if group == SURFACE_GROUP:
        return "surface"
    if group in ("collection", "impact"):
        return group
    return "technique"


def _stage_index(tax: Taxonomy) -> dict[str, int]:
    return {g: i for i, g in enumerate(("actor",) + tax.group_order())}


def build_graph(fm: FrequencyMatrix, cps: CriticalPathSet, tax: Taxonomy, mode: str = "full") -> PathGraph:
    """Chain each actor's cells across stages.

    ``full`` includes every nonzero cell; ``critical_only`` restricts to the
    critical-path cells. An edge is critical when both endpoints lie on its
    actor's critical path (the actor node itself always does).
    """
    if fm.threat_id != cps.threat_id:
        raise MismatchedThreatError(f"matrix is for {fm.threat_id}, critical paths for {cps.threat_id}")
    if mode not in ("full", "critical_only"):
        raise ValueError(f"unknown mode '{mode}'")

    group_order = tax.group_order()
    nodes: dict[str, GraphNode] = {}
    edges: list[GraphEdge] = []

    for actor in fm.actor_counts:
        critical_cells = cps.cells(actor)
        if mode == "full":
            cells = fm.cells_for(actor)
        else:
            cells = [(c, n) for c, n in fm.cells_for(actor) if c in critical_cells]
        if not cells:
            continue

        by_group: dict[str, list[tuple[str, int]]] = {}
        for col, count in cells:
            by_group.setdefault(col.split("/", 1)[0], []).append((col, count))

        actor_node_id = f"actor/{actor}"
        nodes.setdefault(actor_node_id, GraphNode(id=actor_node_id, kind="actor", label=tax.display_name(actor)))

        prev_stage: list[tuple[str, bool]] = [(actor_node_id, True)]
        for group in group_order:
            stage = by_group.get(group)
            if not stage:
                continue
            current: list[tuple[str, bool]] = []
            for col, count in stage:
                tactic_id = None if col.startswith(f"{SURFACE_GROUP}/") else col.split("/", 1)[0]
                nodes.setdefault(
                    col, GraphNode(id=col, kind=_node_kind(col), label=tax.display_name(col), tactic_id=tactic_id)
                )
                is_crit = col in critical_cells
                current.append((col, is_crit))
                for src, src_crit in prev_stage:
                    edges.append(
                        GraphEdge(src=src, dst=col, weight=count, actor_id=actor, critical=src_crit and is_crit)
                    )
            prev_stage = current

    stage_of = _stage_index(tax)
    col_pos = {c: i for i, c in enumerate(fm.columns)}

    def node_sort(n: GraphNode):
        group = "actor" if n.kind == "actor" else n.id.split("/", 1)[0]
        return (stage_of[group], col_pos.get(n.id, -1), n.id)

    return PathGraph(
        threat_id=fm.threat_id,
        nodes=tuple(sorted(nodes.values(), key=node_sort)),
        edges=tuple(edges),
    )


# ---------------------------------------------------------------------------
# DOT export
# ---------------------------------------------------------------------------


def export_dot(g: PathGraph, colors: dict[str, str] | None = None) -> str:
    """Graphviz text: stage as a node rank attribute, weight as label and
    penwidth, actor color on critical edges."""
    if not g.nodes:
        return "digraph ptmf {}\n"
    colors = colors or {}
    stage_groups: dict[str, int] = {}
    for n in g.nodes:
        group = "actor" if n.kind == "actor" else n.id.split("/", 1)[0]
        stage_groups.setdefault(group, len(stage_groups))

    max_w = max((e.weight for e in g.edges), default=1)
    out = ["digraph ptmf {", "  rankdir=LR;", '  node [shape=box, style="rounded,filled", fillcolor=white];']
    for n in g.nodes:
        group = "actor" if n.kind == "actor" else n.id.split("/", 1)[0]
        label = n.label.replace("\\", "\\\\").replace('"', '\\"')
        out.append(f'  "{n.id}" [label="{label}", kind={n.kind}, rank={stage_groups[group]}];')
    for e in g.edges:
        pen = 1.0 + 3.0 * e.weight / max_w
        attrs = [f'label="{e.weight}"', f"penwidth={pen:.2f}", f'actor="{e.actor_id}"']
        if e.critical:
            token = colors.get(e.actor_id, FALLBACK_TOKEN)
            attrs.append(f'color="{TOKEN_HEX[token]}"')
            attrs.append("critical=true")
        out.append(f'  "{e.src}" -> "{e.dst}" [{", ".join(attrs)}];')
    out.append("}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Heatmap export
# ---------------------------------------------------------------------------


def export_heatmap(fm: FrequencyMatrix, cps: CriticalPathSet, tax: Taxonomy) -> tuple[HeatmapExport, str]:
    """Actor-by-cell count grid plus starred critical cells.

    The CSV has one header row of taxonomy-ordered qualified columns and one
    row per actor; the returned HeatmapExport carries the star annotations
    (exactly the critical-path cells) and the actor color map.
    """
    if fm.threat_id != cps.threat_id:
        raise MismatchedThreatError(f"matrix is for {fm.threat_id}, critical paths for {cps.threat_id}")
    rows = tuple(fm.actor_counts.keys())
    cols = fm.columns
    stars = frozenset((actor, col) for actor in rows for col in cps.cells(actor))
    export = HeatmapExport(
        threat_id=fm.threat_id,
        rows=rows,
        cols=cols,
        cells={(a, c): fm.count(a, c) for a in rows for c in cols},
        annotations=stars,
        actor_colors=actor_colors(critical_top_actors(cps, fm), tax),
    )
    buf = io.StringIO()
    writer = csv.writer(buf, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
    writer.writerow(["actor", *cols])
    for actor in rows:
        writer.writerow([actor, *(fm.count(actor, c) for c in cols)])
    return export, buf.getvalue()


def stars_csv(export: HeatmapExport) -> str:
    """Sidecar listing starred cells, one (actor, column, count) per row."""
    buf = io.StringIO()
    writer = csv.writer(buf, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
    writer.writerow(["actor", "column", "count"])
    for actor in export.rows:
        for col in export.cols:
            if (actor, col) in export.annotations:
                writer.writerow([actor, col, export.cells[(actor, col)]])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Bundle export
# ---------------------------------------------------------------------------

BUNDLE_SCHEMA_ID = "ptmf.bundle/1"


def canonical_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def export_bundle(
    fm: FrequencyMatrix,
    cps: CriticalPathSet,
    report: CumulativeReport,
    tax: Taxonomy,
) -> str:
    """Single per-threat document feeding the CLI exports and the dashboard."""
    if not (fm.threat_id == cps.threat_id == report.threat_id):
        raise MismatchedThreatError(
            f"inconsistent threat ids: matrix={fm.threat_id}, paths={cps.threat_id}, report={report.threat_id}"
        )
    threat = tax.threat(fm.threat_id)
    graph = build_graph(fm, cps, tax, mode="full")
    ranking = critical_top_actors(cps, fm)
    colors = actor_colors(ranking, tax)

    doc = {
        "schema": BUNDLE_SCHEMA_ID,
        "taxonomy_version": tax.version,
        "threat": {
            "id": fm.threat_id,
            "name": threat.name if threat else fm.threat_id,
            "description": threat.description if threat else "",
        },
        "participant_total": fm.participant_total,
        "columns": list(fm.columns),
        "groups": [
            {"id": SURFACE_GROUP, "display_name": "Threat Surface",
             "columns": [c for c in fm.columns if c.startswith(f"{SURFACE_GROUP}/")]},
            *({"id": t.id, "display_name": t.display_name,
               "columns": [f"{t.id}/{te.id}" for te in t.techniques]} for t in tax.tactics),
        ],
        "labels": {c: tax.display_name(c) for c in fm.columns},
        "actors": [{"id": a.id, "display_name": a.display_name, "kind": a.kind} for a in tax.actors],
        "matrix": {
            "actor_counts": dict(fm.actor_counts),
            "cells": [
                {"actor": a, "column": c, "count": n}
                for a in fm.actor_counts
                for c, n in fm.cells_for(a)
            ],
        },
        "cumulative": {
            "ranking": [[a, n] for a, n in report.actor_ranking],
            "per_tactic_top": {g: [[c, n] for c, n in cells] for g, cells in report.per_tactic_top.items()},
            "top_actors": list(report.top_actors),
        },
        "critical": {
            "paths": {
                a: {g: [[c, n] for c, n in cells] for g, cells in path.items()}
                for a, path in cps.paths.items()
            },
            "top_actors": ranking,
        },
        "colors": {a: {"token": t, "hex": TOKEN_HEX[t]} for a, t in colors.items()},
        "graph": {
            "nodes": [
                {"id": n.id, "kind": n.kind, "label": n.label, "tactic_id": n.tactic_id} for n in graph.nodes
            ],
            "edges": [
                {"src": e.src, "dst": e.dst, "weight": e.weight, "actor": e.actor_id, "critical": e.critical}
                for e in graph.edges
            ],
        },
        "surface_links": {t: sorted(s) for t, s in sorted(fm.surface_links.items())},
    }
    return canonical_json(doc)


def bundle_schema() -> dict:
    text = resources.files("ptmf").joinpath("schemas/bundle.schema.json").read_text("utf-8")
    return json.loads(text)


def validate_bundle(doc: dict) -> None:
    """Schema-check a parsed bundle; raises ValidationError on mismatch."""
    try:
        jsonschema.validate(doc, bundle_schema())
    except jsonschema.ValidationError as e:
        raise ValidationError(f"bundle schema violation at {'/'.join(map(str, e.path))}: {e.message}") from e


def load_bundle(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentFormatError(f"malformed bundle: {e.msg}", e.lineno, e.colno) from e
    validate_bundle(doc)
    return doc


def matrix_from_bundle(doc: dict) -> FrequencyMatrix:
    """Rebuild the frequency view a bundle was exported from (for scoring)."""
    cells = {(c["actor"], c["column"]): c["count"] for c in doc["matrix"]["cells"]}
    return FrequencyMatrix(
        threat_id=doc["threat"]["id"],
        actor_counts=dict(doc["matrix"]["actor_counts"]),
        cell_counts=cells,
        participant_total=doc["participant_total"],
        columns=tuple(doc["columns"]),
        surface_links={t: frozenset(s) for t, s in doc.get("surface_links", {}).items()},
    )
