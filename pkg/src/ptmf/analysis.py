"""Frequency matrices, cumulative impact rankings, and per-actor critical paths.

A cell is a (actor, qualified id) pair where the qualified id is
"surface/<id>" or "<tactic>/<technique>"; collection and impact entries are
ordinary tactic cells. Each retained participant contributes at most one
count per cell. All operations are pure and deterministic; ranking ties are
broken by taxonomy declaration order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import UnknownThreatError
from .ingest import CleanDataset
from .taxonomy import SURFACE_GROUP, Taxonomy, validate_reference

DEFAULT_TOP_K = 3


@dataclass
class FrequencyMatrix:
    threat_id: str
    actor_counts: dict[str, int]  # taxonomy order, zero-filled
    cell_counts: dict[tuple[str, str], int]  # sparse: only nonzero cells
    participant_total: int
    columns: tuple[str, ...]  # qualified ids in taxonomy order
    # technique -> surfaces it co-occurred with inside one participant's
    # mapping of one actor; drives risk-surface attribution downstream.
    surface_links: dict[str, frozenset[str]] = field(default_factory=dict)

    def count(self, actor_id: str, column: str) -> int:
        return self.cell_counts.get((actor_id, column), 0)

    def column_total(self, column: str) -> int:
        return sum(self.cell_counts.get((a, column), 0) for a in self.actor_counts)

    def cells_for(self, actor_id: str) -> list[tuple[str, int]]:
        """Nonzero cells of one actor in column order."""
        return [(c, self.cell_counts[(actor_id, c)]) for c in self.columns if (actor_id, c) in self.cell_counts]


@dataclass(frozen=True)
class CumulativeReport:
    threat_id: str
    actor_ranking: tuple[tuple[str, int], ...]  # descending totals
    per_tactic_top: dict[str, tuple[tuple[str, int], ...]]  # group -> co-leaders
    top_actors: tuple[str, ...]  # top-k with boundary ties, rank order


@dataclass(frozen=True)
class CriticalPathSet:
    threat_id: str
    # actor -> group -> tuple of (qualified id, count); only the per-group
    # maxima, all ties included, zero-count cells never present.
    paths: dict[str, dict[str, tuple[tuple[str, int], ...]]]

    def cells(self, actor_id: str) -> set[str]:
        return {qid for group in self.paths.get(actor_id, {}).values() for qid, _ in group}


def _mapping_cells(mapping) -> set[str]:
    cells = {f"{SURFACE_GROUP}/{s}" for s in mapping.surface_ids}
    for tactic_id, techs in mapping.techniques:
        cells.update(f"{tactic_id}/{t}" for t in techs)
    cells.update(f"collection/{c}" for c in mapping.collection_ids)
    cells.update(f"impact/{i}" for i in mapping.impact_ids)
    return cells


def build_frequency(ds: CleanDataset, threat_id: str, tax: Taxonomy) -> FrequencyMatrix:
    """Count per-actor selections and per-cell attributions for one threat."""
    if not validate_reference(tax, "threat", threat_id):
        raise UnknownThreatError(f"unknown threat '{threat_id}'")

    actor_counts = {a: 0 for a in tax.actor_ids()}
    cell_counts: dict[tuple[str, str], int] = {}
    links: dict[str, set[str]] = {}
    participant_total = 0

    for response in ds.responses:
        selections = response.selections()
        if threat_id not in selections:
            continue
        participant_total += 1
        for mapping in selections[threat_id]:
            actor_counts[mapping.actor_id] += 1
            for cell in _mapping_cells(mapping):
                key = (mapping.actor_id, cell)
                cell_counts[key] = cell_counts.get(key, 0) + 1
                if not cell.startswith(f"{SURFACE_GROUP}/"):
                    links.setdefault(cell, set()).update(mapping.surface_ids)

    return FrequencyMatrix(
        threat_id=threat_id,
        actor_counts=actor_counts,
        cell_counts=cell_counts,
        participant_total=participant_total,
        columns=tax.columns(),
        surface_links={t: frozenset(s) for t, s in links.items() if s},
    )


def _group_of(column: str) -> str:
    return column.split("/", 1)[0]


def _ranked(pairs: list[tuple[str, int]]) -> list[tuple[str, int]]:
    """Stable descending sort; equal totals keep declaration order."""
    return sorted(pairs, key=lambda kv: -kv[1])


def _top_with_ties(ranked: list[tuple[str, int]], k: int) -> tuple[str, ...]:
    if not ranked:
        return ()
    if len(ranked) <= k:
        return tuple(a for a, _ in ranked)
    boundary = ranked[k - 1][1]
    return tuple(a for a, total in ranked if total >= boundary)


def cumulative_rank(fm: FrequencyMatrix, k: int = DEFAULT_TOP_K) -> CumulativeReport:
    """Rank actors by summed selections; identify per-tactic technique leaders.

    ``top_actors`` is the first k ranks with all boundary ties included.
    Per-tactic leaders sum counts over all actors and include every
    co-maximal technique with a nonzero total.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    ranking = _ranked(list(fm.actor_counts.items()))

    per_group: dict[str, tuple[tuple[str, int], ...]] = {}
    groups: dict[str, list[tuple[str, int]]] = {}
    for col in fm.columns:
        groups.setdefault(_group_of(col), []).append((col, fm.column_total(col)))
    for group, totals in groups.items():
        best = max((t for _, t in totals), default=0)
        per_group[group] = tuple((c, t) for c, t in totals if t == best and t > 0)

    return CumulativeReport(
        threat_id=fm.threat_id,
        actor_ranking=tuple(ranking),
        per_tactic_top=per_group,
        top_actors=_top_with_ties(ranking, k),
    )


def extract_critical_paths(fm: FrequencyMatrix) -> CriticalPathSet:
    """Per actor and per group, the maximum-frequency cells (ties all included).

    Actors with no selections get an empty path; groups where the actor
    reported nothing are absent. Zero-count cells are never critical.
    """
    paths: dict[str, dict[str, tuple[tuple[str, int], ...]]] = {}
    for actor, total in fm.actor_counts.items():
        path: dict[str, tuple[tuple[str, int], ...]] = {}
        if total > 0:
            by_group: dict[str, list[tuple[str, int]]] = {}
            for col, count in fm.cells_for(actor):
                by_group.setdefault(_group_of(col), []).append((col, count))
            for group in dict.fromkeys(_group_of(c) for c in fm.columns):
                cells = by_group.get(group)
                if not cells:
                    continue
                best = max(c for _, c in cells)
                path[group] = tuple((col, c) for col, c in cells if c == best)
        paths[actor] = path
    return CriticalPathSet(threat_id=fm.threat_id, paths=paths)


def critical_top_actors(cps: CriticalPathSet, fm: FrequencyMatrix, k: int = DEFAULT_TOP_K) -> list[str]:
    """Actors ranked by the sum of their critical-path cell counts.

    Distinct from cumulative ranking: heavy tie groups and tall maxima can
    promote an actor whose raw selection count is lower. Zero-sum actors
    are excluded; boundary ties are included.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    sums = []
    for actor in fm.actor_counts:
        total = sum(count for group in cps.paths.get(actor, {}).values() for _, count in group)
        if total > 0:
            sums.append((actor, total))
    ranked = _ranked(sums)
    return list(_top_with_ties(ranked, k))
