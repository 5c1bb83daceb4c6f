import json

import pytest

from ptmf.analysis import build_frequency, cumulative_rank, extract_critical_paths
from ptmf.fixtures import example_ndjson, example_records
from ptmf.ingest import clean, parse_responses
from ptmf.taxonomy import default_taxonomy, load_taxonomy


@pytest.fixture(scope="session")
def tax():
    return default_taxonomy()


@pytest.fixture(scope="session")
def study_records():
    return example_records()


@pytest.fixture(scope="session")
def study_ds(tax):
    records, diagnostics = parse_responses(example_ndjson(), tax)
    assert not diagnostics
    return clean(records, tax)


@pytest.fixture(scope="session")
def t1_matrix(study_ds, tax):
    return build_frequency(study_ds, "T1", tax)


@pytest.fixture(scope="session")
def t1_paths(t1_matrix):
    return extract_critical_paths(t1_matrix)


@pytest.fixture(scope="session")
def t1_report(t1_matrix):
    return cumulative_rank(t1_matrix)


def make_taxonomy(n_actors=3, techniques_per_tactic=3, n_surfaces=2, n_threats=2):
    """Small synthetic taxonomy for randomized property tests."""
    tactic_names = {
        "threat_entry_point": ["reconnaissance", "initial_access"],
        "threat_propagation": ["credential_access", "discovery", "defense_evasion"],
        "threat_result": ["collection", "impact"],
    }
    phases = []
    for phase_id in ("threat_actor", "threat_surface", "threat_entry_point", "threat_propagation", "threat_result"):
        tactics = [
            {
                "id": t,
                "display_name": t.replace("_", " ").title(),
                "techniques": [
                    {"id": f"{t}_tech{i}", "display_name": f"{t} tech {i}"} for i in range(techniques_per_tactic)
                ],
            }
            for t in tactic_names.get(phase_id, [])
        ]
        phases.append({"id": phase_id, "display_name": phase_id.replace("_", " ").title(), "tactics": tactics})
    doc = {
        "version": "test",
        "actors": [
            {"id": f"actor{i}", "display_name": f"Actor {i}", "kind": "group"} for i in range(n_actors)
        ],
        "surfaces": [{"id": f"surf{i}", "display_name": f"Surface {i}"} for i in range(n_surfaces)],
        "phases": phases,
        "threats": [{"id": f"T{i + 1}", "name": f"Threat {i + 1}", "description": ""} for i in range(n_threats)],
    }
    return load_taxonomy(json.dumps(doc))


def make_record(pid, threats, submitted_at="2025-01-01T00:00:00Z", summary="learned plenty"):
    """Raw record dict in the survey NDJSON format."""
    return {
        "participant": {
            "participant_id": pid,
            "country": "Canada",
            "education": "masters",
            "sector": "academia",
            "years_experience": 5,
            "security_skill_pct": 80.0,
            "privacy_skill_pct": 70.0,
        },
        "submitted_at": submitted_at,
        "qualifying_summary": summary,
        "threats": threats,
    }


def records_to_ndjson(records):
    return "\n".join(json.dumps(r) for r in records) + "\n"


def random_records(rng, mini_tax, n_participants, threat_id="T1", cell_prob=0.35):
    """Random raw records against a mini taxonomy (counting-oracle fodder)."""
    actor_ids = list(mini_tax.actor_ids())
    surface_ids = list(mini_tax.surface_ids())
    records = []
    for p in range(n_participants):
        mappings = []
        for actor in actor_ids:
            if rng.random() > 0.7:
                continue
            techniques = {}
            for tactic in mini_tax.tactics:
                if tactic.id in ("collection", "impact"):
                    continue
                chosen = [t for t in tactic.technique_ids() if rng.random() < cell_prob]
                if chosen:
                    techniques[tactic.id] = chosen
            mapping = {
                "actor_id": actor,
                "surfaces": [s for s in surface_ids if rng.random() < cell_prob],
                "techniques": techniques,
                "collections": [t for t in mini_tax.tactic("collection").technique_ids() if rng.random() < cell_prob],
                "impacts": [t for t in mini_tax.tactic("impact").technique_ids() if rng.random() < cell_prob],
            }
            mappings.append(mapping)
        records.append(
            make_record(
                f"p{p}",
                [{"threat_id": threat_id, "actors": mappings}],
                submitted_at=f"2025-01-01T00:{p:02d}:00Z",
            )
        )
    return records


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    lines = []
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py" in nodeid:
                name = nodeid.split("::")[-1]
                verdict = "PASS" if status == "passed" else "FAIL"
                lines.append((name, verdict))
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name, verdict in sorted(lines):
            terminalreporter.write_line(f"{verdict}  {name}")
