import random

import pytest

from conftest import make_record, make_taxonomy, random_records, records_to_ndjson
from oracles import argmax_paths, brute_force_counts, critical_sum_ranking
from ptmf.analysis import build_frequency, critical_top_actors, cumulative_rank, extract_critical_paths
from ptmf.errors import UnknownThreatError
from ptmf.ingest import clean, parse_responses


def _dataset(records, tax):
    parsed, _ = parse_responses(records_to_ndjson(records) if records else "", tax)
    return clean(parsed, tax)


def test_unknown_threat(tax, study_ds):
    with pytest.raises(UnknownThreatError):
        build_frequency(study_ds, "T99", tax)


def test_empty_dataset_zero_matrix(tax):
    fm = build_frequency(_dataset([], tax), "T1", tax)
    assert fm.participant_total == 0
    assert fm.cell_counts == {}
    assert all(v == 0 for v in fm.actor_counts.values())


def test_single_mapping_single_cell(tax):
    records = [make_record("p1", [{"threat_id": "T1", "actors": [{
        "actor_id": "cloud_provider", "surfaces": [], "techniques": {"discovery": ["linked_data"]},
        "collections": [], "impacts": []}]}])]
    fm = build_frequency(_dataset(records, tax), "T1", tax)
    assert fm.count("cloud_provider", "discovery/linked_data") == 1
    assert sum(fm.cell_counts.values()) == 1
    assert fm.actor_counts["cloud_provider"] == 1
    assert fm.participant_total == 1


def test_matrix_matches_brute_force_on_synthetic(study_records, tax):
    fm = build_frequency(_dataset(study_records, tax), "T1", tax)
    actor_counts, cell_counts, total = brute_force_counts(study_records, "T1")
    assert fm.participant_total == total
    for actor in tax.actor_ids():
        assert fm.actor_counts[actor] == actor_counts.get(actor, 0)
    assert {k: v for k, v in fm.cell_counts.items()} == cell_counts


def test_matrix_matches_brute_force_random():
    mini = make_taxonomy(n_actors=3, techniques_per_tactic=3)
    rng = random.Random(42)
    for trial in range(30):
        records = random_records(rng, mini, n_participants=rng.randint(1, 10))
        fm = build_frequency(_dataset(records, mini), "T1", mini)
        actor_counts, cell_counts, total = brute_force_counts(records, "T1")
        assert fm.participant_total == total
        assert {a: c for a, c in fm.actor_counts.items() if c} == actor_counts
        assert dict(fm.cell_counts) == cell_counts


def test_permutation_invariance(study_records, tax):
    fm = build_frequency(_dataset(study_records, tax), "T1", tax)
    shuffled = list(study_records)
    random.Random(7).shuffle(shuffled)
    fm2 = build_frequency(_dataset(shuffled, tax), "T1", tax)
    assert fm.cell_counts == fm2.cell_counts
    assert fm.actor_counts == fm2.actor_counts
    assert extract_critical_paths(fm) == extract_critical_paths(fm2)
    assert cumulative_rank(fm) == cumulative_rank(fm2)


def test_cumulative_ranking_fixture(t1_matrix):
    report = cumulative_rank(t1_matrix)
    assert [a for a, _ in report.actor_ranking[:3]] == ["cloud_provider", "service_provider", "third_party_provider"]
    assert report.top_actors == ("cloud_provider", "service_provider", "third_party_provider")


def test_cumulative_tie_at_boundary_includes_all(tax):
    records = [
        make_record(f"p{i}", [{"threat_id": "T1", "actors": [
            {"actor_id": a, "surfaces": [], "techniques": {}, "collections": [], "impacts": []}
            for a in tax.actor_ids()
        ]}])
        for i in range(2)
    ]
    fm = build_frequency(_dataset(records, tax), "T1", tax)
    report = cumulative_rank(fm, k=3)
    assert set(report.top_actors) == set(tax.actor_ids())  # full tie


def test_cumulative_single_actor(tax):
    records = [make_record("p1", [{"threat_id": "T1", "actors": [{
        "actor_id": "security_agent", "surfaces": [], "techniques": {}, "collections": [], "impacts": []}]}])]
    fm = build_frequency(_dataset(records, tax), "T1", tax)
    report = cumulative_rank(fm, k=3)
    assert report.actor_ranking[0] == ("security_agent", 1)
    assert report.top_actors[0] == "security_agent"


def test_per_tactic_top_sums_over_actors(t1_matrix):
    report = cumulative_rank(t1_matrix)
    recon = dict(report.per_tactic_top)["reconnaissance"]
    # collection of users' information dominates reconnaissance totals
    assert recon[0][0] == "reconnaissance/collection_of_users_information"
    totals = {c: t1_matrix.column_total(c) for c in t1_matrix.columns if c.startswith("reconnaissance/")}
    assert recon[0][1] == max(totals.values())


def test_critical_unique_argmax(tax):
    records = []
    for i in range(5):
        techs = ["linked_data"] if i < 5 else []
        records.append(make_record(f"p{i}", [{"threat_id": "T1", "actors": [{
            "actor_id": "cloud_provider", "surfaces": [],
            "techniques": {"discovery": techs + (["linkable_data"] if i < 3 else [])},
            "collections": [], "impacts": []}]}]))
    fm = build_frequency(_dataset(records, tax), "T1", tax)
    cps = extract_critical_paths(fm)
    assert cps.paths["cloud_provider"]["discovery"] == (("discovery/linked_data", 5),)


def test_critical_tie_includes_both(tax):
    records = [
        make_record(f"p{i}", [{"threat_id": "T1", "actors": [{
            "actor_id": "cloud_provider", "surfaces": [],
            "techniques": {"discovery": ["linked_data", "linkable_data"]},
            "collections": [], "impacts": []}]}])
        for i in range(5)
    ]
    fm = build_frequency(_dataset(records, tax), "T1", tax)
    cells = {c for c, _ in extract_critical_paths(fm).paths["cloud_provider"]["discovery"]}
    assert cells == {"discovery/linked_data", "discovery/linkable_data"}


def test_critical_path_t1_cloud_provider(t1_paths):
    path = t1_paths.paths["cloud_provider"]
    assert {c for c, _ in path["discovery"]} == {"discovery/linked_data"}
    assert {c for c, _ in path["defense_evasion"]} == {"defense_evasion/improper_personal_data_management"}
    assert {"collection/users_behavior_data", "collection/location_information"} <= {c for c, _ in path["collection"]}
    assert {"impact/invasion_of_online_privacy", "impact/misuse_of_sensitive_information"} <= {
        c for c, _ in path["impact"]
    }


def test_critical_zero_actor_empty_path(tax):
    records = [make_record("p1", [{"threat_id": "T1", "actors": [{
        "actor_id": "cloud_provider", "surfaces": ["data_storage"], "techniques": {},
        "collections": [], "impacts": []}]}])]
    fm = build_frequency(_dataset(records, tax), "T1", tax)
    cps = extract_critical_paths(fm)
    assert cps.paths["skilled_insider"] == {}
    assert cps.paths["cloud_provider"] == {"surface": (("surface/data_storage", 1),)}


def test_critical_quantified_invariant(t1_matrix, t1_paths):
    # t in path(a, g) iff count(a, t) equals the group max and is positive
    by_group: dict[tuple[str, str], list[int]] = {}
    for (actor, col), count in t1_matrix.cell_counts.items():
        by_group.setdefault((actor, col.split("/", 1)[0]), []).append(count)
    for actor in t1_matrix.actor_counts:
        crit = t1_paths.cells(actor)
        for col in t1_matrix.columns:
            count = t1_matrix.count(actor, col)
            group_max = max(by_group.get((actor, col.split("/", 1)[0]), [0]))
            expected = count > 0 and count == group_max
            assert (col in crit) == expected, (actor, col)


def test_critical_ranking_fixture(t1_matrix, t1_paths):
    assert critical_top_actors(t1_paths, t1_matrix) == ["cloud_provider", "skilled_outsider", "service_provider"]


def test_critical_ranking_all_zero(tax):
    fm = build_frequency(_dataset([], tax), "T1", tax)
    assert critical_top_actors(extract_critical_paths(fm), fm) == []


def test_critical_ranking_matches_oracle_random():
    mini = make_taxonomy(n_actors=4, techniques_per_tactic=4)
    rng = random.Random(99)
    for trial in range(30):
        records = random_records(rng, mini, n_participants=rng.randint(1, 10))
        fm = build_frequency(_dataset(records, mini), "T1", mini)
        cps = extract_critical_paths(fm)
        expected = critical_sum_ranking(dict(fm.cell_counts), list(fm.actor_counts))
        got = critical_top_actors(cps, fm, k=len(mini.actors))
        assert got == expected


def test_critical_paths_match_argmax_oracle_random():
    mini = make_taxonomy(n_actors=4, techniques_per_tactic=4)
    rng = random.Random(2024)
    for trial in range(50):
        records = random_records(rng, mini, n_participants=rng.randint(1, 10))
        fm = build_frequency(_dataset(records, mini), "T1", mini)
        cps = extract_critical_paths(fm)
        oracle = argmax_paths(dict(fm.cell_counts))
        for actor in mini.actor_ids():
            got = {g: {c for c, _ in cells} for g, cells in cps.paths.get(actor, {}).items()}
            assert got == oracle.get(actor, {}), f"trial {trial}, actor {actor}"


def test_monotonicity_adding_response(tax, study_records):
    ds = _dataset(study_records, tax)
    fm = build_frequency(ds, "T1", tax)
    before = fm.count("cloud_provider", "discovery/linked_data")
    assert {c for c, _ in extract_critical_paths(fm).paths["cloud_provider"]["discovery"]} == {"discovery/linked_data"}

    extra = make_record("extra", [{"threat_id": "T1", "actors": [{
        "actor_id": "cloud_provider", "surfaces": [], "techniques": {"discovery": ["linked_data"]},
        "collections": [], "impacts": []}]}])
    fm2 = build_frequency(_dataset(study_records + [extra], tax), "T1", tax)
    assert fm2.count("cloud_provider", "discovery/linked_data") == before + 1
    # the unique maximum can only grow stronger
    assert {c for c, _ in extract_critical_paths(fm2).paths["cloud_provider"]["discovery"]} == {"discovery/linked_data"}


def test_surface_links_recorded(t1_matrix):
    # cloud provider mapped data storage alongside linked data in the corpus
    assert "surface/data_storage" not in t1_matrix.surface_links
    assert "data_storage" in t1_matrix.surface_links["discovery/linked_data"]


def test_critical_paths_of_all_top_actors_match_intended_rows(t1_paths):
    # the corpus encodes full per-actor rows; verify the other two top
    # actors' paths, not just the leader's
    so = t1_paths.paths["skilled_outsider"]
    assert {c for c, _ in so["surface"]} == {"surface/communication_link"}
    assert {c for c, _ in so["reconnaissance"]} == {
        "reconnaissance/collection_of_users_information",
        "reconnaissance/vulnerability_scanning_of_iot_network",
        "reconnaissance/gathering_of_iot_network_function",
        "reconnaissance/searching_open_technical_database_for_digital_certificates",
    }
    assert {c for c, _ in so["initial_access"]} == {"initial_access/through_stolen_user_or_device_login_credentials"}
    assert {c for c, _ in so["discovery"]} == {
        "discovery/linked_data",
        "discovery/identified_information",
        "discovery/detection_through_trans_action_side_effect",
    }
    assert {c for c, _ in so["defense_evasion"]} == {"defense_evasion/lack_of_data_subject_control"}
    assert {c for c, _ in so["impact"]} == {"impact/unauthorized_access"}

    sp = t1_paths.paths["service_provider"]
    assert {c for c, _ in sp["surface"]} == {"surface/user_user_device"}
    assert {c for c, _ in sp["initial_access"]} == {
        "initial_access/access_through_the_gateway",
        "initial_access/access_through_the_iot_layer",
    }
    assert {c for c, _ in sp["credential_access"]} == {"credential_access/involved_parties_and_exposure"}
    assert {c for c, _ in sp["defense_evasion"]} == {
        "defense_evasion/lack_of_data_subject_control",
        "defense_evasion/regulatory_non_compliance",
        "defense_evasion/improper_personal_data_management",
    }
    assert {c for c, _ in sp["collection"]} == {
        "collection/communication_patterns",
        "collection/users_behavior_data",
    }
    assert {c for c, _ in sp["impact"]} == {
        "impact/invasion_of_online_privacy",
        "impact/unwanted_tracking",
    }


def test_cloud_provider_initial_access_tie(t1_paths):
    cloud = t1_paths.paths["cloud_provider"]
    assert {c for c, _ in cloud["initial_access"]} == {
        "initial_access/access_through_the_gateway",
        "initial_access/access_through_the_cloud_provider",
    }
