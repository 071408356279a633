"""End-to-end checks of the python bindings."""

import os
import xml.etree.ElementTree as ET

import pytest

import fisheco


def test_builtin_schema_counts():
    assert len(fisheco.builtin_schema("A").entity_codes()) == 17
    assert len(fisheco.builtin_schema("B").entity_codes()) == 12
    assert len(fisheco.builtin_merged().entity_codes()) == 23
    with pytest.raises(ValueError):
        fisheco.builtin_schema("Z")


def test_merge_and_validate():
    a = fisheco.builtin_schema("A")
    b = fisheco.builtin_schema("B")
    merged = fisheco.merge_schemas(a, b)
    assert len(merged) == 23
    assert fisheco.validate_schema(merged) == []
    assert fisheco.merge_schemas(a, a) == a


def test_lookup_relation_guard():
    info = fisheco.lookup_relation(fisheco.builtin_schema("A"),
                                   "fact_checked", "P", "N")
    assert info["guard"] == "fact_checking"
    assert info["edge_class"] == "fact_check"


def test_fixture_queries():
    g = fisheco.load_fixture("bbc_breakfast")
    assert sorted(fisheco.fixture_names()) == [
        "bbc_breakfast", "journalist_types", "services_resources",
        "trump_suspension", "uk_regulators",
    ]
    checkers = fisheco.co_fact_checkers(g, "Twitter video")
    assert checkers == ["AFP Fact Check", "Abbas Panjwani", "Maldita"]
    events = fisheco.fact_check_events(g, "BBC Breakfast broadcast")
    assert len(events) == 1
    assert events[0]["checker"] == "Sarah Turnidge"
    assert events[0]["report"] == "Full Fact report"
    assert fisheco.uncovered_items(g) == []


def test_graph_building_and_guard():
    g = fisheco.ScenarioGraph("demo", fisheco.builtin_merged())
    g.add_entity("P", "author", {"fact_checking": True})
    g.add_entity("P", "reader")
    g.add_entity("N", "story")
    g.add_relation("author", "published", "story", tense="past")
    g.add_relation("author", "fact_checked", "story", date="2024-05-01")
    with pytest.raises(fisheco.Error):
        g.add_relation("reader", "fact_checked", "story", tense="past")
    assert g.validate() == []
    assert len(g) == 3


def test_dsl_round_trip():
    g = fisheco.load_fixture("uk_regulators")
    text = fisheco.serialize(g)
    assert fisheco.parse(text) == g
    assert fisheco.serialize(fisheco.parse(text)) == text


def test_json_round_trip():
    g = fisheco.load_fixture("trump_suspension")
    doc = fisheco.to_json(g)
    assert fisheco.from_json(doc, g.schema) == g


def test_match_pattern():
    g = fisheco.load_fixture("bbc_breakfast")
    rows = fisheco.match_pattern(g, "x:FO, y:UGC; x-fact_checked->y")
    assert [row["x"] for row in rows] == ["AFP Fact Check", "Maldita"]


def test_shared_backer_and_regulation_chain():
    g = fisheco.load_fixture("uk_regulators")
    backers = fisheco.shared_backer(g, "IPSO", "Telegraph", max_depth=3)
    assert backers[0]["backer"] == "Telegraph Media Limited"
    assert backers[0]["path_a"][1] == "Regulatory Funding Company"
    chain = fisheco.regulation_chain(g, "Telegraph")
    assert [(row["regulator"], row["tense"]) for row in chain] == [
        ("IPSO", "ongoing"), ("PCC", "past"),
    ]


def test_exports():
    g = fisheco.load_fixture("uk_regulators")
    dot = fisheco.to_dot(g)
    assert '"PCC" -> "Telegraph" [label="regulates (past)", color="red"' in dot
    root = ET.fromstring(fisheco.to_graphml(g))
    ns = "{http://graphml.graphdrawing.org/xmlns}"
    nodes = root.findall(f"{ns}graph/{ns}node")
    edges = root.findall(f"{ns}graph/{ns}edge")
    assert len(nodes) == len(g.entity_ids())
    assert len(edges) == len(g.relations())


def test_simulate_determinism():
    g = fisheco.ScenarioGraph("cascade", fisheco.builtin_merged())
    g.add_entity("P", "author")
    for i in range(4):
        g.add_entity("P", f"reader {i}")
    g.add_entity("N", "story")
    g.add_relation("author", "published", "story", tense="past")
    for i in range(4):
        g.add_relation(f"reader {i}", "consumed", "story", tense="past")

    first = fisheco.simulate(g, "story", p_share=0.6, steps=4, seed=42)
    second = fisheco.simulate(g, "story", p_share=0.6, steps=4, seed=42)
    assert first.exposed_per_step == second.exposed_per_step
    assert first.final_exposed == second.final_exposed

    frozen = fisheco.simulate(g, "story", p_share=0.0, steps=4, seed=42)
    assert frozen.exposed_per_step == [1] * 5
    assert fisheco.SPREAD_PRNG == "mt19937_64/u53"


def test_scenario_files_match_embedded_fixtures():
    source_dir = os.environ.get("FISHECO_SOURCE_DIR")
    if not source_dir:
        pytest.skip("FISHECO_SOURCE_DIR not set")
    for name in fisheco.fixture_names():
        path = os.path.join(source_dir, "scenarios", f"{name}.fis")
        with open(path, encoding="utf-8") as handle:
            assert handle.read() == fisheco.fixture_text(name)
