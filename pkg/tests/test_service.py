import pytest

fastapi = pytest.importorskip("fastapi")

from fastapi.testclient import TestClient

from se_revise.semantics import se_models, seset_to_json
from se_revise.service import app
from se_revise.syntax import Alphabet, parse_program

client = TestClient(app)

P_TEXT = "p :- not q. false :- p, q."


def test_parse_ok():
    resp = client.post("/parse", json={"rules": P_TEXT})
    assert resp.status_code == 200
    got = resp.json()
    assert got["atoms"] == ["p", "q"]
    assert got["cls"] == "nlp"
    assert got["rule_count"] == 2
    assert parse_program(got["program"]).rules == parse_program(P_TEXT).rules


def test_parse_error_is_400():
    resp = client.post("/parse", json={"rules": "p :- ?"})
    assert resp.status_code == 400
    assert resp.json()["detail"] == "line 1, column 6: unexpected character '?'"


def test_models_from_rules():
    resp = client.post("/models", json={"rules": P_TEXT})
    assert resp.status_code == 200
    assert resp.json() == {"atoms": ["p", "q"], "models": [["p"], ["q"]]}


def test_models_from_formula():
    resp = client.post("/models", json={"formula": "p | q", "atoms": ["p", "q"]})
    assert resp.status_code == 200
    assert resp.json()["models"] == [["p"], ["q"], ["p", "q"]]


def test_models_requires_exactly_one_source():
    for body in ({}, {"rules": "p.", "formula": "p"}):
        resp = client.post("/models", json=body)
        assert resp.status_code == 400
        assert "exactly one" in resp.json()["detail"]


def test_answer_sets_route():
    resp = client.post("/answer-sets", json={"rules": P_TEXT})
    assert resp.status_code == 200
    assert resp.json()["models"] == [["p"]]


def test_se_models_route():
    resp = client.post("/se-models", json={"rules": P_TEXT})
    assert resp.status_code == 200
    got = resp.json()
    assert got["pairs"] == [
        {"here": ["p"], "there": ["p"]},
        {"here": [], "there": ["q"]},
        {"here": ["q"], "there": ["q"]},
    ]
    assert got["flags"] == {"well_defined": True, "complete": True,
                            "hi_closed": True}


def test_expand_route():
    resp = client.post("/expand", json={"p": P_TEXT, "q": "q."})
    assert resp.status_code == 200
    got = resp.json()
    assert got["answer_sets"] == [["q"]]
    assert got["se"]["pairs"] == [{"here": ["q"], "there": ["q"]}]
    prog = parse_program(got["program"])
    assert se_models(prog).sorted_pairs() == [(2, 2)]


def test_revise_route_answer_sets():
    resp = client.post("/revise", json={
        "p": "p. q. false :- r.",
        "q": "false :- p, q, not r.",
        "op": "skeptical:drastic",
    })
    assert resp.status_code == 200
    got = resp.json()
    assert got["answer_sets"] == [[]]
    assert got["atoms"] == ["p", "q", "r"]


def test_revise_route_brave():
    resp = client.post("/revise", json={
        "p": "p. q. false :- r.",
        "q": "false :- p, q, not r.",
        "op": "brave:drastic",
    })
    assert resp.status_code == 200
    sets = {tuple(m) for m in resp.json()["answer_sets"]}
    assert sets == {(), ("p",), ("q",), ("r",), ("p", "r"), ("q", "r"),
                    ("p", "q", "r")}


def test_revise_unknown_operator_is_400():
    resp = client.post("/revise", json={"p": "p.", "q": "q.", "op": "nope"})
    assert resp.status_code == 400
    assert "unknown operator" in resp.json()["detail"]


def test_revise_class_constraint_violation_is_400():
    # the outcome leaves the DLP fragment, so asking for dlp output fails
    resp = client.post("/revise", json={
        "p": "false :- not p, not q. false :- q, not p. false :- p, q.",
        "q": "q.",
        "op": "brave:drastic",
        "cls": "dlp",
    })
    assert resp.status_code == 400


def test_check_route_exhaustive_prop():
    resp = client.post("/check", json={"op": "drastic", "exhaustive": True})
    assert resp.status_code == 200
    got = resp.json()
    assert got["all_passed"] is True
    assert [r["postulate"] for r in got["reports"]] == [
        "R1", "R2", "R3", "R4", "R5", "R6"]


def test_check_route_seeded_lp():
    resp = client.post("/check", json={"op": "cardinality", "count": 60,
                                       "seed": 2})
    assert resp.status_code == 200
    got = resp.json()
    assert got["all_passed"] is True
    assert [r["postulate"] for r in got["reports"]] == [
        "RA1", "RA2", "RA3", "RA4", "RA5", "RA6"]
    assert all(r["cases"] == 60 for r in got["reports"])


def test_synthesize_route():
    alphabet = Alphabet(("p", "q"))
    seset = se_models(parse_program(P_TEXT, alphabet))
    resp = client.post("/synthesize", json={
        "se": seset_to_json(seset, alphabet), "cls": "nlp"})
    assert resp.status_code == 200
    got = resp.json()
    assert got["cls"] == "nlp"
    assert se_models(parse_program(got["program"])).pairs == seset.pairs


def test_synthesize_bad_class_is_400():
    alphabet = Alphabet(("p", "q"))
    seset = se_models(parse_program("p ; q.", alphabet))
    resp = client.post("/synthesize", json={
        "se": seset_to_json(seset, alphabet), "cls": "nlp"})
    assert resp.status_code == 400


def test_compare_route_equivalent():
    resp = client.post("/compare", json={"p": "q. false :- p.",
                                         "q": "q :- not p. false :- p."})
    assert resp.status_code == 200
    assert resp.json()["strongly_equivalent"] is True


def test_compare_route_not_equivalent():
    resp = client.post("/compare", json={
        "p": "p :- not q.",
        "q": "p :- not q. p ; q. false :- q, not p."})
    assert resp.status_code == 200
    got = resp.json()
    assert got["strongly_equivalent"] is False
    assert got["se_subset_right_left"] is True
    assert got["same_answer_sets"] is True
    assert got["classes"] == ["nlp", "dlp"]


def test_malformed_body_is_422():
    resp = client.post("/revise", json={"p": "p."})
    assert resp.status_code == 422
