import warnings

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

from sheafres.service import app

TETRA = {"kind": "simplicial_complex",
         "facets": [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]}
TO_POINT = {"kind": "poset_map",
            "source": TETRA,
            "target": {"kind": "simplicial_complex", "facets": [[0]]},
            "vertex_map": [[1, 0], [2, 0], [3, 0], [4, 0]]}


@pytest.fixture(scope="module")
def client():
    return TestClient(app, raise_server_exceptions=False)


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json()["status"] == "ok"


def test_validate_good(client):
    resp = client.post("/validate", json={"document": TETRA})
    assert resp.status_code == 200
    assert resp.json()["valid"]


def test_validate_reports_broken_square(client):
    doc = {"kind": "sheaf",
           "poset": {"elements": ["o", "a", "b", "t"],
                     "covers": [["o", "a"], ["o", "b"],
                                ["a", "t"], ["b", "t"]]},
           "dims": {"o": 1, "a": 1, "b": 1, "t": 1},
           "maps": [{"from": "o", "to": "a", "matrix": [["1"]]},
                    {"from": "o", "to": "b", "matrix": [["1"]]},
                    {"from": "a", "to": "t", "matrix": [["2"]]},
                    {"from": "b", "to": "t", "matrix": [["1"]]}]}
    resp = client.post("/validate", json={"document": doc})
    assert resp.status_code == 200
    body = resp.json()
    assert not body["valid"]
    assert any("triple" in p for p in body["problems"])


def test_validate_reports_cycle(client):
    doc = {"kind": "poset", "elements": ["a", "b"],
           "covers": [["a", "b"], ["b", "a"]]}
    resp = client.post("/validate", json={"document": doc})
    assert resp.status_code == 200
    body = resp.json()
    assert not body["valid"]
    assert any("cycle" in p for p in body["problems"])


def test_resolve_minimal(client):
    resp = client.post("/resolve", json={"document": TETRA})
    assert resp.status_code == 200
    body = resp.json()
    assert body["summary"] == [4, 6, 4]
    assert body["certificates"] == {"exact": True, "minimal": True}


def test_resolve_order_complex(client):
    resp = client.post("/resolve", json={"document": TETRA,
                                         "method": "order-complex"})
    assert resp.status_code == 200
    body = resp.json()
    assert body["summary"][0] == 14
    assert body["certificates"]["exact"]
    assert not body["certificates"]["minimal"]


def test_resolve_unknown_method(client):
    resp = client.post("/resolve", json={"document": TETRA,
                                         "method": "magic"})
    assert resp.status_code == 422


def test_resolve_bad_document(client):
    resp = client.post("/resolve", json={"document": {"kind": "poset",
                                                      "elements": ["a"],
                                                      "covers": [["a", "z"]]}})
    assert resp.status_code == 400


def test_resolve_field_override(client):
    resp = client.post("/resolve", json={"document": TETRA, "field": "mod 2"})
    assert resp.status_code == 200
    assert resp.json()["field"] == {"type": "mod", "p": 2}
    resp = client.post("/resolve", json={"document": TETRA,
                                         "field": "octonions"})
    assert resp.status_code == 422


def test_multiplicities_with_verification(client):
    resp = client.post("/multiplicities", json={"document": TETRA,
                                                "verify": True})
    assert resp.status_code == 200
    body = resp.json()
    assert body["verified"]
    assert len(body["rows"]) == 14
    assert all(row[4] for row in body["rows"])


def test_multiplicities_verify_needs_complex(client):
    resp = client.post("/multiplicities", json={
        "document": {"kind": "poset", "elements": ["a"], "covers": []},
        "verify": True})
    assert resp.status_code == 422


def test_pushforward_to_point(client):
    resp = client.post("/pushforward", json={"sheaf": TETRA,
                                             "map": TO_POINT,
                                             "degrees": [0, 1, 2]})
    assert resp.status_code == 200
    dims = [list(b["sheaf"]["dims"].values())
            for b in resp.json()["degrees"]]
    assert dims == [[1], [0], [1]]


def test_pushforward_compact_open_star(client):
    star = {"kind": "poset",
            "elements": ["1", "1,2", "1,3", "1,4",
                         "1,2,3", "1,2,4", "1,3,4"],
            "covers": [["1", "1,2"], ["1", "1,3"], ["1", "1,4"],
                       ["1,2", "1,2,3"], ["1,2", "1,2,4"],
                       ["1,3", "1,2,3"], ["1,3", "1,3,4"],
                       ["1,4", "1,2,4"], ["1,4", "1,3,4"]]}
    resp = client.post("/pushforward", json={"sheaf": star, "map": TO_POINT,
                                             "degrees": [0, 1, 2],
                                             "compact": True})
    assert resp.status_code == 200
    dims = [list(b["sheaf"]["dims"].values())
            for b in resp.json()["degrees"]]
    assert dims == [[0], [0], [1]]


def test_pushforward_compact_needs_simplicial(client):
    bad_map = {"kind": "poset_map",
               "source": {"kind": "poset", "elements": ["a"], "covers": []},
               "target": {"kind": "poset", "elements": ["x"], "covers": []},
               "images": [["a", "x"]]}
    resp = client.post("/pushforward", json={
        "sheaf": {"kind": "poset", "elements": ["a"], "covers": []},
        "map": bad_map, "compact": True})
    assert resp.status_code == 400


def test_pushforward_mismatched_sheaf(client):
    resp = client.post("/pushforward", json={
        "sheaf": {"kind": "poset", "elements": ["q"], "covers": []},
        "map": TO_POINT})
    assert resp.status_code == 400


def test_cohomology_star(client):
    resp = client.post("/cohomology", json={"document": TETRA,
                                            "simplex": [1]})
    assert resp.status_code == 200
    assert resp.json()["dims"] == [0, 0, 1]


def test_cohomology_global(client):
    resp = client.post("/cohomology", json={"document": TETRA})
    assert resp.status_code == 200
    assert resp.json()["dims"] == [1, 0, 1]


def test_cohomology_subset_must_be_open(client):
    doc = {"kind": "poset", "elements": ["a", "b"], "covers": [["a", "b"]]}
    resp = client.post("/cohomology", json={"document": doc,
                                            "subset": ["a"]})
    assert resp.status_code == 400
    resp = client.post("/cohomology", json={"document": doc,
                                            "subset": ["b"]})
    assert resp.status_code == 200
    assert resp.json()["dims"][0] == 1


def test_cohomology_wrong_kind(client):
    resp = client.post("/cohomology", json={"document": TO_POINT})
    assert resp.status_code == 422
