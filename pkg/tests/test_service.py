"""HTTP service: envelopes, endpoints, error mapping, canonical output."""

import pytest
from fastapi.testclient import TestClient

from monoid_topos import __version__
from monoid_topos.reports import canonical_json
from monoid_topos.service.app import app

client = TestClient(app)

ENVELOPE_KEYS = {"command", "input", "parameters", "results", "bounds",
                 "provenance"}


def post(path, **payload):
    return client.post(path, json=payload)


def ok(path, **payload):
    resp = post(path, **payload)
    assert resp.status_code == 200, resp.text
    body = resp.json()
    assert ENVELOPE_KEYS <= set(body)
    assert body["provenance"]["schema_version"] == 1
    return body


def test_health():
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json() == {"status": "ok", "version": __version__}


def test_primes_envelope():
    body = ok("/primes", monoid="free:2", sample_len=2)
    assert body["command"] == "primes"
    assert body["input"]["name"] == "free:2"
    assert body["results"]["count"] == 4
    assert [c["bits"] for c in body["results"]["characters"]] == \
        ["00", "01", "10", "11"]


def test_input_error_maps_to_400():
    resp = post("/primes", monoid="bogus:9")
    assert resp.status_code == 400
    err = resp.json()["error"]
    assert err["kind"] == "input"
    assert err["message"]


def test_guard_error_maps_to_400():
    gens = " ".join(f"g{i}" for i in range(25))
    resp = post("/primes", monoid=f"gens: {gens}")
    assert resp.status_code == 400
    assert resp.json()["error"]["kind"] == "guard"


def test_validation_error_is_422():
    assert post("/primes").status_code == 422


def test_ore_endpoint():
    body = ok("/ore", monoid="free:2")
    assert body["results"]["status"] == "fails"
    assert body["results"]["counterexample"]["s"] in ("a", "b")
    body = ok("/ore", monoid="torus:2,3", table=True)
    assert body["results"]["status"] == "holds"
    assert body["results"]["method"] == "exhaustive"
    assert body["results"]["table"]
    body = ok("/ore", monoid="comm:2", char="01")
    assert body["results"]["method"] == "commutative"


def test_localize_endpoint():
    body = ok("/localize", monoid="free:2", char="10")
    r = body["results"]
    assert r["presentation"]["generators"] == ["a", "b", "a'"]
    assert r["inverses"] == {"a": "a'"}
    assert not r["identity_localization"]
    body = ok("/localize", monoid="free:2", char="00")
    assert body["results"]["identity_localization"]


def test_subtoposes_endpoint():
    body = ok("/subtoposes", monoid="free:2", cross_validate=True, trunc=3)
    r = body["results"]
    assert r["counts"] == {"confirmed": 1, "excluded": 3, "undecided": 0}
    assert r["cross_validation"]["consistent"] is True


def test_flat_check_endpoint():
    body = ok("/flat-check", monoid="free:2",
              mset="elems: e; act a: e->e; act b: e->e")
    assert body["results"]["kind"] == "finite"
    assert body["results"]["overall"] == "not-flat"
    body = ok("/flat-check", monoid="free:2", char="11", trunc=3)
    assert body["results"]["kind"] == "symbolic"
    assert body["results"]["overall"] == "not-flat"
    assert body["results"]["f2"]["witness"] == ["a'", "b'"]
    resp = post("/flat-check", monoid="free:2")
    assert resp.status_code == 400


def test_tensor_endpoint():
    body = ok("/tensor", monoid="free:1",
              right_mset="elems: x0 x1; act a: x0->x1 x1->x1",
              left_mset="elems: p q; act a: p->q q->q")
    assert body["results"]["class_count"] == 2
    assert body["results"]["classes"] == [
        [["x0", "p"]], [["x0", "q"], ["x1", "p"], ["x1", "q"]]]
    body = ok("/tensor", monoid="free:1",
              right_mset="elems: x; act a: x->x", trunc=2)
    assert body["results"]["truncated"] is True


def test_points_endpoint_posets():
    body = ok("/points", monoid="free:2", max_len=2)
    assert body["results"]["ideal_count"] == 7
    body = ok("/points", divisors=36)
    assert body["results"]["ideal_count"] == 9
    resp = post("/points")
    assert resp.status_code == 400


def test_points_endpoint_point_data():
    body = ok("/points", monoid="free:2", point="(abba)^w", member="abba",
              which="both")
    r = body["results"]
    assert r["fixer_group"]["kind"] == "infinite-cyclic"
    assert r["fixer_group"]["generator"] == "abba"
    assert r["membership"]["A"] is True
    assert r["membership"]["M"] is True
    body = ok("/points", monoid="free:2", point="1*", check_eq=True, bound=4)
    assert body["results"]["fixers_equal_stabilizers"]["equal"] is True


def test_snf_endpoint():
    body = ok("/snf", matrix="2 0; 0 3")
    r = body["results"]
    assert r["diagonal"] == [1, 6]
    assert all(r["checks"].values())
    body = ok("/snf", matrix="2 0; 0 3", sigma="2,3")
    assert "in_prime_ideal" in body["results"]
    body = ok("/snf", matrix="1 1/2; 0 1", e11=True)
    assert "fixes_e11_point" in body["results"]
    resp = post("/snf", matrix="2 0; 0 3", sigma="2,x")
    assert resp.status_code == 400


def test_tk_endpoint():
    body = ok("/tk", k=2, l=3, op="normal-form", words=["bbbb"])
    assert body["results"]["level"] == 1
    assert body["results"]["tail"] == "b"
    body = ok("/tk", k=2, l=3, op="equal", words=["aa", "bbb"])
    assert body["results"]["equal"] is True
    body = ok("/tk", k=2, l=3, op="key", words=["ab"])
    assert body["results"]["degree"] == 5
    resp = post("/tk", k=2, l=3, op="equal", words=["aa"])
    assert resp.status_code == 400   # wrong arity for the operation


def test_sn_endpoint():
    body = ok("/sn", primes="2,3", y="2:inf,3:1", op="in-A", value="1/2")
    assert body["results"]["member"] is True
    body = ok("/sn", primes="2,3", y="2:inf", op="in-M", value="1/3")
    assert body["results"]["member"] is False
    body = ok("/sn", primes="2,3", y="2:inf,3:1", op="describe")
    assert body["results"]["exponents"] == {"2": "inf", "3": 1}
    body = ok("/sn", primes="2,3", y="2:inf", op="divides", value="8")
    assert body["results"]["divides"] is True
    resp = post("/sn", primes="2,3", op="in-A", value="1/2")
    assert resp.status_code == 400   # membership ops need --y


GOLDEN_PRIMES_FREE1 = """\
{
  "bounds": {
    "rewriting": {
      "note": null,
      "rules": 0,
      "status": "confluent"
    }
  },
  "command": "primes",
  "input": {
    "generators": [
      "a"
    ],
    "name": "free:1",
    "relations": []
  },
  "parameters": {
    "sample_len": 1
  },
  "provenance": {
    "schema_version": 1
  },
  "results": {
    "characters": [
      {
        "bits": "0",
        "ideal_words": [
          "a"
        ],
        "unit_generators": [],
        "zero_generators": [
          "a"
        ]
      },
      {
        "bits": "1",
        "ideal_words": [],
        "unit_generators": [
          "a"
        ],
        "zero_generators": []
      }
    ],
    "count": 2
  }
}"""


def test_canonical_json_is_byte_stable():
    body1 = ok("/primes", monoid="free:1", sample_len=1)
    body2 = ok("/primes", monoid="free:1", sample_len=1)
    assert canonical_json(body1) == canonical_json(body2)
    assert canonical_json(body1) == GOLDEN_PRIMES_FREE1
