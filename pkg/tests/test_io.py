import json

import pytest
from hypothesis import given, settings, strategies as st

from leibhol import catalog
from leibhol.fields import GF, QQ
from leibhol.io import ParseError, emit_algebra, emit_map, parse_algebra, parse_map
from leibhol.iso import LinearMapValue
from leibhol.linalg import Matrix

from conftest import random_leibniz

LA_DOC = {"field": {"kind": "Q"}, "dim": 2,
          "brackets": [{"left": 2, "right": 2, "value": [{"index": 1, "coeff": "1"}]}]}


def _doc(**over):
    d = json.loads(json.dumps(LA_DOC))
    d.update(over)
    return json.dumps(d, indent=2)


def test_l_a_document_round_trip():
    L = parse_algebra(json.dumps(LA_DOC))
    assert L == catalog.get("L_A")
    assert json.loads(emit_algebra(L)) == LA_DOC


@pytest.mark.parametrize("name", catalog.names())
def test_emit_parse_emit_is_a_fixpoint(name):
    L = catalog.get(name)
    text = emit_algebra(L)
    back = parse_algebra(text)
    assert back == L and back.labels == L.labels
    assert emit_algebra(back) == text


def test_round_trip_over_finite_fields():
    for L in random_leibniz(20, p=5, seed=2):
        assert parse_algebra(emit_algebra(L)) == L


def test_characteristic_two_rejected_with_position():
    with pytest.raises(ParseError, match="characteristic 2") as exc:
        parse_algebra(_doc(field={"kind": "Fp", "p": 2}))
    assert exc.value.line == 2


def test_out_of_range_index():
    doc = json.loads(_doc())
    doc["dim"] = 3
    doc["brackets"].append({"left": 4, "right": 1, "value": []})
    with pytest.raises(ParseError, match="outside 1..3") as exc:
        parse_algebra(json.dumps(doc, indent=2))
    assert exc.value.line is not None and exc.value.line > 5


@pytest.mark.parametrize("coeff", ["2/4", "3/1", "x", "1/0", "1.5"])
def test_bad_rational_coefficients(coeff):
    doc = json.loads(_doc())
    doc["brackets"][0]["value"][0]["coeff"] = coeff
    with pytest.raises(ParseError):
        parse_algebra(json.dumps(doc))


@pytest.mark.parametrize("coeff", ["5", "-1", "1/2"])
def test_bad_residues(coeff):
    doc = json.loads(_doc(field={"kind": "Fp", "p": 5}))
    doc["brackets"][0]["value"][0]["coeff"] = coeff
    with pytest.raises(ParseError):
        parse_algebra(json.dumps(doc))


def test_malformed_json_reports_position():
    with pytest.raises(ParseError) as exc:
        parse_algebra('{"field": {"kind": "Q"},\n "dim": 2,\n "brackets": [}')
    assert exc.value.line == 3


def test_other_structural_errors():
    for bad in [_doc(field={"kind": "R"}), _doc(dim=-1), _doc(labels=["a"]), json.dumps({"dim": 2}), "[]"]:
        with pytest.raises(ParseError):
            parse_algebra(bad)
    doc = json.loads(_doc())
    doc["brackets"].append(doc["brackets"][0])
    with pytest.raises(ParseError, match="twice"):
        parse_algebra(json.dumps(doc))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(st.integers(0, 6), min_size=3, max_size=3), min_size=3, max_size=3))
def test_map_round_trip(rows):
    f = LinearMapValue(Matrix.from_rows(GF(7), rows))
    assert parse_map(emit_map(f), GF(7)) == f


def test_map_columns_are_images():
    f = parse_map('{"matrix": [["1", "2"], ["0", "1/2"]]}', QQ)
    assert f.image(1) == (2, QQ("1/2"))


def test_ragged_map_rejected():
    with pytest.raises(ParseError):
        parse_map('{"matrix": [["1", "2"], ["0"]]}', QQ)
