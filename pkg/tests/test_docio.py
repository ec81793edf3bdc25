"""Document round trips and the rejection of inexact data."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyrank.docio import (
    dump,
    emit_document,
    format_rational,
    load,
    parse_document,
    parse_rational,
)
from polyrank.errors import IrrationalData, ParseError
from polyrank.families import gen_qt
from polyrank.polyhedron import Polyhedron


def test_parse_rational_forms():
    assert parse_rational(3, "x") == 3
    assert parse_rational("3", "x") == 3
    assert parse_rational("-7/2", "x") == Fraction(-7, 2)
    with pytest.raises(ParseError, match="boolean"):
        parse_rational(True, "x")
    with pytest.raises(IrrationalData, match="float literal"):
        parse_rational(0.5, "x")
    with pytest.raises(ParseError, match="p/q"):
        parse_rational("ten", "x")


def test_format_rational():
    assert format_rational(Fraction(3, 2)) == "3/2"
    assert format_rational(Fraction(-4, 2)) == "-2"


def test_parse_vrep_document():
    doc = {"vrep": {"vertices": [["0", "0"], ["0", "1"], ["2", "1/2"]]}}
    assert parse_document(doc) == gen_qt(2)


def test_parse_hrep_document():
    doc = {"hrep": {"A": [[-1, 0], [0, -1], [1, 1]], "b": [0, 0, 2]}}
    assert parse_document(doc) == Polyhedron.from_vrep([(0, 0), (2, 0), (0, 2)])


def test_parse_both_requires_agreement():
    doc = {
        "hrep": {"A": [[-1], [1]], "b": [0, 1]},
        "vrep": {"vertices": [["0"], ["1"]]},
    }
    assert parse_document(doc) == Polyhedron.from_vrep([(0,), (1,)])
    doc["vrep"]["vertices"] = [["0"], ["2"]]
    with pytest.raises(ParseError, match="different sets"):
        parse_document(doc)


def test_parse_errors_name_the_field():
    with pytest.raises(ParseError, match=r"vrep\.vertices\[0\]\[1\]"):
        parse_document({"vrep": {"vertices": [["0", "1/0"]]}})
    with pytest.raises(IrrationalData, match=r"hrep\.b\[0\]"):
        parse_document({"hrep": {"A": [[1]], "b": [0.5]}})
    with pytest.raises(ParseError, match="needs hrep or vrep"):
        parse_document({})
    with pytest.raises(ParseError, match="rays or lines without vertices"):
        parse_document({"vrep": {"rays": [[1, 0]]}})
    with pytest.raises(ParseError, match="rows in A"):
        parse_document({"hrep": {"A": [[1]], "b": [0, 1]}})


def test_emit_parse_roundtrip_examples():
    for P in (
        gen_qt(3),
        Polyhedron.from_vrep([(0, 0), (0, 1)], rays=[(1, 0)]),
        Polyhedron.from_hrep([(0, 1), (0, -1)], [1, 0]),
        Polyhedron.from_vrep([(Fraction(1, 2), Fraction(-3, 4))]),
        Polyhedron.empty(3),
    ):
        assert parse_document(emit_document(P)) == P


def test_emit_uses_rational_strings():
    doc = emit_document(gen_qt(2), name="q2", metadata={"t": 2})
    assert doc["name"] == "q2"
    assert ["2", "1/2"] in doc["vrep"]["vertices"]
    assert all(isinstance(x, int) for row in doc["hrep"]["A"] for x in row)
    assert doc["metadata"] == {"t": 2}


coords = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(coords, min_size=2, max_size=2).map(tuple),
                min_size=1, max_size=5))
def test_emit_parse_roundtrip_random(pts):
    P = Polyhedron.from_vrep(pts)
    assert parse_document(emit_document(P)) == P


def test_file_roundtrip(tmp_path):
    path = tmp_path / "poly.json"
    dump(gen_qt(2), path, name="q2")
    assert load(path) == gen_qt(2)
    path.write_text("{not json")
    with pytest.raises(ParseError):
        load(path)
