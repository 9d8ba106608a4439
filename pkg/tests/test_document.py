import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wahull.cra import eval_cra
from wahull.document import (
    parse_cra, parse_document, parse_report, parse_wa, parse_word, parse_zset, print_cra, print_report,
    print_wa, print_zset,
)
from wahull.errors import DimensionMismatch, ParseError
from wahull.generators import random_cra, random_wa
from wahull.invariant import compute_invariant, strongest_invariant
from wahull.wa import WeightedAutomaton
from wahull.zariski import AFFINE, LINEAR


def test_print_alternating(alt):
    doc = json.loads(print_wa(alt))
    assert doc["kind"] == "wa" and doc["version"] == 1
    assert doc["initial"] == ["1", "0"]
    assert doc["transitions"]["a"] == [["0", "2"], ["2", "0"]]
    assert doc["final"] == ["1", "0"]


def test_fractions_and_ints_accepted():
    text = json.dumps({"kind": "wa", "version": 1, "alphabet": ["a"], "initial": [1],
                       "transitions": {"a": [["-3/6"]]}, "final": ["2"]})
    wa = parse_wa(text)
    assert wa("aa") == WeightedAutomaton.build([1], {"a": [["1/2"]]}, [2])("aa")


def _alt_doc():
    return {"kind": "wa", "version": 1, "alphabet": ["a"], "initial": ["1", "0"],
            "transitions": {"a": [["0", "2"], ["2", "0"]]}, "final": ["1", "0"]}


def test_bad_row_width():
    doc = _alt_doc()
    doc["transitions"]["a"][0] = ["0", "2", "0"]
    with pytest.raises(DimensionMismatch):
        parse_wa(json.dumps(doc))


def test_unknown_field():
    doc = _alt_doc()
    doc["extra"] = 1
    with pytest.raises(ParseError):
        parse_wa(json.dumps(doc))


@pytest.mark.parametrize("change", [
    {"version": 2}, {"kind": "nope"}, {"initial": ["1", "x"]}, {"initial": ["1.5", "0"]},
    {"alphabet": ["a", "a"]}, {"transitions": {}},
])
def test_invalid_documents(change):
    doc = dict(_alt_doc(), **change)
    with pytest.raises((ParseError, DimensionMismatch)):
        parse_wa(json.dumps(doc))


def test_missing_field():
    doc = _alt_doc()
    del doc["final"]
    with pytest.raises(ParseError):
        parse_wa(json.dumps(doc))


def test_json_error_position():
    with pytest.raises(ParseError) as err:
        parse_wa('{\n  "kind": "wa",\n  oops\n}')
    assert err.value.line == 3 and err.value.column == 3


def test_wrong_kind(alt):
    with pytest.raises(ParseError):
        parse_cra(print_wa(alt))


def test_parse_word():
    assert parse_word("aab") == ("a", "a", "b")
    assert parse_word("") == ()
    assert parse_word('["ab", "c"]') == ("ab", "c")
    with pytest.raises(ParseError):
        parse_word("[1, 2]")


def test_report_round_trip(alt):
    rep = strongest_invariant(alt, LINEAR, 4)
    doc = parse_report(print_report(rep, 0.5))
    assert doc["result"] == rep.result
    assert doc["dim"] == 1 and doc["length"] == 2 and doc["seconds"] == 0.5
    assert parse_document(print_report(rep))["mode"] == LINEAR


def test_report_consistency_checked(alt):
    doc = json.loads(print_report(strongest_invariant(alt, LINEAR, 4)))
    doc["dim"] = 2
    with pytest.raises(ParseError):
        parse_report(json.dumps(doc))


seeds = st.integers(0, 2**32 - 1)


@given(seeds)
def test_wa_round_trip(seed):
    rng = random.Random(seed)
    wa = random_wa(rng, rng.randint(0, 3), ("a", "b")[:rng.randint(1, 2)], -5, 5)
    assert parse_wa(print_wa(wa)) == wa
    assert parse_document(print_wa(wa)) == wa


@given(seeds, st.sampled_from([LINEAR, AFFINE]))
def test_cra_round_trip(seed, mode):
    rng = random.Random(seed)
    cra = random_cra(rng, rng.randint(1, 3), rng.randint(0, 2), ("a", "b"), mode)
    back = parse_cra(print_cra(cra))
    assert back == cra
    assert eval_cra(back, "abba") == eval_cra(cra, "abba")


@given(seeds, st.sampled_from([LINEAR, AFFINE]))
def test_zset_round_trip(seed, mode):
    rng = random.Random(seed)
    wa = random_wa(rng, rng.randint(1, 3), ("a",))
    z = compute_invariant(wa, 2, mode).result
    assert parse_zset(print_zset(z)) == z
