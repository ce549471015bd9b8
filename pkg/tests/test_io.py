from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given, settings

from disc_kit import io
from disc_kit.freq import freq_k
from disc_kit.paths import SPath
from disc_kit.sgraph import InformationSet, SGraph, disc_k, graph_fingerprint

from conftest import sgraphs, simple_graphs

AB = InformationSet(("a", "b"))


@settings(max_examples=100, deadline=None)
@given(sgraphs(max_n=8))
def test_sgraph_json_round_trip(g):
    doc = json.loads(io.dump(io.graph_to_json(g)))
    back = io.graph_from_json(doc)
    assert back.info == g.info and back.symbols == g.symbols


@settings(max_examples=60, deadline=None)
@given(simple_graphs(max_n=8))
def test_simple_graph_json_is_compact_and_round_trips(g):
    doc = io.graph_to_json(g)
    assert doc["simple"] and doc["symbols"] == []
    assert all(u < v and lab is None for u, v, lab in doc["edges"])
    assert graph_fingerprint(io.graph_from_json(doc)) == graph_fingerprint(g)


@pytest.mark.parametrize("doc", [
    {"n": 2},
    {"n": 2, "symbols": ["a"], "edges": [[0, 2, "a"]]},
    {"n": 2, "symbols": ["a"], "edges": [[0, 1, "z"]]},
    {"n": 2, "symbols": ["a", "b"], "edges": [[0, 1, None]]},
    {"n": 2, "symbols": ["a", "b"], "edges": [[0, 1, "a"], [0, 1, "b"]]},
    {"n": 2, "symbols": ["a"], "edges": [[0, 1]]},
    {"n": 1, "edges": [[0, 0, None]], "simple": True},
    {"n": 2, "symbols": ["a", "b"], "edges": [[0, 1, "a"]], "simple": True},
    "not a graph",
])
def test_malformed_graphs_are_rejected(doc):
    with pytest.raises(io.FormatError):
        io.graph_from_json(doc)


def test_path_round_trip_and_errors():
    p = SPath.from_symbols(AB, ["a", "b", "b"])
    assert io.path_from_json(io.path_to_json(p)) == p
    with pytest.raises(io.FormatError):
        io.path_from_json({"symbols": ["a"], "edges": ["b"]})
    with pytest.raises(io.FormatError):
        io.path_from_json({"edges": []})


def test_disc_round_trip_and_fingerprint_check():
    g = SGraph(3, AB, {(0, 1): 0, (1, 2): 1, (2, 2): 0})
    disc = disc_k(g, 1, 1)
    doc = io.disc_to_json(disc)
    assert io.disc_from_json(doc).fingerprint == disc.fingerprint
    doc["fingerprint"] = "SD1:1:"
    with pytest.raises(io.FormatError):
        io.disc_from_json(doc)
    with pytest.raises(io.FormatError):
        io.disc_from_json({"graph": io.graph_to_json(g)})


def test_freq_and_fraction_json():
    g = SGraph.simple(10, [(i, i + 1) for i in range(9)])
    assert sorted(io.freq_to_json(freq_k(g, 1)).values()) == ["1/5", "4/5"]
    assert io.fraction_json(Fraction(6, 8)) == "3/4"
    assert io.fraction_json(None) is None


def test_dump_is_sorted_and_load_reports_bad_json(tmp_path):
    path = tmp_path / "x.json"
    text = io.dump({"b": 1, "a": 2}, path)
    assert text.index('"a"') < text.index('"b"') and path.read_text() == text
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(io.FormatError):
        io.load(bad)
