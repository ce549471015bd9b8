from __future__ import annotations

import pytest

from disc_kit.budget import Budget, BudgetExceeded
from disc_kit.enumeration import EnumerationSpec, enumerate_graphs, one_way_pairs
from disc_kit.sgraph import SIMPLE_SYMBOLS, InformationSet, graph_fingerprint

from conftest import all_labelled, brute_canonical

ONE = InformationSet(("a",))
AB = InformationSet(("a", "b"))


def _oracle_classes(max_n, symbols, d, loops, simple, keep=lambda g: True):
    out = set()
    for n in range(1, max_n + 1):
        for g in all_labelled(n, symbols, d, loops, simple):
            if keep(g):
                out.add(brute_canonical(g))
    return out


def _enumerated(spec):
    graphs = list(enumerate_graphs(spec))
    fps = [graph_fingerprint(g) for g in graphs]
    assert len(fps) == len(set(fps)), "enumeration produced a duplicate class"
    assert [g.n for g in graphs] == sorted(g.n for g in graphs)
    return {brute_canonical(g) for g in graphs}, graphs


@pytest.mark.parametrize("max_n,d", [(4, 3), (5, 2), (5, 3)])
def test_simple_graphs_match_labelled_quotient(max_n, d):
    ours, _ = _enumerated(EnumerationSpec.simple(max_n, d))
    assert ours == _oracle_classes(max_n, SIMPLE_SYMBOLS, d, False, True)


def test_known_small_counts():
    # all simple graphs on 1..4 vertices: 1 + 2 + 4 + 11
    assert len(list(enumerate_graphs(EnumerationSpec.simple(4, 3)))) == 18
    assert len(list(enumerate_graphs(EnumerationSpec.simple(3, 2)))) == 7
    assert list(enumerate_graphs(EnumerationSpec.simple(0, 2))) == []
    loop_model = EnumerationSpec.all_sgraphs(1, 2, ONE)
    assert len(list(enumerate_graphs(loop_model))) == 2


@pytest.mark.parametrize("max_n,d", [(3, 2), (3, 4)])
def test_sgraphs_one_symbol_match_labelled_quotient(max_n, d):
    ours, _ = _enumerated(EnumerationSpec.all_sgraphs(max_n, d, ONE))
    assert ours == _oracle_classes(max_n, ONE, d, True, False)


def test_sgraphs_two_symbols_match_labelled_quotient():
    ours, _ = _enumerated(EnumerationSpec.all_sgraphs(2, 3, AB))
    assert ours == _oracle_classes(2, AB, 3, True, False)


def test_one_way_model_matches_filtered_quotient():
    spec = EnumerationSpec(3, 2, AB, one_way_pairs(AB), frozenset({None}))
    ours, _ = _enumerated(spec)

    def one_way(g):
        return all((v, u) not in g.info for (u, v) in g.info)

    assert ours == _oracle_classes(3, AB, 2, False, False, one_way)


def test_connected_flag():
    ours, graphs = _enumerated(EnumerationSpec.simple(4, 3, connected=True))
    assert all(len(g.components()) == 1 for g in graphs)
    assert len(graphs) == 1 + 1 + 2 + 6


def test_every_graph_is_admitted_by_its_spec():
    spec = EnumerationSpec.all_sgraphs(3, 3, AB)
    assert all(spec.admits(g) for g in enumerate_graphs(spec))


def test_budget_exhaustion_raises():
    with pytest.raises(BudgetExceeded):
        list(enumerate_graphs(EnumerationSpec.simple(7, 3), Budget(max_steps=50)))
