from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from disc_kit.freq import freq_k
from disc_kit.lemmas import random_sgraph, symbols_of
from disc_kit.sgraph import (
    InformationSet,
    RootedDisc,
    SGraph,
    disc_fingerprint,
    disc_graph,
    graph_fingerprint,
    underlying,
)
from disc_kit.transform import (
    SIMPLE_MODEL,
    ball_bound,
    cached_projection_sets,
    center_decodable,
    decode_cluster,
    encode,
    image_isomorphism,
    naturalize_edges,
    params,
    psi_q,
    reconstruct_disc,
    required_cap,
)

from conftest import expected_degrees, sgraphs

ONE = symbols_of(1)


# ---------------------------------------------------------------------------
# parameters


def test_parameter_values():
    p = params(3, 2, symbols_of(3))
    assert (p.t, p.q, p.d1, p.k1) == (5, 7, 11, 7)
    p = params(2, 1, ONE)
    assert (p.t, p.q, p.d1, p.cluster_size) == (4, 4, 9, 10)
    assert params(2, 1, InformationSet(tuple("abcdef"))).t == 7
    for bad in [(1, 1), (2, 0)]:
        with pytest.raises(ValueError):
            params(*bad, ONE)
    with pytest.raises(ValueError):
        params(2, 1, ONE, Fraction(1))


def test_eps1_is_positive_and_tiny():
    p = params(2, 1, ONE)
    e1 = p.eps1(Fraction(1, 2))
    assert 0 < e1 < Fraction(1, 2) / (4 * 100)


def test_ball_bound_and_required_cap():
    assert ball_bound(2, 3) == 7
    assert ball_bound(3, 2) == 10
    p = params(2, 1, ONE)
    assert required_cap(p) == ball_bound(2, 3)
    assert required_cap(p, general=True) == ball_bound(2, 4)


# ---------------------------------------------------------------------------
# encode


def test_image_size_worked_example():
    g = SGraph(4, symbols_of(3), {(0, 1): 0, (1, 2): 1, (2, 3): 2, (3, 3): 0})
    image, index = encode(g, params(3, 1, symbols_of(3)))
    assert image.n == 48 and len(index) == 4


def test_encode_rejects_wrong_symbols_and_degree():
    p = params(2, 1, ONE)
    with pytest.raises(ValueError):
        encode(SGraph(1, symbols_of(2)), p)
    star = SGraph(4, ONE, {(0, 1): 0, (0, 2): 0, (0, 3): 0})
    with pytest.raises(ValueError):
        encode(star, p)


@settings(max_examples=120, deadline=None)
@given(sgraphs(max_n=10))
def test_encode_structure(g):
    p = params(max(2, g.max_degree()), 1, g.symbols)
    image, index = encode(g, p)
    assert image.n == (2 * p.t + 2) * g.n
    assert image.is_simple()
    assert [image.degree(x) for x in range(image.n)] == expected_degrees(g, p.t)
    assert image.max_degree() <= 2 * p.t + 1
    u = underlying(g)
    for v in range(g.n):
        dist = image.distances(index[v].center, 3)
        for w in range(g.n):
            if w != v:
                adjacent = w in u.neighbors[v]
                assert (dist.get(index[w].center) == 3) == adjacent


@settings(max_examples=80, deadline=None)
@given(sgraphs(max_n=8))
def test_decode_recovers_every_cluster(g):
    p = params(max(2, g.max_degree()), 1, g.symbols)
    image, index = encode(g, p)
    for v in range(g.n):
        readings = decode_cluster(image, index[v].center, p.t, len(p.symbols))
        assert any(r.cluster == index[v] and r.loop == g.loop(v) for r in readings)


def test_non_centers_do_not_decode():
    g = SGraph(2, ONE, {(0, 1): 0})
    p = params(2, 1, ONE)
    image, index = encode(g, p)
    assert decode_cluster(image, index[0].marker, p.t, 1) == []
    assert decode_cluster(image, index[0].ring[0], p.t, 1) == []


# ---------------------------------------------------------------------------
# reconstruction


@settings(max_examples=120, deadline=None)
@given(sgraphs(max_n=8, d_values=(2, 3, 4), sizes=(1, 2, 3, 4)))
def test_reconstruct_round_trip_k1(g):
    p = params(max(2, g.max_degree()), 1, g.symbols)
    image, index = encode(g, p)
    for v in range(g.n):
        disc = reconstruct_disc(RootedDisc.of(image, index[v].center, p.q), p)
        assert disc.fingerprint == disc_fingerprint(g, v, 1)


@settings(max_examples=25, deadline=None)
@given(sgraphs(max_n=6, d_values=(2,), sizes=(1, 2)))
def test_reconstruct_round_trip_k2(g):
    p = params(2, 2, g.symbols)
    image, index = encode(g, p)
    for v in range(g.n):
        disc = reconstruct_disc(RootedDisc.of(image, index[v].center, p.q), p)
        assert disc.fingerprint == disc_fingerprint(g, v, 2)


def test_reading_ambiguity_is_resolved_by_neighbours():
    # a loop on the first symbol lets the in-half be read backwards; with t=5
    # in^2 and in^4 swap, and an in-edge on the second symbol exposes it
    symbols = InformationSet(tuple("abcd"))
    p = params(3, 1, symbols)
    g = SGraph(2, symbols, {(0, 0): 0, (1, 0): 1})
    image, index = encode(g, p)
    assert len(decode_cluster(image, index[0].center, p.t, 4)) == 2
    for v in range(2):
        disc = reconstruct_disc(RootedDisc.of(image, index[v].center, p.q), p)
        assert disc.fingerprint == disc_fingerprint(g, v, 1)
    proj = psi_q(image, p)
    assert graph_fingerprint(proj.preimage) == graph_fingerprint(g)


def test_reconstruct_rejects_non_center_root():
    p = params(2, 1, ONE)
    image, index = encode(SGraph(2, ONE, {(0, 1): 0}), p)
    with pytest.raises(ValueError):
        reconstruct_disc(RootedDisc.of(image, index[0].marker, p.q), p)


# ---------------------------------------------------------------------------
# projection subgraph


@settings(max_examples=60, deadline=None)
@given(sgraphs(max_n=7))
def test_psi_of_an_image_is_the_whole_image(g):
    p = params(max(2, g.max_degree()), 1, g.symbols)
    image, _ = encode(g, p)
    proj = psi_q(image, p)
    assert len(proj.vertices) == image.n
    assert graph_fingerprint(proj.preimage) == graph_fingerprint(g)
    assert image_isomorphism(image, proj, p)


def test_psi_strips_an_isolated_vertex():
    p = params(2, 1, ONE)
    image, _ = encode(SGraph(3, ONE, {(0, 1): 0, (1, 2): 0}), p)
    padded = SGraph(image.n + 1, image.symbols, image.info)
    proj = psi_q(padded, p)
    assert proj.vertices == tuple(range(image.n))
    assert proj.preimage.n == 3


def test_psi_of_a_bare_cycle_is_empty():
    p = params(2, 1, ONE)
    cycle = SGraph.simple(30, [(i, (i + 1) % 30) for i in range(30)])
    proj = psi_q(cycle, p)
    assert proj.vertices == () and proj.preimage.n == 0


@pytest.fixture(scope="module")
def desk_sets():
    p = params(2, 1, ONE)
    return p, cached_projection_sets(p)


def test_projection_sets_complete_and_disjoint(desk_sets):
    p, sets = desk_sets
    assert sets.complete and sets.cap == required_cap(p)
    blocks = list(sets.by_disc.values())
    assert sum(len(b) for b in blocks) == len(sets.centers())
    g = SGraph(3, ONE, {(0, 1): 0, (1, 2): 0, (2, 0): 0})
    image, index = encode(g, p)
    assert disc_fingerprint(image, index[0].center, p.q) in sets.by_disc[disc_fingerprint(g, 0, 1)]


@settings(max_examples=40, deadline=None)
@given(sgraphs(max_n=6, d_values=(2,), sizes=(1,)))
def test_center_share_of_an_image(desk_sets, g):
    p, sets = desk_sets
    image, _ = encode(g, p)
    fq = freq_k(image, p.q)
    assert sum(fq[x] for x in sets.centers()) == Fraction(1, 2 * p.t + 2)


def _near_image(rng: random.Random, p) -> SGraph:
    image, index = encode(random_sgraph(rng, rng.randint(3, 7), 2, ONE), p)
    info = dict(image.info)
    for _ in range(rng.randint(1, 3)):
        u, v = rng.sample(range(image.n), 2)
        trial = dict(info)
        if (u, v) in trial:
            del trial[(u, v)], trial[(v, u)]
        else:
            trial[(u, v)] = trial[(v, u)] = 0
        if SGraph(image.n, image.symbols, trial).max_degree() <= 2 * p.t + 1:
            info = trial
    return SGraph(image.n, image.symbols, info)


def test_structural_and_exact_psi_agree_on_images_and_nest_on_edits(desk_sets):
    p, sets = desk_sets
    rng = random.Random(3)
    centers = sets.centers()
    for _ in range(30):
        g = random_sgraph(rng, rng.randint(1, 6), 2, ONE)
        image, _ = encode(g, p)
        assert psi_q(image, p).vertices == psi_q(image, p, allowed=centers).vertices
    for _ in range(30):
        h = _near_image(rng, p)
        exact = psi_q(h, p, allowed=centers)
        structural = psi_q(h, p)
        assert set(exact.vertices) <= set(structural.vertices)
        for proj in (exact, structural):
            assert image_isomorphism(h, proj, p)


def test_center_decodable_on_image_centers_only():
    p = params(2, 1, ONE)
    image, index = encode(SGraph(2, ONE, {(0, 1): 0}), p)
    for v in range(2):
        assert center_decodable(disc_graph(image, index[v].center, p.q), 0, p)
    assert not center_decodable(disc_graph(image, index[0].marker, p.q), 0, p)


# ---------------------------------------------------------------------------
# natural models


def test_naturalize_drops_pairs_outside_the_model():
    ab = symbols_of(2)
    g = SGraph(3, ab, {(0, 1): 0, (1, 0): 0, (1, 2): 1, (2, 2): 0})
    pairs, loops = SIMPLE_MODEL
    out = naturalize_edges(g, pairs, loops)
    assert out.info == {(0, 1): 0, (1, 0): 0}
    with pytest.raises(ValueError):
        naturalize_edges(g, {(0, 0)}, {None})
