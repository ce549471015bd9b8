"""Shared strategies and brute-force oracles.

The oracles here share no code with the canonizer: they try every vertex
permutation, which is fine up to about 7 vertices.
"""

from __future__ import annotations

import itertools
import random
import sys

from hypothesis import strategies as st

from disc_kit.lemmas import random_sgraph, symbols_of
from disc_kit.sgraph import InformationSet, SGraph


def brute_canonical(g: SGraph, root: int | None = None) -> tuple:
    """Least relabelled edge list over all permutations (root first when given)."""
    best = None
    verts = list(range(g.n))
    rest = [v for v in verts if v != root] if root is not None else verts
    for perm in itertools.permutations(rest):
        order = ([root] if root is not None else []) + list(perm)
        pos = {v: i for i, v in enumerate(order)}
        enc = tuple(sorted((pos[u], pos[v], lab) for (u, v), lab in g.info.items()))
        if best is None or enc < best:
            best = enc
    return (g.n, best)


def brute_isomorphic(a: SGraph, b: SGraph, root_a: int | None = None, root_b: int | None = None) -> bool:
    if a.n != b.n or len(a.info) != len(b.info):
        return False
    rest_b = [v for v in range(b.n) if v != root_b] if root_b is not None else list(range(b.n))
    rest_a = [v for v in range(a.n) if v != root_a] if root_a is not None else list(range(a.n))
    for perm in itertools.permutations(rest_b):
        m = dict(zip(rest_a, perm))
        if root_a is not None:
            m[root_a] = root_b
        if all(b.info.get((m[u], m[v])) == lab for (u, v), lab in a.info.items()):
            return True
    return False


def brute_disc(g: SGraph, v: int, k: int) -> tuple[SGraph, int]:
    """k-disc by plain BFS, vertices kept in ascending id; returns (graph, root position)."""
    dist = g.distances(v, k)
    keep = sorted(dist)
    return g.induced(keep), keep.index(v)


def all_labelled(n: int, symbols: InformationSet, d: int, loops: bool, simple: bool):
    """Every labelled graph on n vertices in the given model with max degree <= d."""
    if simple:
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            chosen = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
            g = SGraph.simple(n, chosen)
            if g.max_degree() <= d:
                yield g
        return
    slots = [(u, v) for u in range(n) for v in range(n) if loops or u != v]
    values = [None, *range(len(symbols))]
    for combo in itertools.product(values, repeat=len(slots)):
        info = {s: c for s, c in zip(slots, combo) if c is not None}
        g = SGraph(n, symbols, info)
        if g.max_degree() <= d:
            yield g


def expected_degrees(g: SGraph, t: int) -> list[int]:
    """Degree of every image vertex, derived from the S-graph by hand."""
    out = []
    for v in range(g.n):
        ring = []
        for pos in range(1, 2 * t + 1):
            base = 2 if pos == 2 * t else (3 if pos == 1 else 4)
            ring.append(base)
        for (a, b), lab in g.info.items():
            i = lab + 1
            if a == b == v:
                ring[i - 1] += 1
                ring[t + i - 1] += 1
            elif a == v:
                ring[t + i - 1] += 1
            elif b == v:
                ring[i - 1] += 1
        out += ring + [2 * t + 1, 2 * t]
    return out


@st.composite
def sgraphs(draw, max_n: int = 8, d_values=(2, 3), sizes=(1, 2, 3), min_n: int = 1):
    """Random bounded-degree S-graph via the library's seeded generator."""
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(min_n, max_n))
    d = draw(st.sampled_from(d_values))
    symbols = symbols_of(draw(st.sampled_from(sizes)))
    return random_sgraph(random.Random(seed), n, d, symbols, loop_rate=0.4)


@st.composite
def simple_graphs(draw, max_n: int = 8, d: int = 3):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    deg = [0] * n
    keep = []
    for u, v in chosen:
        if deg[u] < d and deg[v] < d:
            keep.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return SGraph.simple(n, keep)


@st.composite
def permutations_of(draw, n: int):
    return draw(st.permutations(list(range(n))))


def relabel(g: SGraph, perm: list[int]) -> SGraph:
    return SGraph(g.n, g.symbols, {(perm[u], perm[v]): lab for (u, v), lab in g.info.items()})


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(acceptance.RESULTS, key=lambda x: int(x.split()[1])):
        terminalreporter.write_line(line)
