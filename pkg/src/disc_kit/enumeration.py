"""Isomorphism-free enumeration of small S-graphs.

Graphs grow one vertex at a time.  Every model here is closed under
deleting a vertex, so each class on n vertices is an extension of some
class on n-1 vertices; duplicates are removed by unrooted fingerprint.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .budget import Budget
from .sgraph import SIMPLE_SYMBOLS, InformationSet, SGraph, graph_fingerprint

Pair = tuple  # (I(u,v), I(v,u)) with None for absent


def simple_pairs() -> frozenset:
    return frozenset({(None, None), (0, 0)})


def all_pairs(symbols: InformationSet) -> frozenset:
    vals = [None, *range(len(symbols))]
    return frozenset((a, b) for a in vals for b in vals)


def one_way_pairs(symbols: InformationSet) -> frozenset:
    """Directed coloured edges without bidirectional pairs."""
    out = {(None, None)}
    for c in range(len(symbols)):
        out.add((c, None))
        out.add((None, c))
    return frozenset(out)


@dataclass(frozen=True)
class EnumerationSpec:
    """Which graphs to enumerate: model (pairs, loops), size cap and degree bound."""

    max_vertices: int
    d: int
    symbols: InformationSet = SIMPLE_SYMBOLS
    pairs: frozenset = simple_pairs()
    loops: frozenset = frozenset({None})
    connected: bool = False

    @classmethod
    def simple(cls, max_vertices: int, d: int, connected: bool = False) -> EnumerationSpec:
        return cls(max_vertices, d, connected=connected)

    @classmethod
    def all_sgraphs(
        cls, max_vertices: int, d: int, symbols: InformationSet, connected: bool = False
    ) -> EnumerationSpec:
        return cls(
            max_vertices, d, symbols, all_pairs(symbols),
            frozenset({None, *range(len(symbols))}), connected,
        )

    def admits(self, g: SGraph) -> bool:
        if g.symbols != self.symbols or g.n > self.max_vertices or g.max_degree() > self.d:
            return False
        for u in range(g.n):
            if g.loop(u) not in self.loops:
                return False
            for v in g.neighbors[u]:
                if (g.get(u, v), g.get(v, u)) not in self.pairs:
                    return False
        return not self.connected or len(g.components()) <= 1


def _extensions(g: SGraph, spec: EnumerationSpec) -> Iterator[SGraph]:
    n = g.n
    options = sorted(
        (p for p in spec.pairs if p != (None, None)),
        key=lambda p: tuple(-1 if x is None else x for x in p),
    )
    loops = sorted(spec.loops, key=lambda x: -1 if x is None else x)
    degs = [g.degree(u) for u in range(n)]
    for loop in loops:
        base = 0 if loop is None else 2
        if base > spec.d:
            continue
        choice: list[tuple[int, Pair]] = []

        def rec(u: int, deg: int) -> Iterator[SGraph]:
            if u == n:
                if spec.connected and n > 0 and not choice:
                    return
                info = dict(g.info)
                if loop is not None:
                    info[(n, n)] = loop
                for w, (a, b) in choice:
                    if a is not None:
                        info[(n, w)] = a
                    if b is not None:
                        info[(w, n)] = b
                yield SGraph(n + 1, g.symbols, info)
                return
            yield from rec(u + 1, deg)
            if deg + 1 <= spec.d and degs[u] + 1 <= spec.d:
                for pair in options:
                    choice.append((u, pair))
                    yield from rec(u + 1, deg + 1)
                    choice.pop()

        yield from rec(0, base)


def enumerate_graphs(spec: EnumerationSpec, budget: Budget | None = None) -> Iterator[SGraph]:
    """One graph per isomorphism class, by size then fingerprint."""
    if spec.max_vertices < 1:
        return
    budget = budget or Budget.from_env()
    level = {graph_fingerprint(SGraph(0, spec.symbols)): SGraph(0, spec.symbols)}
    for _ in range(spec.max_vertices):
        nxt: dict[bytes, SGraph] = {}
        for g in level.values():
            for h in _extensions(g, spec):
                budget.tick()
                fp = graph_fingerprint(h)
                if fp not in nxt:
                    nxt[fp] = h
        level = {fp: nxt[fp] for fp in sorted(nxt)}
        yield from level.values()
