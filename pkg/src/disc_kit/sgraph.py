"""S-graphs, rooted discs and canonical fingerprints.

An S-graph on vertices ``0..n-1`` assigns every ordered pair either nothing
or a symbol index into its :class:`InformationSet`.  Directed, labelled,
looped and simple graphs are all special cases.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping

FP_ROOTED = b"SD1"
FP_UNROOTED = b"SG1"


@dataclass(frozen=True)
class InformationSet:
    """Ordered, distinct edge labels.  Order is the tie-break order everywhere."""

    symbols: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if not self.symbols:
            raise ValueError("information set must contain at least one symbol")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError(f"duplicate symbols in {self.symbols!r}")

    def __len__(self) -> int:
        return len(self.symbols)

    def index(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise ValueError(f"unknown symbol {symbol!r}") from None

    def __getitem__(self, i: int) -> str:
        return self.symbols[i]


SIMPLE_SYMBOLS = InformationSet(("e",))


@dataclass(frozen=True)
class SGraph:
    """Vertices ``0..n-1`` plus a sparse information function.

    ``info[(u, v)] = i`` means the pair carries symbol ``symbols[i]``;
    absent pairs are simply missing from the mapping.
    """

    n: int
    symbols: InformationSet
    info: Mapping[tuple[int, int], int] = field(default_factory=dict)

    __hash__ = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        info = dict(self.info)
        m = len(self.symbols)
        for (u, v), lab in info.items():
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"pair ({u}, {v}) out of range for n={self.n}")
            if not 0 <= lab < m:
                raise ValueError(f"symbol index {lab} out of range")
        object.__setattr__(self, "info", info)

    @classmethod
    def from_edges(
        cls, n: int, symbols: InformationSet, edges: Iterable[tuple[int, int, int]]
    ) -> SGraph:
        info: dict[tuple[int, int], int] = {}
        for u, v, lab in edges:
            if (u, v) in info and info[(u, v)] != lab:
                raise ValueError(f"pair ({u}, {v}) assigned twice")
            info[(u, v)] = lab
        return cls(n, symbols, info)

    @classmethod
    def simple(cls, n: int, edges: Iterable[tuple[int, int]]) -> SGraph:
        """Undirected simple graph as a symmetric single-symbol S-graph."""
        info: dict[tuple[int, int], int] = {}
        for u, v in edges:
            if u == v:
                raise ValueError("simple graphs have no loops")
            info[(u, v)] = 0
            info[(v, u)] = 0
        return cls(n, SIMPLE_SYMBOLS, info)

    def get(self, u: int, v: int) -> int | None:
        return self.info.get((u, v))

    @cached_property
    def out_adj(self) -> tuple[dict[int, int], ...]:
        out: list[dict[int, int]] = [{} for _ in range(self.n)]
        for (u, v), lab in self.info.items():
            out[u][v] = lab
        return tuple(out)

    @cached_property
    def in_adj(self) -> tuple[dict[int, int], ...]:
        inc: list[dict[int, int]] = [{} for _ in range(self.n)]
        for (u, v), lab in self.info.items():
            inc[v][u] = lab
        return tuple(inc)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        """Undirected neighbours, loops excluded, sorted by id."""
        nb: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.info:
            if u != v:
                nb[u].add(v)
                nb[v].add(u)
        return tuple(tuple(sorted(s)) for s in nb)

    def loop(self, v: int) -> int | None:
        return self.info.get((v, v))

    def degree(self, v: int) -> int:
        """Number of incident edges; a loop counts as two."""
        return len(self.neighbors[v]) + (2 if (v, v) in self.info else 0)

    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(self.n)), default=0)

    def pair_code(self, u: int, v: int) -> int:
        """Integer code of (I(u,v), I(v,u)); 0 when both are absent."""
        base = len(self.symbols) + 1
        a = self.info.get((u, v))
        b = self.info.get((v, u))
        return ((a + 1) if a is not None else 0) * base + ((b + 1) if b is not None else 0)

    def edges(self) -> Iterator[tuple[int, int, int]]:
        for (u, v), lab in sorted(self.info.items()):
            yield u, v, lab

    def induced(self, vertices: Iterable[int]) -> SGraph:
        """Induced subgraph, relabelled by ascending original id."""
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        info = {
            (pos[u], pos[v]): lab
            for (u, v), lab in self.info.items()
            if u in pos and v in pos
        }
        return SGraph(len(keep), self.symbols, info)

    def is_simple(self) -> bool:
        """Symmetric pairs with equal labels and no loops."""
        for (u, v), lab in self.info.items():
            if u == v or self.info.get((v, u)) != lab:
                return False
        return True

    def distances(self, source: int, limit: int | None = None) -> dict[int, int]:
        """Undirected BFS distances from ``source``, optionally truncated."""
        dist = {source: 0}
        queue = deque([source])
        nb = self.neighbors
        while queue:
            x = queue.popleft()
            dx = dist[x]
            if limit is not None and dx >= limit:
                continue
            for y in nb[x]:
                if y not in dist:
                    dist[y] = dx + 1
                    queue.append(y)
        return dist

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if not seen[s]:
                comp = sorted(self.distances(s))
                for x in comp:
                    seen[x] = True
                comps.append(comp)
        return comps


def disjoint_union(graphs: Iterable[SGraph]) -> SGraph:
    graphs = list(graphs)
    if not graphs:
        raise ValueError("need at least one graph")
    symbols = graphs[0].symbols
    info: dict[tuple[int, int], int] = {}
    offset = 0
    for g in graphs:
        if g.symbols != symbols:
            raise ValueError("graphs use different information sets")
        for (u, v), lab in g.info.items():
            info[(u + offset, v + offset)] = lab
        offset += g.n
    return SGraph(offset, symbols, info)


def underlying(g: SGraph) -> SGraph:
    """Forget direction, labels and loops; keep adjacency."""
    return SGraph.simple(g.n, {(min(u, v), max(u, v)) for (u, v) in g.info if u != v})


# ---------------------------------------------------------------------------
# canonical forms


def _adjacency_codes(g: SGraph) -> list[list[tuple[int, int]]]:
    return [[(u, g.pair_code(v, u)) for u in g.neighbors[v]] for v in range(g.n)]


def _rank(keys: list) -> list[int]:
    order = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


def _refine(colors: list[int], adj: list[list[tuple[int, int]]]) -> list[int]:
    ncls = len(set(colors))
    while True:
        sigs = [
            (colors[v], tuple(sorted([(code, colors[u]) for u, code in adj[v]])))
            for v in range(len(colors))
        ]
        new = _rank(sigs)
        k = max(new, default=-1) + 1
        if k == ncls:
            return new
        colors, ncls = new, k


class _Canonizer:
    """Individualisation-refinement search for the least encoding.

    Leaves are compared by their sorted (pos_u, pos_v, label) triple list.
    Automorphisms found from equal leaves prune sibling branches.
    """

    def __init__(self, g: SGraph, initial: list[int]):
        self.g = g
        self.adj = _adjacency_codes(g)
        self.initial = initial
        self.best: tuple | None = None
        self.best_order: list[int] | None = None
        self.automorphisms: list[list[int]] = []

    def run(self) -> tuple[tuple, list[int]]:
        self._search(_rank(self.initial), [])
        assert self.best is not None and self.best_order is not None
        return self.best, self.best_order

    def _encode(self, order: list[int]) -> tuple:
        pos = {v: i for i, v in enumerate(order)}
        return tuple(sorted((pos[u], pos[v], lab) for (u, v), lab in self.g.info.items()))

    def _search(self, colors: list[int], path: list[int]) -> None:
        colors = _refine(colors, self.adj)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = next((cells[c] for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            order = sorted(range(len(colors)), key=colors.__getitem__)
            enc = self._encode(order)
            if self.best is None or enc < self.best:
                self.best, self.best_order = enc, order
            elif enc == self.best:
                assert self.best_order is not None
                gamma = [0] * len(order)
                for a, b in zip(self.best_order, order):
                    gamma[a] = b
                self.automorphisms.append(gamma)
            return
        explored: list[int] = []
        for v in target:
            if explored and self._same_orbit(v, explored, path):
                continue
            explored.append(v)
            indiv = [(c, 0 if x == v else 1) for x, c in enumerate(colors)]
            self._search(_rank(indiv), path + [v])

    def _same_orbit(self, v: int, explored: list[int], path: list[int]) -> bool:
        gens = [g for g in self.automorphisms if all(g[p] == p for p in path)]
        if not gens:
            return False
        parent = list(range(self.g.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gamma in gens:
            for x, y in enumerate(gamma):
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[rx] = ry
        rv = find(v)
        return any(find(e) == rv for e in explored)


def _format_fingerprint(prefix: bytes, n: int, enc: tuple) -> bytes:
    body = ";".join(f"{u}.{v}.{lab}" for u, v, lab in enc)
    return prefix + f":{n}:".encode() + body.encode()


def canonical_order(g: SGraph, root: int | None = None) -> list[int]:
    """Vertex order (position -> vertex) realising the canonical encoding."""
    return _canonize(g, root)[1]


def _canonize(g: SGraph, root: int | None) -> tuple[tuple, list[int]]:
    if g.n == 0:
        return (), []
    adj = _adjacency_codes(g)
    loops = [(g.loop(v) + 1) if g.loop(v) is not None else 0 for v in range(g.n)]
    if root is None:
        initial = [
            (loops[v], len(adj[v]), tuple(sorted(c for _, c in adj[v]))) for v in range(g.n)
        ]
    else:
        dist = g.distances(root)
        far = g.n + 1
        initial = [
            (0 if v == root else 1, dist.get(v, far), loops[v], len(adj[v]),
             tuple(sorted(c for _, c in adj[v])))
            for v in range(g.n)
        ]
    return _Canonizer(g, _rank(initial)).run()


_ROOTED_CACHE: dict[tuple, bytes] = {}
_CACHE_LIMIT = 400_000


def rooted_fingerprint(g: SGraph, root: int) -> bytes:
    """Canonical byte string; equal iff a root- and label-preserving isomorphism exists."""
    key = (root, g.n, len(g.symbols), tuple(sorted(g.info.items())))
    fp = _ROOTED_CACHE.get(key)
    if fp is None:
        enc, _ = _canonize(g, root)
        fp = _format_fingerprint(FP_ROOTED, g.n, enc)
        if len(_ROOTED_CACHE) >= _CACHE_LIMIT:
            _ROOTED_CACHE.clear()
        _ROOTED_CACHE[key] = fp
    return fp


def graph_fingerprint(g: SGraph) -> bytes:
    """Canonical byte string of an unrooted S-graph."""
    enc, _ = _canonize(g, None)
    return _format_fingerprint(FP_UNROOTED, g.n, enc)


def parse_fingerprint(fp: bytes, symbols: InformationSet) -> SGraph:
    """Rebuild the canonical graph encoded in a fingerprint (root is vertex 0)."""
    prefix, n, body = fp.split(b":", 2)
    if prefix not in (FP_ROOTED, FP_UNROOTED):
        raise ValueError(f"unknown fingerprint format {prefix!r}")
    edges = []
    if body:
        for item in body.split(b";"):
            u, v, lab = (int(x) for x in item.split(b"."))
            edges.append((u, v, lab))
    return SGraph.from_edges(int(n), symbols, edges)


# ---------------------------------------------------------------------------
# rooted discs


@dataclass(frozen=True)
class RootedDisc:
    graph: SGraph
    root: int
    radius: int
    fingerprint: bytes

    @classmethod
    def of(cls, graph: SGraph, root: int, radius: int) -> RootedDisc:
        return cls(graph, root, radius, rooted_fingerprint(graph, root))

    @classmethod
    def from_fingerprint(cls, fp: bytes, symbols: InformationSet, radius: int) -> RootedDisc:
        return cls(parse_fingerprint(fp, symbols), 0, radius, fp)

    def __len__(self) -> int:
        return self.graph.n


def disc_vertices(g: SGraph, v: int, k: int) -> list[int]:
    """Vertices within distance k of v in discovery order.

    Neighbours are explored by (pair code, id), so isomorphic discs on
    path-like graphs tend to come out in the same order.
    """
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range for n={g.n}")
    if k < 0:
        raise ValueError("radius must be non-negative")
    dist = {v: 0}
    order = [v]
    head = 0
    nb = g.neighbors
    while head < len(order):
        x = order[head]
        head += 1
        if dist[x] >= k:
            continue
        for y in sorted(nb[x], key=lambda y: (g.pair_code(x, y), y)):
            if y not in dist:
                dist[y] = dist[x] + 1
                order.append(y)
    return order


def disc_graph(g: SGraph, v: int, k: int) -> SGraph:
    """Induced k-disc around v with v relabelled to 0."""
    order = disc_vertices(g, v, k)
    pos = {x: i for i, x in enumerate(order)}
    out = g.out_adj
    info = {}
    for x in order:
        px = pos[x]
        for y, lab in out[x].items():
            py = pos.get(y)
            if py is not None:
                info[(px, py)] = lab
    return SGraph(len(order), g.symbols, info)


def disc_k(g: SGraph, v: int, k: int) -> RootedDisc:
    return RootedDisc.of(disc_graph(g, v, k), 0, k)


def disc_fingerprint(g: SGraph, v: int, k: int) -> bytes:
    return rooted_fingerprint(disc_graph(g, v, k), 0)
