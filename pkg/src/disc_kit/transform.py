"""Cluster gadget between S-graphs and simple graphs.

Each S-vertex v becomes a cluster of 2t+2 simple vertices: a ring
v^1..v^2t (in^1..in^t followed by out^1..out^t), a center joined to
the whole ring, and a marker joined to the center and to v^1..v^{2t-1}.
The marker's single missing ring neighbour v^2t fixes the orientation.
An S-edge I(v,w) = s_i becomes the simple edge out^i(v) -- in^i(w); a
loop I(v,v) = s_i becomes the chord out^i(v) -- in^i(v).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .budget import Budget
from .enumeration import EnumerationSpec, enumerate_graphs
from .sgraph import (
    SIMPLE_SYMBOLS,
    InformationSet,
    RootedDisc,
    SGraph,
    disc_fingerprint,
    disc_graph,
    rooted_fingerprint,
)


@dataclass(frozen=True)
class TransformParams:
    d: int
    k: int
    symbols: InformationSet
    t: int
    q: int
    d1: int
    k1: int

    @property
    def cluster_size(self) -> int:
        return 2 * self.t + 2

    def eps1(self, eps: Fraction) -> Fraction:
        """Accuracy needed on the simple side to reach ``eps`` on the S side."""
        t, q = self.t, self.q
        return Fraction(eps) / (4 * (2 * t + 2) ** 2 * (1 + 2 * (2 * t + 1) ** q))


def params(d: int, k: int, symbols: InformationSet, eps: Fraction | None = None) -> TransformParams:
    if d < 2 or k < 1:
        raise ValueError("need d >= 2 and k >= 1")
    if eps is not None and not 0 < eps < 1:
        raise ValueError("need 0 < eps < 1")
    t = max(math.ceil(d / 2) + 3, len(symbols) + 1)
    q = 3 * k + 1
    return TransformParams(d, k, symbols, t, q, 2 * t + 1, q)


@dataclass(frozen=True)
class Cluster:
    """Image vertex ids of one S-vertex; ``ring[i-1]`` is v^i."""

    center: int
    marker: int
    ring: tuple[int, ...]

    def inn(self, i: int) -> int:
        return self.ring[i - 1]

    def out(self, i: int) -> int:
        return self.ring[len(self.ring) // 2 + i - 1]

    def members(self) -> tuple[int, ...]:
        return (*self.ring, self.center, self.marker)


@dataclass(frozen=True)
class ClusterIndex:
    clusters: tuple[Cluster, ...]

    def __getitem__(self, v: int) -> Cluster:
        return self.clusters[v]

    def __len__(self) -> int:
        return len(self.clusters)


def cluster_layout(n: int, t: int) -> ClusterIndex:
    size = 2 * t + 2
    return ClusterIndex(tuple(
        Cluster(v * size + 2 * t, v * size + 2 * t + 1, tuple(range(v * size, v * size + 2 * t)))
        for v in range(n)
    ))


def cluster_edges(c: Cluster) -> list[tuple[int, int]]:
    two_t = len(c.ring)
    edges = [(c.center, c.marker)]
    edges += [(c.center, x) for x in c.ring]
    edges += [(c.marker, x) for x in c.ring[: two_t - 1]]
    edges += [(c.ring[i], c.ring[i + 1]) for i in range(two_t - 1)]
    return edges


def encode(g: SGraph, p: TransformParams) -> tuple[SGraph, ClusterIndex]:
    if g.symbols != p.symbols:
        raise ValueError("graph and parameters use different information sets")
    if g.max_degree() > p.d:
        raise ValueError(f"degree bound {p.d} violated")
    index = cluster_layout(g.n, p.t)
    edges: list[tuple[int, int]] = []
    for c in index.clusters:
        edges += cluster_edges(c)
    for (v, w), lab in g.info.items():
        edges.append((index[v].out(lab + 1), index[w].inn(lab + 1)))
    return SGraph.simple(g.n * p.cluster_size, edges), index


# ---------------------------------------------------------------------------
# decoding clusters


@dataclass(frozen=True)
class DecodedCluster:
    cluster: Cluster
    loop: int | None

    def role(self, x: int) -> tuple[str, int] | None:
        """('in'|'out', index) of a ring vertex, else None."""
        ring = self.cluster.ring
        if x not in ring:
            return None
        i = ring.index(x) + 1
        t = len(ring) // 2
        return ("in", i) if i <= t else ("out", i - t)


def _ring_orders(h: SGraph, members: set[int], start: int) -> list[list[int]]:
    """All Hamiltonian paths of the induced member graph starting at ``start``."""
    nb = {x: [y for y in h.neighbors[x] if y in members] for x in members}
    found: list[list[int]] = []
    path = [start]
    seen = {start}

    def rec() -> None:
        if len(path) == len(members):
            found.append(list(path))
            return
        for y in nb[path[-1]]:
            if y not in seen:
                seen.add(y)
                path.append(y)
                rec()
                path.pop()
                seen.discard(y)

    rec()
    return found


def decode_cluster(h: SGraph, center: int, t: int, n_symbols: int) -> list[DecodedCluster]:
    """Every reading of ``center``'s neighbourhood as a cluster.

    A reading fixes the marker, the ring order and the optional loop chord.
    Ring vertices with index above ``n_symbols`` must have no neighbours
    outside the cluster.  Usually there is exactly one reading; a loop on
    the first symbol admits a second one with the in-half reversed.
    """
    if h.degree(center) != 2 * t + 1 or h.loop(center) is not None:
        return []
    nbhd = set(h.neighbors[center])
    markers = [
        m for m in nbhd
        if h.degree(m) == 2 * t
        and set(h.neighbors[m]) <= nbhd | {center}
        and len(set(h.neighbors[m]) & nbhd) == 2 * t - 1
    ]
    if len(markers) != 1:
        return []
    marker = markers[0]
    members = nbhd - {marker}
    ends = [x for x in members if marker not in h.neighbors[x]]
    if len(ends) != 1:
        return []
    inside = members | {center, marker}
    induced = {(min(x, y), max(x, y)) for x in members for y in h.neighbors[x] if y in members}
    if len(induced) not in (2 * t - 1, 2 * t):
        return []
    readings = []
    for order in _ring_orders(h, members, ends[0]):
        ring = tuple(reversed(order))
        path_edges = {(min(a, b), max(a, b)) for a, b in zip(ring, ring[1:])}
        extra = induced - path_edges
        loop = None
        if extra:
            (a, b), = extra
            i, j = sorted((ring.index(a) + 1, ring.index(b) + 1))
            if j != t + i or i > n_symbols:
                continue
            loop = i - 1
        ok = True
        for pos, x in enumerate(ring, start=1):
            idx = pos if pos <= t else pos - t
            if idx > n_symbols and any(y not in inside for y in h.neighbors[x]):
                ok = False
                break
        if ok:
            readings.append(DecodedCluster(Cluster(center, marker, ring), loop))
    return readings


def _out_position(h: SGraph, y: int, t: int, n_symbols: int) -> int | None:
    """Index j with y = out^j of its own cluster, or None if that is not visible.

    Every reading of a cluster shares the same out-half, so the first
    reading of the neighbouring center is enough.
    """
    centers = [z for z in h.neighbors[y] if h.degree(z) == 2 * t + 1]
    if len(centers) != 1:
        return None
    readings = decode_cluster(h, centers[0], t, n_symbols)
    if not readings:
        return None
    ring = readings[0].cluster.ring
    if y not in ring:
        return None
    pos = ring.index(y) + 1
    return pos - t if pos > t else 0


def _reading_key(h: SGraph, dc: DecodedCluster, n_symbols: int) -> tuple:
    """(in-edges contradicting their source's out-index, external counts per ring position)."""
    inside = set(dc.cluster.members())
    t = len(dc.cluster.ring) // 2
    clashes = 0
    for i in range(1, n_symbols + 1):
        for y in h.neighbors[dc.cluster.inn(i)]:
            if y in inside:
                continue
            j = _out_position(h, y, t, n_symbols)
            if j is not None and j != i:
                clashes += 1
    counts = tuple(sum(1 for y in h.neighbors[x] if y not in inside) for x in dc.cluster.ring)
    return clashes, counts


def choose_reading(h: SGraph, readings: list[DecodedCluster], n_symbols: int) -> DecodedCluster:
    """Reading consistent with the visible neighbouring clusters; ties go to the least count tuple.

    Only a loop on the first symbol makes a second reading possible, and
    it moves in^j to in^(t+1-j); the neighbours' out-indices tell them apart.
    """
    if len(readings) == 1:
        return readings[0]
    return min(readings, key=lambda dc: _reading_key(h, dc, n_symbols))


# ---------------------------------------------------------------------------
# reconstruction of the S-side disc


def reconstruct_disc(q_disc: RootedDisc, p: TransformParams) -> RootedDisc:
    """Recover the k-disc of v from the q-disc of its center."""
    h, root = q_disc.graph, q_disc.root
    t, s = p.t, len(p.symbols)
    if h.degree(root) != 2 * t + 1:
        raise ValueError("root is not a center (degree differs from 2t+1)")
    readings = decode_cluster(h, root, t, s)
    if not readings:
        raise ValueError("root neighbourhood is not a cluster")
    found: dict[int, DecodedCluster] = {root: choose_reading(h, readings, s)}
    order = [root]
    owner: dict[int, int] = {}
    for x in found[root].cluster.members():
        owner[x] = root
    frontier = [root]
    for _ in range(p.k):
        nxt = []
        for c in frontier:
            dc = found[c]
            inside = set(dc.cluster.members())
            for x in dc.cluster.ring:
                for y in h.neighbors[x]:
                    if y in inside or y in owner:
                        continue
                    centers = [z for z in h.neighbors[y] if h.degree(z) == 2 * t + 1]
                    if len(centers) != 1:
                        raise ValueError(f"vertex {y} has no unique center")
                    cy = centers[0]
                    if cy in found:
                        raise ValueError(f"vertex {y} is not a member of its center's cluster")
                    rd = decode_cluster(h, cy, t, s)
                    if not rd:
                        raise ValueError(f"cluster at {cy} is not decodable")
                    found[cy] = choose_reading(h, rd, s)
                    for z in found[cy].cluster.members():
                        owner[z] = cy
                    order.append(cy)
                    nxt.append(cy)
        frontier = nxt
    sid = {c: i for i, c in enumerate(order)}
    info: dict[tuple[int, int], int] = {}
    for c in order:
        dc = found[c]
        if dc.loop is not None:
            info[(sid[c], sid[c])] = dc.loop
        for j in range(1, s + 1):
            for y in h.neighbors[dc.cluster.out(j)]:
                cz = owner.get(y)
                if cz is None or cz == c:
                    continue
                if found[cz].role(y) != ("in", j):
                    raise ValueError(f"edge at out^{j} does not end in in^{j}")
                key = (sid[c], sid[cz])
                if key in info:
                    raise ValueError("two labels on one ordered pair")
                info[key] = j - 1
    return RootedDisc.of(SGraph(len(order), p.symbols, info), 0, p.k)


# ---------------------------------------------------------------------------
# center-decodable q-discs and the projection subgraph


def center_decodable(h: SGraph, root: int, p: TransformParams) -> bool:
    """Structural test that a rooted q-disc looks like a center disc of an image.

    Exact on the fully visible region (distance <= q-1); the outer shell is
    accepted whenever nothing visible contradicts it.
    """
    t, q, s = p.t, p.q, len(p.symbols)
    big = 2 * t + 1
    dist = h.distances(root)
    deg = {v: h.degree(v) for v in dist}
    if deg[root] != big:
        return False
    found: dict[int, DecodedCluster] = {}
    for v, dv in dist.items():
        if dv <= q - 1:
            if deg[v] > big or h.loop(v) is not None:
                return False
            if deg[v] == big:
                rd = decode_cluster(h, v, t, s)
                if not rd:
                    return False
                found[v] = choose_reading(h, rd, s)
    owner: dict[int, int] = {}
    for c, dc in found.items():
        for x in dc.cluster.members():
            if x in owner:
                return False
            owner[x] = c
    for v, dv in dist.items():
        if dv <= q - 2 and v not in found:
            centers = [z for z in h.neighbors[v] if deg.get(z) == big]
            if len(centers) != 1:
                return False
    seen_pairs: set[tuple[int, int]] = set()
    for c, dc in found.items():
        ext_known: set[int] = set()
        ext_unknown = 0
        all_visible = all(dist[x] <= q - 1 for x in dc.cluster.ring)
        for x in dc.cluster.ring:
            if dist[x] > q - 1:
                continue
            kind, idx = dc.role(x)  # type: ignore[misc]
            for y in h.neighbors[x]:
                cy = owner.get(y)
                if cy == c:
                    continue
                if cy is None:
                    if dist[y] <= q - 2:
                        return False
                    ext_unknown += 1
                    continue
                role_y = found[cy].role(y)
                if role_y is None or role_y[0] == kind or role_y[1] != idx:
                    return False
                pair = (c, cy) if kind == "out" else (cy, c)
                if kind == "out":
                    if pair in seen_pairs:
                        return False
                    seen_pairs.add(pair)
                ext_known.add(cy)
        if all_visible:
            lower = len(ext_known) + (ext_unknown + 1) // 2 + (2 if dc.loop is not None else 0)
            if lower > p.d:
                return False
    return True


@dataclass(frozen=True)
class Projection:
    """Projection subgraph of a simple graph together with its S-side pre-image."""

    subgraph: SGraph
    vertices: tuple[int, ...]
    preimage: SGraph
    clusters: tuple[DecodedCluster, ...]


def psi_q(g: SGraph, p: TransformParams, allowed: frozenset[bytes] | None = None) -> Projection:
    """Induced union of clusters whose center q-disc is decodable.

    With ``allowed`` given, decodability is membership of the center's
    q-disc fingerprint in that set instead of the structural test.
    """
    big = 2 * p.t + 1
    accepted: list[DecodedCluster] = []
    for c in range(g.n):
        if g.degree(c) != big:
            continue
        local = disc_graph(g, c, p.q)
        if allowed is not None:
            ok = rooted_fingerprint(local, 0) in allowed
        else:
            ok = center_decodable(local, 0, p)
        if ok:
            rd = decode_cluster(g, c, p.t, len(p.symbols))
            if not rd:
                continue
            accepted.append(choose_reading(g, rd, len(p.symbols)))
    owner: dict[int, int] = {}
    for i, dc in enumerate(accepted):
        for x in dc.cluster.members():
            if x in owner:
                raise AssertionError("cluster 1-discs overlap")
            owner[x] = i
    info: dict[tuple[int, int], int] = {}
    for i, dc in enumerate(accepted):
        if dc.loop is not None:
            info[(i, i)] = dc.loop
        for j in range(1, len(p.symbols) + 1):
            for y in g.neighbors[dc.cluster.out(j)]:
                z = owner.get(y)
                if z is None or z == i:
                    continue
                if accepted[z].role(y) != ("in", j) or (i, z) in info:
                    raise AssertionError("accepted clusters are joined inconsistently")
                info[(i, z)] = j - 1
    verts = tuple(sorted(owner))
    return Projection(g.induced(verts), verts, SGraph(len(accepted), p.symbols, info), tuple(accepted))


def image_isomorphism(g: SGraph, proj: Projection, p: TransformParams) -> bool:
    """Check that the projection subgraph is exactly encode(pre-image) under the cluster map."""
    image, index = encode(proj.preimage, p)
    mapping: dict[int, int] = {}
    for v, dc in enumerate(proj.clusters):
        for a, b in zip(index[v].members(), dc.cluster.members()):
            mapping[a] = b
    if len(mapping) != len(proj.vertices) or set(mapping.values()) != set(proj.vertices):
        return False
    mapped = {(mapping[u], mapping[v]) for (u, v) in image.info}
    keep = set(proj.vertices)
    actual = {(u, v) for (u, v) in g.info if u in keep and v in keep}
    return mapped == actual


# ---------------------------------------------------------------------------
# projection sets


def ball_bound(d: int, radius: int) -> int:
    """Largest ball of the given radius in a graph of maximum degree d."""
    return 1 + d * sum((d - 1) ** i for i in range(radius))


def required_cap(p: TransformParams, general: bool = False) -> int:
    """S-vertices needed so every center (or any) q-disc is witnessed.

    A path of length r from a center reaches clusters at S-distance at most
    r-1, and from a ring vertex at most r, since one ring vertex may carry
    edges to several clusters.  The q-disc therefore depends only on the
    S-ball of radius q-1 (resp. q), which is connected and has at most
    ``ball_bound`` vertices.
    """
    return ball_bound(p.d, p.q if general else p.q - 1)


@dataclass(frozen=True)
class ProjectionSets:
    d: int
    k: int
    n_symbols: int
    t: int
    q: int
    cap: int
    complete: bool
    by_disc: dict[bytes, frozenset[bytes]]
    general: frozenset[bytes] | None

    def centers(self) -> frozenset[bytes]:
        return frozenset().union(*self.by_disc.values()) if self.by_disc else frozenset()

    def header(self) -> dict:
        return {
            "d": self.d, "k": self.k, "S": self.n_symbols, "t": self.t,
            "q": self.q, "cap": self.cap, "complete": self.complete,
        }


def _eccentric_ok(g: SGraph, v: int, radius: int) -> bool:
    return len(g.distances(v, radius)) == g.n


def projection_sets(
    p: TransformParams,
    size_cap: int | None = None,
    general: bool = False,
    budget: Budget | None = None,
) -> ProjectionSets:
    """Enumerate connected S-graphs up to ``size_cap`` vertices and collect q-discs.

    ``by_disc`` maps each S-side k-disc fingerprint to its projection set;
    ``general`` additionally collects the q-discs of every image vertex.
    The result is complete when the cap reaches :func:`required_cap`.
    """
    need = required_cap(p, general)
    cap = need if size_cap is None else size_cap
    complete = cap >= need
    radius_c = p.q - 1
    by_disc: dict[bytes, set[bytes]] = {}
    gen: set[bytes] = set()
    spec = EnumerationSpec.all_sgraphs(min(cap, need), p.d, p.symbols, connected=True)
    for h in enumerate_graphs(spec, budget):
        image, index = encode(h, p)
        for v in range(h.n):
            if complete and not _eccentric_ok(h, v, radius_c) and not general:
                continue
            gamma_s = disc_fingerprint(h, v, p.k)
            by_disc.setdefault(gamma_s, set()).add(disc_fingerprint(image, index[v].center, p.q))
            if general and (not complete or _eccentric_ok(h, v, p.q)):
                for x in index[v].members():
                    gen.add(disc_fingerprint(image, x, p.q))
    return ProjectionSets(
        p.d, p.k, len(p.symbols), p.t, p.q, cap, complete,
        {key: frozenset(val) for key, val in by_disc.items()},
        frozenset(gen) if general else None,
    )


@lru_cache(maxsize=8)
def cached_projection_sets(p: TransformParams, size_cap: int | None = None, general: bool = False) -> ProjectionSets:
    return projection_sets(p, size_cap, general)


def project_set(gamma_s: RootedDisc, p: TransformParams, size_cap: int | None = None) -> tuple[frozenset[bytes], bool]:
    sets = cached_projection_sets(p, size_cap)
    return sets.by_disc.get(gamma_s.fingerprint, frozenset()), sets.complete


def gen_project_set(p: TransformParams, size_cap: int | None = None) -> tuple[frozenset[bytes], bool]:
    sets = cached_projection_sets(p, size_cap, True)
    assert sets.general is not None
    return sets.general, sets.complete


# ---------------------------------------------------------------------------
# natural models


def naturalize_edges(g: SGraph, pairs: Iterable, loops: Iterable) -> SGraph:
    """Zero every pair whose value pair (either order) or loop is outside the model."""
    allowed_pairs = frozenset(pairs)
    allowed_loops = frozenset(loops)
    if (None, None) not in allowed_pairs or None not in allowed_loops:
        raise ValueError("the model must allow absent pairs and absent loops")
    info = {}
    for (u, v), lab in g.info.items():
        if u == v:
            if lab in allowed_loops:
                info[(u, v)] = lab
            continue
        a, b = g.get(u, v), g.get(v, u)
        if (a, b) in allowed_pairs and (b, a) in allowed_pairs:
            info[(u, v)] = lab
    return SGraph(g.n, g.symbols, info)


SIMPLE_MODEL = (frozenset({(None, None), (0, 0)}), frozenset({None}))


def simple_model_symbols() -> InformationSet:
    return SIMPLE_SYMBOLS
