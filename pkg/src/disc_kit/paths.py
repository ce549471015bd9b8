"""Approximating long S-paths by bounded-size S-paths.

Pipeline: close the path into a cycle, pick a frequency-balanced vertex
set V1, rewire crossing edges until no admissible pair is left, keep the
induced subgraph on V1, repair leftover path pieces, then blow the cycles
up and cut them open into a single path.  Every stage is measured with
exact rational L1 distances.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .freq import FreqVector, cnt_k, disc_fingerprints, freq_k, l1_dist
from .freq import DiscMapping, alpha as partition_alpha
from .sgraph import InformationSet, RootedDisc, SGraph, rooted_fingerprint

DEGREE = 2  # S-paths and S-cycles have maximum degree 2


@dataclass(frozen=True)
class SPath:
    """Vertices 0..n-1 with edges i -> i+1 labelled ``labels[i]``."""

    symbols: InformationSet
    labels: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.labels) + 1

    def to_sgraph(self) -> SGraph:
        return SGraph(self.n, self.symbols, {(i, i + 1): lab for i, lab in enumerate(self.labels)})

    @classmethod
    def from_symbols(cls, symbols: InformationSet, edges: Sequence[str]) -> SPath:
        return cls(symbols, tuple(symbols.index(e) for e in edges))


@dataclass(frozen=True)
class SCycle:
    """An S-path on 0..n-1 plus the closing edge n-1 -> 0 labelled ``closing``."""

    symbols: InformationSet
    labels: tuple[int, ...]
    closing: int

    @property
    def n(self) -> int:
        return len(self.labels) + 1

    def to_sgraph(self) -> SGraph:
        info = {(i, i + 1): lab for i, lab in enumerate(self.labels)}
        info[(self.n - 1, 0)] = self.closing
        return SGraph(self.n, self.symbols, info)

    def cyclic_labels(self) -> tuple[int, ...]:
        return (*self.labels, self.closing)


def family_graph(cycles: Sequence[SCycle]) -> SGraph:
    """Disjoint union of cycles, numbered consecutively."""
    if not cycles:
        raise ValueError("empty cycle family")
    info = {}
    offset = 0
    for c in cycles:
        for (u, v), lab in c.to_sgraph().info.items():
            info[(u + offset, v + offset)] = lab
        offset += c.n
    return SGraph(offset, cycles[0].symbols, info)


def successor_map(g: SGraph) -> tuple[list[int], list[int]]:
    """(succ, label) arrays of a graph made of directed cycles; raises otherwise."""
    succ = [-1] * g.n
    lab = [-1] * g.n
    indeg = [0] * g.n
    for (u, v), s in g.info.items():
        if succ[u] != -1:
            raise ValueError(f"vertex {u} has two out-edges")
        succ[u], lab[u] = v, s
        indeg[v] += 1
    if any(x == -1 for x in succ) or any(x != 1 for x in indeg):
        raise ValueError("not a disjoint union of directed cycles")
    return succ, lab


def cycle_lists(g: SGraph) -> list[list[int]]:
    """Cycles as vertex lists, each starting at its smallest id, ordered by that id."""
    succ, _ = successor_map(g)
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        cyc = [s]
        seen[s] = True
        x = succ[s]
        while x != s:
            cyc.append(x)
            seen[x] = True
            x = succ[x]
        out.append(cyc)
    return out


def cycles_of(g: SGraph) -> list[SCycle]:
    succ, lab = successor_map(g)
    return [
        SCycle(g.symbols, tuple(lab[x] for x in cyc[:-1]), lab[cyc[-1]])
        for cyc in cycle_lists(g)
    ]


def _require_big_cycles(g: SGraph, k: int) -> None:
    for cyc in cycle_lists(g):
        if len(cyc) < 2 * k + 2:
            raise ValueError(f"cycle of length {len(cyc)} below 2k+2 = {2 * k + 2}")


def class_bound(k: int, n_symbols: int) -> int:
    """Naive class-count bound (2k)^|S| used for S-paths."""
    return (2 * k) ** n_symbols


# ---------------------------------------------------------------------------
# undirected paths and simple operations


def approx_undirected(n: int, k: int, eps: Fraction) -> int:
    if k < 1 or not 0 < eps < 1:
        raise ValueError("need k >= 1 and 0 < eps < 1")
    return min(n, math.floor(4 * k / Fraction(eps)) + 1)


def undirected_path(n: int) -> SGraph:
    return SGraph.simple(n, [(i, i + 1) for i in range(n - 1)])


def close_cycle(p: SPath, s: int = 0) -> SCycle:
    return SCycle(p.symbols, p.labels, s)


def blowup(c: SCycle, m: int, k: int) -> SCycle:
    """m copies of the opened cycle, joined and re-closed by its closing symbol."""
    if c.n < 2 * k + 2:
        raise ValueError("cycle too short for blowup")
    if m < 1:
        raise ValueError("multiplier must be positive")
    ring = c.cyclic_labels() * m
    return SCycle(c.symbols, ring[:-1], c.closing)


# ---------------------------------------------------------------------------
# partition and rewiring


def phi_value(k: int, n_symbols: int, L: int, eps: Fraction) -> Fraction:
    return Fraction(65 * DEGREE**k * n_symbols**2 * L**5) / Fraction(eps)


def build_partition(g: SGraph, k: int, phi: Fraction) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Lowest-id ceil(phi * freq) representatives of every class form V1."""
    phi = Fraction(phi)
    if 2 * phi >= g.n:
        raise ValueError("phi too large for this graph")
    _require_big_cycles(g, k)
    classes: dict[bytes, list[int]] = {}
    for v, fp in disc_fingerprints(g, k).items():
        classes.setdefault(fp, []).append(v)
    v1: list[int] = []
    for fp in sorted(classes):
        members = classes[fp]
        take = math.ceil(phi * len(members) / g.n)
        v1.extend(members[:take])
    v1_set = set(v1)
    return tuple(sorted(v1)), tuple(v for v in range(g.n) if v not in v1_set)


class CycleState:
    """Mutable successor arrays of a cycle family plus the crossing-edge index.

    A crossing edge is identified by its tail p_k; its key is the label
    sequence of the 2k-vertex window p_1..p_2k around it.  Rewiring never
    changes the key of an untouched crossing edge.
    """

    def __init__(self, g: SGraph, k: int, v1: Iterable[int]):
        self.k = k
        self.symbols = g.symbols
        self.succ, self.lab = successor_map(g)
        self.pred = [0] * g.n
        for u, v in enumerate(self.succ):
            self.pred[v] = u
        self.in_v1 = [False] * g.n
        for v in v1:
            self.in_v1[v] = True
        self.a: dict[tuple, list[int]] = {}
        self.b: dict[tuple, list[int]] = {}
        for v in range(g.n):
            if self.in_v1[v] != self.in_v1[self.succ[v]]:
                side = self.a if self.in_v1[v] else self.b
                side.setdefault(self.key(v), []).append(v)
        self.live = sorted(v for key, vs in self.a.items() if self.b.get(key) for v in vs)

    def window(self, mid: int) -> list[int]:
        first = mid
        for _ in range(self.k - 1):
            first = self.pred[first]
        out = [first]
        for _ in range(2 * self.k - 1):
            out.append(self.succ[out[-1]])
        return out

    def key(self, mid: int) -> tuple[int, ...]:
        return tuple(self.lab[x] for x in self.window(mid)[:-1])

    def near(self, v: int, radius: int) -> set[int]:
        out = {v}
        a = b = v
        for _ in range(radius):
            a, b = self.pred[a], self.succ[b]
            out.update((a, b))
        return out

    def admissible(self, pk: int, qk: int) -> tuple[list[int], list[int]] | None:
        k = self.k
        P, Q = self.window(pk), self.window(qk)
        if len(set(P)) < 2 * k or len(set(Q)) < 2 * k or set(P) & set(Q):
            return None
        if not (self.in_v1[P[k - 1]] and not self.in_v1[P[k]]):
            return None
        if not (not self.in_v1[Q[k - 1]] and self.in_v1[Q[k]]):
            return None
        if Q[-1] in self.near(P[0], 2) or P[-1] in self.near(Q[0], 2):
            return None
        return P, Q

    def find_pair(self) -> tuple[list[int], list[int]] | None:
        """Lexicographically first (p_k, q_k) satisfying the rewiring condition."""
        for pk in self.live:
            for qk in self.b.get(self.key(pk), ()):
                found = self.admissible(pk, qk)
                if found:
                    return found
        return None

    def rewire(self, P: list[int], Q: list[int]) -> None:
        k = self.k
        pk, pk1, qk, qk1 = P[k - 1], P[k], Q[k - 1], Q[k]
        key = self.key(pk)
        self.succ[pk], self.pred[qk1] = qk1, pk
        self.succ[qk], self.pred[pk1] = pk1, qk
        self.a[key].remove(pk)
        self.b[key].remove(qk)
        self.live.pop(bisect.bisect_left(self.live, pk))
        if not self.b[key]:
            for v in self.a[key]:
                self.live.pop(bisect.bisect_left(self.live, v))

    def cycle_length_at_least(self, v: int, bound: int) -> bool:
        x = self.succ[v]
        for _ in range(bound - 1):
            if x == v:
                return False
            x = self.succ[x]
        return True

    def local_labels(self, v: int) -> tuple[int, ...]:
        """Labels of the 2k edges around v; identifies v's k-disc in a big cycle."""
        first = v
        for _ in range(self.k):
            first = self.pred[first]
        out = []
        x = first
        for _ in range(2 * self.k):
            out.append(self.lab[x])
            x = self.succ[x]
        return tuple(out)

    def to_sgraph(self) -> SGraph:
        return SGraph(len(self.succ), self.symbols, {(u, v): self.lab[u] for u, v in enumerate(self.succ)})

    def cut(self) -> int:
        return sum(1 for u, v in enumerate(self.succ) if self.in_v1[u] != self.in_v1[v])


def find_rewire_pair(
    g: SGraph, v1: Iterable[int], v2: Iterable[int], k: int
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    _require_big_cycles(g, k)
    a, b = set(v1), set(v2)
    if a & b or (a | b) != set(range(g.n)):
        raise ValueError("V1 and V2 must partition the vertex set")
    found = CycleState(g, k, a).find_pair()
    return None if found is None else (tuple(found[0]), tuple(found[1]))


def rewire(g: SGraph, P: Sequence[int], Q: Sequence[int], v1: Iterable[int] | None = None) -> SGraph:
    """Swap the middle edges of two equally labelled disjoint windows."""
    k = len(P) // 2
    if len(P) != 2 * k or len(Q) != 2 * k or k < 1:
        raise ValueError("windows must have 2k vertices")
    if set(P) & set(Q):
        raise ValueError("windows must be disjoint")
    labels = []
    for W in (P, Q):
        labs = []
        for x, y in zip(W, W[1:]):
            if (x, y) not in g.info:
                raise ValueError("window is not a directed path of the graph")
            labs.append(g.info[(x, y)])
        labels.append(labs)
    if labels[0] != labels[1]:
        raise ValueError("windows carry different labels")
    if v1 is not None:
        side = set(v1)
        if not (P[k - 1] in side and P[k] not in side and Q[k - 1] not in side and Q[k] in side):
            raise ValueError("middle edges do not cross the partition as required")
    dist_p = g.distances(P[0], 2)
    dist_q = g.distances(Q[0], 2)
    if Q[-1] in dist_p or P[-1] in dist_q:
        raise ValueError("window ends closer than distance 3")
    s = g.info[(P[k - 1], P[k])]
    info = dict(g.info)
    del info[(P[k - 1], P[k])]
    del info[(Q[k - 1], Q[k])]
    info[(P[k - 1], Q[k])] = s
    info[(Q[k - 1], P[k])] = s
    return SGraph(g.n, g.symbols, info)


@dataclass
class RewiringReport:
    phi: Fraction
    identity: bool
    v1_size: int = 0
    cut_before: int = 0
    cut_after: int = 0
    rewires: int = 0
    classes: int = 0
    alpha: Fraction = Fraction(0)
    cut_bound: Fraction = Fraction(0)
    distance: Fraction = Fraction(0)

    @property
    def cut_bound_holds(self) -> bool:
        return self.cut_after <= self.cut_bound


def edge_rewiring(
    g: SGraph, k: int, eps: Fraction, L: int | None = None, phi: Fraction | None = None,
    check: bool = True,
) -> tuple[SGraph, RewiringReport, tuple[int, ...]]:
    """Rewire to a fixpoint and return the induced subgraph on V1.

    Returns (H, report, V1).  ``L`` defaults to the observed class count.
    With ``check`` every rewire is verified: both resulting cycles keep
    length >= 2k+2 and every nearby k-disc keeps its label window.
    """
    _require_big_cycles(g, k)
    fps = disc_fingerprints(g, k)
    classes = len(set(fps.values()))
    if phi is None:
        phi = phi_value(k, len(g.symbols), L if L is not None else classes, eps)
    phi = Fraction(phi)
    if 2 * phi >= g.n:
        return g, RewiringReport(phi, True, g.n, classes=classes), tuple(range(g.n))
    v1, v2 = build_partition(g, k, phi)
    state = CycleState(g, k, v1)
    report = RewiringReport(phi, False, len(v1), cut_before=state.cut(), classes=classes)
    while True:
        pair = state.find_pair()
        if pair is None:
            break
        P, Q = pair
        touched = [P[k - 1], P[k], Q[k - 1], Q[k]]
        before = {}
        if check:
            for x in touched:
                for y in state.near(x, k):
                    before[y] = state.local_labels(y)
        state.rewire(P, Q)
        report.rewires += 1
        if check:
            for x in (P[k - 1], Q[k - 1]):
                if not state.cycle_length_at_least(x, 2 * k + 2):
                    raise AssertionError("rewire produced a cycle shorter than 2k+2")
            for y, labs in before.items():
                if state.local_labels(y) != labs:
                    raise AssertionError("rewire changed a k-disc")
    rewired = state.to_sgraph()
    report.cut_after = state.cut()
    report.alpha = partition_alpha(rewired, v1, v2, k)
    s = len(g.symbols)
    report.cut_bound = s * classes**2 * (
        8 * k + 6 + 2 * Fraction(len(v1) * len(v2), g.n) * report.alpha * s
    )
    h = rewired.induced(v1)
    report.distance = l1_dist(freq_k(g, k), freq_k(h, k))
    return h, report, v1


# ---------------------------------------------------------------------------
# leftovers, blowups and the final path


def split_components(h: SGraph) -> tuple[list[list[int]], list[list[int]]]:
    """(cycles, paths) of a graph whose vertices have in/out degree <= 1.

    Paths are listed from head to tail; both lists are ordered by smallest id.
    """
    succ: dict[int, int] = {}
    pred: dict[int, int] = {}
    for u, v in h.info:
        succ[u] = v
        pred[v] = u
    seen: set[int] = set()
    paths = []
    for v in range(h.n):
        if v in pred or v in seen:
            continue
        path = [v]
        while path[-1] in succ:
            path.append(succ[path[-1]])
        seen.update(path)
        paths.append(path)
    cycles = []
    for v in range(h.n):
        if v in seen:
            continue
        cyc = [v]
        seen.add(v)
        x = succ[v]
        while x != v:
            cyc.append(x)
            seen.add(x)
            x = succ[x]
        cycles.append(cyc)
    paths.sort(key=min)
    return cycles, paths


def repair_leftovers(h: SGraph, k: int) -> tuple[SGraph, str]:
    """Drop path pieces if they are short in total, else chain them into one cycle."""
    cycles, paths = split_components(h)
    total = sum(len(p) for p in paths)
    if not paths:
        return h, "none"
    if total < 2 * k + 2:
        keep = sorted(v for c in cycles for v in c)
        return h.induced(keep), "dropped"
    info = dict(h.info)
    for a, b in zip(paths, paths[1:] + paths[:1]):
        info[(a[-1], b[0])] = 0
    return SGraph(h.n, h.symbols, info), "chained"


def blowup_multiplier(k: int, n_cycles: int, L: int, eps: Fraction, size: int) -> int:
    return math.ceil(Fraction(4 * DEGREE**k * (2 * n_cycles - 1) * L) / (Fraction(eps) * size))


def cycles_to_path(g: SGraph, k: int, eps: Fraction, L: int | None = None, m: int | None = None) -> tuple[SPath, int]:
    """Blow every cycle up, open it at its closing edge and chain the pieces."""
    _require_big_cycles(g, k)
    cycles = cycles_of(g)
    if L is None:
        L = len(set(disc_fingerprints(g, k).values()))
    if m is None:
        m = blowup_multiplier(k, len(cycles), L, eps, g.n)
    labels: list[int] = []
    for i, c in enumerate(cycles):
        if i:
            labels.append(0)
        big = blowup(c, m, k)
        labels.extend(big.labels)
    return SPath(g.symbols, tuple(labels)), m


# ---------------------------------------------------------------------------
# full pipeline


def theorem_bound(k: int, n_symbols: int, L: int, eps: Fraction) -> Fraction:
    return Fraction(24960 * DEGREE ** (3 * k) * n_symbols**2 * L**6) / Fraction(eps) ** 2


def naive_theorem_bound(k: int, n_symbols: int, eps: Fraction) -> Fraction:
    return Fraction(24960 * 8**k * n_symbols**2 * (2 * k) ** (6 * n_symbols)) / Fraction(eps) ** 2


@dataclass
class PipelineReport:
    l_mode: str
    L: int
    bound: Fraction
    input_size: int
    identity: bool = False
    phi: Fraction | None = None
    m: int | None = None
    leftovers: str = ""
    stages: list[dict] = field(default_factory=list)
    rewiring: RewiringReport | None = None
    final_size: int = 0
    final_distance: Fraction = Fraction(0)
    within_eps: bool = True
    within_bound: bool = True
    retried: bool = False
    adaptive: bool = False

    def to_json(self) -> dict:
        def frac(x):
            return None if x is None else f"{Fraction(x).numerator}/{Fraction(x).denominator}"

        out = {
            "l_mode": self.l_mode,
            "L": self.L,
            "bound": frac(self.bound),
            "input_size": self.input_size,
            "identity": self.identity,
            "phi": frac(self.phi),
            "m": self.m,
            "leftovers": self.leftovers,
            "stages": [
                {key: frac(val) if isinstance(val, Fraction) else val for key, val in st.items()}
                for st in self.stages
            ],
            "final_size": self.final_size,
            "final_distance": frac(self.final_distance),
            "within_eps": self.within_eps,
            "within_bound": self.within_bound,
            "retried": self.retried,
            "adaptive": self.adaptive,
        }
        if self.rewiring is not None:
            r = self.rewiring
            out["rewiring"] = {
                "phi": frac(r.phi), "identity": r.identity, "v1_size": r.v1_size,
                "cut_before": r.cut_before, "cut_after": r.cut_after, "rewires": r.rewires,
                "classes": r.classes, "alpha": frac(r.alpha), "cut_bound": frac(r.cut_bound),
                "cut_bound_holds": r.cut_bound_holds, "distance": frac(r.distance),
            }
        return out


def _observed_classes(p: SPath, k: int) -> int:
    fps = set(cnt_k(p.to_sgraph(), k).entries) | set(cnt_k(close_cycle(p).to_sgraph(), k).entries)
    return len(fps)


def _rewire_stage(
    p: SPath, k: int, eps: Fraction, L: int, phi: Fraction, report: PipelineReport, base: FreqVector,
) -> SGraph | None:
    cyc = close_cycle(p).to_sgraph()
    report.stages = [{"stage": "close_cycle", "size": cyc.n, "distance": l1_dist(base, freq_k(cyc, k))}]
    h, rw, _ = edge_rewiring(cyc, k, eps / (24 * DEGREE**k), L=L, phi=phi)
    report.rewiring = rw
    report.phi = rw.phi
    report.stages.append({"stage": "edge_rewiring", "size": h.n, "distance": l1_dist(base, freq_k(h, k))})
    repaired, how = repair_leftovers(h, k)
    report.leftovers = how
    if repaired.n == 0:
        return None
    report.stages.append({"stage": "leftovers", "size": repaired.n, "distance": l1_dist(base, freq_k(repaired, k))})
    return repaired


def _path_stage(
    repaired: SGraph, k: int, eps: Fraction, L: int, m: int | None, report: PipelineReport, base: FreqVector,
) -> tuple[SPath, Fraction]:
    q, used_m = cycles_to_path(repaired, k, eps / 3, L=L, m=m)
    report.m = used_m
    dist = l1_dist(base, freq_k(q.to_sgraph(), k))
    report.stages = [st for st in report.stages if st["stage"] != "cycles_to_path"]
    report.stages.append({"stage": "cycles_to_path", "size": q.n, "distance": dist})
    return q, dist


def approx_path(
    p: SPath, k: int, eps: Fraction, l_mode: str = "observed", adaptive: bool = False,
) -> tuple[SPath, PipelineReport]:
    """Bounded-size S-path whose k-disc frequencies are within eps of p's.

    ``l_mode`` picks the class-count value plugged into phi, m and the size
    bound: ``observed`` counts the classes of p and its closed cycle,
    ``naive`` uses (2k)^|S|.  ``adaptive`` additionally tries smaller phi
    and m values, keeping the first candidate whose measured distance is
    within eps and whose size beats the input.
    """
    if k < 1 or not 0 < eps < 1:
        raise ValueError("need k >= 1 and 0 < eps < 1")
    eps = Fraction(eps)
    if l_mode not in ("observed", "naive"):
        raise ValueError(f"unknown L mode {l_mode!r}")
    s = len(p.symbols)
    L = _observed_classes(p, k) if l_mode == "observed" else class_bound(k, s)
    bound = theorem_bound(k, s, L, eps)
    report = PipelineReport(l_mode, L, bound, p.n, adaptive=adaptive)
    base = freq_k(p.to_sgraph(), k)

    def finish(q: SPath) -> tuple[SPath, PipelineReport]:
        report.final_size = q.n
        report.final_distance = l1_dist(base, freq_k(q.to_sgraph(), k))
        report.within_eps = report.final_distance <= eps
        report.within_bound = q.n <= bound
        return q, report

    if adaptive:
        found = _adaptive_search(p, k, eps, L, base, report)
        if found is not None:
            return finish(found)
        report.stages = []
    phi = phi_value(k, s, L, eps / (24 * DEGREE**k))
    if p.n <= 2 * k + 1 or p.n <= bound or 2 * phi >= p.n:
        report.identity = True
        report.phi = phi
        return finish(p)
    repaired = _rewire_stage(p, k, eps, L, phi, report, base)
    if repaired is None:
        report.identity = True
        return finish(p)
    out = finish(_path_stage(repaired, k, eps, L, None, report, base)[0])
    if not report.within_eps and l_mode == "observed":
        q2, r2 = approx_path(p, k, eps, "naive")
        r2.retried = True
        return q2, r2
    return out


def _adaptive_search(
    p: SPath, k: int, eps: Fraction, L: int, base: FreqVector, report: PipelineReport,
) -> SPath | None:
    """Doubling search over phi, and over m for each phi; every candidate is measured."""
    phi = Fraction(2 ** max(1, math.ceil(math.log2(4 * (2 * k + 2) * L))))
    while 2 * phi < p.n:
        repaired = _rewire_stage(p, k, eps, L, phi, report, base)
        m = 1
        while repaired is not None and m * repaired.n < p.n:
            q, dist = _path_stage(repaired, k, eps, L, m, report, base)
            if dist <= eps:
                return q
            m *= 2
        phi *= 2
    return None


# ---------------------------------------------------------------------------
# alternative disc mappings


def _path_order(g: SGraph) -> list[int]:
    """Vertices of a directed path disc from head to tail; raises if not a path."""
    if any(u == v for (u, v) in g.info):
        raise ValueError("disc has a loop")
    succ: dict[int, int] = {}
    pred: dict[int, int] = {}
    for u, v in g.info:
        if u in succ or v in pred or (v, u) in g.info:
            raise ValueError("disc is not a directed path")
        succ[u], pred[v] = v, u
    heads = [v for v in range(g.n) if v not in pred]
    if len(heads) != 1:
        raise ValueError("disc is not a directed path")
    order = [heads[0]]
    while order[-1] in succ:
        order.append(succ[order[-1]])
    if len(order) != g.n:
        raise ValueError("disc is not a directed path")
    return order


def _right_key(disc: RootedDisc) -> bytes:
    order = _path_order(disc.graph)
    keep = order[order.index(disc.root):]
    sub = disc.graph.induced(keep)
    return rooted_fingerprint(sub, sorted(keep).index(disc.root))


def _string_key(disc: RootedDisc) -> str:
    order = _path_order(disc.graph)
    syms = disc.graph.symbols
    return "".join(syms[disc.graph.info[(a, b)]] for a, b in zip(order, order[1:]))


RIGHT_DISC = DiscMapping("right_disc", _right_key)
K_STRING = DiscMapping("k_string", _string_key)


def right_disc() -> DiscMapping:
    return RIGHT_DISC


def k_string() -> DiscMapping:
    return K_STRING
