"""Disc count and frequency vectors, L1 distances and partition measures."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping

from .sgraph import InformationSet, RootedDisc, SGraph, disc_fingerprint


@dataclass(frozen=True)
class FreqVector:
    """Sparse vector of exact rationals; zero entries are dropped."""

    entries: Mapping[Hashable, Fraction]

    def __post_init__(self) -> None:
        clean = {key: Fraction(val) for key, val in self.entries.items() if val != 0}
        object.__setattr__(self, "entries", clean)

    @property
    def total(self) -> Fraction:
        return sum(self.entries.values(), Fraction(0))

    def __getitem__(self, key: Hashable) -> Fraction:
        return self.entries.get(key, Fraction(0))

    def __len__(self) -> int:
        return len(self.entries)

    def keys(self) -> list:
        return sorted(self.entries)

    def scaled(self, factor: Fraction) -> FreqVector:
        return FreqVector({key: val * factor for key, val in self.entries.items()})


def l1_dist(a: FreqVector, b: FreqVector) -> Fraction:
    keys = set(a.entries) | set(b.entries)
    return sum((abs(a[key] - b[key]) for key in keys), Fraction(0))


def disc_fingerprints(g: SGraph, k: int, vertices: Iterable[int] | None = None) -> dict[int, bytes]:
    vs = range(g.n) if vertices is None else vertices
    return {v: disc_fingerprint(g, v, k) for v in vs}


def cnt_k(g: SGraph, k: int, vertices: Iterable[int] | None = None) -> FreqVector:
    counts = Counter(disc_fingerprints(g, k, vertices).values())
    return FreqVector({fp: Fraction(c) for fp, c in counts.items()})


def freq_k(g: SGraph, k: int) -> FreqVector:
    if g.n == 0:
        raise ValueError("frequency vector of the empty graph is undefined")
    return cnt_k(g, k).scaled(Fraction(1, g.n))


def freq_rel(g: SGraph, vertices: Iterable[int], k: int) -> FreqVector:
    """Relative vector cnt_k(W|G)/|W|: discs are taken in g, counted over W."""
    w = sorted(set(vertices))
    if not w:
        raise ValueError("relative frequency needs a nonempty vertex subset")
    return cnt_k(g, k, w).scaled(Fraction(1, len(w)))


def freq_of_counts(counts: Mapping[Hashable, int], total: int) -> FreqVector:
    return FreqVector({key: Fraction(c, total) for key, c in counts.items()})


# ---------------------------------------------------------------------------
# mappings on disc classes


@dataclass(frozen=True)
class DiscMapping:
    """Named map from a canonical disc to a bucket key.

    The map is applied to the canonical disc rebuilt from the fingerprint,
    so equal fingerprints always land in the same bucket.
    """

    name: str
    fn: Callable[[RootedDisc], Hashable]

    def __call__(self, fp: bytes, symbols: InformationSet, k: int) -> Hashable:
        return self.fn(RootedDisc.from_fingerprint(fp, symbols, k))


IDENTITY = DiscMapping("identity", lambda disc: disc.fingerprint)
CONSTANT = DiscMapping("constant", lambda disc: "*")


def map_vector(vec: FreqVector, mapping: DiscMapping, symbols: InformationSet, k: int) -> FreqVector:
    out: dict[Hashable, Fraction] = {}
    for fp, val in vec.entries.items():
        key = mapping(fp, symbols, k)
        out[key] = out.get(key, Fraction(0)) + val
    return FreqVector(out)


def map_freq(g: SGraph, k: int, mapping: DiscMapping) -> FreqVector:
    return map_vector(freq_k(g, k), mapping, g.symbols, k)


# ---------------------------------------------------------------------------
# partitions


def _check_partition(g: SGraph, v1: Iterable[int], v2: Iterable[int]) -> tuple[set[int], set[int]]:
    a, b = set(v1), set(v2)
    if a & b or (a | b) != set(range(g.n)):
        raise ValueError("V1 and V2 must partition the vertex set")
    return a, b


def directed_edges_between(g: SGraph, x: set[int], y: set[int]) -> int:
    return sum(1 for (u, v) in g.info if u in x and v in y)


def cut(g: SGraph, v1: Iterable[int], v2: Iterable[int]) -> int:
    a, b = _check_partition(g, v1, v2)
    return directed_edges_between(g, a, b) + directed_edges_between(g, b, a)


def alpha(g: SGraph, v1: Iterable[int], v2: Iterable[int], k: int) -> Fraction:
    """Largest per-class gap between the relative vectors of V1 and V2."""
    a, b = _check_partition(g, v1, v2)
    if not a or not b:
        raise ValueError("both sides of the partition must be nonempty")
    fa, fb = freq_rel(g, a, k), freq_rel(g, b, k)
    keys = set(fa.entries) | set(fb.entries)
    return max(abs(fa[key] - fb[key]) for key in keys)


def path_windows(g: SGraph, k: int) -> Iterable[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All directed walks p_1..p_2k along single-successor edges.

    Yields (vertices, labels) where labels[i] = I(p_i, p_{i+1}).  Only
    defined on graphs where every vertex has at most one out-edge and one
    in-edge besides itself, i.e. disjoint S-paths and S-cycles.
    """
    out = g.out_adj
    for start in range(g.n):
        verts = [start]
        labels = []
        ok = True
        while len(verts) < 2 * k:
            succ = [(w, lab) for w, lab in out[verts[-1]].items() if w != verts[-1]]
            if len(succ) != 1:
                ok = False
                break
            w, lab = succ[0]
            if w in verts:
                ok = False
                break
            verts.append(w)
            labels.append(lab)
        if ok:
            yield tuple(verts), tuple(labels)


def e_counts(g: SGraph, k: int, x: Iterable[int], y: Iterable[int]) -> Counter:
    """Counter keyed by (P1 labels, s, P2 labels) of 2k-paths with p_k in X, p_{k+1} in Y.

    P1 = p_1..p_k and P2 = p_{k+1}..p_2k are the two halves; s labels the
    middle edge.  This is e_s(P1, P2 | X, Y) for every triple at once.
    """
    xs, ys = set(x), set(y)
    counts: Counter = Counter()
    for verts, labels in path_windows(g, k):
        if verts[k - 1] in xs and verts[k] in ys:
            counts[(labels[: k - 1], labels[k - 1], labels[k:])] += 1
    return counts


def e_count(
    g: SGraph, k: int, p1: tuple[int, ...], s: int, p2: tuple[int, ...],
    x: Iterable[int], y: Iterable[int],
) -> int:
    return e_counts(g, k, x, y)[(tuple(p1), s, tuple(p2))]


def format_fraction(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)
