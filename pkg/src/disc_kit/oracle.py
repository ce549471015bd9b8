"""Brute-force ground truth: finite covers, disc-set realizability and AlgDC.

Every search here is bounded.  A negative answer only means "not found
within the searched universe", never a refutation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator

import numpy as np

from .budget import Budget, BudgetExceeded
from .enumeration import EnumerationSpec, enumerate_graphs
from .freq import freq_k, l1_dist
from .sgraph import SGraph, disc_fingerprint, graph_fingerprint
from .transform import (
    TransformParams,
    cached_projection_sets,
    encode,
)


@dataclass(frozen=True)
class Found:
    graph: SGraph
    detail: dict = field(default_factory=dict)

    found = True


@dataclass(frozen=True)
class NotFound:
    """Nothing found; ``complete`` is False when a budget cut the search short."""

    limit: int
    complete: bool
    reason: str = ""

    found = False


# ---------------------------------------------------------------------------
# finite cover


@dataclass(frozen=True)
class Cover:
    eps: Fraction
    step: Fraction
    classes: tuple[bytes, ...]
    universe: tuple[SGraph, ...]
    representatives: tuple[int, ...]
    assignments: tuple[tuple[tuple[Fraction, ...], int], ...]
    verified: bool

    @property
    def size_bound(self) -> Fraction:
        c = len(self.classes)
        return (2 * Fraction(c) / self.eps) ** c

    def representative_graphs(self) -> list[SGraph]:
        return [self.universe[i] for i in self.representatives]


def _lcm(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def build_cover(d: int, k: int, eps: Fraction, spec: EnumerationSpec, budget: Budget | None = None) -> Cover:
    """Grid-based eps-cover of the frequency vectors of an enumerated universe.

    Grid points have coordinates j * eps/(2C), j = 1..floor(2C/eps), over the
    C disc classes occurring in the universe.  Each point picks the first
    graph within eps/2 of it; the cover property is then re-checked with
    exact fractions.
    """
    eps = Fraction(eps)
    universe = tuple(enumerate_graphs(spec, budget))
    if not universe:
        raise ValueError("empty universe")
    vectors = [freq_k(g, k) for g in universe]
    classes = tuple(sorted(set().union(*(v.entries for v in vectors))))
    c = len(classes)
    step = eps / (2 * c)
    if eps >= 2:
        reps: tuple[int, ...] = (0,)
        assignments: tuple = ()
    else:
        top = math.floor(2 * c / eps)
        scale = _lcm([step.denominator, (eps / 2).denominator] + [g.n for g in universe])
        col = {fp: i for i, fp in enumerate(classes)}
        F = np.zeros((len(universe), c), dtype=np.int64)
        for gi, vec in enumerate(vectors):
            for fp, val in vec.entries.items():
                F[gi, col[fp]] = int(val * scale)
        unit = int(step * scale)
        radius = int(eps / 2 * scale)
        chosen: dict[tuple[int, ...], int] = {}
        points = itertools.product(range(1, top + 1), repeat=c)
        while True:
            chunk = list(itertools.islice(points, 4096))
            if not chunk:
                break
            if budget is not None:
                budget.tick(len(chunk))
            X = np.array(chunk, dtype=np.int64) * unit
            dist = np.abs(X[:, None, :] - F[None, :, :]).sum(axis=2)
            close = dist <= radius
            first = close.argmax(axis=1)
            for pt, has, gi in zip(chunk, close.any(axis=1), first):
                if has:
                    chosen[pt] = int(gi)
        reps = tuple(sorted(set(chosen.values())))
        assignments = tuple(
            (tuple(j * step for j in pt), gi) for pt, gi in sorted(chosen.items())
        )
    verified = all(
        any(l1_dist(vec, vectors[r]) <= eps for r in reps) for vec in vectors
    )
    return Cover(eps, step, classes, universe, reps, assignments, verified)


# ---------------------------------------------------------------------------
# realizability


def disc_set(g: SGraph, k: int) -> frozenset[bytes]:
    return frozenset(disc_fingerprint(g, v, k) for v in range(g.n))


def _search(
    universe: Iterator[SGraph], accept: Callable[[SGraph], dict | None], limit: int,
) -> Found | NotFound:
    try:
        for g in universe:
            detail = accept(g)
            if detail is not None:
                return Found(g, detail)
    except BudgetExceeded as exc:
        return NotFound(limit, False, str(exc))
    return NotFound(limit, True)


def realizability_search(
    phi: Iterable[bytes], d: int, k: int, n_max: int,
    spec: EnumerationSpec | None = None, budget: Budget | None = None,
) -> Found | NotFound:
    """First graph (up to n_max vertices) whose set of k-discs equals phi."""
    target = frozenset(phi)
    if not target:
        raise ValueError("the disc set must be nonempty")
    spec = spec or EnumerationSpec.simple(n_max, d)

    def accept(g: SGraph) -> dict | None:
        for v in range(g.n):
            if disc_fingerprint(g, v, k) not in target:
                return None
        return {} if disc_set(g, k) == target else None

    return _search(enumerate_graphs(spec, budget), accept, n_max)


# ---------------------------------------------------------------------------
# AlgDC


_CENTER_CACHE: dict[tuple, frozenset[bytes]] = {}


def image_center_discs(h: SGraph, p: TransformParams) -> frozenset[bytes]:
    """q-disc fingerprints of the centers in encode(h), cached per component class."""
    out: set[bytes] = set()
    for comp in h.components():
        sub = h.induced(comp)
        key = (p, graph_fingerprint(sub))
        hit = _CENTER_CACHE.get(key)
        if hit is None:
            image, index = encode(sub, p)
            hit = frozenset(disc_fingerprint(image, c.center, p.q) for c in index.clusters)
            _CENTER_CACHE[key] = hit
        out |= hit
    return frozenset(out)


def _nonempty_subsets(items: Iterable[bytes]) -> Iterator[frozenset[bytes]]:
    items = sorted(items)
    for r in range(1, len(items) + 1):
        for combo in itertools.combinations(items, r):
            yield frozenset(combo)


def _subsets(items: Iterable[bytes]) -> Iterator[frozenset[bytes]]:
    yield frozenset()
    yield from _nonempty_subsets(items)


def algdc(
    phi_s: Iterable[bytes], p: TransformParams, n_max: int,
    strategy: str = "swapped", max_iterations: int | None = None,
    budget: Budget | None = None,
) -> Found | NotFound:
    """Decide disc-set realizability on the S side through the simple side.

    For each choice of nonempty X_i inside the projection set of every
    target disc, and Y among the generalised q-discs that are not center
    discs, ask whether some simple graph has disc set exactly the union.

    ``literal`` walks that subset loop and looks each union up among the
    disc sets of images of S-graphs with at most ``n_max`` vertices; it is
    exponential in the number of extra discs and only finishes for tiny
    universes.  ``swapped`` walks the same universe once and tests whether
    a graph's disc set has the required shape, which is the same verdict
    without the subset blowup.
    Any simple graph whose q-discs all lie in the generalised set is an
    image, so searching images loses nothing.
    """
    targets = sorted(set(phi_s))
    if not targets:
        raise ValueError("the disc set must be nonempty")
    budget = budget or Budget.from_env(max_iterations)
    try:
        sets = cached_projection_sets(p)
    except BudgetExceeded as exc:
        return NotFound(n_max, False, str(exc))
    if not sets.complete:
        return NotFound(n_max, False, "projection sets incomplete")
    blocks = [sets.by_disc.get(t, frozenset()) for t in targets]
    if any(not b for b in blocks):
        return NotFound(n_max, True, "a target disc has an empty projection set")
    wanted = frozenset().union(*blocks)
    all_centers = sets.centers()
    spec = EnumerationSpec.all_sgraphs(n_max, p.d, p.symbols)

    if strategy == "swapped":
        def accept(h: SGraph) -> dict | None:
            budget.tick()
            centers = image_center_discs(h, p)
            if centers <= wanted and all(centers & b for b in blocks):
                return {"preimage": h, "X": sorted(centers)}
            return None

        result = _search(enumerate_graphs(spec, budget), accept, n_max)
        if isinstance(result, Found):
            image, _ = encode(result.graph, p)
            return Found(image, {**result.detail, "Y": sorted(disc_set(image, p.q) - all_centers)})
        return result

    if strategy != "literal":
        raise ValueError(f"unknown strategy {strategy!r}")
    try:
        index = _image_index(spec, p, budget)
        extras = sorted(frozenset().union(*index) - all_centers)
        for xs in itertools.product(*(_nonempty_subsets(b) for b in blocks)):
            chosen = frozenset().union(*xs)
            for ys in _subsets(extras):
                budget.tick()
                hit = index.get(chosen | ys)
                if hit is not None:
                    return Found(hit, {"X": sorted(chosen), "Y": sorted(ys)})
    except BudgetExceeded as exc:
        return NotFound(n_max, False, str(exc))
    return NotFound(n_max, True)


def _image_index(spec: EnumerationSpec, p: TransformParams, budget: Budget) -> dict[frozenset[bytes], SGraph]:
    """q-disc set of every image in the universe, first image per set.

    Only discs occurring in some image can appear in a matched target, so
    the literal loop draws Y from these instead of the full generalised set.
    """
    out: dict[frozenset[bytes], SGraph] = {}
    for h in enumerate_graphs(spec, budget):
        image, _ = encode(h, p)
        out.setdefault(disc_set(image, p.q), image)
    return out


def direct_realizability(
    phi_s: Iterable[bytes], p: TransformParams, n_max: int, budget: Budget | None = None,
) -> Found | NotFound:
    """Realizability of an S-side disc set over all d-bounded S-graphs up to n_max."""
    spec = EnumerationSpec.all_sgraphs(n_max, p.d, p.symbols)
    return realizability_search(phi_s, p.d, p.k, n_max, spec, budget)
