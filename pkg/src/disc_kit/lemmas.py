"""Exact checkers for the frequency, projection and rewiring inequalities.

Every check evaluates both sides as exact fractions.  Instances that do
not meet a lemma's hypotheses are reported as skips, never as passes.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Iterator

from .enumeration import one_way_pairs
from .freq import (
    CONSTANT,
    IDENTITY,
    DiscMapping,
    alpha,
    cnt_k,
    e_counts,
    format_fraction,
    freq_k,
    l1_dist,
    map_freq,
)
from .io import graph_to_json
from .paths import SCycle, cycle_lists, edge_rewiring, family_graph
from .sgraph import InformationSet, SGraph, underlying
from .transform import (
    TransformParams,
    cached_projection_sets,
    encode,
    naturalize_edges,
    params,
    psi_q,
)

ALPHABET = "abc"


# ---------------------------------------------------------------------------
# instances


@dataclass(frozen=True)
class Instance:
    family: str
    seed: int
    index: int
    data: dict

    def to_json(self) -> dict:
        return {"family": self.family, "seed": self.seed, "index": self.index, "data": _jsonify(self.data)}


def _jsonify(x: Any) -> Any:
    if isinstance(x, SGraph):
        return graph_to_json(x)
    if isinstance(x, Fraction):
        return format_fraction(x)
    if isinstance(x, dict):
        return {str(k): _jsonify(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonify(v) for v in x]
    return x


def symbols_of(size: int) -> InformationSet:
    return InformationSet(tuple(ALPHABET[:size]))


def random_sgraph(rng: random.Random, n: int, d: int, symbols: InformationSet, loop_rate: float = 0.3) -> SGraph:
    """Random S-graph with maximum degree at most d (a loop counts 2)."""
    info: dict[tuple[int, int], int] = {}
    deg = [0] * n
    for _ in range(3 * n):
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            if deg[u] + 2 <= d and (u, u) not in info and rng.random() < loop_rate:
                info[(u, u)] = rng.randrange(len(symbols))
                deg[u] += 2
            continue
        if (u, v) in info:
            continue
        joined = (v, u) in info
        if not joined and (deg[u] + 1 > d or deg[v] + 1 > d):
            continue
        info[(u, v)] = rng.randrange(len(symbols))
        if not joined:
            deg[u] += 1
            deg[v] += 1
    return SGraph(n, symbols, info)


def random_cycle_family(
    rng: random.Random, k: int, symbols: InformationSet, cycles: int, max_extra: int,
) -> SGraph:
    """Disjoint S-cycles, each of length at least 2k+2."""
    out = []
    for _ in range(cycles):
        n = 2 * k + 2 + rng.randint(0, max_extra)
        labels = tuple(rng.randrange(len(symbols)) for _ in range(n - 1))
        out.append(SCycle(symbols, labels, rng.randrange(len(symbols))))
    return family_graph(out)


def _edit(rng: random.Random, g: SGraph, d: int, edits: int) -> SGraph:
    """Change ``edits`` information values at random, keeping degree at most d."""
    info = dict(g.info)
    n_sym = len(g.symbols)
    done = 0
    for _ in range(50 * edits):
        if done == edits:
            break
        u, v = rng.randrange(g.n), rng.randrange(g.n)
        old = info.get((u, v))
        new = rng.choice([None, *range(n_sym)])
        if new == old:
            continue
        trial = dict(info)
        if new is None:
            trial.pop((u, v))
        else:
            trial[(u, v)] = new
        if SGraph(g.n, g.symbols, trial).max_degree() <= d:
            info = trial
            done += 1
    return SGraph(g.n, g.symbols, info)


def _gen_subgraph(rng: random.Random) -> dict:
    d, k = rng.choice([2, 3]), rng.choice([1, 2])
    g = random_sgraph(rng, rng.randint(1, 14), d, symbols_of(rng.randint(1, 3)))
    keep = [v for v in range(g.n) if rng.random() < 0.7] or [rng.randrange(g.n)]
    return {"g": g, "k": k, "keep": keep}


def _gen_edge_edit(rng: random.Random) -> dict:
    d, k = rng.choice([2, 3]), rng.choice([1, 2])
    g = random_sgraph(rng, rng.randint(2, 14), d, symbols_of(rng.randint(1, 3)))
    h = g
    while h.info == g.info:
        h = _edit(rng, g, d, rng.randint(1, 4))
    return {"g": g, "h": h, "k": k}


def _gen_model_triple(rng: random.Random) -> dict:
    d, k = rng.choice([2, 3]), rng.choice([1, 2])
    symbols = symbols_of(rng.randint(1, 2))
    pairs, loops = one_way_pairs(symbols), frozenset({None})
    g = naturalize_edges(random_sgraph(rng, rng.randint(1, 12), d, symbols), pairs, loops)
    h1 = random_sgraph(rng, rng.randint(1, 12), d, symbols)
    h2 = naturalize_edges(h1, pairs, loops)
    return {"g": g, "h1": h1, "h2": h2, "k": k}


def _gen_graph_pair(rng: random.Random) -> dict:
    d, k = rng.choice([2, 3]), rng.choice([1, 2])
    symbols = symbols_of(rng.randint(1, 3))
    return {
        "a": random_sgraph(rng, rng.randint(1, 12), d, symbols),
        "b": random_sgraph(rng, rng.randint(1, 12), d, symbols),
        "k": k,
        "mapping": rng.choice(sorted(MAPPINGS)),
    }


def _gen_transform_image(rng: random.Random) -> dict:
    symbols = symbols_of(1)
    return {
        "g": random_sgraph(rng, rng.randint(1, 6), 2, symbols),
        "h": random_sgraph(rng, rng.randint(1, 6), 2, symbols),
        "d": 2, "k": 1,
    }


def _gen_near_image(rng: random.Random) -> dict:
    """An encode image with up to two edge flips inside the first cluster's 1-disc."""
    symbols = symbols_of(1)
    p = params(2, 1, symbols)
    image, index = encode(random_sgraph(rng, rng.randint(4, 8), 2, symbols), p)
    info = dict(image.info)
    cap = 2 * p.t + 1
    local = sorted(index[0].members())
    for _ in range(rng.randint(0, 2)):
        u = rng.choice(local)
        v = rng.choice([x for x in range(image.n) if x != u])
        trial = dict(info)
        if (u, v) in trial:
            del trial[(u, v)], trial[(v, u)]
        else:
            trial[(u, v)] = trial[(v, u)] = 0
        if SGraph(image.n, image.symbols, trial).max_degree() <= cap:
            info = trial
    return {"graph": SGraph(image.n, image.symbols, info), "d": 2, "k": 1, "S": 1}


def _gen_cycle_partition(rng: random.Random) -> dict:
    k = rng.choice([1, 2])
    g = random_cycle_family(rng, k, symbols_of(rng.randint(1, 2)), rng.randint(1, 4), 10)
    v1 = [v for v in range(g.n) if rng.random() < 0.5]
    if not v1 or len(v1) == g.n:
        v1 = [0]
    return {"g": g, "k": k, "v1": v1}


def _gen_cycle_family(rng: random.Random) -> dict:
    k = rng.choice([1, 2])
    symbols = symbols_of(rng.randint(1, 2))
    g = random_cycle_family(rng, k, symbols, rng.randint(3, 8), 40)
    phi = rng.randint(2 * k + 2, max(2 * k + 2, (g.n - 1) // 2))
    return {"g": g, "k": k, "phi": phi}


def _gen_app1(rng: random.Random) -> dict:
    return {"t": rng.randint(1, 40), "q": rng.randint(1, 12), "eps": Fraction(rng.randint(1, 999), 1000)}


FAMILIES: dict[str, Callable[[random.Random], dict]] = {
    "subgraph-pair": _gen_subgraph,
    "edge-edit": _gen_edge_edit,
    "model-triple": _gen_model_triple,
    "graph-pair": _gen_graph_pair,
    "transform-image": _gen_transform_image,
    "near-image": _gen_near_image,
    "cycle-partition": _gen_cycle_partition,
    "cycle-family": _gen_cycle_family,
    "app1-params": _gen_app1,
}


def generate_instances(family: str, seed: int, count: int) -> Iterator[Instance]:
    """Deterministic instance stream for a family."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    rng = random.Random(f"{family}/{seed}")
    gen = FAMILIES[family]
    for i in range(count):
        yield Instance(family, seed, i, gen(rng))


# ---------------------------------------------------------------------------
# checks


@dataclass(frozen=True)
class LemmaCheck:
    lemma: str
    instance: Instance
    lhs: Fraction | None
    rhs: Fraction | None
    relation: str = "<="
    verdict: str = "pass"
    note: str = ""

    def to_json(self, full: bool = False) -> dict:
        out = {
            "lemma": self.lemma,
            "family": self.instance.family,
            "index": self.instance.index,
            "lhs": None if self.lhs is None else format_fraction(self.lhs),
            "rhs": None if self.rhs is None else format_fraction(self.rhs),
            "relation": self.relation,
            "verdict": self.verdict,
        }
        if self.note:
            out["note"] = self.note
        if full or self.verdict == "fail":
            out["instance"] = self.instance.to_json()
        return out


class Skip(Exception):
    """The instance does not meet the lemma's hypotheses."""


def _degree_bound(*graphs: SGraph) -> int:
    return max(2, *(g.max_degree() for g in graphs))


def _subgraph_gap(data: dict) -> tuple[Fraction, int, int, int]:
    g, k, keep = data["g"], data["k"], sorted(set(data["keep"]))
    if not keep or not set(keep) <= set(range(g.n)):
        raise Skip("subgraph must be a nonempty vertex subset")
    h = g.induced(keep)
    return l1_dist(freq_k(g, k), freq_k(h, k)), _degree_bound(g) ** k, g.n - h.n, h.n


def _check_freq_diff(data: dict) -> tuple[Fraction, Fraction]:
    lhs, dk, removed, kept = _subgraph_gap(data)
    return lhs, Fraction((1 + 2 * dk) * removed, kept)


def _check_freq_diff_repaired(data: dict) -> tuple[Fraction, Fraction]:
    """Same gap against (2+2d^k)(|g|-|h|)/|h|.

    Each removed vertex moves its own count and at most two entries for
    each of the at most d^k vertices within distance k, so the per-class
    changes sum to at most (1+2d^k) per removed vertex.
    """
    lhs, dk, removed, kept = _subgraph_gap(data)
    return lhs, Fraction((2 + 2 * dk) * removed, kept)


def _check_edge_change(data: dict) -> tuple[Fraction, Fraction]:
    g, h, k = data["g"], data["h"], data["k"]
    if g.n != h.n or g.symbols != h.symbols:
        raise Skip("graphs must share vertex set and symbols")
    pairs = set(g.info) | set(h.info)
    m = sum(1 for x in pairs if g.info.get(x) != h.info.get(x))
    if m == 0:
        raise Skip("no information value differs")
    d = _degree_bound(g, h)
    fg, fh = freq_k(g, k), freq_k(h, k)
    classes = len(set(fg.entries) | set(fh.entries))
    return l1_dist(fg, fh), Fraction(4 * d**k * m * classes, g.n)


def _check_weight_shifting(data: dict) -> tuple[Fraction, Fraction]:
    g, h1, h2, k = data["g"], data["h1"], data["h2"], data["k"]
    fg, f1, f2 = freq_k(g, k), freq_k(h1, k), freq_k(h2, k)
    for key in set(f1.entries) | set(f2.entries):
        if f2[key] < f1[key] and fg[key] != 0:
            raise Skip("weight moved away from a class that g uses")
    return l1_dist(fg, f2), l1_dist(fg, f1)


def _root_degree(disc) -> int:
    return disc.graph.degree(disc.root)


MAPPINGS: dict[str, DiscMapping] = {
    "identity": IDENTITY,
    "constant": CONSTANT,
    "root-degree": DiscMapping("root-degree", _root_degree),
    "disc-size": DiscMapping("disc-size", lambda disc: disc.graph.n),
    "edge-count": DiscMapping("edge-count", lambda disc: len(disc.graph.info)),
}


def _check_modulo(data: dict) -> tuple[Fraction, Fraction]:
    a, b, k = data["a"], data["b"], data["k"]
    mapping = MAPPINGS[data["mapping"]]
    lhs = l1_dist(map_freq(a, k, mapping), map_freq(b, k, mapping))
    return lhs, l1_dist(freq_k(a, k), freq_k(b, k))


def _check_easy(data: dict) -> tuple[Fraction, Fraction]:
    a, b, k = data["a"], data["b"], data["k"]
    lhs = l1_dist(freq_k(underlying(a), k), freq_k(underlying(b), k))
    return lhs, l1_dist(freq_k(a, k), freq_k(b, k))


def _image_params(data: dict, g: SGraph) -> TransformParams:
    return params(data.get("d", 2), data.get("k", 1), g.symbols)


def _complete_sets(p: TransformParams):
    sets = cached_projection_sets(p)
    if not sets.complete:
        raise Skip("projection sets are incomplete at these parameters")
    return sets


def _check_proj2(data: dict) -> tuple[Fraction, Fraction]:
    g = data["g"]
    p = _image_params(data, g)
    centers = _complete_sets(p).centers()
    image, _ = encode(g, p)
    fq = freq_k(image, p.q)
    return sum((fq[x] for x in centers), Fraction(0)), Fraction(1, 2 * p.t + 2)


def _class_mismatch(data: dict, scale_freq: bool) -> tuple[Fraction, Fraction]:
    g = data["g"]
    p = _image_params(data, g)
    sets = _complete_sets(p)
    image, _ = encode(g, p)
    if scale_freq:
        side, img = freq_k(g, p.k), freq_k(image, p.q)
        factor = Fraction(2 * p.t + 2)
    else:
        side, img = cnt_k(g, p.k), cnt_k(image, p.q)
        factor = Fraction(1)
    mismatch = Fraction(0)
    for gamma_s in side.keys():
        block = sets.by_disc.get(gamma_s, frozenset())
        mismatch += abs(side[gamma_s] - factor * sum((img[x] for x in block), Fraction(0)))
    return mismatch, Fraction(0)


def _check_proj4(data: dict) -> tuple[Fraction, Fraction]:
    return _class_mismatch(data, scale_freq=False)


def _check_proj5(data: dict) -> tuple[Fraction, Fraction]:
    return _class_mismatch(data, scale_freq=True)


def _check_proj6(data: dict) -> tuple[Fraction, Fraction]:
    g, h = data["g"], data["h"]
    p = _image_params(data, g)
    lhs = l1_dist(freq_k(h, p.k), freq_k(g, p.k))
    ig, ih = encode(g, p)[0], encode(h, p)[0]
    return lhs, (2 * p.t + 2) * l1_dist(freq_k(ih, p.q), freq_k(ig, p.q))


def _check_proj_sub_diff(data: dict) -> tuple[Fraction, Fraction]:
    graph = data["graph"]
    p = params(data.get("d", 2), data.get("k", 1), symbols_of(data.get("S", 1)))
    if not graph.is_simple() or graph.max_degree() > 2 * p.t + 1:
        raise Skip("needs a simple graph of maximum degree 2t+1")
    centers = _complete_sets(p).centers()
    proj = psi_q(graph, p, allowed=centers)
    if not proj.vertices:
        raise Skip("projection subgraph is empty")
    fq = freq_k(graph, p.q)
    share = sum((fq[x] for x in centers), Fraction(0))
    lhs = l1_dist(fq, freq_k(proj.subgraph, p.q))
    rhs = (1 + 2 * (2 * p.t + 1) ** p.q) * (1 / ((2 * p.t + 2) * share) - 1)
    return lhs, rhs


def _cycle_partition(data: dict) -> tuple[SGraph, int, set[int], set[int], Fraction]:
    g, k = data["g"], data["k"]
    try:
        lists = cycle_lists(g)
    except ValueError as exc:
        raise Skip(str(exc)) from None
    if sum(map(len, lists)) != g.n or any(len(c) < 2 * k + 2 for c in lists):
        raise Skip("needs disjoint cycles of length at least 2k+2")
    v1 = set(data["v1"])
    v2 = set(range(g.n)) - v1
    if not v1 or not v2:
        raise Skip("both sides of the partition must be nonempty")
    return g, k, v1, v2, alpha(g, v1, v2, k)


def _check_measure(data: dict) -> tuple[Fraction, Fraction]:
    g, k, v1, v2, a = _cycle_partition(data)
    everything = set(range(g.n))
    worst = Fraction(0)
    for first, second in (
        (e_counts(g, k, v1, everything), e_counts(g, k, v2, everything)),
        (e_counts(g, k, everything, v1), e_counts(g, k, everything, v2)),
    ):
        for key in set(first) | set(second):
            gap = abs(Fraction(first[key], len(v1)) - Fraction(second[key], len(v2)))
            worst = max(worst, gap)
    return worst, a * len(g.symbols)


def _check_measure2(data: dict) -> tuple[Fraction, Fraction]:
    g, k, v1, v2, a = _cycle_partition(data)
    forward, backward = e_counts(g, k, v1, v2), e_counts(g, k, v2, v1)
    worst = max((abs(forward[x] - backward[x]) for x in set(forward) | set(backward)), default=0)
    return Fraction(worst), 2 * Fraction(len(v1) * len(v2), g.n) * a * len(g.symbols)


def _check_rewire(data: dict) -> tuple[Fraction, Fraction]:
    g, k, phi = data["g"], data["k"], Fraction(data["phi"])
    if 2 * phi >= g.n:
        raise Skip("partition would be trivial")
    _, report, _ = edge_rewiring(g, k, Fraction(1, 2), phi=phi)
    return Fraction(report.cut_after), report.cut_bound


def _check_app1(data: dict) -> tuple[Fraction, Fraction]:
    t, q, eps = data["t"], data["q"], Fraction(data["eps"])
    if t <= 0 or q <= 0 or not 0 < eps < 1:
        raise Skip("needs t, q > 0 and 0 < eps < 1")
    growth = 1 + 2 * (2 * t + 1) ** q
    eps1 = eps / (4 * (2 * t + 2) ** 2 * growth)
    lhs = (2 * t + 2) * (eps1 + growth * (1 / (1 - (2 * t + 2) * eps1) - 1))
    return lhs, eps


@dataclass(frozen=True)
class LemmaSpec:
    family: str
    check: Callable[[dict], tuple[Fraction, Fraction]]
    relation: str = "<="


LEMMAS: dict[str, LemmaSpec] = {
    "FreqDiff": LemmaSpec("subgraph-pair", _check_freq_diff),
    "FreqDiffRepaired": LemmaSpec("subgraph-pair", _check_freq_diff_repaired),
    "EdgeChange": LemmaSpec("edge-edit", _check_edge_change),
    "WeightShifting": LemmaSpec("model-triple", _check_weight_shifting),
    "FreqDiffModulo": LemmaSpec("graph-pair", _check_modulo),
    "FreqDiffEasy": LemmaSpec("graph-pair", _check_easy),
    "ProjProp2": LemmaSpec("transform-image", _check_proj2, "=="),
    "ProjProp4": LemmaSpec("transform-image", _check_proj4, "=="),
    "ProjProp5": LemmaSpec("transform-image", _check_proj5, "=="),
    "ProjProp6": LemmaSpec("transform-image", _check_proj6),
    "ProjSubDiff": LemmaSpec("near-image", _check_proj_sub_diff),
    "MeasureConnection": LemmaSpec("cycle-partition", _check_measure),
    "MeasureConnection2": LemmaSpec("cycle-partition", _check_measure2),
    "RewireCutBound": LemmaSpec("cycle-family", _check_rewire),
    "App1": LemmaSpec("app1-params", _check_app1),
}


def check(lemma_id: str, instance: Instance) -> LemmaCheck:
    if lemma_id not in LEMMAS:
        raise ValueError(f"unknown lemma {lemma_id!r}")
    spec = LEMMAS[lemma_id]
    try:
        lhs, rhs = spec.check(instance.data)
    except Skip as exc:
        return LemmaCheck(lemma_id, instance, None, None, spec.relation, "skip", str(exc))
    except KeyError as exc:
        raise ValueError(f"malformed instance for {lemma_id}: missing {exc}") from None
    holds = lhs == rhs if spec.relation == "==" else lhs <= rhs
    return LemmaCheck(lemma_id, instance, lhs, rhs, spec.relation, "pass" if holds else "fail")


# ---------------------------------------------------------------------------
# suite


@dataclass
class SuiteReport:
    seed: int
    count: int
    checks: list[LemmaCheck] = field(default_factory=list)
    seconds: dict[str, float] = field(default_factory=dict)

    def tally(self) -> dict[str, Counter]:
        out: dict[str, Counter] = {}
        for c in self.checks:
            out.setdefault(c.lemma, Counter())[c.verdict] += 1
        return out

    @property
    def failures(self) -> list[LemmaCheck]:
        return [c for c in self.checks if c.verdict == "fail"]

    def to_json(self, timings: bool = False) -> dict:
        tally = self.tally()
        out = {
            "seed": self.seed,
            "count": self.count,
            "summary": {
                lemma: {v: tally[lemma].get(v, 0) for v in ("pass", "fail", "skip")}
                for lemma in tally
            },
            "checks": [c.to_json() for c in self.checks],
        }
        if timings:
            out["seconds"] = {k: round(v, 3) for k, v in self.seconds.items()}
        return out


def _check_batch(lemma_id: str, seed: int, count: int) -> tuple[list[LemmaCheck], float]:
    start = time.perf_counter()
    checks = [check(lemma_id, inst) for inst in generate_instances(LEMMAS[lemma_id].family, seed, count)]
    return checks, time.perf_counter() - start


def run_suite(lemmas: Iterable[str] | None, seed: int, count: int, workers: int = 1) -> SuiteReport:
    """Run every requested lemma on ``count`` instances of its family.

    With ``workers > 1`` lemmas run in separate processes; the report is
    still ordered by (lemma, instance index).
    """
    ids = list(LEMMAS) if lemmas is None else list(lemmas)
    for lemma_id in ids:
        if lemma_id not in LEMMAS:
            raise ValueError(f"unknown lemma {lemma_id!r}")
    report = SuiteReport(seed, count)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_check_batch, ids, [seed] * len(ids), [count] * len(ids)))
    else:
        results = [_check_batch(lemma_id, seed, count) for lemma_id in ids]
    for lemma_id, (checks, seconds) in zip(ids, results):
        report.checks.extend(checks)
        report.seconds[lemma_id] = seconds
    return report
