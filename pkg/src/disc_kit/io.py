"""JSON forms for S-graphs, S-paths, rooted discs and fractions."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .freq import FreqVector, format_fraction
from .paths import SPath
from .sgraph import SIMPLE_SYMBOLS, InformationSet, RootedDisc, SGraph


class FormatError(ValueError):
    """Malformed or constraint-violating input document."""


def graph_to_json(g: SGraph) -> dict:
    if g.symbols == SIMPLE_SYMBOLS and g.is_simple():
        edges = [[u, v, None] for (u, v) in sorted(g.info) if u < v]
        return {"n": g.n, "symbols": [], "edges": edges, "simple": True}
    edges = [[u, v, g.symbols[s]] for (u, v), s in sorted(g.info.items())]
    return {"n": g.n, "symbols": list(g.symbols.symbols), "edges": edges}


def graph_from_json(doc: Any) -> SGraph:
    try:
        n = int(doc["n"])
        names = list(doc.get("symbols") or [])
        raw_edges = doc["edges"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"not an S-graph document: {exc}") from None
    simple = bool(doc.get("simple", False))
    symbols = InformationSet(tuple(names)) if names else SIMPLE_SYMBOLS
    info: dict[tuple[int, int], int] = {}
    for entry in raw_edges:
        if not isinstance(entry, list) or len(entry) != 3:
            raise FormatError(f"edge must be [u, v, symbol]: {entry!r}")
        u, v, name = entry
        if not (isinstance(u, int) and isinstance(v, int) and 0 <= u < n and 0 <= v < n):
            raise FormatError(f"edge endpoint out of range: {entry!r}")
        if name is None:
            if len(symbols) != 1:
                raise FormatError("unlabelled edge needs exactly one symbol in the set")
            s = 0
        else:
            try:
                s = symbols.index(name)
            except ValueError as exc:
                raise FormatError(str(exc)) from None
        if (u, v) in info and info[(u, v)] != s:
            raise FormatError(f"pair ({u}, {v}) given twice with different symbols")
        info[(u, v)] = s
        if simple:
            if u == v:
                raise FormatError("simple graph with a loop")
            if name is not None:
                raise FormatError("simple graph with a labelled edge")
            info[(v, u)] = s
    return SGraph(n, symbols, info)


def path_to_json(p: SPath) -> dict:
    return {"symbols": list(p.symbols.symbols), "edges": [p.symbols[s] for s in p.labels]}


def path_from_json(doc: Any) -> SPath:
    try:
        symbols = InformationSet(tuple(doc["symbols"]))
        return SPath.from_symbols(symbols, list(doc["edges"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"not an S-path document: {exc}") from None


def disc_to_json(disc: RootedDisc) -> dict:
    return {
        "radius": disc.radius,
        "root": disc.root,
        "graph": graph_to_json(disc.graph),
        "fingerprint": disc.fingerprint.decode("ascii"),
    }


def disc_from_json(doc: Any) -> RootedDisc:
    try:
        graph = graph_from_json(doc["graph"])
        disc = RootedDisc.of(graph, int(doc.get("root", 0)), int(doc["radius"]))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"not a rooted disc document: {exc}") from None
    claimed = doc.get("fingerprint")
    if claimed is not None and claimed.encode("ascii") != disc.fingerprint:
        raise FormatError("stored fingerprint does not match the disc")
    return disc


def freq_to_json(vec: FreqVector) -> dict:
    def key(k: Any) -> str:
        return k.decode("ascii") if isinstance(k, bytes) else str(k)

    return {key(k): format_fraction(vec[k]) for k in vec.keys()}


def fraction_json(x: Fraction | int | None) -> str | None:
    return None if x is None else format_fraction(x)


def load(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON: {exc}") from None


def dump(doc: Any, path: str | Path | None = None) -> str:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text
