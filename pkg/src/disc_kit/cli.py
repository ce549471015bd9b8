"""``disc-kit`` command line interface.

Every command writes JSON.  Fractions are reduced "num/den" strings.
Exit codes: 0 success, 1 error (or a failed lemma check), 2 budget-partial.
"""

from __future__ import annotations

import functools
import sys
from fractions import Fraction
from typing import Any, Callable

import click

from . import io
from .budget import ENV_BUDGET_MS, Budget, BudgetExceeded
from .enumeration import EnumerationSpec
from .freq import format_fraction, freq_k, l1_dist
from .lemmas import LEMMAS, run_suite
from .oracle import Found, algdc, build_cover, realizability_search
from .paths import approx_path, approx_undirected, undirected_path
from .sgraph import SIMPLE_SYMBOLS, InformationSet, RootedDisc, SGraph
from .transform import cached_projection_sets, encode, params, psi_q, reconstruct_disc


class FractionType(click.ParamType):
    name = "fraction"

    def convert(self, value: Any, param: click.Parameter | None, ctx: click.Context | None) -> Fraction:
        if isinstance(value, Fraction):
            return value
        try:
            return Fraction(str(value))
        except (ValueError, ZeroDivisionError):
            self.fail(f"{value!r} is not a fraction like 1/5 or 0.2", param, ctx)


FRACTION = FractionType()


class PartialResult(Exception):
    """A search stopped on its budget; the payload is still emitted."""

    def __init__(self, payload: dict):
        super().__init__("partial result")
        self.payload = payload


def guarded(fn: Callable) -> Callable:
    """Map library exceptions onto exit codes."""

    @functools.wraps(fn)
    def wrapper(*args: Any, **kwargs: Any) -> None:
        try:
            fn(*args, **kwargs)
        except PartialResult as exc:
            click.echo(io.dump(exc.payload), nl=False)
            sys.exit(2)
        except BudgetExceeded as exc:
            click.echo(f"budget exhausted: {exc}", err=True)
            sys.exit(2)
        except (io.FormatError, ValueError, OSError) as exc:
            raise click.ClickException(str(exc)) from None

    return wrapper


def emit(doc: Any, out: str | None = None) -> None:
    text = io.dump(doc, out)
    if out is None:
        click.echo(text, nl=False)


def check_config(d: int | None = None, k: int | None = None, eps: Fraction | None = None) -> None:
    if d is not None and d < 2:
        raise ValueError("need d >= 2")
    if k is not None and k < 1:
        raise ValueError("need k >= 1")
    if eps is not None and not 0 < eps < 1:
        raise ValueError("need 0 < eps < 1")


def parse_symbols(text: str | None) -> InformationSet:
    if not text:
        return SIMPLE_SYMBOLS
    return InformationSet(tuple(s.strip() for s in text.split(",") if s.strip()))


def load_graph(path: str) -> SGraph:
    return io.graph_from_json(io.load(path))


def load_discs(path: str) -> list[RootedDisc]:
    doc = io.load(path)
    if not isinstance(doc, list) or not doc:
        raise io.FormatError("disc set must be a nonempty JSON list")
    discs = [io.disc_from_json(x) for x in doc]
    if len({x.radius for x in discs}) != 1:
        raise io.FormatError("all discs must share one radius")
    if len({x.graph.symbols for x in discs}) != 1:
        raise io.FormatError("all discs must share one symbol set")
    return discs


def verdict_json(result: Any) -> dict:
    if isinstance(result, Found):
        out = {"verdict": "found", "graph": io.graph_to_json(result.graph)}
        if "preimage" in result.detail:
            out["preimage"] = io.graph_to_json(result.detail["preimage"])
        for key in ("X", "Y"):
            if key in result.detail:
                out[key] = [fp.decode("ascii") for fp in result.detail[key]]
        return out
    return {
        "verdict": "not-found",
        "complete": result.complete,
        "limit": result.limit,
        "reason": result.reason,
    }


def finish_verdict(result: Any) -> None:
    doc = verdict_json(result)
    if isinstance(result, Found) or result.complete:
        emit(doc)
    else:
        raise PartialResult(doc)


class _Group(click.Group):
    """Group that reports usage errors with exit code 1; 2 means budget-partial."""

    def main(self, *args: Any, **kwargs: Any) -> Any:
        kwargs["standalone_mode"] = False
        try:
            return super().main(*args, **kwargs)
        except click.ClickException as exc:
            exc.show()
            sys.exit(1)
        except click.exceptions.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(1)


@click.group(name="disc-kit", cls=_Group, epilog=f"Set {ENV_BUDGET_MS} to cap any enumeration (milliseconds).")
def cli() -> None:
    """Local-structure tools for bounded-degree S-graphs."""


@cli.command()
@click.option("--k", "k", type=int, required=True, help="Disc radius.")
@click.option("--in", "src", type=click.Path(exists=True), required=True, help="S-graph JSON.")
@click.option("--out", type=click.Path(), help="Write here instead of stdout.")
@guarded
def freq(k: int, src: str, out: str | None) -> None:
    """Frequency vector of k-discs, keyed by fingerprint."""
    check_config(k=k)
    g = load_graph(src)
    emit({"k": k, "n": g.n, "freq": io.freq_to_json(freq_k(g, k))}, out)


@cli.command()
@click.option("--k", "k", type=int, required=True, help="Disc radius.")
@click.argument("first", type=click.Path(exists=True))
@click.argument("second", type=click.Path(exists=True))
@guarded
def dist(k: int, first: str, second: str) -> None:
    """Exact L1 distance between the k-disc frequency vectors of two graphs."""
    check_config(k=k)
    a, b = load_graph(first), load_graph(second)
    emit({"k": k, "distance": format_fraction(l1_dist(freq_k(a, k), freq_k(b, k)))})


@cli.command(name="encode")
@click.option("--d", "d", type=int, required=True, help="Degree bound of the input.")
@click.option("--k", "k", type=int, required=True, help="Disc radius on the S side.")
@click.option("--in", "src", type=click.Path(exists=True), required=True, help="S-graph JSON.")
@click.option("--out", type=click.Path(), help="Write the simple image graph here.")
@guarded
def encode_cmd(d: int, k: int, src: str, out: str | None) -> None:
    """Encode an S-graph as a simple graph of clusters."""
    check_config(d=d, k=k)
    g = load_graph(src)
    p = params(d, k, g.symbols)
    image, index = encode(g, p)
    summary = {
        "t": p.t, "q": p.q, "n": image.n,
        "clusters": [
            {"center": c.center, "marker": c.marker, "ring": list(c.ring)} for c in index.clusters
        ],
    }
    if out is None:
        emit({**summary, "graph": io.graph_to_json(image)})
    else:
        io.dump(io.graph_to_json(image), out)
        emit(summary)


@cli.command(name="decode-disc")
@click.option("--d", "d", type=int, required=True, help="Degree bound on the S side.")
@click.option("--k", "k", type=int, required=True, help="Disc radius on the S side.")
@click.option("--symbols", help="Comma-separated information set of the S side.")
@click.option("--in", "src", type=click.Path(exists=True), required=True, help="Center q-disc JSON.")
@guarded
def decode_disc(d: int, k: int, symbols: str | None, src: str) -> None:
    """Rebuild the S-side k-disc from the q-disc of a center."""
    check_config(d=d, k=k)
    p = params(d, k, parse_symbols(symbols))
    q_disc = io.disc_from_json(io.load(src))
    emit(io.disc_to_json(reconstruct_disc(q_disc, p)))


@cli.command()
@click.option("--d", "d", type=int, required=True, help="Degree bound on the S side.")
@click.option("--k", "k", type=int, required=True, help="Disc radius on the S side.")
@click.option("--symbols", help="Comma-separated information set of the S side.")
@click.option("--in", "src", type=click.Path(exists=True), required=True, help="Simple graph JSON.")
@click.option("--exact", is_flag=True, help="Test centers against enumerated projection sets.")
@click.option("--out", type=click.Path(), help="Write here instead of stdout.")
@guarded
def psi(d: int, k: int, symbols: str | None, src: str, exact: bool, out: str | None) -> None:
    """Projection subgraph of a simple graph and its S-side pre-image."""
    check_config(d=d, k=k)
    p = params(d, k, parse_symbols(symbols))
    g = load_graph(src)
    allowed = None
    if exact:
        sets = cached_projection_sets(p)
        if not sets.complete:
            raise PartialResult({"header": sets.header(), "reason": "projection sets incomplete"})
        allowed = sets.centers()
    proj = psi_q(g, p, allowed)
    emit({
        "vertices": list(proj.vertices),
        "subgraph": io.graph_to_json(proj.subgraph),
        "preimage": io.graph_to_json(proj.preimage),
    }, out)


@cli.command(name="approx-path")
@click.option("--k", "k", type=int, required=True, help="Disc radius.")
@click.option("--eps", type=FRACTION, required=True, help="Target distance, e.g. 1/5.")
@click.option("--l-mode", type=click.Choice(["observed", "naive"]), default="observed", show_default=True,
              help="Class-count value used in the pipeline constants.")
@click.option("--adaptive", is_flag=True, help="Search smaller phi and m, keeping measured successes.")
@click.option("--in", "src", type=click.Path(exists=True), required=True, help="S-path JSON.")
@click.option("--out", type=click.Path(), help="Write the approximating S-path here.")
@click.option("--report", type=click.Path(), help="Write the pipeline report here.")
@guarded
def approx_path_cmd(k: int, eps: Fraction, l_mode: str, adaptive: bool, src: str,
                    out: str | None, report: str | None) -> None:
    """Bounded-size S-path with nearly the same k-disc frequencies."""
    check_config(k=k, eps=eps)
    p = io.path_from_json(io.load(src))
    q, rep = approx_path(p, k, eps, l_mode, adaptive)
    if out is not None:
        io.dump(io.path_to_json(q), out)
    doc = rep.to_json()
    if report is not None:
        io.dump(doc, report)
    summary = {
        "final_size": rep.final_size,
        "final_distance": doc["final_distance"],
        "within_eps": rep.within_eps,
    }
    if out is None:
        summary["path"] = io.path_to_json(q)
    emit(summary)


@cli.command(name="approx-undirected")
@click.option("--n", "n", type=int, required=True, help="Length of the undirected path.")
@click.option("--k", "k", type=int, required=True, help="Disc radius.")
@click.option("--eps", type=FRACTION, required=True, help="Target distance.")
@guarded
def approx_undirected_cmd(n: int, k: int, eps: Fraction) -> None:
    """Shorter undirected path with k-disc frequencies within eps."""
    check_config(k=k, eps=eps)
    if n < 1:
        raise ValueError("need n >= 1")
    size = approx_undirected(n, k, eps)
    distance = l1_dist(freq_k(undirected_path(n), k), freq_k(undirected_path(size), k))
    emit({"n": n, "size": size, "distance": format_fraction(distance)})


@cli.command()
@click.option("--d", "d", type=int, default=2, show_default=True, help="Degree bound.")
@click.option("--k", "k", type=int, default=1, show_default=True, help="Disc radius.")
@click.option("--eps", type=FRACTION, required=True, help="Cover radius.")
@click.option("--nmax", type=int, default=6, show_default=True, help="Largest graph in the universe.")
@guarded
def cover(d: int, k: int, eps: Fraction, nmax: int) -> None:
    """Finite eps-cover of the simple graphs up to nmax vertices."""
    check_config(d=d, k=k, eps=eps)
    budget = Budget.from_env()
    cv = build_cover(d, k, eps, EnumerationSpec.simple(nmax, d), budget)
    emit({
        "eps": format_fraction(cv.eps),
        "step": format_fraction(cv.step),
        "classes": len(cv.classes),
        "universe": len(cv.universe),
        "size": len(cv.representatives),
        "size_bound": format_fraction(cv.size_bound),
        "verified": cv.verified,
        "representatives": [io.graph_to_json(g) for g in cv.representative_graphs()],
    })


@cli.command()
@click.option("--phi", "phi_path", type=click.Path(exists=True), required=True, help="Disc set JSON.")
@click.option("--nmax", type=int, required=True, help="Largest graph searched.")
@click.option("--d", "d", type=int, default=2, show_default=True, help="Degree bound.")
@guarded
def realize(phi_path: str, nmax: int, d: int) -> None:
    """Search small graphs for one whose disc set is exactly the given set."""
    check_config(d=d)
    discs = load_discs(phi_path)
    k, symbols = discs[0].radius, discs[0].graph.symbols
    simple = all(x.graph.is_simple() and x.graph.symbols == SIMPLE_SYMBOLS for x in discs)
    spec = EnumerationSpec.simple(nmax, d) if simple else EnumerationSpec.all_sgraphs(nmax, d, symbols)
    result = realizability_search([x.fingerprint for x in discs], d, k, nmax, spec, Budget.from_env())
    finish_verdict(result)


@cli.command(name="algdc")
@click.option("--phi", "phi_path", type=click.Path(exists=True), required=True, help="S-side disc set JSON.")
@click.option("--nmax", type=int, required=True, help="Largest S-graph whose image is searched.")
@click.option("--d", "d", type=int, default=2, show_default=True, help="Degree bound.")
@click.option("--strategy", type=click.Choice(["swapped", "literal"]), default="swapped", show_default=True)
@click.option("--max-iterations", type=int, help="Cap on searched candidates.")
@guarded
def algdc_cmd(phi_path: str, nmax: int, d: int, strategy: str, max_iterations: int | None) -> None:
    """Decide S-side disc-set realizability through the simple-graph encoding."""
    check_config(d=d)
    discs = load_discs(phi_path)
    p = params(d, discs[0].radius, discs[0].graph.symbols)
    result = algdc([x.fingerprint for x in discs], p, nmax, strategy, max_iterations)
    finish_verdict(result)


@cli.command()
@click.option("--lemma", "lemma", multiple=True, default=["all"], show_default=True,
              help=f"Lemma id or 'all'; one of {', '.join(LEMMAS)}.")
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--count", type=int, default=1000, show_default=True, help="Instances per lemma.")
@click.option("--report", type=click.Choice(["json", "text"]), default="text", show_default=True)
@click.option("--out", type=click.Path(), help="Write the report here instead of stdout.")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True,
              help="Processes to spread lemmas over; output is identical for any value.")
@guarded
def verify(lemma: tuple[str, ...], seed: int, count: int, report: str, out: str | None, workers: int) -> None:
    """Check lemmas on generated instances with exact arithmetic."""
    ids = None if "all" in lemma else list(lemma)
    result = run_suite(ids, seed, count, workers)
    if report == "json":
        emit(result.to_json(), out)
    else:
        lines = []
        for lemma_id, tally in result.tally().items():
            status = "FAIL" if tally.get("fail") else "PASS"
            lines.append(
                f"{status} {lemma_id}: {tally.get('pass', 0)} pass, "
                f"{tally.get('fail', 0)} fail, {tally.get('skip', 0)} skip"
            )
        text = "\n".join(lines) + "\n"
        if out is None:
            click.echo(text, nl=False)
        else:
            with open(out, "w") as fh:
                fh.write(text)
    if result.failures:
        sys.exit(1)


def main() -> None:
    cli(prog_name="disc-kit")


if __name__ == "__main__":
    main()
