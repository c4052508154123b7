"""Command-line front end.

Graph arguments are paths to JSON graph files or ``fixture:NAME`` for one
of the bundled examples.  Exit codes: 0 success, 2 unreadable or invalid
input, 3 input outside a method's hypotheses, 4 resource budget exceeded,
5 internal invariant violated (including methods that disagree).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Callable

from . import oracle as orc
from .algebra import CountTable, RationalFunction, expand
from .automaton import build_fsa, fsa_to_dot, parse_word, run
from .errors import GraphParseError, HypothesisError, InvariantViolation, NGPError
from .graphs import (
    NumberedGraph,
    are_equivalent,
    is_link_regular,
    is_simplicially_link_regular,
    link_profile,
    load_fixture,
    parse_graph,
)
from .racg import as_profile, racg_growth
from .series import grammar_from_fsa, growth_series
from .trianglefree import build_tf_system, check_tf_hypotheses, solve_tf

METHODS = ("auto", "racg", "trianglefree", "oracle")


def read_graph(arg: str) -> tuple[NumberedGraph, str]:
    """Load a graph and return it with the sha256 of its source text."""
    if arg.startswith("fixture:"):
        g = load_fixture(arg[len("fixture:") :])
        text = json.dumps(g.to_json(), sort_keys=True)
    else:
        try:
            with open(arg, "rb") as fh:
                raw = fh.read()
        except OSError as exc:
            raise GraphParseError(f"cannot read {arg}: {exc.strerror}") from exc
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise GraphParseError(f"{arg} is not UTF-8") from exc
        g = parse_graph(text, name=arg)
    return g, hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass
class MethodResult:
    method: str
    coefficients: CountTable
    series: RationalFunction | None = None
    seconds: float = 0.0
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out: dict = {"method": self.method}
        if self.series is not None:
            out.update(self.series.to_json())
        out["coefficients"] = list(self.coefficients)
        out["seconds"] = round(self.seconds, 6)
        out.update(self.extra)
        return out


@dataclass
class RunReport:
    input: str
    digest: str
    n_max: int
    results: list[MethodResult]
    skipped: dict[str, str] = field(default_factory=dict)
    cross_check: dict | None = None

    def to_json(self) -> dict:
        out = {
            "input": self.input,
            "sha256": self.digest,
            "n_max": self.n_max,
            "results": [r.to_json() for r in self.results],
        }
        if self.skipped:
            out["skipped"] = self.skipped
        if self.cross_check is not None:
            out["cross_check"] = self.cross_check
        return out


def cross_check(results: list[MethodResult]) -> dict:
    """Compare every pair of methods on series (where both have one) and shared coefficients."""
    pairs = []
    for i, a in enumerate(results):
        for b in results[i + 1 :]:
            n = min(len(a.coefficients), len(b.coefficients))
            same = list(a.coefficients)[:n] == list(b.coefficients)[:n]
            entry = {"methods": [a.method, b.method], "through_n": n - 1, "coefficients_agree": same}
            if a.series is not None and b.series is not None:
                entry["series_agree"] = a.series == b.series
                same = same and entry["series_agree"]
            entry["agree"] = same
            pairs.append(entry)
    return {"agree": all(p["agree"] for p in pairs), "pairs": pairs}


def _timed(fn: Callable):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def method_auto(g: NumberedGraph, n_max: int, verbose: bool = False) -> MethodResult:
    def go():
        fsa = build_fsa(g)
        return fsa, growth_series(grammar_from_fsa(fsa), per_variable=verbose)

    (fsa, gs), dt = _timed(go)
    extra = {"states": fsa.num_states, "lumped_states": gs.blocks}
    if verbose:
        extra["per_state"] = {str(s): str(f) for s, f in zip(fsa.states, gs.variables)}
    return MethodResult("auto", expand(gs.series, n_max), gs.series, dt, extra)


def method_racg(g: NumberedGraph | None, n_max: int, ell=None) -> MethodResult:
    if ell is None:
        if not g.all_numbers_equal(2):
            raise HypothesisError("the link-profile method needs every vertex number equal to 2")
        ell = link_profile(g)
    prof = as_profile(ell)
    f, dt = _timed(lambda: racg_growth(prof))
    return MethodResult("racg", expand(f, n_max), f, dt, {"ell": list(prof.ell)})


def method_tf(g: NumberedGraph, n_max: int) -> MethodResult:
    def go():
        system = build_tf_system(g)
        return system, solve_tf(system)

    (system, f), dt = _timed(go)
    extra = {"n": system.n, "L": system.L, "N": system.N, "unknowns": len(system.unknowns)}
    return MethodResult("trianglefree", expand(f, n_max), f, dt, extra)


def method_oracle(g: NumberedGraph, n_max: int, budget: int, max_n: int) -> MethodResult:
    counts, dt = _timed(lambda: orc.oracle_counts(g, n_max, budget=budget, max_n=max_n))
    return MethodResult("oracle", counts, None, dt)


def applicable(g: NumberedGraph) -> dict[str, str | None]:
    """Method name -> None if it applies, else the violated hypothesis."""
    out: dict[str, str | None] = {"auto": None, "oracle": None}
    if not g.all_numbers_equal(2):
        out["racg"] = "vertex numbers are not all 2"
    else:
        rep = is_simplicially_link_regular(g)
        out["racg"] = None if rep else "graph is not link-regular"
    try:
        check_tf_hypotheses(g)
        out["trianglefree"] = None
    except HypothesisError as exc:
        out["trianglefree"] = str(exc)
    return out


def cmd_series(args) -> int:
    if args.ell is not None:
        if args.method not in ("racg", "auto"):
            raise HypothesisError("a raw link profile only supports --method racg")
        res = method_racg(None, args.n_max, ell=[int(x) for x in args.ell.split(",")])
        report = RunReport("ell:" + args.ell, hashlib.sha256(args.ell.encode()).hexdigest(), args.n_max, [res])
        return emit_series(report, args)
    if args.graph is None:
        raise GraphParseError("series needs a graph file or --ell")
    g, digest = read_graph(args.graph)
    oracle_n = min(args.n_max, args.oracle_max_n)
    runners = {
        "auto": lambda: method_auto(g, args.n_max, args.verbose),
        "racg": lambda: method_racg(g, args.n_max),
        "trianglefree": lambda: method_tf(g, args.n_max),
        "oracle": lambda: method_oracle(
            g, args.n_max if args.method == "oracle" else oracle_n, args.budget, args.oracle_max_n
        ),
    }
    report = RunReport(args.graph, digest, args.n_max, [])
    if args.method == "all":
        for name, why in applicable(g).items():
            if why is None:
                report.results.append(runners[name]())
            else:
                report.skipped[name] = why
        report.results.sort(key=lambda r: METHODS.index(r.method))
        report.cross_check = cross_check(report.results)
    else:
        report.results.append(runners[args.method]())
    return emit_series(report, args)


def emit_series(report: RunReport, args) -> int:
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(f"input: {report.input}")
        print(f"sha256: {report.digest}")
        for r in report.results:
            print(f"\n[{r.method}]  {r.seconds:.3f}s")
            if r.series is not None:
                print(f"  G(z) = {r.series}")
            for k, v in r.extra.items():
                if k == "per_state":
                    print("  per-state series:")
                    for s, f in v.items():
                        print(f"    {s}: {f}")
                else:
                    print(f"  {k}: {v}")
            print("  n  count")
            for n, c in enumerate(r.coefficients):
                print(f"  {n:<2} {c}")
        for name, why in report.skipped.items():
            print(f"\n[{name}] skipped: {why}")
        if report.cross_check is not None:
            verdict = "all methods agree" if report.cross_check["agree"] else "METHODS DISAGREE"
            print(f"\ncross-check: {verdict}")
    if report.cross_check is not None and not report.cross_check["agree"]:
        raise InvariantViolation("methods disagree on the growth series")
    return 0


def cmd_check(args) -> int:
    g, _ = read_graph(args.graph)
    rep = is_link_regular(g)
    out: dict = {"graph": args.graph, "link_regular": rep.regular}
    if not rep:
        out["witness"] = [sorted(c) for c in rep.witness]
    elif g.all_numbers_equal(2):
        out["ell"] = list(link_profile(g).ell)
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        print(f"link-regular: {'yes' if rep else 'no'}")
        if not rep:
            a, b = out["witness"]
            la = sorted(g.n_multiset(_link(g, a)))
            lb = sorted(g.n_multiset(_link(g, b)))
            print(f"witness: cliques {a} and {b} have equal number multisets")
            print(f"         but their links have numbers {la} and {lb}")
        if "ell" in out:
            print(f"ell: {tuple(out['ell'])}")
    return 0


def _link(g: NumberedGraph, members) -> list[str]:
    return sorted(g.names(g.link_mask(g.mask(members))))


def cmd_equiv(args) -> int:
    g, _ = read_graph(args.first)
    h, _ = read_graph(args.second)
    eq = are_equivalent(g, h)
    if args.json:
        print(json.dumps({"first": args.first, "second": args.second, "equivalent": eq}))
    else:
        print(f"equivalent: {'yes' if eq else 'no'}")
    return 0


def cmd_export_fsa(args) -> int:
    g, _ = read_graph(args.graph)
    dot = fsa_to_dot(build_fsa(g), include_reject=args.include_reject)
    if args.output in (None, "-"):
        sys.stdout.write(dot)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(dot)
    return 0


def cmd_oracle(args) -> int:
    g, _ = read_graph(args.graph)
    if args.word is not None:
        word = parse_word(g, args.word)
        verdict = orc.is_geodesic(g, word)
        accepted = run(build_fsa(g), word).accepted
        if args.json:
            print(json.dumps({"word": args.word, "oracle": verdict, "automaton": accepted}))
        else:
            print(f"oracle: {'geodesic' if verdict else 'not geodesic'}")
            print(f"automaton: {'accept' if accepted else 'reject'}")
        if verdict != accepted:
            raise InvariantViolation("oracle and automaton disagree on this word")
        return 0
    counts = orc.oracle_counts(g, args.n_max, budget=args.budget, max_n=args.oracle_max_n)
    if args.json:
        print(json.dumps({"graph": args.graph, "coefficients": list(counts)}))
    else:
        sys.stdout.write(counts.to_csv())
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ngpgrowth", description="Geodesic growth series of numbered graph products"
    )
    sub = p.add_subparsers(dest="command", required=True)

    def budget_flags(sp):
        sp.add_argument("--budget", type=int, default=orc.DEFAULT_WORD_BUDGET,
                        help="maximum number of words the oracle may examine")
        sp.add_argument("--oracle-max-n", type=int, default=orc.DEFAULT_N_MAX,
                        help="longest word length the oracle will enumerate")

    sp = sub.add_parser("check", help="test link-regularity")
    sp.add_argument("graph")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("equiv", help="test equivalence of two link-regular graphs")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_equiv)

    sp = sub.add_parser("series", help="compute the geodesic growth series")
    sp.add_argument("graph", nargs="?")
    sp.add_argument("--method", choices=METHODS + ("all",), default="auto")
    sp.add_argument("--ell", help="comma-separated link profile instead of a graph (racg only)")
    sp.add_argument("--n-max", type=int, default=6)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("-v", "--verbose", action="store_true", help="also print per-state series")
    budget_flags(sp)
    sp.set_defaults(func=cmd_series)

    sp = sub.add_parser("export-fsa", help="write the geodesic automaton as DOT")
    sp.add_argument("graph")
    sp.add_argument("-o", "--output")
    sp.add_argument("--include-reject", action="store_true")
    sp.set_defaults(func=cmd_export_fsa)

    sp = sub.add_parser("oracle", help="brute-force geodesic counts or a single-word verdict")
    sp.add_argument("graph")
    sp.add_argument("--n-max", type=int, default=6)
    sp.add_argument("--word", help='whitespace-separated letters, e.g. "a b^-1 a"')
    sp.add_argument("--json", action="store_true")
    budget_flags(sp)
    sp.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NGPError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        # word parsing and similar malformed input
        print(f"error: {exc}", file=sys.stderr)
        return GraphParseError.exit_code


if __name__ == "__main__":
    sys.exit(main())
