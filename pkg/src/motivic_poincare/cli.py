"""Command-line front end.

Exit codes: 0 success, 1 a check failed or two derivations disagree,
2 invalid input, 3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from . import engine, hfl, verify
from .corpus import SemigroupInput, bundled, bundled_names, load_input, parse_generators
from .poly import MASLOV, Kind, LaurentPoly, NotDivisible, Q, Var, tvar
from .resolution import (
    CurveInvariants,
    InvalidGraph,
    milnor_numbers,
    validate,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class Curve:
    """A computed reduced series with the data needed to check and print it."""

    pbar: LaurentPoly
    inv: CurveInvariants
    names: Sequence[str]
    semigroup: Optional[engine.SemigroupSeries] = None
    data: Optional[object] = None

    @property
    def r(self) -> int:
        return len(self.names)

    def var_names(self) -> Dict[Var, str]:
        return {tvar(a): n for a, n in enumerate(self.names)}


def _compute(source, threads: Optional[int], truncate: int = 10) -> Curve:
    if isinstance(source, SemigroupInput):
        sg = engine.semigroup_series(source.generators, truncate)
        return Curve(sg.pbar, engine.semigroup_invariants(sg), ("t",), semigroup=sg)
    d = validate(source)
    inv = milnor_numbers(d)
    return Curve(engine.assemble(d, inv, workers=threads), inv, d.names, data=d)


def _source(args):
    sources = [s for s in (args.input, getattr(args, "semigroup", None)) if s]
    if len(sources) != 1:
        raise UsageError("give exactly one input: a graph file/example or --semigroup")
    if args.input:
        return load_input(args.input)
    return parse_generators(args.semigroup)


# ---------------------------------------------------------------------------
# structured output


def poly_to_terms(p: LaurentPoly, r: int) -> List[dict]:
    """Canonical term list ``[{coeff, q, t: [...]}]`` with integer q-powers."""
    terms = []
    for m, c in p.sorted_terms():
        d = dict(m)
        qs = d.pop(Q, 0)
        texp = [d.pop(tvar(a), 0) for a in range(r)]
        if d:
            raise ValueError(f"unexpected variables {sorted(d)} in a t,q polynomial")
        terms.append({"coeff": c, "q": qs // 2 if qs % 2 == 0 else qs / 2, "t": texp})
    return terms


def poly_from_terms(terms: List[dict]) -> LaurentPoly:
    out: Dict = {}
    for term in terms:
        exps = {tvar(a): int(e) for a, e in enumerate(term["t"]) if e}
        if term["q"]:
            exps[Q] = int(round(2 * term["q"]))
        key = tuple(sorted(exps.items()))
        out[key] = out.get(key, 0) + int(term["coeff"])
    return LaurentPoly(out)


def hfl_to_terms(p: LaurentPoly) -> List[dict]:
    """Term list ``[{coeff, u, t: [...]}]``; half-integral t-gradings become floats."""
    tvars = sorted(v for v in p.variables() if v.kind == Kind.T)
    terms = []
    for m, c in p.sorted_terms():
        d = dict(m)
        texp = [d.get(v, 0) / 2 if v.half else d.get(v, 0) for v in tvars]
        terms.append({"coeff": c, "u": d.get(MASLOV, 0), "t": texp})
    return terms


def _emit(args, text_lines: List[str], payload: dict) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


# ---------------------------------------------------------------------------
# commands


def cmd_compute(args) -> int:
    curve = _compute(_source(args), args.threads, args.truncate)
    names = curve.var_names()
    lines = [curve.pbar.render(names)]
    payload = {"variables": list(curve.names), "terms": poly_to_terms(curve.pbar, curve.r)}
    if curve.semigroup is not None:
        sg = curve.semigroup
        lines.append(f"series head: {sg.pg_head.render(names)} + ...")
        lines.append(f"conductor: {sg.conductor}")
        payload["series_head"] = poly_to_terms(sg.pg_head, 1)
        payload["conductor"] = sg.conductor
    _emit(args, lines, payload)
    return EXIT_OK


def _mutate(p: LaurentPoly) -> LaurentPoly:
    # the constant term mirrors the top monomial, so this breaks the checks
    return p + 1


def _rename_sub(full: Curve, sub: Curve, dropped: str) -> Dict[Var, Var]:
    remaining = [n for n in full.names if n != dropped]
    if sorted(sub.names) != sorted(remaining):
        raise UsageError(
            f"sub-curve variables {list(sub.names)} do not match {remaining} left after dropping {dropped}"
        )
    index = {n: a for a, n in enumerate(full.names)}
    return {tvar(b): tvar(index[n]) for b, n in enumerate(sub.names)}


def cmd_check(args) -> int:
    curve = _compute(_source(args), args.threads)
    p = _mutate(curve.pbar) if args.mutate else curve.pbar
    reports = verify.run_suite(p, curve.inv)
    if args.sub or args.drop:
        if not (args.sub and args.drop):
            raise UsageError("--sub and --drop go together")
        if args.drop not in curve.names:
            raise UsageError(f"no variable named {args.drop!r}; have {list(curve.names)}")
        sub = _compute(load_input(args.sub), args.threads)
        rename = _rename_sub(curve, sub, args.drop)
        dropped = tvar(list(curve.names).index(args.drop))
        reports.append(verify.check_forget(p, sub.pbar, dropped, rename))
    names = curve.var_names()
    lines = [rep.line(names) for rep in reports]
    ok = all(rep.passed for rep in reports)
    lines.append("ALL PASS" if ok else "FAILED")
    payload = {
        "checks": [
            {
                "name": rep.name,
                "passed": rep.passed,
                "detail": rep.detail,
                "witness": None if rep.passed else rep.witness.render(names),
            }
            for rep in reports
        ],
        "passed": ok,
    }
    _emit(args, lines, payload)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_hfl(args) -> int:
    if args.a2n1 is not None:
        if args.input or args.semigroup:
            raise UsageError("--a2n1 takes no other input")
        if args.a2n1 < 1:
            raise UsageError("--a2n1 needs a positive integer")
        poly = hfl.hfl_a2n1_closed(args.a2n1)
        names = {Var(Kind.T, 0, True): "t1", Var(Kind.T, 1, True): "t2", MASLOV: "u"}
        _emit(args, [poly.render(names)], {"terms": hfl_to_terms(poly)})
        return EXIT_OK
    curve = _compute(_source(args), args.threads)
    if curve.r != 1:
        print(f"knot Floer tables need one branch, got {curve.r}", file=sys.stderr)
        return EXIT_INPUT
    alexander = hfl.alexander_from_pbar(curve.pbar)
    table = hfl.delta_sequence(alexander)
    from_staircase = table.to_poly()
    from_series = hfl.hfl_from_pbar(curve.pbar)
    agree = from_staircase == from_series
    names = hfl.hfl_names()
    lines = ["alexander  maslov"] + hfl.table_rows(table)
    lines.append(f"from Alexander staircase: {from_staircase.render(names)}")
    lines.append(f"from motivic series:      {from_series.render(names)}")
    lines.append("AGREE" if agree else "DISAGREE")
    payload = {
        "table": [list(e) for e in table.entries],
        "from_alexander": hfl_to_terms(from_staircase),
        "from_series": hfl_to_terms(from_series),
        "agree": agree,
    }
    _emit(args, lines, payload)
    return EXIT_OK if agree else EXIT_FAIL


def cmd_oracle(args) -> int:
    source = load_input(args.input)
    if isinstance(source, SemigroupInput):
        raise UsageError("the oracle needs a resolution graph")
    d = validate(source)
    inv = milnor_numbers(d)
    bound = sum(inv.l_alpha) if args.t_bound is None else args.t_bound
    if bound < 0:
        raise UsageError("--t-bound must be non-negative")
    full = engine.assemble(d, inv, workers=args.threads)
    ours = engine.truncate_total_degree(full, bound)
    oracle = engine.oracle_subset_expansion(d, bound)
    diff = ours - oracle
    names = {tvar(a): n for a, n in enumerate(d.names)}
    lines = [
        f"total t-degree bound: {bound}",
        f"assemble: {ours.render(names)}",
        f"oracle:   {oracle.render(names)}",
        f"diff:     {diff.render(names)}",
        "EMPTY DIFF" if not diff else "NONEMPTY DIFF",
    ]
    payload = {
        "bound": bound,
        "assemble": poly_to_terms(ours, d.r),
        "oracle": poly_to_terms(oracle, d.r),
        "diff": poly_to_terms(diff, d.r),
    }
    _emit(args, lines, payload)
    return EXIT_OK if not diff else EXIT_FAIL


def cmd_examples(args) -> int:
    rows = []
    for name in bundled_names():
        rows.append({"name": name, "description": bundled(name).get("description", "")})
    rows.append({"name": "a2n1_chain:N", "description": "generated chain for y^2 = x^(2N)"})
    rows.append({"name": "torus:P,Q", "description": "generated resolution of y^P = x^Q"})
    lines = [f"{row['name']:<16} {row['description']}" for row in rows]
    _emit(args, lines, {"examples": rows})
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="motivic-poincare",
        description="Reduced motivic Poincare series of plane curve singularities.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--threads", type=int, default=None, help="worker processes for assembly")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="print the reduced series")
    p.add_argument("input", nargs="?", help="graph file, bundled example or generator")
    p.add_argument("--semigroup", help="comma-separated semigroup generators")
    p.add_argument("--truncate", type=int, default=10, help="terms in the series head")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("check", parents=[common], help="run the structural checks")
    p.add_argument("input", nargs="?")
    p.add_argument("--semigroup")
    p.add_argument("--sub", help="sub-curve for the forgetting identity")
    p.add_argument("--drop", help="name of the variable forgotten by --sub")
    p.add_argument("--mutate", action="store_true", help="corrupt one coefficient first")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("hfl", parents=[common], help="knot Floer polynomial, two ways")
    p.add_argument("input", nargs="?")
    p.add_argument("--semigroup")
    p.add_argument("--a2n1", type=int, help="closed form for the A_(2n-1) link")
    p.set_defaults(func=cmd_hfl)

    p = sub.add_parser("oracle", parents=[common], help="compare against brute-force expansion")
    p.add_argument("input")
    p.add_argument("--t-bound", type=int, default=None, help="total t-degree (default sum of l)")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("examples", parents=[common], help="list bundled examples")
    p.set_defaults(func=cmd_examples)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InvalidGraph, engine.BadGenerators, hfl.BadShape, hfl.BadCoefficient) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (engine.EngineError, NotDivisible) as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
