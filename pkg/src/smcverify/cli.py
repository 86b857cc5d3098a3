"""Command line interface.

Exit codes: 0 success, 1 usage error, 2 computation error, 3 invariant failure.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import logder, smc
from .bsroots import bD_roots, milnor_qh_curve_bs, minus_nd_root_verdict, monomial_bs, thom_sebastiani_roots
from .errors import ArtifactError, BadParameters, InternalInconsistency
from .polyparse import DEFAULT_VARS, format_poly, parse_poly
from .resolution import build_resolution_graph, graph_to_dict, graph_to_dot, two_conics_fixture, verify_graph_identities
from .serialize import dumps, to_jsonable
from .standardform import StandardFormData, classify, extract_standard_form
from .zeta import (
    candidate_and_actual_poles,
    config_from_graph,
    motivic_residue,
    motivic_zeta_expression,
    topological_zeta,
    topological_zeta_compact,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        raise UsageError(message)


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _fracs(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(x) for x in text.split(",") if x.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}") from exc


def _vars(text: str) -> tuple[str, ...]:
    return tuple(v.strip() for v in text.split(",") if v.strip())


def _add_poly(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("poly", nargs=None if required else "?", help="polynomial, e.g. 'y^5 - x^3*z^2'")
    p.add_argument("--vars", type=_vars, default=DEFAULT_VARS, help="comma-separated variable names")


def _add_sf(p: argparse.ArgumentParser) -> None:
    _add_poly(p, required=False)
    p.add_argument("--t", type=int)
    p.add_argument("--u", type=int)
    p.add_argument("--b", type=_ints, default=(1,), help="branch multiplicities, e.g. 1,2")
    p.add_argument("--a", type=_ints, default=(0, 0, 0), help="line exponents a1,a2,a3")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="smcverify", description="Exact checks for semi-simple plane curve singularities.")
    parser.add_argument("--json", action="store_true", help="emit JSON (schema 1)")
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON (schema 1)")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name: str, help: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=help, parents=[common])

    _add_poly(add("parse", help="parse and print canonically"))
    _add_poly(add("classify", help="lattice classification"))
    p = add("logder", help="degree-0 logarithmic derivations")
    _add_poly(p)
    p.add_argument("--beta", action="store_true", help="also compute beta(s) from the semi-simple witness")
    _add_poly(add("standard-form", help="extract the semi-simple standard form"))
    p = add("resolve", help="resolution graph")
    _add_sf(p)
    p.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    p = add("zeta", help="topological / motivic zeta functions and pole table")
    _add_sf(p)
    p.add_argument("--motivic", action="store_true")
    p.add_argument("--local", action="store_true", help="local motivic version (with --motivic)")
    p.add_argument("--compact", action="store_true", help="also evaluate the compact chain formula")
    p = add("residue", help="motivic residue at -3/d")
    _add_sf(p)
    p.add_argument("--fixture", choices=sorted(smc.FIXTURES))
    p = add("bs", help="Bernstein-Sato root sets")
    _add_sf(p)
    p.add_argument("--monomial", type=_ints, help="exponents of a monomial")
    p.add_argument("--milnor", help="quasi-homogeneous polynomial in x,y")
    p.add_argument("--weights", type=_fracs, help="weights for --milnor, e.g. 1/2,1/3")
    p.add_argument("--ts", type=_ints, help="t,u for the Thom-Sebastiani set")
    p = add("analyze", help="full report")
    _add_poly(p, required=False)
    p.add_argument("--fixture", choices=sorted(smc.FIXTURES))
    p = add("sweep", help="batch invariant sweep")
    p.add_argument("--t-max", type=int, default=7)
    p.add_argument("--t-min", type=int, default=2)
    p.add_argument("--m-max", type=int, default=3)
    p.add_argument("--b-max", type=int, default=3)
    p.add_argument("--a-max", type=int, default=3)
    p.add_argument("--filter", choices=smc.FILTERS, default="none")
    p.add_argument("--derivations", action="store_true", help="also check derivation spaces (slower)")
    p.add_argument("--cases", action="store_true", help="include per-case results")
    p = add("fixture", help="curated resolution graphs")
    p.add_argument("name", choices=sorted(smc.FIXTURES))
    p.add_argument("--dot", action="store_true")
    return parser


def _sf_from_args(args: argparse.Namespace) -> StandardFormData:
    if args.poly is not None:
        return extract_standard_form(parse_poly(args.poly, args.vars).poly)
    if args.t is None or args.u is None:
        raise UsageError("give a polynomial or --t and --u")
    if len(args.a) != 3:
        raise UsageError("--a takes three integers")
    try:
        return StandardFormData(*args.a, args.t, args.u, args.b)
    except ValueError as exc:
        raise BadParameters(str(exc)) from exc


def _text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    data = to_jsonable(obj)
    if isinstance(data, dict):
        lines = []
        for k in sorted(data):
            v = data[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(data, list):
        if all(not isinstance(x, (dict, list)) for x in data):
            return pad + ", ".join(str(x) for x in data)
        return "\n".join(f"{pad}-\n{_text(x, indent + 1)}" for x in data)
    return f"{pad}{data}"


def _emit(args: argparse.Namespace, kind: str, payload: dict) -> None:
    print(dumps(payload, kind) if args.json else _text(payload))


def _run(args: argparse.Namespace) -> int:
    cmd = args.command
    if cmd is None:
        raise UsageError("missing command")
    if cmd == "parse":
        p = parse_poly(args.poly, args.vars)
        _emit(args, cmd, {"canonical": format_poly(p.poly, p.variable_names), "variables": list(p.variable_names),
                          "degree": p.poly.homogeneity(), "homogeneous": p.poly.homogeneity() is not None,
                          "support": sorted(list(e) for e in p.poly.support())})
    elif cmd == "classify":
        c = classify(parse_poly(args.poly, args.vars).poly)
        _emit(args, cmd, {"tag": c.tag, "standard_form": c.sf, "nontraceless": c.nontraceless,
                          "witness_agrees": c.witness_agrees})
    elif cmd == "logder":
        f = parse_poly(args.poly, args.vars).poly
        ann = logder.degree0_annihilating(f)
        out = {"annihilating_dimension": ann.dimension, "annihilating_basis": list(ann.basis),
               "logarithmic_dimension": logder.degree0_logarithmic(f).dimension,
               "cone": logder.is_cone(f),
               "diagonal_weights": [list(w.w) for w in logder.find_diagonal(f)]}
        if not out["cone"]:
            w = logder.find_semisimple_nontraceless(f, ann)
            out["semisimple_nontraceless_witness"] = w
            if args.beta and w is not None:
                beta = logder.beta_polynomial(f, [w])
                out["beta"] = {"poly": beta.poly.to_str("s"), "factor_ps": list(beta.factor_ps), "statement": beta.statement}
        _emit(args, cmd, out)
    elif cmd == "standard-form":
        sf = extract_standard_form(parse_poly(args.poly, args.vars).poly)
        _emit(args, cmd, {"standard_form": sf})
    elif cmd == "resolve":
        g = build_resolution_graph(_sf_from_args(args))
        if args.dot:
            sys.stdout.write(graph_to_dot(g))
            return 0
        ident = verify_graph_identities(g)
        _emit(args, cmd, {"graph": graph_to_dict(g), "identities_passed": ident.passed,
                          "identity_failures": list(ident.failures)})
        if not ident.passed:
            return 3
    elif cmd == "zeta":
        sf = _sf_from_args(args)
        g = build_resolution_graph(sf)
        zt = topological_zeta(g)
        out: dict = {"topological": zt, "poles": candidate_and_actual_poles(g, zt)}
        if args.compact:
            zc = topological_zeta_compact(sf)
            out["compact"] = zc
            out["compact_equals_full"] = zc == zt
            if zc != zt:
                _emit(args, cmd, out)
                return 3
        if args.motivic:
            mz = motivic_zeta_expression(g, local=args.local)
            out["motivic"] = {"local": args.local, "text": mz.to_bivariate().to_text(),
                              "euler_matches_topological": mz.euler_specialization() == zt}
        _emit(args, cmd, out)
    elif cmd == "residue":
        g = two_conics_fixture() if args.fixture else build_resolution_graph(_sf_from_args(args))
        res = motivic_residue(config_from_graph(g), g.d)
        _emit(args, cmd, {"residue": res})
    elif cmd == "bs":
        _emit(args, cmd, _bs(args))
    elif cmd == "analyze":
        if args.fixture:
            rep = smc.analyze_fixture(args.fixture)
        elif args.poly is not None:
            rep = smc.analyze(parse_poly(args.poly, args.vars))
        else:
            raise UsageError("give a polynomial or --fixture")
        _emit(args, cmd, smc.report_to_dict(rep))
    elif cmd == "sweep":
        ranges = smc.SweepRanges(args.t_max, args.m_max, args.b_max, args.a_max, args.t_min)
        summary = smc.sweep(ranges, args.filter, derivations=args.derivations)
        _emit(args, cmd, smc.summary_to_dict(summary, args.cases))
        return 0 if summary.ok else 3
    elif cmd == "fixture":
        g = two_conics_fixture()
        if args.dot:
            sys.stdout.write(graph_to_dot(g))
            return 0
        _emit(args, cmd, {"graph": graph_to_dict(g), "report": smc.report_to_dict(smc.analyze_fixture(args.name))})
    return 0


def _bs(args: argparse.Namespace) -> dict:
    if args.monomial:
        return {"roots": monomial_bs(args.monomial)}
    if args.milnor:
        if not args.weights:
            raise UsageError("--milnor needs --weights")
        g = parse_poly(args.milnor, ("x", "y")).poly
        return {"roots": milnor_qh_curve_bs(g, args.weights)}
    if args.ts:
        if len(args.ts) != 2:
            raise UsageError("--ts takes t,u")
        t, u = args.ts
        rs = thom_sebastiani_roots(t, u)
        return {"roots": rs, "minus_3_over_t_in_set": Fraction(-3, t) in rs, "membership_rule": t in (2, 3)}
    sf = _sf_from_args(args)
    out: dict = {"verdict": minus_nd_root_verdict(sf)}
    try:
        out["bD_roots"] = bD_roots(sf)
    except ArtifactError as exc:
        out["bD_roots"] = f"unsupported: {exc}"
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _run(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except InternalInconsistency as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return 3
    except ArtifactError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
