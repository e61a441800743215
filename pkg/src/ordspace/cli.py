"""``ordspace`` command line.

Every subcommand prints tab-separated ``key<TAB>value`` lines (tables get a
header row).  Exit codes: 0 success, 1 refutation or mismatch, 2 usage or
malformed input, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import __version__
from .braid import dehornoy_cone, handle_reduce, sigma_class
from .certificates import (
    CHECKS,
    approximate_certificate,
    canonical,
    check_certificate,
    densify_certificate,
    homeo_from_json,
    parse_group_arg,
    verify_certificate,
)
from .descriptors import dumps, parse_cone_spec
from .elements import BraidGroup
from .errors import BudgetExceeded, DescriptorError, OrdspaceError

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _out(*cols) -> None:
    print("\t".join(str(c) for c in cols))


def _elements(group, text: str):
    """Split a list of elements on ``;`` (or ``,`` when elements contain no parentheses)."""
    parts = [p for p in re.split(r";" if "(" in text else r"[;,]", text) if p.strip()]
    out = []
    for p in parts:
        try:
            out.append(group.parse(p.strip()))
        except (ValueError, TypeError) as e:
            raise DescriptorError(f"cannot parse element {p.strip()!r}: {e}") from None
    return out


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


# ------------------------------------------------------------- commands


def cmd_check(args) -> int:
    G = parse_group_arg(args.group)
    cone = parse_cone_spec(args.cone, G)
    cert = check_certificate(cone, args.property, args.radius, args.seed)
    bc = cert["ball_certificates"][0]
    _out("cone", dumps(cone))
    _out("property", bc["property"])
    _out("radius", bc["radius"])
    _out("checked", bc["checked"])
    _out("verdict", bc["verdict"])
    if bc["witness"]:
        _out("witness", " ".join(bc["witness"]))
        _out("note", bc["note"])
    if args.emit_certificate:
        _write(args.emit_certificate, canonical(cert))
    return EXIT_OK if bc["verdict"] == "verified-on-ball" else EXIT_REFUTED


def cmd_classify(args) -> int:
    G = parse_group_arg(args.group)
    cone = parse_cone_spec(args.cone, G)
    _out("element", "sign")
    for text in args.element:
        for g in _elements(G, text):
            _out(g.text(), cone.classify(g).symbol)
    return EXIT_OK


def cmd_approximate(args) -> int:
    G = parse_group_arg(args.group)
    cone = parse_cone_spec(args.cone, G)
    require = _elements(G, args.require) if args.require else []
    cert = approximate_certificate(cone, args.target, require, args.seed)
    for key, val in cert["stages"].items():
        _out(key, json.dumps(val))
    for call in cert["oracle_calls"]:
        if call["cone"] == "Q":
            _out("contains", call["element"], call["sign"])
    _out("output", dumps(cert["output"]))
    _out("verdict", cert["verdict"])
    if args.emit_certificate:
        _write(args.emit_certificate, canonical(cert))
    return EXIT_OK if cert["verdict"] == "verified-on-ball" else EXIT_REFUTED


def cmd_densify(args) -> int:
    from .plotting import render_f1_f2
    from .realization import dense_approximation_free

    G = parse_group_arg(args.group)
    cone = parse_cone_spec(args.cone, G)
    require = _elements(G, args.require) if args.require else []
    cert = densify_certificate(cone, require, args.k, args.degree, args.seed, args.witness_radius)
    st = cert["stages"]
    for key in ("g_minus", "g_plus", "a", "b", "h1", "h2"):
        _out(key, st[key])
    for key, val in st["key_points"].items():
        _out(key, val)
    for key, ok in cert["checks"].items():
        _out("check:" + key, "ok" if ok else "FAILED")
    d = cert["density"]
    _out("density", d["ball_minimum"], d["witness"])
    _out("output", dumps(cert["output"]))
    _out("verdict", cert["verdict"])
    if args.emit_certificate:
        _write(args.emit_certificate, canonical(cert))
    if args.plot:
        pl = dense_approximation_free(cone, require, args.k, args.degree)
        kp = {name: v for name, v in pl.key_points().items()}
        svg = render_f1_f2(pl.f1, pl.f2, kp, pl.realization.rep.homeo(pl.choice.a), pl.realization.rep.homeo(pl.choice.b))
        _write(args.plot, svg)
    return EXIT_OK if cert["verdict"] == "verified-on-ball" else EXIT_REFUTED


def cmd_tower(args) -> int:
    from .tower import ball_cone_census, check_all_discrete

    census = ball_cone_census(args.rank, args.census_radius)
    reports = {r.cone.label: r for r in check_all_discrete(args.rank, args.discrete_radius)}
    _out("signs", "generator_signs", "least_positive", "certified_radius")
    for e in census.entries:
        r = reports.get(e.matches)
        least = r.least.element.text() if r else "-"
        cert = str(args.discrete_radius) if r and r.ok else "no"
        _out(e.matches or "unmatched", e.generator_signs, least, cert)
    _out("count", census.count)
    _out("raw_patterns", census.raw)
    _out("expected", 2**args.rank)
    ok = census.count == 2**args.rank and all(e.matches for e in census.entries) and all(r.ok for r in reports.values())
    return EXIT_OK if ok else EXIT_REFUTED


def cmd_braid(args) -> int:
    G = BraidGroup(args.strands)
    try:
        w = G.parse(args.classify)
    except (ValueError, TypeError) as e:
        raise DescriptorError(f"cannot parse braid {args.classify!r}: {e}") from None
    reduced = handle_reduce(w)
    _out("word", w.text())
    _out("reduced", reduced.text())
    _out("class", str(sigma_class(w)))
    _out("sign", dehornoy_cone(args.strands).classify(w).symbol)
    return EXIT_OK


def _load_cert(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise DescriptorError(f"cannot read {path}: {e.strerror}") from None
    try:
        cert = json.loads(text)
    except json.JSONDecodeError as e:
        raise DescriptorError(f"malformed certificate: {e.msg}", e.pos) from None
    if not isinstance(cert, dict):
        raise DescriptorError("certificate must be a JSON object")
    return cert


def cmd_verify(args) -> int:
    cert = _load_cert(args.certificate)
    try:
        res = verify_certificate(cert)
    except (KeyError, TypeError, AttributeError) as e:
        raise DescriptorError(f"certificate is missing or mangles a field: {e}") from None
    problems = list(res.problems)
    if args.plot:
        from .plotting import read_plot_data

        if cert.get("pipeline") != "densify":
            raise DescriptorError("only densify certificates carry plots")
        try:
            data = read_plot_data(Path(args.plot).read_text(encoding="utf-8"))
        except (OSError, ValueError) as e:
            raise DescriptorError(f"unreadable plot: {e}") from None
        st = cert["stages"]
        for key in ("f1", "f2"):
            if data[key] != homeo_from_json(st[key]):
                problems.append(f"plot: {key} breakpoints differ from the certificate")
        names = ("g+(0)", "ag+(0)", "bg+(0)", "f1(bg+(0))")
        if [str(x) for x in data["key_points"]] != [st["key_points"].get(n) for n in names]:
            problems.append("plot: key points differ from the certificate")
    _out("checked", res.checked)
    for p in problems:
        _out("mismatch", p)
    _out("verdict", "ok" if not problems else "mismatch")
    return EXIT_OK if not problems else EXIT_REFUTED


def cmd_plot(args) -> int:
    from .plotting import render_f1_f2
    from fractions import Fraction

    cert = _load_cert(args.certificate)
    if cert.get("pipeline") != "densify":
        raise DescriptorError("only densify certificates can be plotted")
    try:
        st = cert["stages"]
        f1, f2 = homeo_from_json(st["f1"]), homeo_from_json(st["f2"])
        kp = {k: Fraction(v) for k, v in st["key_points"].items()}
    except (KeyError, TypeError, ValueError) as e:
        raise DescriptorError(f"certificate stages are incomplete: {e}") from None
    _write(args.out, render_f1_f2(f1, f2, kp))
    _out("plot", args.out)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ordspace", description="Positive cones of orderable groups: checks, approximations, certificates.")
    p.add_argument("--version", action="version", version=f"ordspace {__version__}")
    p.add_argument("--seed", type=int, default=0, help="recorded in certificates (all pipelines are deterministic)")
    sub = p.add_subparsers(dest="command", required=True)

    cone_help = "cone: magnus[:D], dehornoy, tower:+-, lex, flag:[(1,r2)], a JSON descriptor, or @file.json"

    s = sub.add_parser("check", help="ball-restricted axiom / Conradian / bi-invariance check")
    s.add_argument("--group", required=True, help="f:n, f:inf, z:k, t:n, b:n or klein")
    s.add_argument("--cone", required=True, help=cone_help)
    s.add_argument("--radius", type=int, default=3)
    s.add_argument("--property", choices=sorted(CHECKS), default="axioms")
    s.add_argument("--emit-certificate", metavar="PATH")
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("classify", help="sign of elements under a cone")
    s.add_argument("--group", required=True)
    s.add_argument("--cone", required=True, help=cone_help)
    s.add_argument("--element", action="append", required=True, help="element(s), separated by ';' (repeatable)")
    s.set_defaults(fn=cmd_classify)

    s = sub.add_parser("approximate", help="discrete/dense/rank-one approximations on Z^k; flip/dense on F_inf")
    s.add_argument("--group", required=True)
    s.add_argument("--cone", required=True, help=cone_help)
    s.add_argument("--target", required=True, choices=["discrete", "dense", "rank-one", "flip"])
    s.add_argument("--require", default="", help="positive elements to keep, e.g. \"(1,1);(2,1)\" or \"x1,x2\"")
    s.add_argument("--emit-certificate", metavar="PATH")
    s.set_defaults(fn=cmd_approximate)

    s = sub.add_parser("densify", help="perturbation pipeline on F_n producing a dense cone")
    s.add_argument("--group", required=True, help="f:n with n >= 2")
    s.add_argument("--cone", required=True, help=cone_help)
    s.add_argument("--require", default="", help="positive words to keep, e.g. \"x1,x1.x2\"")
    s.add_argument("--k", type=int, default=2, help="ball radius (every required word must lie in it)")
    s.add_argument("--degree", type=int, default=2, help="starting Magnus truncation degree")
    s.add_argument("--witness-radius", type=int, default=3)
    s.add_argument("--emit-certificate", metavar="PATH")
    s.add_argument("--plot", metavar="SVG", help="write the f1/f2 figure")
    s.set_defaults(fn=cmd_densify)

    s = sub.add_parser("tower", help="census of cones on the tower group T_n")
    s.add_argument("--rank", type=int, required=True)
    s.add_argument("--census-radius", type=int, default=2)
    s.add_argument("--discrete-radius", type=int, default=6)
    s.set_defaults(fn=cmd_tower)

    s = sub.add_parser("braid", help="Dehornoy classification of a braid word")
    s.add_argument("--strands", type=int, required=True)
    s.add_argument("--classify", required=True, metavar="WORD", help="e.g. \"s1.s2^-1\"")
    s.set_defaults(fn=cmd_braid)

    s = sub.add_parser("verify", help="re-derive every check in a certificate")
    s.add_argument("certificate")
    s.add_argument("--plot", metavar="SVG", help="also compare the breakpoints stored in a densify plot")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("plot", help="render the f1/f2 figure of a densify certificate")
    s.add_argument("certificate")
    s.add_argument("--out", required=True, metavar="SVG")
    s.set_defaults(fn=cmd_plot)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.fn(args)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except DescriptorError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (OrdspaceError, ValueError, TypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
