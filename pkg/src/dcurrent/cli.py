"""Command line front end.

Exit codes: 0 all checks passed, 1 a mathematical check failed,
2 usage or validation error, 3 resource ceiling hit.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import acceptance, identities, liealg, pbw, repmod
from . import classify as C
from .scalars import format_rational, parse_rational

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_CEILING = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _dump(obj):
    return json.dumps(obj, sort_keys=True, indent=2)


def _emit(args, obj, text=None):
    payload = _dump(obj)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload + "\n")
    if text is not None:
        print(text)
    elif not args.out:
        print(payload)


def _q_vector(args, m):
    if args.Q is None:
        return (Fraction(0),) * (m - 1)
    try:
        Q = tuple(parse_rational(x) for x in args.Q.split(","))
    except ValueError as exc:
        raise UsageError(f"bad --Q value: {exc}")
    if len(Q) != m - 1:
        raise UsageError(f"--Q needs {m - 1} entries for m={m}, got {len(Q)}")
    return Q


def _read_json(src):
    """A JSON argument: inline text, a file path, or '-' for stdin."""
    if src == "-":
        text = sys.stdin.read()
    elif src.lstrip().startswith(("{", "[")):
        text = src
    else:
        try:
            with open(src) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(str(exc))
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc}")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_normalize(args):
    eng = pbw.Engine(args.ceiling)
    try:
        elem = pbw.normalize(pbw.parse(args.expr), eng)
    except pbw.ParseError as exc:
        raise UsageError(f"parse error at position {exc.pos}: {exc}")
    text = pbw.format_element(elem)
    _emit(args, {"input": args.expr, "normal_form": text, "element": elem.to_json()},
          None if args.json else text)
    return EXIT_OK


def cmd_identities(args):
    cfg = identities.GridConfig(
        st_max=args.st_max, bc_max=args.bc_max, part_max=args.part_max, p_max=args.p_max,
        names=tuple(args.only) if args.only else None,
    )
    if args.only:
        unknown = [n for n in args.only if n not in identities.IDENTITIES]
        if unknown:
            raise UsageError(f"unknown identities: {', '.join(unknown)}")
    res = acceptance.criterion_1(cfg)
    if args.only:
        res.detail["families"] = {k: v for k, v in res.detail["families"].items() if k in args.only}
    lines = [f"{name}: {v['passed']}/{v['total']}" for name, v in res.detail["families"].items()]
    report = {"ok": res.passed, "seed": args.seed, **res.detail}
    _emit(args, report, None if args.json else "\n".join(lines + [res.line()]))
    return EXIT_OK if res.passed else EXIT_CHECK


def _spec(args):
    return liealg.AlgebraSpec(args.m, args.variant, _q_vector(args, args.m), args.degree_bound)


def cmd_relations(args):
    spec = _spec(args)
    out = acceptance.check_table(spec, jacobi=args.jacobi)
    out["spec"] = spec.to_json()
    _emit(args, out)
    return EXIT_OK if out["ok"] else EXIT_CHECK


def cmd_structconsts(args):
    spec = _spec(args)
    table = liealg.structure_constants(spec, workers=args.workers)
    rep = liealg.check_relations(table, spec)
    anti = liealg.check_antisymmetry(table)
    data = table.to_json()
    data["verification"] = {"relations": rep.to_json(), "antisymmetry_failures": len(anti)}
    _emit(args, data)
    return EXIT_OK if rep.ok and not anti else EXIT_CHECK


def _module_spec(args):
    return liealg.AlgebraSpec(args.m, args.variant, _q_vector(args, args.m), 3)


def cmd_module_build(args):
    spec = _module_spec(args)
    d = C.ClassificationDatum.from_json(_read_json(args.datum))
    stages = repmod.build_stages(C.recipe_from_datum(d, spec), args.T)
    S = stages.simple
    u, v = repmod.highest_weight_of(S)
    hw = C.HighestWeight(spec.variant, spec.m, S.T, u)
    canon = C.canonicalize(d, spec.Q)
    expect = C.hw_from_datum(canon, spec, S.T)
    rel = repmod.check_module_relations(S)
    ok = rel.ok and expect.u == u
    out = {
        "datum": d.to_json(),
        "canonical_datum": canon.to_json(),
        "dimension": S.dim,
        "stages": dict(S.info),
        "highest_weight": hw.to_json(),
        "highest_weight_matches_formula": expect.u == u,
        "relations_ok": rel.ok,
        "module": S.to_json(),
    }
    _emit(args, out)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_module_classify(args):
    data = _read_json(args.module)
    M = repmod.WeightModule.from_json(data.get("module", data))
    u, v = repmod.highest_weight_of(M)
    d = C.extract_datum(M, (u, v))
    out = {
        "datum": d.to_json(),
        "highest_weight": C.HighestWeight(M.spec.variant, M.spec.m, M.T, u).to_json(),
        "simple": repmod.is_simple(M) if M.v0 is not None else None,
    }
    _emit(args, out)
    return EXIT_OK


def cmd_module_radical(args):
    """Radical of one evaluation module L(omega_l)^{ev_gamma}."""
    spec = _module_spec(args)
    gamma = parse_rational(args.gamma)
    T = args.T if args.T is not None else 3
    M = repmod.evaluation_twist(repmod.fundamental_module(spec.m, args.l), gamma, spec, T)
    rad = repmod.maximal_submodule(M)
    sub, quo = repmod.subquotient(M, rad)
    fr = format_rational
    out = {
        "spec": spec.to_json(),
        "gamma": fr(gamma),
        "l": args.l,
        "dimension": M.dim,
        "radical_dim": len(rad),
        "radical_basis": [[fr(x) for x in r] for r in rad],
        "quotient": _summary(quo),
        "submodule": _summary(sub) if rad else None,
    }
    _emit(args, out)
    return EXIT_OK


def _summary(M):
    """Dimension, and for a 1-dimensional module its datum."""
    out = {"dimension": M.dim}
    if M.dim == 1:
        M.v0 = [Fraction(1)]
        out["datum"] = C.extract_datum(M).to_json()
    elif M.v0 is not None:
        out["datum"] = C.extract_datum(M).to_json()
    return out


def cmd_selftest(args):
    results = acceptance.run_all(args.seed)
    for r in results:
        print(r.line())
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(_dump({"seed": args.seed, "criteria": [r.to_json() for r in results]}) + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _common(p, algebra=True):
    p.add_argument("--seed", type=int, default=acceptance.DEFAULT_SEED)
    p.add_argument("--out", help="write the JSON report here")
    if algebra:
        p.add_argument("--m", type=int, default=2)
        p.add_argument("--Q", help="comma separated rationals, one per simple root")
        p.add_argument("--variant", choices=("sl", "gl"), default="sl")


def build_parser():
    ap = argparse.ArgumentParser(prog="dcurrent", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="PBW normal form of a rank-1 expression")
    p.add_argument("expr")
    p.add_argument("--ceiling", type=int, default=pbw.DEFAULT_CEILING)
    p.add_argument("--json", action="store_true")
    _common(p, algebra=False)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("identities", help="verify the rank-1 identity suite")
    p.add_argument("--st-max", type=int, default=2)
    p.add_argument("--bc-max", type=int, default=4)
    p.add_argument("--part-max", type=int, default=4)
    p.add_argument("--p-max", type=int, default=4)
    p.add_argument("--only", action="append", help="restrict to one identity (repeatable)")
    p.add_argument("--json", action="store_true")
    _common(p, algebra=False)
    p.set_defaults(func=cmd_identities)

    for name, fn, hlp in (("relations", cmd_relations, "check a structure table"),
                          ("structconsts", cmd_structconsts, "emit a verified structure table")):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("--degree-bound", type=int, default=3)
        p.add_argument("--workers", type=int, default=None)
        p.add_argument("--jacobi", action="store_true")
        _common(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("module", help="build, classify or split modules")
    msub = p.add_subparsers(dest="module_command", required=True)
    q = msub.add_parser("build", help="simple module of a classification datum")
    q.add_argument("datum", help="datum JSON: inline, a file, or - for stdin")
    q.add_argument("--T", type=int, default=None, help="generator degree bound")
    _common(q)
    q.set_defaults(func=cmd_module_build)
    q = msub.add_parser("classify", help="datum of a simple module JSON")
    q.add_argument("module", help="module JSON: inline, a file, or - for stdin")
    _common(q, algebra=False)
    q.set_defaults(func=cmd_module_classify)
    q = msub.add_parser("radical", help="radical of an evaluation module")
    q.add_argument("--gamma", required=True)
    q.add_argument("--l", type=int, default=1)
    q.add_argument("--T", type=int, default=None)
    _common(q)
    q.set_defaults(func=cmd_module_radical)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    _common(p, algebra=False)
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, C.InvalidDatum, repmod.RecipeError, liealg.SpecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (pbw.TermCeilingExceeded, liealg.DegreeOverflow) as exc:
        print(f"resource ceiling: {exc}", file=sys.stderr)
        return EXIT_CEILING
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
