"""Command line front end.  Every command prints one JSON report.

Exit status: 0 when everything checks out, 1 on a mathematical
inconsistency (failed verification, violated growth statement,
unclassifiable data), 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .classtable import (
    C, ClassId, EquivalenceViolation, G, H, InadmissibleInvariants, admissible,
    bass_series, canonical_invariants, fg_polys, poincare_series,
)
from .galg import APPENDIX_FORMULAS
from .growth import GorensteinInput, GrowthViolation, exception_kind, growth_verdict
from .koszul import (
    CORPUS_NOTES, InternalInconsistency, PresentationError, RingPresentation, Unclassifiable,
    classify_presentation, example_corpus, parse_presentation,
)
from .linalg import Field, FieldError
from .powser import LaurentPoly, RationalSeries, taylor

SCHEMA_VERSION = 1
WINDOW_ENV = "CODEPTH3_WINDOW"


class InputError(ValueError):
    pass


def default_window(fallback=12):
    raw = os.environ.get(WINDOW_ENV)
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{WINDOW_ENV} must be an integer, got {raw!r}")


# ---------------------------------------------------------------- serialization

def poly_json(p: LaurentPoly):
    return [[e, c] for e, c in p.items()]


def series_json(s: RationalSeries):
    return {"num": poly_json(s.num), "den": poly_json(s.den)}


def report(command, inputs, results, flags=()):
    return {"schema": SCHEMA_VERSION, "command": command, "inputs": inputs,
            "results": results, "flags": list(flags)}


def dumps(rep) -> str:
    return json.dumps(rep, sort_keys=True, indent=1)


def render_table(rep) -> str:
    """Plain two-column listing of the report, nested keys joined by dots."""
    rows = []

    def walk(prefix, x):
        if isinstance(x, dict):
            for k in sorted(x):
                walk(f"{prefix}.{k}" if prefix else str(k), x[k])
        elif isinstance(x, list) and any(isinstance(y, dict) for y in x):
            for i, y in enumerate(x):
                walk(f"{prefix}[{i}]", y)
        else:
            rows.append((prefix, json.dumps(x)))

    walk("", {k: rep[k] for k in ("command", "results", "flags")})
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


# ---------------------------------------------------------------- helpers

def class_from_args(args) -> ClassId:
    kind = args.cls.upper()
    if kind == "C":
        if args.c is None:
            raise InputError("class C needs --c")
        return C(args.c)
    if kind == "G":
        if args.r is None:
            raise InputError("class G needs --r")
        return G(args.r)
    if kind == "H":
        if args.p is None or args.q is None:
            raise InputError("class H needs --p and --q")
        return H(args.p, args.q)
    try:
        return ClassId.parse(kind)
    except ValueError as exc:
        raise InputError(str(exc))


def invariants_from_args(cls, args):
    if cls.kind != "C" and args.l is None:
        raise InputError(f"class {cls} needs --l")
    n = args.n if args.n is not None else 0
    if args.h is not None:
        inv = canonical_invariants(cls, e=args.e, d=args.d, h=args.h, l=args.l, n=n)
    else:
        # smallest admissible h; if there is none, h = 0 reports the violations
        tries = [canonical_invariants(cls, e=args.e, d=args.d, h=h, l=args.l, n=n) for h in range(4)]
        inv = next((t for t in tries if admissible(cls, t).ok), tries[0])
    if cls.kind == "C" and inv.c != cls.params[0]:
        raise InputError(f"e - d = {inv.c} but the class is {cls}")
    return inv


def load_presentation(source: str, field=None) -> RingPresentation:
    """A corpus name or a JSON file with fields field, vars, gens (and optional dim)."""
    corpus = example_corpus(field or Field(0))
    if source in corpus:
        return corpus[source]
    try:
        with open(source) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{source} is not valid JSON: {exc}")
    for key in ("field", "vars", "gens"):
        if key not in data:
            raise InputError(f"presentation file lacks field {key!r}")
    F = field or Field(data["field"])
    gens = data["gens"]
    if gens and all(isinstance(g, str) for g in gens):
        names = data.get("names") or [f"x{i + 1}" for i in range(data["vars"])]
        return parse_presentation(gens, names, F, dim=data.get("dim"), name=source)
    terms = [[(c, tuple(ex)) for c, ex in g] for g in gens]
    return RingPresentation(F, int(data["vars"]), terms, dim=data.get("dim"), name=source)


# ---------------------------------------------------------------- commands

def cmd_series(args):
    cls = class_from_args(args)
    inv = invariants_from_args(cls, args)
    N = args.window if args.window is not None else default_window()
    P = poincare_series(cls, inv)
    I = bass_series(cls, inv)
    results = {
        "class": str(cls),
        "invariants": inv.as_dict(),
        "poincare": series_json(P),
        "bass": series_json(I),
        "betti": taylor(P, 0, N),
        "mu": {"from": inv.d, "values": taylor(I, inv.d, inv.d + N)},
    }
    if cls != C(0):
        f, g = fg_polys(cls, inv)
        results["f"] = poly_json(f)
        results["g"] = poly_json(g)
    flags = []
    exc = exception_kind(cls, inv)
    if exc != "none":
        mu = results["mu"]["values"]
        flags.append("plateau" if len(mu) > 2 and mu[1] == mu[2] == 2 else "exception")
        results["exception"] = exc
    return report("series", vars_of(args), results, flags), 0


def cmd_growth(args):
    cls = class_from_args(args)
    inv = invariants_from_args(cls, args)
    N = args.window if args.window is not None else default_window()
    rep = growth_verdict(cls, inv, N)
    return report("growth", vars_of(args), {"class": str(cls), **rep.as_dict()}), 0


def cmd_classify(args):
    R = load_presentation(args.presentation, Field(args.char) if args.char is not None else None)
    cls_report, kh, dep = classify_presentation(R, D=args.window, imax=args.imax)
    results = cls_report.as_dict()
    results["koszul_dims"] = list(kh.algebra.dims)
    results["window"] = kh.window
    results["depth"] = {"d": dep.d, "dim": dep.dim, "mu": dep.mu}
    flags = list(kh.flags) + list(dep.flags)
    return report("classify", vars_of(args), results, flags), 0


def cmd_verify(args):
    from .appendix import verify_all, verify_formula

    if args.all:
        table = verify_all(args.degree)
    elif args.formula:
        table = {args.formula: verify_formula(args.formula, args.degree)}
    else:
        raise InputError("verify needs --formula NAME or --all")
    results = {f: {"pass": all(r.ok for r in rs), "fixtures": [r.as_dict() for r in rs]}
               for f, rs in table.items()}
    ok = all(v["pass"] for v in results.values())
    return report("verify", vars_of(args), results, [] if ok else ["mismatch"]), 0 if ok else 1


def cmd_examples(args):
    entries = {}
    for name, R in example_corpus().items():
        entries[name] = {
            "ideal": CORPUS_NOTES[name],
            "vars": R.e,
            "gens": [[[str(c), list(ex)] for c, ex in g] for g in R.generators],
        }
    entries["gorenstein5"]["note"] = "derived fixture; checked by Poincare duality and class G(l+1)"
    return report("examples", {}, entries), 0


def vars_of(args):
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "format") and v is not None}


# ---------------------------------------------------------------- parser

def _class_args(p):
    p.add_argument("--class", dest="cls", required=True, help="C, S, T, B, G or H")
    for name in ("c", "r", "p", "q", "l", "n"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--e", type=int, required=True, help="embedding dimension")
    p.add_argument("--d", type=int, required=True, help="depth")
    p.add_argument("--h", type=int, help="default: smallest admissible value")
    p.add_argument("--window", type=int, help=f"degree window (default ${WINDOW_ENV} or 12)")


def build_parser():
    ap = argparse.ArgumentParser(prog="codepth3", description="Poincare and Bass series of rings of codepth <= 3.")
    ap.add_argument("--format", choices=("json", "table"), default="json")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("series", help="closed-form series for a class and invariants")
    _class_args(p)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("growth", help="growth verdict for Bass numbers")
    _class_args(p)
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("classify", help="classify a presentation file or corpus entry")
    p.add_argument("presentation")
    p.add_argument("--window", type=int, help="internal degree window for Koszul homology")
    p.add_argument("--imax", type=int, help="highest Bass number used to find the depth")
    p.add_argument("--char", type=int, help="override the field characteristic")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="closed forms against the resolution oracle")
    p.add_argument("--formula", choices=APPENDIX_FORMULAS)
    p.add_argument("--all", action="store_true")
    p.add_argument("--degree", type=int, default=8)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("examples", help="list the built-in presentations")
    p.set_defaults(func=cmd_examples)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        rep, status = args.func(args)
    except (InputError, InadmissibleInvariants, PresentationError, FieldError, GorensteinInput) as exc:
        rep, status = report(args.command, vars_of(args), {"error": type(exc).__name__, "message": str(exc)}), 2
    except (InternalInconsistency, Unclassifiable, GrowthViolation, EquivalenceViolation) as exc:
        rep, status = report(args.command, vars_of(args), {"error": type(exc).__name__, "message": str(exc)}), 1
    except ValueError as exc:
        rep, status = report(args.command, vars_of(args), {"error": type(exc).__name__, "message": str(exc)}), 2
    print(render_table(rep) if args.format == "table" else dumps(rep))
    return status


if __name__ == "__main__":
    sys.exit(main())
