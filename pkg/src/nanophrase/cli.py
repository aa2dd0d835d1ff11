"""Command-line front end.

Exit codes: 0 success, 1 domain error (or a negative verdict), 2 usage error
or unreadable input.  Stdout is byte-deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import importlib
import json
import sys
import warnings
from typing import Sequence

from . import homotopy, moves
from .core import NanoPhrase, PhraseError, canonicalize, format_phrase, parse_phrase, validate_gauss
from .laurent import render

# the package namespace re-exports the function ``jones``, which shadows the module
J = importlib.import_module(".jones", __package__)

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2

_DEFAULT_EQUIV_MOVES = "H1,H1inv,H2,H2inv,H3"
_WALK_DEFAULTS = {
    "jones": "H1,H1inv,H2,H2inv,H3,Shift,Permute",
    "ul": "H1,H1inv,H2,H2inv,H3",
    "f1": "H1,H1inv,H2,H2inv,H3,Shift,Permute",
}


class UsageError(Exception):
    pass


class Output:
    """Collects stdout lines and the structured report."""

    def __init__(self):
        self.lines: list[str] = []
        self.report: dict = {}

    def line(self, text: str = "") -> None:
        self.lines.append(text)

    def meta(self, key: str, value) -> None:
        self.lines.append(f"# {key}: {value}")
        self.report[key.replace(" ", "_")] = value


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _load(path: str) -> NanoPhrase:
    return parse_phrase(_read(path))


def _symbols(text: str | None) -> list[str] | None:
    if text is None:
        return None
    return [s for s in text.split(",") if s]


def _kinds(text: str) -> frozenset[str]:
    kinds = frozenset(_symbols(text) or [])
    unknown = sorted(kinds - set(moves.KINDS))
    if unknown:
        raise UsageError(f"unknown move kinds: {', '.join(unknown)}")
    return kinds


def _describe(P: NanoPhrase) -> str:
    n, k = P.n_letters, P.k
    return f"{n} letter{'s' if n != 1 else ''}, {k} component{'s' if k != 1 else ''}"


# -- subcommands ----------------------------------------------------------------

def cmd_validate(args, out: Output) -> int:
    text = _read(args.file)
    try:
        P = parse_phrase(text)
    except PhraseError as exc:
        out.line(f"INVALID: {exc}")
        out.report["error"] = str(exc)
        counts = getattr(exc, "counts", None)
        if counts:
            out.report["counts"] = dict(counts)
        return EXIT_DOMAIN
    report = validate_gauss(P)
    if report:
        out.line("INVALID: " + ", ".join(f"{a}:{c}" for a, c in report.items()))
        out.report["counts"] = report
        return EXIT_DOMAIN
    out.line(f"OK: {_describe(P)}")
    out.report.update(letters=P.n_letters, components=P.k)
    return EXIT_OK


def _jones_route(P: NanoPhrase, route: str, reps, out: Output):
    if route == "direct":
        Q = J.as_pseudolink(P)
        out.meta("route", "direct")
        return Q, J.jones
    if route.startswith("UL="):
        L = _symbols(route[3:])
        Q = homotopy.u_l_project(P, L)
        out.meta("route", "UL")
        out.meta("L", ",".join(L))
        return Q, J.jones
    if route in ("F1", "Fstar"):
        diamond = "1" if route == "F1" else "star"
        dec = homotopy.decompose_orbits(P.alphabet, reps)
        Q = homotopy.functor_apply(P, diamond, reps)
        if route == "Fstar":
            Q = J.project_fact_p(Q)
        out.meta("route", route)
        out.meta("representatives", ",".join(dec.representatives))
        return Q, J.jones
    raise UsageError(f"unknown route {route!r}")


def cmd_jones(args, out: Output) -> int:
    P = _load(args.file)
    meta = Output()
    Q, fn = _jones_route(P, args.route, _symbols(args.representatives), meta)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        poly = fn(Q)
    out.line(render(poly))
    out.report["polynomial"] = render(poly)
    out.lines += meta.lines
    out.report.update(meta.report)
    out.meta("writhe", J.writhe(Q))
    out.meta("letters", Q.n_letters)
    out.meta("components", Q.k)
    if any(issubclass(w.category, J.EmptyPhraseWarning) for w in caught):
        out.meta("warning", "length-0 phrase, J set to 1")
    return EXIT_OK


def cmd_bracket(args, out: Output) -> int:
    P = J.as_pseudolink(_load(args.file))
    poly = J.bracket_generic(P) if args.generic else J.bracket(P)
    out.line(render(poly))
    out.report["polynomial"] = render(poly)
    out.meta("generic", "yes" if args.generic else "no")
    out.meta("letters", P.n_letters)
    return EXIT_OK


def cmd_oracle_check(args, out: Output) -> int:
    P = _load(args.file)
    star = set(P.alphabet.symbols) == set(J.ALPHA_STAR.symbols)
    if star:
        lifts = [P]
        base = J.project_fact_p(P)
    else:
        base = J.as_pseudolink(P)
        lifts = [J.lift_to_star(base)] + [J.lift_to_star(base, args.seed + i) for i in range(args.lifts)]
    expected = J.bracket(base)
    mismatches = [i for i, p in enumerate(lifts) if J.turaev_bracket(p) != expected]
    out.line(("OK" if not mismatches else "MISMATCH") + f": {len(lifts) - len(mismatches)}/{len(lifts)} lifts agree")
    out.meta("state sum", render(expected))
    for i in mismatches:
        out.meta(f"lift {i}", render(J.turaev_bracket(lifts[i])))
    out.report["agree"] = not mismatches
    return EXIT_OK if not mismatches else EXIT_DOMAIN


def cmd_functor(args, out: Output) -> int:
    P = _load(args.file)
    reps = _symbols(args.representatives)
    dec = homotopy.decompose_orbits(P.alphabet, reps)
    Q = homotopy.functor_apply(P, args.target, reps)
    doc = format_phrase(Q)
    out.lines += doc.rstrip("\n").split("\n")
    out.report["document"] = doc
    out.meta("target", args.target)
    out.meta("representatives", ",".join(dec.representatives))
    return EXIT_OK


def cmd_project(args, out: Output) -> int:
    P = _load(args.file)
    L = _symbols(args.L) or []
    Q = homotopy.u_l_project(P, L)
    if args.alpha0:
        Q = homotopy.to_alpha0(Q)
    doc = format_phrase(Q)
    out.lines += doc.rstrip("\n").split("\n")
    out.report["document"] = doc
    out.meta("L", ",".join(L))
    return EXIT_OK


def cmd_equiv(args, out: Output) -> int:
    P1, P2 = _load(args.file1), _load(args.file2)
    if P1.alphabet != P2.alphabet:
        raise UsageError("the two phrases are over different alphabets")
    max_letters = args.max_letters
    if max_letters is None:
        max_letters = max(P1.n_letters, P2.n_letters) + 2
    res = moves.equiv_search(P1, P2, max_letters, args.max_depth, _kinds(args.moves))
    out.line(res.verdict)
    out.report["verdict"] = res.verdict
    out.report["certificate"] = [str(m) for m in res.certificate]
    out.lines += [str(m) for m in res.certificate]
    out.meta("nodes expanded", res.stats["nodes_expanded"])
    out.meta("max letters", max_letters)
    out.meta("max depth", args.max_depth)
    if not res.equivalent:
        hit = [k for k in ("letter_bound_hit", "depth_bound_hit") if res.stats.get(k)]
        out.meta("bounds hit", ",".join(h.removesuffix("_hit") for h in hit) or "none")
    return EXIT_OK if res.equivalent else EXIT_DOMAIN


def cmd_fuzz(args, out: Output) -> int:
    P = _load(args.file)
    check = args.check
    if check == "jones":
        P = J.as_pseudolink(P)
        name, invariant = "J", J.jones
    elif check.startswith("ul="):
        L = _symbols(check[3:])
        homotopy.sign_of(P.alphabet, P.alphabet.symbols[0], L)  # validates L early
        P = P.replace(alphabet=P.alphabet.with_triples(homotopy.make_diagonal(P.alphabet)))
        name, invariant = "J(U_L)", lambda Q: J.jones(homotopy.u_l_project(Q, L))
    elif check == "f1":
        P = P.replace(alphabet=P.alphabet.with_triples(homotopy.make_knotlike(P.alphabet)))
        name, invariant = "J(F_1)", lambda Q: J.jones_general(Q, "F1")
    else:
        raise UsageError(f"unknown check {check!r}")
    kind_key = check.split("=")[0]
    allowed = _kinds(args.allowed or _WALK_DEFAULTS[kind_key])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", J.EmptyPhraseWarning)
        before = invariant(P)
        Q, cert = moves.random_walk(P, args.moves, args.seed, allowed, args.growth_budget)
        after = invariant(Q)
    ok = before == after
    out.line(f"{'OK' if ok else 'FAIL'}: {name} {'unchanged' if ok else 'changed'} after {len(cert)} moves")
    out.report["unchanged"] = ok
    out.meta("seed", args.seed)
    out.meta("moves", ",".join(sorted(allowed)))
    out.meta("before", render(before))
    if not ok:
        out.meta("after", render(after))
        out.meta("start", str(canonicalize(P)))
        out.line("# certificate:")
        out.lines += [str(m) for m in cert]
    out.report["certificate"] = [str(m) for m in cert]
    return EXIT_OK if ok else EXIT_DOMAIN


# -- entry point ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nanophrase", description=__doc__.split("\n")[0])
    parser.add_argument("--report", metavar="PATH", help="also write a JSON report")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse a phrase document and check the Gauss condition")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("jones", help="Jones polynomial")
    p.add_argument("file")
    p.add_argument("--route", default="direct", help="direct | UL=<syms> | F1 | Fstar")
    p.add_argument("--representatives", help="orbit representatives for F routes (comma separated)")
    p.set_defaults(func=cmd_jones)

    p = sub.add_parser("bracket", help="bracket polynomial of a pseudolink")
    p.add_argument("file")
    p.add_argument("--generic", action="store_true", help="keep u and d unspecialized")
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("oracle-check", help="compare the state sum with the recursive bracket")
    p.add_argument("file")
    p.add_argument("--lifts", type=int, default=16, help="number of random lifts (default 16)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("functor", help="apply F to a phrase")
    p.add_argument("file")
    p.add_argument("--target", required=True, choices=homotopy.DIAMONDS)
    p.add_argument("--representatives", help="orbit representatives (comma separated)")
    p.set_defaults(func=cmd_functor)

    p = sub.add_parser("project", help="apply U_L to a phrase")
    p.add_argument("file")
    p.add_argument("--L", required=True, help="subset of crs(alpha/tau), comma separated")
    p.add_argument("--alpha0", action="store_true", help="emit over alpha0 instead of alpha1")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("equiv", help="bounded search for a move sequence between two phrases")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--max-letters", type=int)
    p.add_argument("--max-depth", type=int, default=8)
    p.add_argument("--moves", default=_DEFAULT_EQUIV_MOVES, help=f"default {_DEFAULT_EQUIV_MOVES}")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("fuzz", help="random walk, then recheck an invariant")
    p.add_argument("file")
    p.add_argument("--moves", type=int, default=10, help="walk length")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--check", default="jones", help="jones | ul=<syms> | f1")
    p.add_argument("--allowed", help="move kinds for the walk (comma separated)")
    p.add_argument("--growth-budget", type=int, default=2)
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output()
    try:
        code = args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PhraseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        out.report["error"] = str(exc)
        code = EXIT_DOMAIN
    if out.lines:
        sys.stdout.write("\n".join(out.lines) + "\n")
    if args.report:
        out.report["exit_code"] = code
        try:
            with open(args.report, "w", encoding="utf-8") as fh:
                json.dump(out.report, fh, indent=2, sort_keys=True)
                fh.write("\n")
        except OSError as exc:
            print(f"error: cannot write report: {exc}", file=sys.stderr)
            return EXIT_USAGE
    return code


if __name__ == "__main__":
    sys.exit(main())
