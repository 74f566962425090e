"""``fusionlab`` command line: verify, invariants, construct, coset-enum.

Exit codes: 0 success, 1 refutation or internal failure, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from .catalog.builtin import builtin_catalog
from .catalog.families import construct, parse_spec
from .catalog.io import CatalogError, OrderMismatch, dump_catalog, entry_from_group, load_catalog
from .catalog.presentation import PresentationError, parse_presentation
from .catalog.todd_coxeter import DEFAULT_MAX_COSETS, CosetLimitExceeded, todd_coxeter
from .errors import FusionLabError
from .invariants import class_counts, commuting_degree, invariant_record, lescot_classify
from .numtheory import format_prime_set, parse_prime_set, pi_part
from .verify.runner import collect_entries, run_suite
from .verify.verdict import SuiteConfig, emit_report, expand_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _primes(text: str) -> list[int]:
    try:
        return sorted(parse_prime_set(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _pi_sets(text: str) -> list[tuple[int, ...]]:
    try:
        return [tuple(sorted(parse_prime_set(part))) for part in text.split(";") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fusionlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run theorem and lemma suites over catalogs")
    v.add_argument("--suite", action="append", default=None,
                   help="A..F, a lemma suite id, 'lemmas' or 'all' (repeatable; default all)")
    v.add_argument("--catalog", action="append", default=[], metavar="PATH", nargs="+")
    v.add_argument("--builtin", action="store_true", help="include the built-in catalog")
    v.add_argument("--max-order", type=int, default=None)
    v.add_argument("--primes", type=_primes, default=None, help="e.g. 2,3,5")
    v.add_argument("--pi", type=_pi_sets, default=None, help="prime sets for C and E, e.g. '2,3;3,5'")
    v.add_argument("--format", choices=["csv", "json"], default="csv")
    v.add_argument("--out", default=None, help="report path (default: stdout)")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--timeout", type=float, default=30.0, help="per-group seconds (0 disables)")

    i = sub.add_parser("invariants", help="class-counting invariants of one group")
    src = i.add_mutually_exclusive_group(required=True)
    src.add_argument("--spec", help="family spec such as A5, 'psl2:11' or 'S3 x C2'")
    src.add_argument("--file", help="catalog file holding one group")
    i.add_argument("--pi", type=_pi_sets, default=None)
    i.add_argument("--json", action="store_true", help="machine-readable output")

    c = sub.add_parser("construct", help="build groups and optionally dump them as a catalog")
    c.add_argument("--spec", action="append", default=[])
    c.add_argument("--builtin", action="store_true", help="all built-in groups")
    c.add_argument("--max-order", type=int, default=None)
    c.add_argument("--dump", default=None, metavar="PATH")

    e = sub.add_parser("coset-enum", help="Todd-Coxeter enumeration of a presentation file")
    e.add_argument("--presentation", required=True, metavar="PATH")
    e.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)
    e.add_argument("--table", action="store_true", help="print the coset table")
    return parser


def cmd_verify(args) -> int:
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    catalogs = [p for group in args.catalog for p in group]
    try:
        suites = expand_suites(args.suite or ["all"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    config = SuiteConfig(suites=suites, catalogs=catalogs, builtin=args.builtin or not catalogs,
                         max_order=args.max_order, primes=args.primes, pi_sets=args.pi,
                         fmt=args.format, out=args.out, jobs=args.jobs, seed=args.seed, timeout=args.timeout)
    entries = collect_entries(config)
    verdicts = run_suite(config, entries)
    text = emit_report(verdicts, config.fmt, config.out)
    if config.out is None:
        sys.stdout.write(text)
    counts = Counter(v.status for v in verdicts)
    summary = ", ".join(f"{k}={counts[k]}" for k in sorted(counts)) or "no verdicts"
    print(f"{len(entries)} groups, {len(verdicts)} verdicts: {summary}", file=sys.stderr)
    return EXIT_FAIL if any(v.failed for v in verdicts) else EXIT_OK


def _load_one(args):
    if args.spec:
        spec = parse_spec(args.spec)
        return spec.name, construct(spec)
    entries = load_catalog(args.file)
    if len(entries) != 1:
        raise UsageError(f"{args.file} holds {len(entries)} groups; expected exactly one")
    return entries[0].name, entries[0].group


def cmd_invariants(args) -> int:
    name, G = _load_one(args)
    rec = invariant_record(G, name)
    kind = lescot_classify(G)
    pis = []
    for pi in args.pi or []:
        _, kpi = class_counts(G, pi)
        pis.append({"pi": format_prime_set(pi), "k_pi": kpi, "pi_part": pi_part(G.order, pi),
                    "d_pi": str(commuting_degree(G, pi))})
    if args.json:
        out = {
            "group": name, "order": rec.order, "k": rec.k, "d": str(rec.d),
            "classification": {"type": kind.tag, "m": kind.m, "factors": list(kind.factor_orders)},
            "primes": [{"p": d.p, "sylow_order": d.p_part, "k_p": d.k_p, "d_p": str(d.d_p),
                        "k_sylow": d.k_sylow, "p_nilpotent": d.p_nilpotent, "sylow_abelian": d.sylow_abelian}
                       for d in rec.per_prime.values()],
            "pi_sets": pis,
        }
        print(json.dumps(out, indent=1))
        return EXIT_OK
    print(f"{name}: order {rec.order}, degree {G.degree}, k = {rec.k}, d = {rec.d}, type {kind}")
    for d in rec.per_prime.values():
        print(f"  p={d.p}: |P| = {d.p_part}, k_p = {d.k_p}, d_p = {d.d_p}, k(P) = {d.k_sylow}, "
              f"p-nilpotent = {d.p_nilpotent}, Sylow abelian = {d.sylow_abelian}")
    for row in pis:
        print(f"  pi={row['pi']}: |G|_pi = {row['pi_part']}, k_pi = {row['k_pi']}, d_pi = {row['d_pi']}")
    return EXIT_OK


def cmd_construct(args) -> int:
    if not args.spec and not args.builtin:
        raise UsageError("construct needs --spec or --builtin")
    entries = []
    if args.builtin:
        entries += [e for e in builtin_catalog(args.max_order)]
    for text in args.spec:
        spec = parse_spec(text)
        entries.append(entry_from_group(spec.name, construct(spec), spec.expected_order))
    for e in entries:
        print(f"{e.name}: degree {e.degree}, order {e.group.order}, {len(e.generators)} generators")
    if args.dump:
        dump_catalog(entries, args.dump)
    return EXIT_OK


def cmd_coset_enum(args) -> int:
    if args.max_cosets < 1:
        raise UsageError("--max-cosets must be >= 1")
    with open(args.presentation, encoding="utf-8") as fh:
        pres = parse_presentation(fh.read())
    try:
        result = todd_coxeter(pres, args.max_cosets)
    except CosetLimitExceeded as exc:
        print(f"inconclusive: {exc}")
        return EXIT_FAIL
    print(f"order {result.order} ({len(pres.generators)} generators, {len(pres.relators)} relators)")
    print(f"regular representation: degree {result.group.degree}, order {result.group.order}")
    if args.table:
        names = [n for g in pres.generators for n in (g, g + "^-1")]
        print("coset " + " ".join(names))
        for i, row in enumerate(result.table.rows, start=1):
            print(f"{i:>5} " + " ".join(str(x) for x in row))
    return EXIT_OK


COMMANDS = {"verify": cmd_verify, "invariants": cmd_invariants, "construct": cmd_construct,
            "coset-enum": cmd_coset_enum}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except OrderMismatch as exc:
        print(f"fusionlab: failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, CatalogError, PresentationError, OSError, ValueError) as exc:
        print(f"fusionlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FusionLabError as exc:
        print(f"fusionlab: failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
