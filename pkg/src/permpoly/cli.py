"""Command-line entry point.

One executable, eight subcommands::

    permpoly verify-theorem --p 7
    permpoly count-perms --p 5
    permpoly word --p 5 --lemma
    permpoly rank --p 7 --perm "(0 1)(2 3)" --max-n 4
    permpoly measures --p 17 --perm "(0 1)(2 3)"
    permpoly check-linear-theorem --p 13 --alpha 2
    permpoly fib-cycle --p 11 --alpha 1
    permpoly tree-exp --p 547 --depth 4 --samples 500 --seed 7

Most subcommands emit a versioned JSON envelope ``{"schema": 1, "meta":
..., "payload": ...}``; ``tree-exp`` emits CSV rows; ``word`` prints the
bare cycle text.  Identical argv (and seed) reproduce byte-identical
output once ``--no-timestamp`` suppresses the one volatile field.

Exit codes: 0 success, 1 domain error (bad prime, budget exceeded, ...),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .carlitz import (DEFAULT_ROW_BUDGET, carlitz_rank,
                      double_transposition_word, weak_carlitz_rank)
from .ffield import as_modulus
from .fibonacci import iterate_check
from .grouptools import coset_count, count_distinct_power_perms, verify_generation
from .moebius import check_alpha_linear_uniqueness, measures
from .perm import parse_cycles
from .treelab import (CSV_HEADER, DEFAULT_LEAF_BUDGET, PERM_TYPES, csv_row,
                      exhaustive_bit_pair, proportion_test, sample_path_bits,
                      tree_records)

_CONVENTIONS = {
    "cycles": "disjoint;each-min-first;sorted-by-min;fixed-points-omitted",
    "coefficients": "lead,s0,...,sn;shifts-innermost-first",
}


class _UsageError(Exception):
    """Flag combinations argparse alone cannot reject."""


def _timestamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _envelope(args, payload: dict, seed: int | None = None) -> str:
    meta = {
        "version": __version__,
        "subcommand": args.subcommand,
        "prime": args.p,
        "seed": seed,
        "conventions": _CONVENTIONS,
    }
    if not args.no_timestamp:
        meta["timestamp"] = _timestamp()
    doc = {"schema": 1, "meta": meta, "payload": payload}
    return json.dumps(doc, indent=2) + "\n"


def _cmd_verify_theorem(args) -> str:
    report = verify_generation(args.p, adjoin_negation=args.adjoin_negation)
    payload = {
        "prime": report.prime,
        "verdict": report.verdict,
        "order": report.order,
        "witness_odd": None if report.witness_odd is None
        else str(report.witness_odd),
        "adjoin_negation": report.adjoin_negation,
    }
    return _envelope(args, payload)


def _cmd_count_perms(args) -> str:
    q = as_modulus(args.p).p
    payload = {
        "prime": q,
        "count": count_distinct_power_perms(q),
        "coset_count": coset_count(q),
    }
    return _envelope(args, payload)


def _cmd_word(args) -> str:
    word = double_transposition_word(args.p)
    return str(word.evaluate()) + "\n"


def _cmd_rank(args) -> str:
    q = as_modulus(args.p).p
    perm = parse_cycles(args.perm, q)
    search = weak_carlitz_rank if args.weak else carlitz_rank
    result = search(perm, max_rank=args.max_n, row_budget=args.budget)
    payload = {
        "rank": "exceeds bound" if result.rank is None else result.rank,
        "certified_exact": result.certified_exact,
        "witness_coefficients": None if result.witness is None
        else list(result.witness.coefficients()),
        "searched_to": result.searched_to,
        "weak": args.weak,
    }
    return _envelope(args, payload)


def _cmd_measures(args) -> str:
    q = as_modulus(args.p).p
    report = measures(parse_cycles(args.perm, q))
    payload = {
        "prime": report.prime,
        "linearity": report.linearity,
        "best_slope": report.best_slope,
        "degree": report.degree,
        "weight": report.weight,
        "rank_lower_bounds": list(report.rank_lower_bounds),
    }
    return _envelope(args, payload)


def _cmd_check_linear_theorem(args) -> str:
    check = check_alpha_linear_uniqueness(args.p, args.alpha,
                                          n_parts=args.threads)
    payload = {
        "prime": check.prime,
        "alpha": check.alpha,
        "holds": check.holds,
        "counterexample": None if check.counterexample is None
        else list(check.counterexample),
        "forms_checked": check.forms_checked,
        "flagged_rows": check.flagged_rows,
    }
    return _envelope(args, payload)


def _cmd_fib_cycle(args) -> str:
    report = iterate_check(args.alpha, args.p, bound=args.bound)
    payload = {
        "prime": report.prime,
        "alpha": report.alpha,
        "ramified": report.ramified,
        "n_zero": report.n_zero,
        "divides_p2_minus_1": report.divides_p2_minus_1,
        "hypothesis_unmet": report.hypothesis_unmet,
        "consecutive_equal": report.consecutive_equal,
        "cycle": None if report.cycle is None else report.cycle.text,
        "cycle_matches": report.cycle_matches,
    }
    return _envelope(args, payload)


def _cmd_tree_exp(args) -> str:
    q = as_modulus(args.p).p
    if args.bits and args.type is None:
        raise _UsageError("--bits needs a single --type to know which "
                          "bit stream to write")
    if args.exhaustive:
        mode, seed = "exhaustive", None
        first, second = exhaustive_bit_pair(
            q, args.depth, budget=args.budget,
            n_parts=args.threads, use_threads=args.threads > 1)
    else:
        if args.seed is None:
            raise _UsageError("--samples requires --seed")
        mode, seed = "sampled", args.seed
        first, second = sample_path_bits(q, args.depth, args.samples,
                                         args.seed)
    records = tree_records(q, args.depth, mode, seed, first, second)
    kinds = [args.type] if args.type else list(PERM_TYPES)
    lines = [f"# permpoly={__version__} subcommand=tree-exp"]
    if not args.no_timestamp:
        lines[0] += f" timestamp={_timestamp()}"
    lines.append(CSV_HEADER)
    for kind in kinds:
        rec = records[kind]
        lines.append(csv_row(rec, proportion_test(
            rec.n_success, rec.n_observations, exact=args.exact)))
    if args.bits:
        stream = {"first": first, "second": second,
                  "both": first & second}[args.type]
        Path(args.bits).write_text(
            "".join(str(int(b)) for b in stream) + "\n")
    return "\n".join(lines) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--no-timestamp", action="store_true",
                        help="omit the timestamp field for byte-identical "
                             "reruns")

    parser = argparse.ArgumentParser(
        prog="permpoly",
        description="Permutation experiments over prime fields: group "
                    "generation, Carlitz-style rank search, nonlinearity "
                    "measures, Fibonacci iterate cycles, and tree "
                    "statistics.")
    parser.add_argument("--version", action="version",
                        version=f"permpoly {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True,
                                metavar="SUBCOMMAND")

    def add(name, handler, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.add_argument("--p", type=int, required=True, metavar="PRIME",
                        help="odd prime modulus")
        sp.set_defaults(handler=handler)
        return sp

    sp = add("verify-theorem", _cmd_verify_theorem,
             "order and symmetric/alternating verdict for the group "
             "generated by x+1 and x**(p-2)")
    sp.add_argument("--adjoin-negation", action="store_true",
                    help="also adjoin x -> -x as a generator")

    add("count-perms", _cmd_count_perms,
        "count distinct power-plus-shift permutations and their "
        "shift-normalized classes")

    sp = add("word", _cmd_word,
             "print the cycle text of a distinguished shift/invert word")
    sp.add_argument("--lemma", action="store_true", required=True,
                    help="the 12-token word whose value is (0 1)(2 3)")

    sp = add("rank", _cmd_rank,
             "least number of inversion layers representing a permutation")
    sp.add_argument("--perm", required=True, metavar="CYCLES",
                    help='cycle notation, e.g. "(0 1)(2 3)"')
    sp.add_argument("--weak", action="store_true",
                    help="restrict the innermost linear coefficient to 1")
    sp.add_argument("--max-n", type=int, default=6, metavar="N",
                    help="largest layer count to search (default 6)")
    sp.add_argument("--budget", type=int, default=DEFAULT_ROW_BUDGET,
                    help="table-row limit for the search")

    sp = add("measures", _cmd_measures,
             "linearity, degree, weight, and rank lower bounds of a "
             "permutation")
    sp.add_argument("--perm", required=True, metavar="CYCLES",
                    help='cycle notation, e.g. "(0 1)(2 3)"')

    sp = add("check-linear-theorem", _cmd_check_linear_theorem,
             "verify that forms within four inversion layers that are "
             "a-linear on p-4 points equal x -> a*x off their poles")
    sp.add_argument("--alpha", type=int, required=True,
                    help="nonzero leading coefficient a")
    sp.add_argument("--threads", type=int, default=1, metavar="N",
                    help="partition count (result is independent of it)")

    sp = add("fib-cycle", _cmd_fib_cycle,
             "Fibonacci-style zero index and the cycle structure of the "
             "matching inversion iterate")
    sp.add_argument("--alpha", type=int, required=True,
                    help="nonzero recurrence coefficient")
    sp.add_argument("--bound", type=int, default=None,
                    help="scan limit for the first zero index "
                         "(default p**2 - 1)")

    sp = add("tree-exp", _cmd_tree_exp,
             "orbit statistics over shift/invert trees, as CSV")
    sp.add_argument("--depth", type=int, required=True,
                    help="tree depth d; a path has d shift indices")
    mode = sp.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true",
                      help="enumerate all (p-1)**depth paths")
    mode.add_argument("--samples", type=int, metavar="N",
                      help="draw N seeded random paths instead")
    sp.add_argument("--seed", type=int, default=None,
                    help="RNG seed (required with --samples)")
    sp.add_argument("--type", choices=PERM_TYPES, default=None,
                    help="emit one row instead of all three")
    sp.add_argument("--bits", metavar="FILE", default=None,
                    help="also write the raw 0/1 stream of --type to FILE")
    sp.add_argument("--threads", type=int, default=1, metavar="N",
                    help="parallel parts for exhaustive runs (output is "
                         "independent of N)")
    sp.add_argument("--budget", type=int, default=DEFAULT_LEAF_BUDGET,
                    help="leaf-count limit for exhaustive runs")
    sp.add_argument("--exact", action="store_true",
                    help="exact binomial test instead of the z-test")

    return parser


def run(argv=None) -> int:
    """Parse argv, dispatch, and return the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles usage errors and --help
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        output = args.handler(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(output)
    return 0


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
