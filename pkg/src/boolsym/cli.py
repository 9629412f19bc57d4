"""Command-line interface.

Every subcommand is a thin shell over the library modules; no number is
computed here that the library cannot produce on its own.  Exit codes:
0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import corpus, permclass, results as results_store, search as search_mod
from .boolfn import (
    absolute_indicator,
    analyze,
    autocorrelation,
    bent_inner_product,
    decode_hex,
    direct_sum,
    encode_hex,
    nonlinearity,
    walsh_transform,
)
from .orbits import burnside_count, count_k_dsbf, count_k_rsbf, orbit_partition, parse_group

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _read_hex(args) -> str:
    if getattr(args, "file", None):
        return Path(args.file).read_text(encoding="utf-8")
    if args.hex is None:
        raise UsageError("provide a hex truth table or --file")
    return args.hex


def _infer_n(digits: str, given: int | None) -> int:
    stripped = "".join(digits.split())
    total_bits = 4 * len(stripped)
    n = total_bits.bit_length() - 1
    if (1 << n) != total_bits:
        raise UsageError(f"{len(stripped)} hex digits is not a power-of-two table")
    if given is not None and given != n:
        raise UsageError(f"--n {given} does not match {len(stripped)} hex digits")
    return n


def _print_report(report) -> None:
    balanced = "yes" if report.balanced else "no"
    print(
        f"n={report.n} nl={report.nonlinearity} "
        f"\N{GREEK CAPITAL LETTER DELTA}={report.absolute_indicator} "
        f"deg={report.degree} weight={report.weight} "
        f"balanced={balanced} walsh_zeros={report.walsh_zero_count}"
    )


def cmd_analyze(args) -> int:
    hex_string = _read_hex(args)
    n = _infer_n(hex_string, args.n)
    tt = decode_hex(hex_string, n)
    _print_report(analyze(tt))
    if args.spectra:
        ws = walsh_transform(tt)
        ac = autocorrelation(tt)
        print("walsh:", " ".join(str(v) for v in ws.values))
        print("autocorrelation:", " ".join(str(v) for v in ac.values))
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    failures = 0
    for entry, ok, complaints, report in corpus.verify_all():
        status = "ok" if ok else "FAIL"
        print(
            f"{entry.id}: nl={report.nonlinearity} "
            f"\N{GREEK CAPITAL LETTER DELTA}={report.absolute_indicator} "
            f"deg={report.degree} invariance={','.join(entry.invariant_under)} "
            f"[{status}]"
        )
        for complaint in complaints:
            print(f"  {complaint}")
        failures += not ok
    # concatenation bound: every 9-variable entry must lift to 996 and 4040
    for entry in corpus.ENTRIES:
        if entry.n != 9:
            continue
        tt = entry.table()
        for bent_vars, want in ((2, 996), (4, 4040)):
            lifted = direct_sum(tt, bent_inner_product(bent_vars))
            got = nonlinearity(walsh_transform(lifted))
            ok = got == want
            failures += not ok
            print(
                f"{entry.id} + bent{bent_vars}: nl={got} "
                f"[{'ok' if ok else f'FAIL (want {want})'}]"
            )
    return EXIT_VERIFY if failures else EXIT_OK


def cmd_counts(args) -> int:
    n = args.n
    ks = args.k if args.k else [k for k in range(2, n) if n % k == 0]
    for k in ks:
        if n % k:
            raise UsageError(f"k={k} does not divide n={n}")
    rows = [(1, "g_n", count_k_rsbf(n, 1)), (1, "d_n", count_k_dsbf(n, 1))]
    rows += [(k, f"g_{{{n},{k}}}", count_k_rsbf(n, k)) for k in ks]
    rows += [(k, f"d_{{{n},{k}}}", count_k_dsbf(n, k)) for k in ks]
    mismatches = 0
    print(f"orbit counts for n={n} (closed form vs enumeration):")
    for k, label, closed in sorted(rows):
        dihedral = label.startswith("d")
        group = parse_group(f"k-dsbf:{k}" if dihedral else f"k-rsbf:{k}", n)
        enumerated = len(orbit_partition(group))
        by_lemma = burnside_count(group)
        ok = closed == enumerated == by_lemma
        mismatches += not ok
        print(
            f"  {label:<10} closed={closed:<6} enumerated={enumerated:<6} "
            f"burnside={by_lemma:<6} [{'ok' if ok else 'MISMATCH'}]"
        )
    return EXIT_VERIFY if mismatches else EXIT_OK


def cmd_classify(args) -> int:
    records = permclass.classify(args.n, audit=args.audit)
    best_nl: dict[str, int] = {}
    if args.results:
        for record in results_store.read_records(args.results):
            if record.n != args.n:
                continue
            try:
                group = parse_group(record.group, args.n)
            except ValueError:
                continue
            if len(group.generators) != 1:
                continue
            key = str(group.generators[0])
            best_nl[key] = max(best_nl.get(key, 0), record.nl)
    print(permclass.class_report(records, best_nl if args.results else None))
    total = sum(r.class_size for r in records)
    print(f"{len(records)} classes, {total} permutations")
    return EXIT_OK


def _load_search_config(args) -> search_mod.SearchConfig:
    options = {
        "n": args.n,
        "group": args.group,
        "runs": args.runs,
        "seed": args.seed,
        "iterations": args.iterations,
        "cost": args.cost,
        "target-nl": args.target_nl,
        "deviation-window": args.deviation_window,
        "initial-hex": args.initial_hex,
        "initial-flips": args.initial_flips,
        "trace": args.trace,
    }
    if args.config:
        for lineno, raw in enumerate(
            Path(args.config).read_text(encoding="utf-8").splitlines(), 1
        ):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"{args.config}:{lineno}: expected key=value")
            key, _, value = line.partition("=")
            key = key.strip()
            if key not in options:
                raise UsageError(f"{args.config}:{lineno}: unknown key {key!r}")
            options[key] = value.strip()
    if options["n"] is None or options["group"] is None:
        raise UsageError("search needs --n and --group (or a config file)")

    n = int(options["n"])
    group = parse_group(str(options["group"]), n)
    initial = None
    if options["initial-hex"]:
        initial = decode_hex(str(options["initial-hex"]), n)
    target = options["target-nl"]
    trace = options["trace"]
    if isinstance(trace, str):
        trace = trace.lower() in ("1", "true", "yes", "on")
    return search_mod.SearchConfig(
        group=group,
        runs=int(options["runs"]),
        max_iterations=int(options["iterations"]),
        rng_seed=int(options["seed"]),
        cost_id=str(options["cost"]),
        deviation_window=int(options["deviation-window"]),
        initial_function=initial,
        initial_flips=int(options["initial-flips"]),
        target_nl=None if target in (None, "") else int(target),
        record_trace=trace,
    )


def cmd_search(args) -> int:
    cfg = _load_search_config(args)
    workers = args.workers if args.workers else min(cfg.runs, os.cpu_count() or 1)
    outcomes = search_mod.run(cfg, workers=workers)
    records = [results_store.record_from_result(r, cfg) for r in outcomes]
    results_store.append_records(args.out, records)
    total_time = sum(r.elapsed_s for r in outcomes)
    print(
        f"{cfg.runs} runs x {cfg.max_iterations} iterations on "
        f"{records[0].group} (n={cfg.group.n}), seed {cfg.rng_seed}, "
        f"{total_time:.1f}s search time"
    )
    for nl, count in search_mod.summarize(outcomes).items():
        print(f"  nl {nl}: {count} run(s)")
    best = outcomes[0]
    print(f"best: nl={best.report.nonlinearity} run={best.run_index} "
          f"iteration={best.iteration_found}")
    print(f"appended {len(records)} record(s) to {args.out}")
    if args.trace:
        for result in outcomes:
            if result.trace:
                tail = ",".join(str(v) for v in result.trace[-10:])
                print(f"  run {result.run_index} trace tail: {tail}")
    return EXIT_OK


def cmd_concat(args) -> int:
    hex_string = _read_hex(args)
    n = _infer_n(hex_string, args.n)
    if n != 9:
        raise UsageError(f"concatenation expects a 9-variable table, got n={n}")
    tt = decode_hex(hex_string, n)
    lifted = direct_sum(tt, bent_inner_product(args.bent))
    print(encode_hex(lifted))
    _print_report(analyze(lifted))
    return EXIT_OK


def cmd_revalidate(args) -> int:
    try:
        problems = results_store.revalidate(args.store)
    except FileNotFoundError:
        raise UsageError(f"no such store: {args.store}")
    count = len(results_store.read_records(args.store))
    if problems:
        for line, record, what in problems:
            print(f"record {line} (run {record.run}): {what}")
        print(f"{len(problems)} of {count} records drifted")
        return EXIT_VERIFY
    print(f"all {count} records validate")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boolsym",
        description="Boolean function spectra, symmetry classes and nonlinearity search",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="report nl, autocorrelation, degree, weight")
    p.add_argument("hex", nargs="?", help="hex truth table (or use --file)")
    p.add_argument("--file", help="read the hex table from a file")
    p.add_argument("--n", type=int, help="variable count (inferred when omitted)")
    p.add_argument("--spectra", action="store_true", help="print full spectra")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify-paper", help="check the bundled published corpus")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("counts", help="rotation/dihedral orbit counts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, action="append", help="step(s) k | n")
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("classify", help="permutation classes up to linear equivalence")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--audit", action="store_true",
                   help="fingerprint all n! permutations (slow)")
    p.add_argument("--results", help="merge best nl per class from a result store")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("search", help="run the nonlinearity search")
    p.add_argument("--n", type=int)
    p.add_argument("--group", help='e.g. "k-dsbf:3", "rsbf", "perm:(2,0,1,...)+tau"')
    p.add_argument("--runs", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iterations", type=int, default=20_000)
    p.add_argument("--cost", default="flatness", choices=sorted(search_mod.COSTS))
    p.add_argument("--target-nl", type=int, default=None)
    p.add_argument("--deviation-window", type=int, default=0)
    p.add_argument("--initial-hex", help="seed function (must be invariant)")
    p.add_argument("--initial-flips", type=int, default=0,
                   help="random orbit flips applied to the seed per run")
    p.add_argument("--trace", action="store_true", help="keep per-iteration best nl")
    p.add_argument("--workers", type=int, default=0, help="0 = one per core")
    p.add_argument("--out", default="boolsym-results.jsonl")
    p.add_argument("--config",
                   help="key=value file mirroring the flags (entries override them)")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("concat", help="direct sum with a canonical bent function")
    p.add_argument("hex", nargs="?", help="9-variable hex truth table")
    p.add_argument("--file", help="read the hex table from a file")
    p.add_argument("--n", type=int)
    p.add_argument("--bent", type=int, default=2, choices=(2, 4))
    p.set_defaults(func=cmd_concat)

    p = sub.add_parser("revalidate", help="recheck every stored search record")
    p.add_argument("store")
    p.set_defaults(func=cmd_revalidate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
