"""Command-line front door.

    hopsolver verify FILE            check a starter / factorization /
                                     seating file, report violations
    hopsolver expand FILE OUT        expand starter records to full
                                     2-factorizations
    hopsolver lift FILE OUT          turn starters or factorizations into
                                     verified seating schedules
    hopsolver search --n N --type T  look for a starter by backtracking
    hopsolver catalog --n N          dispatch table (text + CSV + PNG)
    hopsolver selftest               full pipeline over shipped fixtures

Exit status: 0 on full success, 1 when some verification or search came
up negative, 2 on usage or parse errors.  --porcelain switches the
checking commands to machine-readable "FAIL <record> <clause> <locus>"
lines only.
"""

import argparse
import os
import sys

from . import catalog as cat
from .expand import (
    ReconstructionError,
    VerificationFailed,
    expand_record,
    lift,
    to_one_factorization,
    verify_record,
)
from .format import (
    ParseError,
    file_kind,
    fixture_ns,
    format_cycle_type,
    load_starters,
    parse_factorization_file,
    parse_seating_file,
    parse_starter_file,
    serialize_factorization,
    serialize_seating,
    serialize_starter,
)
from .search import EXHAUSTED, FOUND, SearchBudget, search_starter
from .verify import (
    porcelain_lines,
    render_report,
    verify_alternating_factorization,
    verify_hop_factorization,
    verify_semi_uniform,
)


def _say(args, text: str) -> None:
    if not getattr(args, "porcelain", False):
        print(text)


def _report(args, record_id: str, violations) -> bool:
    """Print one record's verdict; True when it failed."""
    if getattr(args, "porcelain", False):
        for line in porcelain_lines(record_id, violations):
            print(line)
    else:
        print(render_report(record_id, violations))
    return bool(violations)


def _doubled(cycle_type) -> tuple[int, ...]:
    return tuple(sorted((2 * m for m in cycle_type), reverse=True))


# ------------------------------------------------------------- subcommands --

def _cmd_verify(args) -> int:
    text = _read(args.file)
    kind = file_kind(text)
    failed = total = 0
    if kind == "starter":
        for rec in parse_starter_file(text):
            total += 1
            failed += _report(args, rec.label, verify_record(rec))
    elif kind == "factorization":
        for d in parse_factorization_file(text):
            total += 1
            rid = f"n{d.n}:{format_cycle_type(d.cycle_type)}:factorization"
            failed += _report(args, rid, verify_hop_factorization(d))
    else:
        for s, cycle_type in parse_seating_file(text):
            total += 1
            rid = (f"n{s.n_couples}:{format_cycle_type(cycle_type)}"
                   ":seating")
            vio = verify_alternating_factorization(s, _doubled(cycle_type))
            vio += verify_semi_uniform(to_one_factorization(s),
                                       2 * s.n_couples, _doubled(cycle_type))
            failed += _report(args, rid, vio)
    _say(args, f"{total - failed} of {total} record(s) verified")
    return 1 if failed else 0


def _cmd_expand(args) -> int:
    text = _read(args.file)
    out, factors = [], 0
    for rec in parse_starter_file(text):
        try:
            d = expand_record(rec)
        except VerificationFailed as exc:
            _report(args, rec.label, exc.violations)
            return 1
        except ReconstructionError as exc:
            print(f"error: {rec.label}: {exc}", file=sys.stderr)
            return 1
        out.append(serialize_factorization(d))
        factors += len(d.factors)
    _write(args.out, "\n".join(out))
    _say(args, f"expanded {len(out)} record(s) to {factors} factors "
               f"-> {args.out}")
    return 0


def _cmd_lift(args) -> int:
    text = _read(args.file)
    kind = file_kind(text)
    if kind == "starter":
        ds = []
        for rec in parse_starter_file(text):
            try:
                ds.append(expand_record(rec))
            except VerificationFailed as exc:
                _report(args, rec.label, exc.violations)
                return 1
    elif kind == "factorization":
        ds = parse_factorization_file(text)
    else:
        print("error: lift input must be a starter or factorization file",
              file=sys.stderr)
        return 2
    out = []
    for d in ds:
        try:
            s = lift(d)
        except VerificationFailed as exc:
            rid = f"n{d.n}:{format_cycle_type(d.cycle_type)}:factorization"
            _report(args, rid, exc.violations)
            return 1
        except ReconstructionError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        out.append(serialize_seating(s, d.cycle_type))
    _write(args.out, "\n".join(out))
    _say(args, f"lifted {len(out)} factorization(s) -> {args.out}")
    return 0


def _parse_type(raw: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(x) for x in raw.strip("[] ").split(","))
    except ValueError:
        raise ValueError(f"cannot read cycle type {raw!r}") from None
    return tuple(sorted(parts, reverse=True))


def _cmd_search(args) -> int:
    parts = _parse_type(args.type)
    budget = SearchBudget(args.max_nodes, args.max_seconds, args.seed)
    kinds = ([args.kind] if args.kind
             else (["three"] if args.n % 2 else ["one", "two"]))
    outcome = None
    for kind in kinds:
        outcome = search_starter(args.n, parts, kind, budget)
        if outcome.status != EXHAUSTED:
            break
    stats = outcome.stats
    if outcome.status == FOUND:
        sys.stdout.write(serialize_starter(outcome.record))
        print(f"found {outcome.record.label} after {stats.nodes} nodes "
              f"in {stats.seconds:.2f}s", file=sys.stderr)
        if args.out:
            _write(args.out, serialize_starter(outcome.record))
        return 0
    reason = ("search space exhausted, no starter"
              if outcome.status == EXHAUSTED
              else f"budget exceeded ({stats.nodes} nodes, "
                   f"{stats.seconds:.1f}s)")
    print(f"no starter for n={args.n} type={format_cycle_type(parts)} "
          f"kind={'/'.join(kinds)}: {reason}", file=sys.stderr)
    return 1


def _cmd_catalog(args) -> int:
    search_results = None
    if args.search:
        from .search import search_all
        budget = SearchBudget(args.max_nodes, args.max_seconds, args.seed)
        search_results = search_all(args.n, budget)
    rep = cat.report(args.n, search_results=search_results)
    sys.stdout.write(cat.render_text(rep))
    os.makedirs(args.out_dir, exist_ok=True)
    csv_path = os.path.join(args.out_dir, f"catalog_n{args.n}.csv")
    png_path = os.path.join(args.out_dir, f"catalog_n{args.n}.png")
    _write(csv_path, cat.render_csv(rep))
    cat.render_figure(rep, png_path)
    print(f"wrote {csv_path} and {png_path}", file=sys.stderr)
    return 1 if any(r.fixture == "failed" for r in rep.rows) else 0


def _cmd_selftest(args) -> int:
    ns = args.n or [10, 11, 12]
    unavailable = [n for n in ns if n not in fixture_ns()]
    if unavailable:
        print(f"error: no shipped fixtures for n in {unavailable}",
              file=sys.stderr)
        return 2
    failed = total = 0
    for n in ns:
        records = load_starters(n)
        for rec in records:
            total += 1
            vio = verify_record(rec)
            if vio:
                failed += _report(args, rec.label, vio)
                continue
            d = expand_record(rec)
            vio = verify_hop_factorization(d)
            if vio:
                failed += _report(args, rec.label + ":expanded", vio)
                continue
            try:
                s = lift(d)
            except ReconstructionError as exc:
                print(f"error: {rec.label}: {exc}", file=sys.stderr)
                failed += 1
                continue
            vio = verify_alternating_factorization(s, _doubled(d.cycle_type))
            vio += verify_semi_uniform(to_one_factorization(s),
                                       2 * s.n_couples,
                                       _doubled(d.cycle_type))
            if vio:
                failed += _report(args, rec.label + ":seating", vio)
        _say(args, f"n={n}: {len(records)} records parsed, verified, "
                   f"expanded, lifted, seatings verified")
    if failed:
        _say(args, f"selftest FAILED: {failed} of {total} records")
        return 1
    _say(args, f"selftest ok ({total} records)")
    return 0


# ------------------------------------------------------------------ wiring --

def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _add_budget_flags(p: argparse.ArgumentParser) -> None:
    d = SearchBudget()
    p.add_argument("--max-nodes", type=int, default=d.max_nodes,
                   help=f"search node budget (default {d.max_nodes})")
    p.add_argument("--max-seconds", type=float, default=d.max_seconds,
                   help=f"search time budget (default {d.max_seconds:g}s)")
    p.add_argument("--seed", type=int, default=None,
                   help="shuffle branching order with this seed")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopsolver",
        description="verify, expand, search and catalog starter 2-factors "
                    "for round-table seating schedules")
    sub = parser.add_subparsers(dest="command", required=True,
                                metavar="command")

    p = sub.add_parser("verify", help="check records in a file")
    p.add_argument("file", help="starter, factorization or seating file")
    p.add_argument("--porcelain", action="store_true",
                   help="machine-readable FAIL lines only")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("expand", help="expand starters to factorizations")
    p.add_argument("file", help="starter file")
    p.add_argument("out", help="factorization file to write")
    p.add_argument("--porcelain", action="store_true")
    p.set_defaults(fn=_cmd_expand)

    p = sub.add_parser("lift", help="build seating schedules")
    p.add_argument("file", help="starter or factorization file")
    p.add_argument("out", help="seating file to write")
    p.add_argument("--porcelain", action="store_true")
    p.set_defaults(fn=_cmd_lift)

    p = sub.add_parser("search", help="backtracking starter search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--type", required=True, metavar="M1,M2,...",
                   help="cycle type, e.g. 8,2")
    p.add_argument("--kind", choices=("one", "two", "three"),
                   help="starter kind (default: suited to the parity of n)")
    p.add_argument("--out", help="also write the found starter here")
    _add_budget_flags(p)
    p.set_defaults(fn=_cmd_search)

    p = sub.add_parser("catalog", help="dispatch table for one n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out-dir", default=".",
                   help="directory for the CSV and PNG (default: .)")
    p.add_argument("--search", action="store_true",
                   help="also search every needs-starter row")
    _add_budget_flags(p)
    p.set_defaults(fn=_cmd_catalog)

    p = sub.add_parser("selftest",
                       help="verify the shipped fixtures end to end")
    p.add_argument("--n", type=int, action="append",
                   help="fixture set(s) to run (default: 10 11 12)")
    p.add_argument("--porcelain", action="store_true")
    p.set_defaults(fn=_cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
