"""Command-line front end: ``dehnroots <subcommand> [--flags]``.

Exit codes: 0 success, 1 invalid tuple or failed theorem check, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import warnings

from . import reports
from .bounds import verify_theorems
from .core import canonical_form, genus, parse_data_set, validate
from .enumeration import enumerate_data_sets, enumerate_for_genus
from .pairing import (enumerate_root_classes, max_degree_for_genus, max_root_class,
                      max_root_degree, witness_pair)

FORMATS = ("text", "json", "csv", "md")


class UsageError(Exception):
    pass


def _default_workers() -> int:
    env = os.environ.get("DEHNROOTS_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"DEHNROOTS_WORKERS must be an integer, got {env!r}")
    return os.cpu_count() or 1


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dehnroots", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    def add(name, help_, *flags):
        sp = sub.add_parser(name, help=help_)
        for flag in flags:
            dest = {"--from": "g_from", "--to": "g_to", "--g-max": "g_max"}.get(flag)
            sp.add_argument(flag, type=int, dest=dest) if dest else sp.add_argument(flag, type=int)
        sp.add_argument("--format", choices=FORMATS, default="text")
        sp.add_argument("--workers", type=int, default=None,
                        help="parallel width (default: $DEHNROOTS_WORKERS or CPU count)")
        sp.add_argument("--output", default=None, help="write here instead of stdout")
        return sp

    v = add("validate", "check a data-set literal (argument or stdin)")
    v.add_argument("literal", nargs="?")
    gsp = add("genus", "genus of a data-set literal")
    gsp.add_argument("literal", nargs="?")
    add("enumerate", "list data sets for --n --g, or every degree for --g", "--n", "--g")
    add("pairs", "list root classes for a genus split", "--g1", "--g2")
    add("max-degree", "largest root degree for --g or --g1 --g2", "--g", "--g1", "--g2")
    add("witness", "explicit root of degree lcm(4g1, 4g2+2)", "--g1", "--g2")
    add("table1", "m(g), U(g) and their ratio", "--from", "--to")
    add("table2", "split maxima against the stable bound", "--N", "--from", "--to")
    add("classify", "root classes by degree with the printed-list cross-check", "--g1", "--g2")
    add("verify", "run the theorem checks up to --g-max", "--g-max")
    return p


def _need(args, *names):
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        raise UsageError(f"{args.cmd}: missing " + ", ".join("--" + m for m in missing))


def _read_literal(args) -> str:
    text = args.literal if args.literal is not None else sys.stdin.read()
    if not text.strip():
        raise UsageError(f"{args.cmd}: no data-set literal given")
    return text


def _split(args) -> tuple[int, int]:
    _need(args, "g1", "g2")
    if not args.g1 >= args.g2 >= 1:
        raise UsageError("need g1 >= g2 >= 1")
    return args.g1, args.g2


def _rows_out(rows, fmt) -> str:
    if fmt == "json":
        return reports.rows_to_json(rows) + "\n"
    if fmt == "csv":
        return reports.rows_to_csv(rows)
    if fmt == "md":
        return reports.rows_to_markdown(rows)
    return reports.rows_to_text(rows)


def _lines(items, fmt) -> str:
    if fmt == "json":
        return "".join(it.to_json() + "\n" for it in items)
    return "".join(f"{it}\n" for it in items)


def _run(args, out) -> int:
    fmt = args.format
    cmd = args.cmd
    if cmd == "validate":
        raw = parse_data_set(_read_literal(args))
        rep = validate(raw)
        if fmt == "json":
            out.write(json.dumps(rep.to_dict()) + "\n")
        else:
            out.write("valid\n" if rep else "invalid: " + ", ".join(rep.failures) + "\n")
        return 0 if rep else 1

    if cmd == "genus":
        raw = parse_data_set(_read_literal(args))
        rep = validate(raw)
        if not rep:
            out.write("invalid: " + ", ".join(rep.failures) + "\n")
            return 1
        g = genus(canonical_form(raw))
        out.write(json.dumps({"genus": g}) + "\n" if fmt == "json" else f"{g}\n")
        return 0

    if cmd == "enumerate":
        _need(args, "g")
        if args.g < 1 or (args.n is not None and args.n < 1):
            raise UsageError("need --g >= 1 and --n >= 1")
        if args.n is not None:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                sets = enumerate_data_sets(args.n, args.g, workers=args.workers)
        else:
            by_n = enumerate_for_genus(args.g, workers=args.workers)
            sets = [d for n in sorted(by_n) for d in by_n[n]]
        out.write(_lines(sets, fmt))
        return 0

    if cmd == "pairs":
        g1, g2 = _split(args)
        out.write(_lines(enumerate_root_classes(g1, g2, workers=args.workers), fmt))
        return 0

    if cmd == "max-degree":
        if args.g is not None:
            if args.g < 2:
                raise UsageError("need --g >= 2")
            md = max_degree_for_genus(args.g)
            res = {"g": md.g, "m": md.m, "split": list(md.split),
                   "root": md.root.to_dict() if md.root else None}
        else:
            g1, g2 = _split(args)
            rc = max_root_class(g1, g2)
            res = {"g1": g1, "g2": g2, "m": max_root_degree(g1, g2),
                   "root": rc.to_dict() if rc else None}
        out.write(json.dumps(res) + "\n" if fmt == "json" else f"{res['m']}\n")
        return 0

    if cmd == "witness":
        g1, g2 = _split(args)
        rc = witness_pair(g1, g2)
        out.write(rc.to_json() + "\n" if fmt == "json" else f"{rc.degree} {rc}\n")
        return 0

    if cmd in ("table1", "table2"):
        _need(args, "g_from", "g_to")
        if cmd == "table1":
            if not 2 <= args.g_from <= args.g_to:
                raise UsageError("need 2 <= --from <= --to")
            rows = reports.table1(args.g_from, args.g_to)
        else:
            _need(args, "N")
            if args.N < 1 or args.N % 2 == 0 or args.g_from > args.g_to:
                raise UsageError("need odd --N >= 1 and --from <= --to")
            rows = reports.table2(args.N, args.g_from, args.g_to)
        out.write(_rows_out(rows, fmt))
        for d in reports.table_discrepancies(rows):
            print(f"note: differs from printed table: {json.dumps(d)}", file=sys.stderr)
        return 0

    if cmd == "classify":
        g1, g2 = _split(args)
        rep = reports.classification_report(g1, g2)
        out.write(rep.to_json() + "\n" if fmt == "json" else rep.to_text())
        return 0

    if cmd == "verify":
        _need(args, "g_max")
        if args.g_max < 2:
            raise UsageError("need --g-max >= 2")
        rep = verify_theorems(args.g_max, workers=args.workers)
        out.write(rep.to_json() + "\n" if fmt == "json" else rep.to_text() + "\n")
        return 0 if rep.passed else 1

    raise UsageError(f"unknown subcommand {cmd}")  # pragma: no cover


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        if args.workers is None:
            args.workers = _default_workers()
        elif args.workers < 1:
            raise UsageError("--workers must be >= 1")
        if args.output:
            with open(args.output, "w") as fh:
                return _run(args, fh)
        return _run(args, sys.stdout)
    except UsageError as e:
        print(f"dehnroots: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        # unparsable literal or a rejected argument value
        print(f"dehnroots: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
