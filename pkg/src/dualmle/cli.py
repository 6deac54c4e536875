"""Command-line interface.

Exit codes: 0 ok, 1 usage error, 2 bad data, 3 resource limit, 4 genericity failure.
Machine-readable results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .groebner import ResourceBudget, ResourceLimitExceeded, using_budget
from .likelihood import FORMULATIONS, DataVector, GenericityFailure, NongenericData
from .modelfile import ModelFile, ModelFileError, format_model_file
from .pipeline import SUITES, bench, format_bench, run_critical_points, run_ml_degree
from .solver import MultipleRootError
from .varieties import dual_variety
from .zoo import resolve_model, zoo_entry, zoo_ids

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_RESOURCE, EXIT_GENERICITY = 0, 1, 2, 3, 4

_NEEDS = {"dual": "dual", "lagrange": "dual", "standard": "primal", "conormal": "primal"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _err(msg):
    print(f"dualmle: {msg}", file=sys.stderr)


def _load(ref) -> ModelFile:
    try:
        return resolve_model(ref)
    except (FileNotFoundError, KeyError, ModelFileError) as exc:
        raise UsageError(str(exc).strip("'\"")) from exc


def _check_method(mf: ModelFile, method):
    if method == "auto":
        return
    need = _NEEDS[method]
    if mf.role != need:
        raise UsageError(f"--method {method} needs a {need} model, but {mf.id} has role {mf.role}")


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    sys.stdout.write(text)


def cmd_dualize(args):
    mf = _load(args.model)
    if mf.role != "primal":
        raise UsageError(f"dualize needs a primal model, {mf.id} has role {mf.role}")
    Xs = dual_variety(mf.to_model())
    out = ModelFile.from_model(Xs, id=f"{mf.id}-dual", codim=Xs.codim,
                               note=f"dual variety computed from {mf.id}")
    degs = sorted(g.total_degree() for g in Xs.generators)
    _err(f"{len(Xs.generators)} generator(s) of degree {', '.join(map(str, degs))}")
    _emit(format_model_file(out), args.output)
    return EXIT_OK


def cmd_ml_degree(args):
    mf = _load(args.model)
    _check_method(mf, args.method)
    rep = run_ml_degree(mf, args.method, seed=args.seed, draws=args.draws)
    _err(f"ML degree of {mf.id}: {rep.ml_degree} ({rep.formulation}, draws agree: {rep.certified})")
    _emit(rep.to_text(), args.report)
    return EXIT_OK


def cmd_critical_points(args):
    mf = _load(args.model)
    _check_method(mf, args.method)
    try:
        if args.data is not None:
            data = DataVector.parse(args.data)
        elif mf.data is not None:
            data = mf.data_vector()
        else:
            raise UsageError(f"--data is required ({mf.id} carries no data vector)")
    except ValueError as exc:
        _err(f"bad data: {exc}")
        return EXIT_DATA
    if len(data) != len(mf.variables):
        _err(f"bad data: {len(data)} entries for {len(mf.variables)} coordinates")
        return EXIT_DATA
    try:
        rep = run_critical_points(mf, data, args.method, seed=args.seed, exact_eliminants=args.exact_eliminants)
    except (NongenericData, MultipleRootError) as exc:
        _err(f"bad data: {exc}")
        return EXIT_DATA
    _err(f"{rep.ml_degree} critical point(s) for {mf.id}")
    _emit(rep.to_text(), args.report)
    return EXIT_OK


def cmd_bench(args):
    if not args.suite:
        raise UsageError("--suite must name a suite")
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; available: {', '.join(SUITES)}")
    rows = bench(args.suite, args.budget, args.include_stretch, args.seed,
                 progress=lambda r: _err(f"{r.model}: {r.ml_degree} [{r.status}] {r.seconds:.1f}s"))
    if args.format == "json":
        text = json.dumps({"format_version": 1, "suite": args.suite, "budget": args.budget,
                           "rows": [r.as_dict() for r in rows]}, indent=2) + "\n"
    else:
        text = format_bench(rows)
    _emit(text, args.report)
    return EXIT_OK


def cmd_zoo(args):
    if args.zoo_cmd == "list":
        for name in zoo_ids():
            mf = zoo_entry(name)
            extra = "" if mf.expected_ml_degree is None else f"  ML degree {mf.expected_ml_degree}"
            flag = "  (stretch)" if mf.stretch else ""
            print(f"{name:<14}{mf.role:<8}{len(mf.generators)} generator(s){extra}{flag}")
        return EXIT_OK
    try:
        mf = zoo_entry(args.name)
    except KeyError as exc:
        raise UsageError(str(exc).strip("'\"")) from exc
    sys.stdout.write(format_model_file(mf))
    return EXIT_OK


def build_parser():
    p = _Parser(prog="dualmle", description="ML degrees and critical points from a model or its dual.")
    p.add_argument("-v", "--verbose", action="store_true", help="log Groebner basis progress")
    p.add_argument("--max-seconds", type=float, default=None,
                   help="cap each Groebner basis computation (also DUALMLE_MAX_SECONDS)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("dualize", help="write the dual variety of a primal model")
    d.add_argument("model")
    d.add_argument("-o", "--output")
    d.set_defaults(func=cmd_dualize)

    m = sub.add_parser("ml-degree", help="ML degree from two random data draws")
    m.add_argument("model")
    m.add_argument("--method", choices=("auto",) + FORMULATIONS, default="auto")
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--draws", type=int, default=2)
    m.add_argument("--report", help="also write the report to this file")
    m.set_defaults(func=cmd_ml_degree)

    c = sub.add_parser("critical-points", help="solve the likelihood equations for given data")
    c.add_argument("model")
    c.add_argument("--data", help="comma-separated nonzero rationals, e.g. 2/40,13/40,5/40,20/40")
    c.add_argument("--method", choices=("auto",) + FORMULATIONS, default="auto")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--exact-eliminants", action="store_true", help="print the eliminants in full")
    c.add_argument("--report")
    c.set_defaults(func=cmd_critical_points)

    b = sub.add_parser("bench", help="ML-degree benchmark table")
    b.add_argument("--suite", default="table31")
    b.add_argument("--budget", type=float, default=300.0, help="seconds per model")
    b.add_argument("--include-stretch", action="store_true")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--format", choices=("table", "json"), default="table")
    b.add_argument("--report")
    b.set_defaults(func=cmd_bench)

    z = sub.add_parser("zoo", help="bundled models")
    zs = z.add_subparsers(dest="zoo_cmd", required=True, parser_class=_Parser)
    zs.add_parser("list")
    show = zs.add_parser("show")
    show.add_argument("name")
    z.set_defaults(func=cmd_zoo)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    b = ResourceBudget.from_env()
    if args.max_seconds is not None:
        b.max_seconds = args.max_seconds
    try:
        with using_budget(b):
            return args.func(args)
    except UsageError as exc:
        _err(str(exc))
        return EXIT_USAGE
    except ResourceLimitExceeded as exc:
        _err(str(exc))
        return EXIT_RESOURCE
    except GenericityFailure as exc:
        _err(str(exc))
        return EXIT_GENERICITY
    except NongenericData as exc:
        _err(f"genericity failure: {exc}")
        return EXIT_GENERICITY


if __name__ == "__main__":
    sys.exit(main())
