"""Command-line front end.

Exit codes: 0 affirmative verdict or pass, 1 negative verdict or failure,
2 usage or parse error, 3 enumeration budget exceeded.  Formula and sequent
arguments may be given inline or as ``@path`` to read them from a file.
"""

from __future__ import annotations

import argparse
import inspect
import json
import sys
from pathlib import Path

from . import harness, oracle, tableau
from .formula import ParseError, parse_formula, parse_sequent
from .semantics import ModelFormatError, UnknownWorld, dump_model, eval_formula, parse_model

OK, NEGATIVE, USAGE, BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(arg: str) -> str:
    if arg.startswith("@"):
        try:
            return Path(arg[1:]).read_text(encoding="utf-8").strip()
        except OSError as exc:
            raise UsageError(f"cannot read {arg[1:]}: {exc.strerror}") from exc
    return arg


def _read_file(path: str) -> str:
    return _read(path if path.startswith("@") else "@" + path)


def _parse(kind, arg):
    text = _read(arg)
    try:
        return kind(text)
    except ParseError as exc:
        caret = " " * len(text[: len(text.encode()[: exc.offset].decode(errors="ignore"))]) + "^"
        raise UsageError(f"{exc}\n  {text}\n  {caret}") from exc


def _model(path: str):
    try:
        return parse_model(_read_file(path))
    except ModelFormatError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def cmd_prove(args) -> int:
    seq = _parse(parse_sequent, args.sequent)
    try:
        verdict = tableau.prove(seq, max_steps=args.max_steps, fresh_only=args.fresh_only)
    except tableau.UnsupportedFormula as exc:
        raise UsageError(f"{exc} (try: bdmodal search)") from exc
    except tableau.ResourceLimitExceeded as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return BUDGET
    tree = tableau.serialize_tree(verdict.root)
    if verdict.closed:
        print(f"proved: {seq}")
        print(tree, end="")
    else:
        print(f"refuted: {seq}")
        print(f"countermodel (point {verdict.pointed.model.frame.names[verdict.pointed.point]}):")
        print(dump_model(verdict.pointed.model), end="")
    if args.emit_proof:
        Path(args.emit_proof).write_text(tree, encoding="utf-8")
    if args.emit_model and not verdict.closed:
        Path(args.emit_model).write_text(dump_model(verdict.pointed.model), encoding="utf-8")
    return OK if verdict.closed else NEGATIVE


def cmd_check(args) -> int:
    model = _model(args.model)
    phi = _parse(parse_formula, args.formula)
    try:
        value = eval_formula(model, args.world, phi)
    except UnknownWorld as exc:
        raise UsageError(f"unknown world {args.world!r}; worlds: {' '.join(model.frame.names)}") from exc
    print(value.value)
    print(f"supports truth: {'yes' if value.sup_t else 'no'}")
    print(f"supports falsity: {'yes' if value.sup_f else 'no'}")
    return OK if value.sup_t else NEGATIVE


def cmd_search(args) -> int:
    seq = _parse(parse_sequent, args.sequent)
    atoms = sorted(set(args.atoms.split(",")) | set(oracle._sequent_atoms(seq))) if args.atoms else None
    try:
        if args.frame:
            frame = _model(args.frame).frame
            valid, witness = oracle.valid_on_frame(frame, seq, args.max_valuations, atoms)
            if valid:
                print(f"valid on frame: {seq}")
                return OK
        else:
            budget = oracle.EnumerationBudget(max_worlds=args.max_worlds,
                                              max_valuations=args.max_valuations)
            witness = oracle.find_countermodel(seq, budget)
            if witness is None:
                print(f"none up to budget: no countermodel with at most {args.max_worlds} worlds")
                return OK
    except oracle.BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return BUDGET
    print(f"countermodel (point {witness.model.frame.names[witness.point]}):")
    text = dump_model(witness.model)
    print(text, end="")
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    return NEGATIVE


_EXPERIMENT_FLAGS = ("seed", "max_worlds", "max_size", "trials", "samples", "sample", "fresh_only")
_ALIASES = {"samples": ("ir_samples", "n", "contraposition_samples")}


def _experiment_kwargs(fn, args) -> dict:
    params = inspect.signature(fn).parameters
    kwargs = {}
    for flag in _EXPERIMENT_FLAGS:
        value = getattr(args, flag, None)
        if value is None or value is False:
            continue
        for name in (flag,) + _ALIASES.get(flag, ()):
            if name in params:
                kwargs[name] = value
    return kwargs


def cmd_experiment(args) -> int:
    names = list(harness.EXPERIMENTS) if args.name == "all" else [args.name]
    unknown = [n for n in names if n not in harness.EXPERIMENTS]
    if unknown:
        raise UsageError(f"unknown experiment {unknown[0]!r}; known: all, {', '.join(harness.EXPERIMENTS)}")
    reports = []
    for name in names:
        fn = harness.EXPERIMENTS[name]
        reports.append(fn(**_experiment_kwargs(fn, args)))
    if args.json:
        print(json.dumps([r.to_json() for r in reports], indent=1))
    else:
        for r in reports:
            print(r.text())
    return OK if all(r.passed for r in reports) else NEGATIVE


def cmd_fixtures(args) -> int:
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for fx in harness.FIXTURES.values():
            (out / f"{fx.name}.model").write_text(fx.text, encoding="utf-8")
            print(out / f"{fx.name}.model")
        return OK
    for fx in harness.FIXTURES.values():
        print(f"# {fx.name}: {fx.summary}")
        for fact in fx.facts:
            print(f"# fact: {fact}")
        print(fx.text)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bdmodal", description="Four-valued modal logic toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("prove", help="run the tableau prover on a sequent")
    sp.add_argument("sequent", help='e.g. "Ip & Iq |- I(p | q)" or @file')
    sp.add_argument("--max-steps", type=int, default=200_000)
    sp.add_argument("--emit-proof", metavar="FILE", help="write the (partial) tableau here")
    sp.add_argument("--emit-model", metavar="FILE", help="write the countermodel here")
    sp.add_argument("--fresh-only", action="store_true",
                    help="use only fresh labels for [*] witnesses (sound on irreflexive frames only)")
    sp.set_defaults(func=cmd_prove)

    sp = sub.add_parser("check", help="evaluate a formula at a world of a model file")
    sp.add_argument("model")
    sp.add_argument("world")
    sp.add_argument("formula")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("search", help="brute-force countermodel search")
    sp.add_argument("sequent")
    sp.add_argument("--max-worlds", type=int, default=3)
    sp.add_argument("--atoms", help="comma-separated extra atoms")
    sp.add_argument("--frame", metavar="FILE", help="decide validity on this frame instead")
    sp.add_argument("--max-valuations", type=int, default=4 ** 9)
    sp.add_argument("--out", metavar="FILE", help="write the countermodel here")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("experiment", help="run a named experiment, or all of them")
    sp.add_argument("name")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--max-worlds", type=int)
    sp.add_argument("--max-size", type=int)
    sp.add_argument("--trials", type=int)
    sp.add_argument("--samples", type=int)
    sp.add_argument("--sample", type=int, help="agreement: number of sequents to sample")
    sp.add_argument("--fresh-only", action="store_true")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_experiment)

    sp = sub.add_parser("fixtures", help="print or write the fixture models")
    sp.add_argument("--out", metavar="DIR")
    sp.set_defaults(func=cmd_fixtures)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
