"""Command-line front end.

Exit status: 0 success (harmonious / valid), 1 a violation or invalid
derivation was found, 2 usage, parse or internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import fixtures
from .conversion import FamilyDescriptor, check_harmony, complete, family_type
from .dsl import connective_name, dump_spec, format_rule_dsl, parse_spec
from .errors import BilateralError, IllFormedFamily, ParseError, RestrictionViolation, WrongType
from .kernel import check_derivation, parse_derivation
from .library import NAMES, builtin_specs
from .syntax import FAMILY_KEYS, RuleType, family_label, format_rule, parse_family_label

OK, VIOLATION, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    elif text:
        print(text)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from None


def _load_specs(path: str):
    try:
        return parse_spec(_read(path))
    except ParseError as exc:
        raise UsageError(f"{path}:{exc}") from None


def _builtins(names):
    try:
        return builtin_specs(names)
    except KeyError as exc:
        raise UsageError(f"unknown built-in connective {exc.args[0]!r}; "
                         f"known: {', '.join(NAMES)}") from None


# -- check --


def _report_text(report, quiet: bool) -> str:
    lines = [f"{report.connective}: {report.verdict}"]
    if quiet:
        return lines[0]
    for label, c in report.family_classifications.items():
        lines.append(f"  {label:<16} {'(empty)' if c is None else c}")
    for c in report.failed():
        src = f" (from {c.source})" if c.source else ""
        lines.append(f"  FAIL {c.kind} {c.family}{src}")
        lines.append(f"       expected: {c.expected}")
        lines.append(f"       found:    {c.found}")
    return "\n".join(lines)


def cmd_check(args) -> int:
    specs = []
    for path in args.paths:
        specs.extend(_load_specs(path))
    if args.builtin:
        specs.extend(_builtins(args.builtin))
    if not specs:
        raise UsageError("nothing to check: give DSL files or --builtin NAME...")
    reports = [check_harmony(s) for s in specs]
    status = OK if all(r.verdict.value == "Harmonious" for r in reports) else VIOLATION
    _emit(args, {"command": "check", "status": status,
                 "reports": [r.as_dict() for r in reports]},
          "\n".join(_report_text(r, args.quiet) for r in reports))
    return status


# -- complete --


def _pick_spec(args):
    if args.builtin and args.path:
        raise UsageError("give either a DSL file or --builtin, not both")
    if args.builtin:
        return _builtins([args.builtin])[0]
    if not args.path:
        raise UsageError("give a DSL file or --builtin NAME")
    specs = _load_specs(args.path)
    if args.connective:
        name = connective_name(args.connective)
        for s in specs:
            if s.name == name:
                return s
        raise UsageError(f"{args.path} does not declare {name!r}")
    if len(specs) != 1:
        raise UsageError(f"{args.path} declares {len(specs)} connectives; pick one with --connective")
    return specs[0]


def cmd_complete(args) -> int:
    spec = _pick_spec(args)
    try:
        key = parse_family_label(args.from_family)
    except ValueError:
        raise UsageError(f"--from must be one of "
                         f"{', '.join(family_label(*k) for k in FAMILY_KEYS)}") from None
    try:
        if args.type is not None:
            rtype = RuleType(args.type)
        else:
            rtype = family_type(spec, *key)
            if not isinstance(rtype, RuleType):
                raise IllFormedFamily(f"{family_label(*key)} of {spec.name}: IllFormed: {rtype}")
        d = FamilyDescriptor(key[0], key[1], rtype)
        done = complete(spec.name, spec.arity, d, spec.family(*key), spec.arg_vars)
    except (IllFormedFamily, RestrictionViolation, WrongType) as exc:
        message = str(exc)
        if args.json:
            _emit(args, {"command": "complete", "status": VIOLATION,
                         "connective": spec.name, "from": args.from_family,
                         "error": message}, "")
        else:
            print(f"{spec.name}: cannot complete from {args.from_family}: {message}",
                  file=sys.stderr)
        return VIOLATION
    text = dump_spec(done)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    payload = {
        "command": "complete", "status": OK, "connective": spec.name,
        "from": args.from_family, "type": int(rtype),
        "families": {family_label(*k): [format_rule(r) for r in done.families[k]]
                     for k in FAMILY_KEYS},
        "dsl": text,
    }
    _emit(args, payload, "" if args.out else text.rstrip("\n"))
    return OK


# -- verify --


def _resolve_lib(entries):
    if not entries:
        return builtin_specs()
    lib = []
    for e in entries:
        if Path(e).is_file():
            lib.extend(_load_specs(e))
        elif connective_name(e) in NAMES:
            lib.extend(builtin_specs([e]))
        else:
            raise UsageError(f"--lib {e!r} is neither a file nor a built-in connective")
    return lib


def cmd_verify(args) -> int:
    lib = _resolve_lib(args.lib)
    sources = [(p, _read(p)) for p in args.paths]
    for name in args.bundled or ():
        try:
            sources.append((f"{name.removesuffix('.deriv')}.deriv", fixtures.text(name)))
        except KeyError:
            raise UsageError(f"no bundled derivation {name!r}; known: "
                             f"{', '.join(fixtures.NAMES)}") from None
    if not sources:
        raise UsageError("nothing to verify: give derivation files or --bundled NAME")
    results = []
    status = OK
    for label, text in sources:
        try:
            d = parse_derivation(text, lib)
        except ParseError as exc:
            raise UsageError(f"{label}:{exc}") from None
        out = check_derivation(d, lib)
        if not out.valid:
            status = VIOLATION
        results.append((label, out))
    payload = {"command": "verify", "status": status, "results": [
        {"file": label,
         "status": "Valid" if o.valid else "Invalid",
         "open_assumptions": sorted(map(str, o.open_assumptions.elements())),
         "conclusion": None if o.conclusion is None else str(o.conclusion),
         "path": o.where if not o.valid else None,
         "kind": o.kind or None,
         "reason": o.reason or None}
        for label, o in results]}
    text = "\n".join(f"{label}: {o}" if not args.quiet else
                     f"{label}: {'Valid' if o.valid else 'Invalid'}" for label, o in results)
    _emit(args, payload, text)
    return status


# -- library --


def cmd_library(args) -> int:
    specs = _builtins([args.name] if args.name else None)
    if args.json:
        payload = {"command": "library", "status": OK, "connectives": [
            {"name": s.name, "arity": s.arity, "args": list(s.arg_vars),
             "families": {family_label(*k): [
                 {"name": r.name, "rule": format_rule(r),
                  "type": None if r.declared_type is None else int(r.declared_type),
                  "dsl": format_rule_dsl(r)}
                 for r in s.families[k]] for k in FAMILY_KEYS},
             "dsl": dump_spec(s)}
            for s in specs]}
        _emit(args, payload, "")
    else:
        print("\n".join(dump_spec(s) for s in specs).rstrip("\n"))
    return OK


# -- entry point --


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable JSON on stdout")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="verdict lines only")

    parser = argparse.ArgumentParser(prog="bilateral",
                                     description="Bilateral harmony checker for rule schemas.")
    parser.add_argument("--json", action="store_true", default=False)
    parser.add_argument("--quiet", action="store_true", default=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="check connectives for harmony")
    p.add_argument("paths", nargs="*", help="DSL files")
    p.add_argument("--builtin", nargs="+", metavar="NAME", help="built-in connectives")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("complete", parents=[common],
                       help="derive all four rule families from one")
    p.add_argument("path", nargs="?", help="DSL file")
    p.add_argument("--builtin", metavar="NAME")
    p.add_argument("--connective", metavar="NAME", help="connective to use from the file")
    p.add_argument("--from", dest="from_family", required=True, metavar="FAMILY",
                   help="assertive-intro, assertive-elim, rejective-intro or rejective-elim")
    p.add_argument("--type", type=int, choices=(1, 2), help="override the inferred rule type")
    p.add_argument("--out", metavar="PATH", help="write the completed DSL here")
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("verify", parents=[common], help="check derivation files")
    p.add_argument("paths", nargs="*", help="derivation files")
    p.add_argument("--lib", nargs="+", metavar="FILE|NAME",
                   help="DSL files or built-in names (default: all built-ins)")
    p.add_argument("--bundled", nargs="+", metavar="NAME",
                   help=f"bundled derivations: {', '.join(fixtures.NAMES)}")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("library", parents=[common], help="print the built-in connectives")
    p.add_argument("--name", metavar="NAME")
    p.set_defaults(func=cmd_library)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else ERROR
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    except (BilateralError, RecursionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    except Exception as exc:  # noqa: BLE001 - every path must map to an exit status
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
