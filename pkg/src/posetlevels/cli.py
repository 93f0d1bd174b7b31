"""Command-line entry point: ``posetlevels <command> [options]``.

Exit status: 0 success / found / property holds, 1 not found / property
false, 2 bad input, 3 internal cross-check disagreement.
"""
from __future__ import annotations

import argparse
import json
import sys

from posetlevels import __version__, campaigns, finders, lifts
from posetlevels.levels import Embedding, EmbeddingKind, LevelDecomposition, NotInduced
from posetlevels.oracle import oracle_find
from posetlevels.poset import Poset, PosetError, parse_poset, to_dot, to_json_dict, to_text
from posetlevels.recognition import (
    CharacterizationMismatch,
    is_ali_finite,
    is_nacli_finite,
    root_attributes,
)

SCHEMA_VERSION = 1

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_MISMATCH = 0, 1, 2, 3


class InputError(Exception):
    pass


class Mismatch(Exception):
    pass


def _emit(payload: dict) -> None:
    print(json.dumps({"schema_version": SCHEMA_VERSION, **payload}, indent=2))


def _read(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str | None, fmt: str | None) -> Poset:
    text = _read(path)
    try:
        return parse_poset(text, fmt)
    except PosetError as exc:
        raise InputError(f"{path or '<stdin>'}: {exc}") from None


# -- commands ---------------------------------------------------------------------


def cmd_validate(args) -> int:
    p = _load(args.input, args.format)
    if args.embedding:
        try:
            data = json.loads(_read(args.embedding))
            emb = Embedding.from_json_dict(data, p)
        except NotInduced as exc:
            _emit({"valid": False, "reason": str(exc), "witness": list(exc.witness)})
            return EXIT_FALSE
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise InputError(f"malformed embedding file: {exc}") from None
        except PosetError as exc:
            raise InputError(f"invalid embedding: {exc}") from None
        claimed = data.get("kind")
        valid = claimed is None or emb.kind >= EmbeddingKind.from_name(claimed)
        _emit({"valid": valid, "kind": emb.kind.cli_name, "claimed": claimed})
        return EXIT_OK if valid else EXIT_FALSE
    if args.emit == "text":
        sys.stdout.write(to_text(p))
    else:
        _emit({"valid": True, "n": p.n, "poset": to_json_dict(p)})
    return EXIT_OK


def cmd_levels(args) -> int:
    p = _load(args.input, args.format)
    l = LevelDecomposition.of(p)
    if args.dot:
        sys.stdout.write(to_dot(p, l.levels))
    elif args.pretty:
        for k, level in enumerate(l.levels):
            print(f"{k}: {' '.join(level)}")
    else:
        _emit({
            "height": l.height,
            "width": l.width,
            "levels": [list(v) for v in l.levels],
            "level": l.level,
            "pred_ref": l.pred_ref,
        })
    return EXIT_OK


def cmd_recognize(args) -> int:
    p = _load(args.input, args.format)
    cls = args.cls
    try:
        verdict, cert = (is_ali_finite if cls == "ali" else is_nacli_finite)(p)
    except CharacterizationMismatch as exc:
        raise Mismatch(str(exc)) from None
    out: dict = {cls: verdict}
    out["structure" if verdict else "witness"] = cert.to_json_dict()
    variants = {"grouped": ["grouped"], "binary": ["binary"], "both": ["grouped", "binary"]}.get(args.automaton, [])
    if args.cross_check and not variants:
        variants = ["grouped", "binary"]
    if variants:
        flags = {}
        for v in variants:
            att = root_attributes(p, v)
            flags[v] = att.is_ali if cls == "ali" else att.is_nacli
        out["automaton"] = flags
        if args.automaton:
            out["method"] = "automaton"
        if len(set(flags.values()) | {verdict}) > 1:
            raise Mismatch(f"forbidden-pattern verdict {verdict} but automaton gives {flags}")
    _emit(out)
    return EXIT_OK if verdict else EXIT_FALSE


def _report_embedding(emb: Embedding | None, extra: dict) -> int:
    if emb is None:
        _emit({"found": False, **extra})
        return EXIT_FALSE
    _emit({"found": True, **extra, "kind": emb.kind.cli_name, "mapping": emb.mapping, "embedding": emb.to_json_dict()})
    return EXIT_OK


def cmd_find(args) -> int:
    try:
        spec = finders.PatternSpec.parse(args.pattern)
    except finders.PatternError as exc:
        raise InputError(str(exc)) from None
    host = _load(args.host or args.input, args.format)
    return _report_embedding(finders.find_pattern(host, spec), {"pattern": str(spec)})


def cmd_oracle(args) -> int:
    pattern = _load(args.pattern, args.format)
    host = _load(args.host or args.input, args.format)
    kind = EmbeddingKind.from_name(args.kind)
    return _report_embedding(oracle_find(pattern, host, kind), {"requested": kind.cli_name})


def _construction(text: str):
    name, _, arg = text.partition(":")
    if name in ("width2", "scatter") and not arg:
        return lifts.lift_width2 if name == "width2" else lifts.lift_scatter
    if name in ("gap", "chain"):
        if not arg and name == "gap":
            return lifts.lift_gap
        try:
            gamma = int(arg)
        except ValueError:
            raise InputError(f"construction {name} needs an integer, e.g. {name}:3") from None
        fn = lifts.lift_gap if name == "gap" else lifts.lift_single_chain
        return lambda p: fn(p, gamma)
    raise InputError(f"unknown construction {text!r}; use width2, scatter, gap:G or chain:G")


def cmd_lift(args) -> int:
    build = _construction(args.construction)
    p = _load(args.input, args.format)
    try:
        host = build(p)
    except PosetError as exc:
        raise InputError(str(exc)) from None
    _emit({"construction": args.construction, "poset": to_json_dict(host)})
    return EXIT_OK


def cmd_sweep(args) -> int:
    names = campaigns.CHECK_NAMES if args.check == "all" else [args.check]
    results = [campaigns.run_campaign(name, args.n, seed=args.seed, jobs=args.jobs) for name in names]
    _emit({"ok": all(r.ok for r in results), "campaigns": [r.to_json_dict() for r in results]})
    return EXIT_OK if all(r.ok for r in results) else EXIT_FALSE


# -- parser -----------------------------------------------------------------------


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="input", metavar="FILE", help="input order (text or JSON; default stdin)")
    common.add_argument("--format", choices=("text", "json"), help="input format (default: autodetect)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=_positive, default=1)

    parser = argparse.ArgumentParser(prog="posetlevels", description="Levels and level-preserving suborders of finite orders.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--schema-version", action="store_true", help="print the JSON schema version and exit")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("validate", parents=[common], help="check an order and re-emit it")
    p.add_argument("--emit", choices=("json", "text"), default="json")
    p.add_argument("--embedding", metavar="FILE", help="re-verify an embedding (JSON) into the input order")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("levels", parents=[common], help="level decomposition")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--dot", action="store_true", help="Hasse diagram in DOT, one rank per level")
    g.add_argument("--pretty", action="store_true", help="one line per level")
    p.set_defaults(func=cmd_levels)

    p = sub.add_parser("recognize", parents=[common], help="decide ali / nacli with a certificate")
    p.add_argument("--class", dest="cls", choices=("ali", "nacli"), required=True)
    p.add_argument("--automaton", choices=("grouped", "binary", "both"))
    p.add_argument("--cross-check", action="store_true", help="fail (exit 3) if the methods disagree")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("find", parents=[common], help="polynomial search for a pattern family member")
    p.add_argument("--pattern", required=True, help="e.g. chain:4, chainpoint:2, based21:5, ended11:3, nacli:2+3")
    p.add_argument("--host", metavar="FILE")
    p.set_defaults(func=cmd_find)

    p = sub.add_parser("oracle", parents=[common], help="exhaustive embedding search")
    p.add_argument("--pattern", required=True, metavar="FILE")
    p.add_argument("--host", metavar="FILE")
    p.add_argument("--kind", choices=("induced", "level", "consecutive"), default="induced")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("lift", parents=[common], help="build a lifted host order")
    p.add_argument("--construction", required=True, help="width2, scatter, gap[:G] or chain:G")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("sweep", parents=[common], help="run a verification campaign")
    p.add_argument("--n", type=int, required=True, help="population size bound")
    p.add_argument("--check", choices=campaigns.CHECK_NAMES + ("all",), required=True)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.schema_version:
        _emit({})
        return EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"posetlevels: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Mismatch as exc:
        print(f"posetlevels: cross-check failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except ValueError as exc:
        print(f"posetlevels: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
