"""Command-line front end.

Exit codes: 0 when the verdict is true (or the command succeeded), 1 when it
is false, 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bisim import bisim_classes, bisim_witness
from .errors import EpimcError
from .global_mc import global_mc
from .model import KripkeModel, PointedModel, load_model, validate
from .qbf import encode, eval_qbf, load_qbf
from .quantified import check_quantified, truthset_quantified
from .semantics import eval_formula
from .syntax import has_quantifier, parse_formula, print_formula
from .translate import translate
from .updates import pa_edge_update, pa_world_update, partial_comm_update

OK, FALSE, ERROR = 0, 1, 2


def _agents(text: str) -> frozenset[str]:
    return frozenset(a.strip() for a in text.split(",") if a.strip())


def _load(path: str) -> tuple[KripkeModel, str | None]:
    try:
        return load_model(path)
    except OSError as exc:
        raise EpimcError(f"cannot read {path}: {exc.strerror}") from None


def _point(args, model: KripkeModel, default: str | None) -> PointedModel:
    point = args.world or default
    if point is None:
        raise EpimcError("no evaluation world: pass -w or give the model a 'point'")
    return PointedModel(model, point)


def _emit(args, text_value, json_value=None) -> None:
    if args.json:
        print(json.dumps(text_value if json_value is None else json_value, sort_keys=True))
    else:
        print(text_value)


def cmd_check(args) -> int:
    model, default = _load(args.model)
    pm = _point(args, model, default)
    f = parse_formula(args.formula)
    verdict = check_quantified(pm, f) if has_quantifier(f) else eval_formula(pm, f)
    _emit(args, "true" if verdict else "false", {"world": pm.point, "holds": verdict})
    return OK if verdict else FALSE


def cmd_global_check(args) -> int:
    model, _ = _load(args.model)
    worlds = sorted(global_mc(model, parse_formula(args.formula)))
    print(json.dumps(worlds))
    return OK


def cmd_update(args) -> int:
    model, point = _load(args.model)
    if (args.share is None) == (args.announce is None):
        raise EpimcError("pass exactly one of --share or --announce")
    if args.share is not None:
        if args.topic is None:
            raise EpimcError("--share needs --topic")
        if args.worlds:
            raise EpimcError("--worlds only applies to --announce")
        truth = truthset_quantified(model, parse_formula(args.topic))
        updated = partial_comm_update(model, _agents(args.share), truth)
    else:
        truth = truthset_quantified(model, parse_formula(args.announce))
        updated = pa_world_update(model, truth) if args.worlds else pa_edge_update(model, truth)
    if point is not None and point not in updated.worlds:
        point = None
    print(json.dumps(updated.to_dict(point), indent=None if args.json else 2))
    return OK


def cmd_bisim(args) -> int:
    m1, d1 = _load(args.m1)
    m2, d2 = _load(args.m2)
    p1, p2 = args.w1 or d1, args.w2 or d2
    if p1 is None or p2 is None:
        raise EpimcError("both points are needed: pass -w1/-w2 or give each model a 'point'")
    atoms = None if args.atoms is None else _agents(args.atoms)
    pairs = bisim_witness(PointedModel(m1, p1), PointedModel(m2, p2), atoms)
    verdict = pairs is not None
    witness = sorted(map(list, pairs)) if verdict else None
    if args.json:
        print(json.dumps({"bisimilar": verdict, "witness": witness}))
    else:
        print("true" if verdict else "false")
        if verdict:
            print(json.dumps(witness))
    return OK if verdict else FALSE


def cmd_classes(args) -> int:
    model, _ = _load(args.model)
    atoms = None if args.atoms is None else _agents(args.atoms)
    print(json.dumps([sorted(b) for b in bisim_classes(model, atoms)]))
    return OK


def cmd_translate(args) -> int:
    result = print_formula(translate(parse_formula(args.formula)))
    _emit(args, result, {"formula": result})
    return OK


def cmd_qbf(args) -> int:
    try:
        instance = load_qbf(args.input)
    except OSError as exc:
        raise EpimcError(f"cannot read {args.input}: {exc.strerror}") from None
    oracle = eval_qbf(instance)
    enc = encode(instance)
    encoded = check_quantified(enc.model, enc.formula)
    if args.json:
        out = {"oracle": oracle, "encoded": encoded}
        if args.emit_model:
            out["model"] = enc.model.model.to_dict(enc.model.point)
            out["formula"] = print_formula(enc.formula)
        print(json.dumps(out))
    else:
        print(f"oracle: {str(oracle).lower()}")
        print(f"encoded: {str(encoded).lower()}")
        if args.emit_model:
            print(json.dumps(enc.model.model.to_dict(enc.model.point), indent=2))
            print(print_formula(enc.formula))
    return OK if encoded else FALSE


def cmd_validate(args) -> int:
    try:
        data = json.loads(Path(args.model).read_text())
    except OSError as exc:
        raise EpimcError(f"cannot read {args.model}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise EpimcError(f"{args.model}: not valid JSON ({exc})") from None
    violations = validate(data) if isinstance(data, dict) else ["model JSON must be an object"]
    if args.json:
        print(json.dumps({"ok": not violations, "violations": violations}))
    elif violations:
        print("\n".join(violations))
    else:
        print("ok")
    return FALSE if violations else OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="epimc", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="machine-readable output and errors")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="truth of a formula at one world")
    p.add_argument("-m", "--model", required=True)
    p.add_argument("-w", "--world")
    p.add_argument("-f", "--formula", required=True)
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("global-check", help="all worlds satisfying a formula, by labelling")
    p.add_argument("-m", "--model", required=True)
    p.add_argument("-f", "--formula", required=True)
    p.set_defaults(run=cmd_global_check)

    p = sub.add_parser("update", help="apply a communication or an announcement")
    p.add_argument("-m", "--model", required=True)
    p.add_argument("--share", help="comma-separated sharing agents (may be empty)")
    p.add_argument("--topic")
    p.add_argument("--announce")
    p.add_argument("--worlds", action="store_true", help="remove worlds instead of edges")
    p.set_defaults(run=cmd_update)

    p = sub.add_parser("bisim", help="collective bisimilarity of two pointed models")
    p.add_argument("-m1", required=True)
    p.add_argument("-w1")
    p.add_argument("-m2", required=True)
    p.add_argument("-w2")
    p.add_argument("--atoms")
    p.set_defaults(run=cmd_bisim)

    p = sub.add_parser("classes", help="collective bisimulation classes")
    p.add_argument("-m", "--model", required=True)
    p.add_argument("--atoms")
    p.set_defaults(run=cmd_classes)

    p = sub.add_parser("translate", help="eliminate update modalities")
    p.add_argument("-f", "--formula", required=True)
    p.set_defaults(run=cmd_translate)

    p = sub.add_parser("qbf", help="decide a QBF directly and through its model encoding")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--emit-model", action="store_true")
    p.set_defaults(run=cmd_qbf)

    p = sub.add_parser("validate", help="list model invariant violations")
    p.add_argument("-m", "--model", required=True)
    p.set_defaults(run=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except EpimcError as exc:
        if args.json:
            payload = {"error": type(exc).__name__, "message": str(exc)}
            position = getattr(exc, "position", None)
            if position is not None:
                payload["position"] = position
            print(json.dumps(payload))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
