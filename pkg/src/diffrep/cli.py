"""Command-line interface.  Exit codes: 0 pass, 1 check failed, 2 bad input."""
from __future__ import annotations

import argparse
import json
import sys

from . import config as config_mod
from .classify import GmRep, classify_extension, classify_gm
from .errors import ClassificationFailure, DiffAlgError
from .field import format_kelem, parse_kelem
from .groebner import detprime_check
from .modules import (FinModule, construct_Pdk, construct_Ud, construct_Wd, dual, iso_test, prolongation,
                      pullback, pushout, socle)
from .suites import DEFAULT_TRIALS, SUITES

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_module(path: str) -> FinModule:
    return FinModule.from_json(_load_json(path))


def _matrix(data) -> list:
    return [[parse_kelem(str(x)) for x in row] for row in data]


def _fmt_matrix(M) -> list | None:
    return None if M is None else [[format_kelem(x) for x in row] for row in M]


def _emit(args, payload: dict, text: str):
    out = json.dumps(payload, indent=2) if args.emit == "json" else text
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def _module_text(M: FinModule) -> str:
    lines = [f"module of dimension {M.dim}"]
    if M.basis is not None:
        lines.append("basis: " + ", ".join(str(b) for b in M.basis))
    for row in M.coaction:
        lines.append("  [" + ", ".join(str(q) for q in row) + "]")
    return "\n".join(lines)


def _write_module(args, M: FinModule):
    payload = M.to_json()
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        print(f"wrote {M.dim}-dimensional module to {args.output}")
    else:
        _emit(args, payload, _module_text(M))


# -- commands -----------------------------------------------------------------------
def cmd_construct(args) -> int:
    kind = args.kind
    if kind in ("Pdk", "Ud", "Wd") and args.d is None:
        raise InputError(f"--d is required for {kind}")
    if kind == "Pdk":
        M = construct_Pdk(args.d, args.k)
    elif kind == "Ud":
        M = construct_Ud(args.d)
    elif kind == "Wd":
        M = construct_Wd(args.d)
    elif kind in ("prolong", "dual"):
        if not args.input:
            raise InputError(f"--input is required for {kind}")
        src = _load_module(args.input[0])
        M = prolongation(src) if kind == "prolong" else dual(src)
    else:
        if not args.input or len(args.input) != 2 or not args.maps:
            raise InputError(f"{kind} needs two --input modules and --maps")
        M1, M2 = (_load_module(p) for p in args.input)
        maps = _load_json(args.maps)
        if kind == "pullback":
            W = FinModule.from_json(maps["target"]) if maps.get("target") else None
            M = pullback(M1, M2, _matrix(maps["pi1"]), _matrix(maps["pi2"]), W)
        else:
            M = pushout(M1, M2, _matrix(maps["iota1"]), _matrix(maps["iota2"]))
    _write_module(args, M)
    return EXIT_OK


def cmd_dual(args) -> int:
    _write_module(args, dual(_load_module(args.input)))
    return EXIT_OK


def cmd_socle(args) -> int:
    M = _load_module(args.input)
    S = socle(M)
    polys = S.polys()
    payload = {"dim": S.dim, "vectors": _fmt_matrix(S.vectors),
               "polys": [str(p) for p in polys] if polys is not None else None}
    text = f"socle of dimension {S.dim}"
    if polys is not None:
        text += ": " + ", ".join(str(p) for p in polys)
    else:
        text += "\n" + "\n".join("  " + str([format_kelem(x) for x in v]) for v in S.vectors)
    _emit(args, payload, text)
    return EXIT_OK


def cmd_iso(args) -> int:
    M1, M2 = _load_module(args.input), _load_module(args.other)
    T = iso_test(M1, M2, seed=config_mod.config.seed)
    payload = {"isomorphic": T is not None, "witness": _fmt_matrix(T)}
    text = "isomorphic" if T is not None else "not isomorphic"
    if T is not None:
        text += "\n" + "\n".join("  " + str(row) for row in _fmt_matrix(T))
    _emit(args, payload, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    fn = SUITES[args.suite]
    trials = args.trials if args.trials is not None else DEFAULT_TRIALS.get(args.suite, 0)
    rep = fn(trials=trials, seed=config_mod.config.seed)
    _emit(args, rep.to_json(), rep.text())
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_groebner(args) -> int:
    if args.q < 1:
        raise InputError("--q must be at least 1")
    rep = detprime_check(args.q)
    lines = [f"{'PASS' if ok else 'FAIL'} {name}: {detail}" for name, (ok, detail) in rep.parts.items()]
    lines.append(f"q={args.q}: {'PASS' if rep.ok else 'FAIL'} in {rep.seconds:.3f}s")
    _emit(args, rep.to_json(), "\n".join(lines))
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_classify(args) -> int:
    M = _load_module(args.input)
    try:
        res = classify_extension(M)
    except ClassificationFailure as exc:
        _emit(args, {"error": "ClassificationFailure", "detail": str(exc)}, f"classification failed: {exc}")
        return EXIT_FAIL
    payload = res.to_json()
    _emit(args, payload, f"tag={res.tag} d={res.d}")
    return EXIT_OK


def cmd_classify_gm(args) -> int:
    rep = GmRep.from_json(_load_json(args.input))
    comps = classify_gm(rep)
    payload = [c.to_json() for c in comps]
    lines = []
    for c in comps:
        keys = ", ".join(f"N{key}" for key in sorted(c.N.entries)) or "no nilpotent part"
        lines.append(f"d={list(c.d)}: {keys}")
    _emit(args, {"components": payload}, "\n".join(lines))
    return EXIT_OK


# -- parser ---------------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # suppressed defaults let the flags appear before or after the subcommand
    S = argparse.SUPPRESS
    common.add_argument("--order-cap", type=int, default=S, help="maximum derivative order (>= 4)")
    common.add_argument("--groebner-fallback", action="store_true", default=S,
                        help="cross-check equalities in A by Groebner reduction")
    common.add_argument("--seed", type=int, default=S, help="seed for randomized suites")
    common.add_argument("--emit", choices=["text", "json"], default=S, help="output format")

    p = argparse.ArgumentParser(prog="diffrep", parents=[common],
                                description="Differential representations of SL2: constructions and checks.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="build a module and write it as JSON")
    c.add_argument("--kind", required=True, choices=["Pdk", "Ud", "Wd", "prolong", "dual", "pullback", "pushout"])
    c.add_argument("--d", type=int)
    c.add_argument("--k", type=int, default=0)
    c.add_argument("--input", action="append", help="module JSON (repeat for pullback/pushout)")
    c.add_argument("--maps", help="JSON with pi1/pi2 (and optional target) or iota1/iota2")
    c.add_argument("--output", "-o")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("dual", parents=[common], help="dual of a module")
    c.add_argument("--input", required=True)
    c.add_argument("--output", "-o")
    c.set_defaults(func=cmd_dual)

    c = sub.add_parser("socle", parents=[common], help="socle of a module")
    c.add_argument("--input", required=True)
    c.set_defaults(func=cmd_socle)

    c = sub.add_parser("iso", parents=[common], help="isomorphism test")
    c.add_argument("--input", required=True)
    c.add_argument("--other", required=True)
    c.set_defaults(func=cmd_iso)

    c = sub.add_parser("verify", parents=[common], help="run a verification suite")
    c.add_argument("--suite", required=True, choices=sorted(SUITES))
    c.add_argument("--trials", type=int)
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("groebner", parents=[common], help="Groebner checks for the differentiated determinant")
    c.add_argument("--q", type=int, required=True)
    c.set_defaults(func=cmd_groebner)

    c = sub.add_parser("classify", parents=[common], help="classify a two-step extension")
    c.add_argument("--input", required=True)
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("classify-gm", parents=[common], help="classify a torus representation")
    c.add_argument("--input", required=True)
    c.set_defaults(func=cmd_classify_gm)
    return p


def _apply_config(args):
    cfg = config_mod.config
    new = config_mod.Config(order_cap=getattr(args, "order_cap", cfg.order_cap),
                            groebner_fallback=getattr(args, "groebner_fallback", cfg.groebner_fallback),
                            seed=getattr(args, "seed", cfg.seed),
                            emit=getattr(args, "emit", cfg.emit))
    for name in ("order_cap", "groebner_fallback", "seed", "emit"):
        setattr(cfg, name, getattr(new, name))
    args.emit = cfg.emit


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        _apply_config(args)
        return args.func(args)
    except (InputError, DiffAlgError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
