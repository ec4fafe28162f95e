# quiver_branes/cli.py
"""
Command-line front end. Every invocation prints one JSON document.

Exit codes: 0 verified, 1 a verification failed, 2 input or usage error.

  python -m quiver_branes catalog --name c-example --k 1 --out c.json
  python -m quiver_branes check --input c.json --pretty
  python -m quiver_branes involution --action classify --spec ed.json
"""

from __future__ import annotations

import json
import logging
import sys
from argparse import ArgumentParser
from typing import Any, Dict, List, Optional

from .catalog import CATALOG_NAMES
from .config import default_seed, default_samples
from .engine import QuiverBranesEngine
from .errors import QuiverBranesError, UsageError
from .monad_p2 import P2_KINDS, P2Involution, P2Point
from .schemas import decode_bundle, decode_spec, dumps, load_json

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

COMMANDS = ("check", "involution", "stability", "tangent", "flow", "monad", "catalog")


class _Parser(ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _common(p: ArgumentParser, needs_input: bool = True) -> None:
    if needs_input:
        p.add_argument("--input", help="representation JSON (quiver, dims, rep)")
    p.add_argument("--spec", help="involution spec JSON")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--out", help="write the report to this path instead of stdout")
    p.add_argument("--pretty", action="store_true", help="indent the JSON output")
    p.add_argument("--verbose", action="store_true", help="log at INFO on stderr")


def build_parser() -> ArgumentParser:
    parser = _Parser(prog="quiver_branes", description="Quiver varieties, ADHM data and their branes")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    _common(sub.add_parser("check", help="validate a representation and its claims"))

    p = sub.add_parser("involution", help="classify, apply or verify an involution spec")
    _common(p)
    p.add_argument("--action", choices=("classify", "apply", "verify"), default="classify")

    _common(sub.add_parser("stability", help="stable / costable / regular"))

    p = sub.add_parser("tangent", help="quotient and fixed-subspace dimensions")
    _common(p)
    p.add_argument("--level", type=float, default=None)

    p = sub.add_parser("flow", help="flow to a real moment level")
    _common(p)
    p.add_argument("--level", type=float, default=0.5)
    p.add_argument("--max-iters", type=int, default=None)

    p = sub.add_parser("monad", help="monad ranks on P^2")
    _common(p)
    p.add_argument("--point", help="re,im:re,im:re,im")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--involution", choices=P2_KINDS, default=None)
    p.add_argument("--t", type=float, default=1.0, help="sigma2/tau2 parameter t")
    p.add_argument("--z", type=float, default=0.0, help="sigma2/tau2 parameter z (real)")

    p = sub.add_parser("catalog", help="build a catalog entry bundle")
    _common(p, needs_input=False)
    p.add_argument("--name", choices=CATALOG_NAMES, required=True)
    p.add_argument("--k", type=int, default=1)
    return parser


def parse_point(text: str) -> P2Point:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError("--point needs three coordinates re,im:re,im:re,im", {"point": text})
    coords = []
    for part in parts:
        try:
            re_part, im_part = (float(x) for x in part.split(","))
        except ValueError as exc:
            raise UsageError(f"cannot parse coordinate {part!r}") from exc
        coords.append(complex(re_part, im_part))
    return P2Point.from_vector(coords).normalized()


def _require(path: Optional[str], flag: str) -> str:
    if not path:
        raise UsageError(f"{flag} is required for this command")
    return path


def run(args) -> Dict[str, Any]:
    seed = default_seed() if args.seed is None else args.seed
    spec = decode_spec(load_json(args.spec)) if getattr(args, "spec", None) else None

    if args.command == "catalog":
        return QuiverBranesEngine.catalog(args.name, k=args.k, seed=seed)

    if args.command == "involution" and args.action == "classify" and not args.input:
        if spec is None:
            raise UsageError("--spec is required for involution")
        return QuiverBranesEngine.involution("classify", spec, seed=seed, tol=args.tol)

    bundle = decode_bundle(load_json(_require(args.input, "--input")))
    spec = spec if spec is not None else bundle.spec

    if args.command == "check":
        return QuiverBranesEngine.check(
            bundle.X,
            spec=spec,
            expected=bundle.expected,
            variants=bundle.variants,
            variant_expected=bundle.variant_expected,
            tol=args.tol,
        )
    if args.command == "involution":
        if spec is None:
            raise UsageError("--spec is required for involution")
        return QuiverBranesEngine.involution(args.action, spec, bundle.X, seed=seed, tol=args.tol)
    if args.command == "stability":
        return QuiverBranesEngine.stability(bundle.X)
    if args.command == "tangent":
        return QuiverBranesEngine.tangent(bundle.X, spec=spec, level=args.level, expected=bundle.expected)
    if args.command == "flow":
        tol = 1e-10 if args.tol is None else args.tol
        return QuiverBranesEngine.flow(bundle.X, level=args.level, tol=tol, max_iters=args.max_iters)
    if args.command == "monad":
        point = parse_point(args.point) if args.point else None
        involution = P2Involution(args.involution, t=args.t, z=args.z) if args.involution else None
        samples = default_samples() if args.samples is None else args.samples
        return QuiverBranesEngine.monad(
            bundle.X,
            point=point,
            samples=samples,
            seed=seed,
            involution=involution,
            spec=spec,
        )
    raise UsageError(f"unknown command {args.command}", {"known": list(COMMANDS)})


def _emit(payload: Dict[str, Any], pretty: bool, out: Optional[str]) -> None:
    text = dumps(payload, pretty=pretty)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        text = dumps({"out": out, "ok": payload.get("ok", False)}, pretty=pretty)
    sys.stdout.write(text + "\n")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except QuiverBranesError as exc:
        sys.stdout.write(dumps(exc.to_dict()) + "\n")
        return EXIT_INPUT
    if not args.command:
        sys.stdout.write(dumps(UsageError("a command is required", {"known": list(COMMANDS)}).to_dict()) + "\n")
        return EXIT_INPUT

    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s %(message)s",
    )
    try:
        report = run(args)
    except QuiverBranesError as exc:
        logger.info(json.dumps({"event": "cli_error", **exc.to_dict()}, ensure_ascii=True, default=str))
        _emit(exc.to_dict(), args.pretty, None)
        return EXIT_INPUT

    _emit(report, args.pretty, args.out)
    return EXIT_OK if report.get("ok", False) else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
