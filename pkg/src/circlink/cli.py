"""Command-line front end.

Exit codes are part of the contract: 0 on success, 1 for semantic problems
(validation violations, failed equivariance, points outside the disc), 2 for
malformed input (bad JSON, bad schema, bad argument syntax). All JSON output
is key-sorted with a fixed layout, so identical inputs give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import tempfile
from fractions import Fraction

from .errors import CirclinkError, FamilyValidationError, MalformedInputError
from .family import (
    DisjointLinked,
    FamilyPair,
    IntersectingAt,
    classify_pair,
    especial_disc,
)
from .generators import GenSpec, gen_symmetric
from .hullgeom import PlanePoint
from .render import RenderOptions, render_input_svg, render_straightened_svg
from .straighten import layout, result_to_json, straighten_point
from .symmetry import CircleMap, check_equivariance

__all__ = ["main"]


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise MalformedInputError("cannot read %s: %s" % (path, exc.strerror), path) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(
            "invalid JSON: %s" % exc.msg,
            "%s: line %d column %d" % (path, exc.lineno, exc.colno)) from None


def _load_pair(path: str) -> FamilyPair:
    return FamilyPair.from_json(_load_json(path))


def _atomic_write(path: str, data: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".circlink-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _parse_point(text: str) -> PlanePoint:
    parts = text.split(",")
    if len(parts) != 2:
        raise MalformedInputError("point must be \"x,y\" with rational entries", "--point")
    try:
        return PlanePoint(Fraction(parts[0].strip()), Fraction(parts[1].strip()))
    except (ValueError, ZeroDivisionError):
        raise MalformedInputError("bad rational in point %r" % text, "--point") from None


def cmd_validate(args) -> int:
    fp = _load_pair(args.file)
    _emit({"ok": True, "plus": len(fp.plus), "minus": len(fp.minus)})
    return 0


def cmd_classify(args) -> int:
    fp = _load_pair(args.file)
    rows = []
    for i in range(len(fp.plus)):
        for j in range(len(fp.minus)):
            c = classify_pair(fp, i, j)
            row = {"plus": i, "minus": j}
            if isinstance(c, IntersectingAt):
                row["class"] = "intersecting"
                row["point"] = str(c.point)
            elif isinstance(c, DisjointLinked):
                row["class"] = "linked"
                row["n"] = c.n
            else:
                row["class"] = "unlinked"
            rows.append(row)
    _emit({"pairs": rows})
    return 0


def cmd_disc(args) -> int:
    fp = _load_pair(args.file)
    _emit(especial_disc(fp, workers=args.workers).to_json())
    return 0


def cmd_straighten(args) -> int:
    fp = _load_pair(args.file)
    _emit(result_to_json(straighten_point(fp, _parse_point(args.point))))
    return 0


def cmd_render(args) -> int:
    fp = _load_pair(args.file)
    opts = RenderOptions(width=args.width, height=args.height, labels=args.labels)
    sd = layout(fp)
    input_path = args.out + "-input.svg"
    straight_path = args.out + "-straightened.svg"
    _atomic_write(input_path, render_input_svg(fp, opts))
    _atomic_write(straight_path, render_straightened_svg(sd, opts))
    _emit({"written": [input_path, straight_path]})
    return 0


def cmd_equivariance(args) -> int:
    fp = _load_pair(args.file)
    g = CircleMap.from_json(_load_json(args.map))
    report = check_equivariance(fp, g)
    _emit(report.to_json())
    return 0 if report.ok else 1


def cmd_gen(args) -> int:
    spec = GenSpec(kind=args.kind, n=args.n, k=args.k, depth=args.depth, seed=args.seed)
    fp = spec.build()
    if args.map_out is not None:
        if args.kind != "symmetric":
            raise MalformedInputError("--map-out only applies to --kind symmetric", "--map-out")
        _atomic_write(args.map_out,
                      json.dumps(gen_symmetric()[1].to_json(), sort_keys=True, indent=2) + "\n")
    _emit(fp.to_json())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circlink",
        description="Exact linking analysis and straightening of chord families on the circle.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a family pair file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("classify", help="classify every cross pair")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("disc", help="compute the classification disc")
    p.add_argument("file")
    p.add_argument("--workers", type=int, default=0, help="parallel classification threads")
    p.set_defaults(func=cmd_disc)

    p = sub.add_parser("straighten", help="straighten one plane point")
    p.add_argument("file")
    p.add_argument("--point", required=True, help="\"x,y\" with rational entries like -13/17,10/17")
    # let --point values with a leading minus (negative rationals) parse as
    # values instead of option strings
    matcher = re.compile(r"^-\d[\d/.,-]*$")
    for sp in (parser, p):
        if hasattr(sp, "_negative_number_matcher"):
            sp._negative_number_matcher = matcher
    p.set_defaults(func=cmd_straighten)

    p = sub.add_parser("render", help="write input and straightened SVG files")
    p.add_argument("file")
    p.add_argument("--out", required=True, help="output path prefix")
    p.add_argument("--width", type=int, default=RenderOptions.width)
    p.add_argument("--height", type=int, default=RenderOptions.height)
    p.add_argument("--labels", action="store_true")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("equivariance", help="check a symmetry against a family pair")
    p.add_argument("file")
    p.add_argument("--map", required=True, help="JSON file with the projective map")
    p.set_defaults(func=cmd_equivariance)

    p = sub.add_parser("gen", help="emit a generated family pair as JSON")
    p.add_argument("--kind", required=True,
                   choices=["grid", "tripod", "star", "nested", "symmetric", "figure"])
    p.add_argument("--n", type=int, default=2, help="grid size")
    p.add_argument("--k", type=int, default=3, help="star valence")
    p.add_argument("--depth", type=int, default=2, help="nesting depth")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--map-out", default=None,
                   help="with --kind symmetric, also write the symmetry map here")
    p.set_defaults(func=cmd_gen)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MalformedInputError as exc:
        _emit({"error": "malformed-input", "message": exc.message, "location": exc.location})
        return 2
    except FamilyValidationError as exc:
        _emit({"ok": False, "violations": [v.to_json() for v in exc.violations]})
        return 1
    except CirclinkError as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return 1
    except ValueError as exc:
        _emit({"error": "invalid-value", "message": str(exc)})
        return 1


if __name__ == "__main__":
    sys.exit(main())
