"""Command-line front end.

Subcommands: validate, matrix, parameters, unmate, lamination, render.
All JSON output is deterministic; exit codes partition the failure modes:

    0  success                     4  spectral certification failed
    1  validation failed           5  parameterization failed
    2  parse/usage failure         6  portrait extraction failed
    3  validation failed (unmate)  7  lamination failed
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import mapspec, parameterize, spectral
from .errors import (
    LaminationError,
    MapfileError,
    ParameterizationError,
    PortraitError,
    SpectralError,
    UnmatingError,
    ValidationFailure,
)
from .pipeline import PipelineResult, frac_str, lamination_for_side, run_pipeline
from .svg import SvgScene, render_svg, write_svg

STAGE_EXIT = {
    ValidationFailure: 3,
    SpectralError: 4,
    ParameterizationError: 5,
    PortraitError: 6,
    LaminationError: 7,
}


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def _load(path: str) -> mapspec.MapSpec:
    try:
        return mapspec.parse_file(path)
    except OSError as e:
        raise MapfileError(f"cannot read {path}: {e}") from None


def _check_branch(spec: mapspec.MapSpec, branch: int) -> None:
    if not 0 <= branch < spec.degree - 1:
        raise MapfileError(
            f"--branch {branch} out of range for degree {spec.degree} "
            f"(need 0 <= branch < {spec.degree - 1})"
        )


def cmd_validate(args) -> int:
    spec = _load(args.mapfile)
    report = mapspec.validate(spec)
    _emit(report.to_json())
    return 0 if report.passed else 1


def cmd_matrix(args) -> int:
    spec = _load(args.mapfile)
    mapspec.validate_or_raise(spec)
    matrix = spectral.transition_matrix(spec)
    lengths = spectral.certify_perron(matrix, spec.degree)
    _emit(
        {
            "matrix": [list(row) for row in matrix.entries],
            "eigenvector": [frac_str(Fraction(x)) for x in lengths.eigenvector],
            "lengths": [frac_str(l) for l in lengths.lengths],
        }
    )
    return 0


def cmd_parameters(args) -> int:
    spec = _load(args.mapfile)
    _check_branch(spec, args.branch)
    mapspec.validate_or_raise(spec)
    matrix = spectral.transition_matrix(spec)
    lengths = spectral.certify_perron(matrix, spec.degree)
    params = parameterize.solve_for_spec(spec, lengths, branch=args.branch)
    pullback = parameterize.pullback_parameters(params, spec)
    labels = [f"{spec.marker_post(i)}#{i}" for i in range(spec.k)]
    _emit(
        {
            "t": {label: frac_str(t) for label, t in zip(labels, params.t)},
            "s": [frac_str(s) for s in pullback.s],
            "branch": args.branch,
        }
    )
    return 0


def _run(args) -> PipelineResult:
    spec = _load(args.mapfile)
    _check_branch(spec, getattr(args, "branch", 0))
    return run_pipeline(spec, branch=getattr(args, "branch", 0), depth=getattr(args, "depth", 3))


def cmd_unmate(args) -> int:
    result = _run(args)
    _emit(result.to_json())
    if args.svg:
        # the requested path gets the two-sided overlay, plus one file per side
        base = args.svg[:-4] if args.svg.endswith(".svg") else args.svg
        write_svg(
            SvgScene.from_classes([result.lamination_white, result.lamination_black]),
            args.svg,
        )
        write_svg(SvgScene.from_classes([result.lamination_white]), f"{base}.white.svg")
        write_svg(SvgScene.from_classes([result.lamination_black]), f"{base}.black.svg")
    return 0


def cmd_lamination(args) -> int:
    result = _run(args)
    classes = lamination_for_side(result, args.side)
    _emit(result.lamination_json(classes))
    if args.svg:
        if args.side == "join":
            scene = SvgScene.from_classes(
                [result.lamination_white, result.lamination_black]
            )
        else:
            scene = SvgScene.from_classes([classes])
        write_svg(scene, args.svg)
    return 0


def cmd_render(args) -> int:
    result = _run(args)
    if args.side == "join":
        scene = SvgScene.from_classes([result.lamination_white, result.lamination_black])
    else:
        scene = SvgScene.from_classes([lamination_for_side(result, args.side)])
    if args.svg:
        write_svg(scene, args.svg)
    else:
        sys.stdout.write(render_svg(scene).decode("utf-8"))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unmating",
        description="Unmate an expanding Thurston map given an invariant oriented curve.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, branch=False, depth=False, side=False, svg=False):
        p = sub.add_parser(name)
        p.add_argument("mapfile")
        if branch:
            p.add_argument("--branch", type=int, default=0)
        if depth:
            p.add_argument("--depth", type=int, default=3)
        if side:
            p.add_argument("--side", choices=["w", "b", "join"], default="join")
        if svg:
            p.add_argument("--svg", default=None)
        p.add_argument("--format", choices=["json"], default="json")
        p.set_defaults(fn=fn)
        return p

    add("validate", cmd_validate)
    add("matrix", cmd_matrix)
    add("parameters", cmd_parameters, branch=True)
    add("unmate", cmd_unmate, branch=True, depth=True, svg=True)
    add("lamination", cmd_lamination, branch=True, depth=True, side=True, svg=True)
    add("render", cmd_render, branch=True, depth=True, side=True, svg=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except MapfileError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValidationFailure as e:
        _emit(e.report.to_json())
        print("error: validation failed (stage: complex)", file=sys.stderr)
        return 3 if args.command != "validate" else 1
    except UnmatingError as e:
        stage = {
            SpectralError: "spectral",
            ParameterizationError: "parameterize",
            PortraitError: "portraits",
            LaminationError: "laminations",
        }.get(type(e), "pipeline")
        print(f"error: {e} (stage: {stage})", file=sys.stderr)
        return STAGE_EXIT.get(type(e), 1)


if __name__ == "__main__":
    sys.exit(main())
