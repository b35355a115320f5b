"""Command-line entry points.

Subcommands: constants (closed-form scalars as JSON), generate (sampled
grid as CSV or projected OBJ), verify (certification report as JSON,
exit 0 iff every check passes), project (projected OBJ, figure-style
output).  Exit codes: 0 success/pass, 1 verification failure, 2 invalid
input.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Dict, Optional

from .ambient import BergerParams
from .constants import compute_constants
from .errors import GeometryError
from .export import export_csv, export_obj, project_grid
from .family import XiProfile, example_profile, profile_from_config
from .surface import make_surface, sample_grid
from .verify import DEFAULT_TOLERANCES, VerifyConfig, run_all


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation needs, validated before any computation."""

    params: BergerParams
    profile: XiProfile
    nu: int
    nv: int
    output: Optional[str]
    fmt: str
    pole: int = 4
    fv_method: Optional[str] = None
    tolerances: Dict[str, float] = field(default_factory=dict)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bergerhelix",
        description="Construct and certify constant-angle surfaces in Berger spheres.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--epsilon", type=float, default=1.0,
                       help="fiber deformation parameter (default 1.0)")
        p.add_argument("--theta", type=float, default=math.pi / 4,
                       help="constant angle in radians, in (0, pi/2) (default pi/4)")
        p.add_argument("--config", help="JSON profile config path (default: reference profile)")
        p.add_argument("--nu", type=int, default=101, help="u samples (default 101)")
        p.add_argument("--nv", type=int, default=101, help="v samples (default 101)")
        p.add_argument("--output", help="output path (default: stdout)")
        p.add_argument("--pole", type=int, default=4, choices=(1, 2, 3, 4),
                       help="stereographic pole axis (default 4)")
        p.add_argument("--fv-method", choices=("analytic", "fd"), default=None,
                       help="how F_v is computed (default: analytic when available)")

    p_const = sub.add_parser("constants", help="print the closed-form constants as JSON")
    p_const.add_argument("--epsilon", type=float, default=1.0)
    p_const.add_argument("--theta", type=float, default=math.pi / 4)
    p_const.add_argument("--output")

    p_gen = sub.add_parser("generate", help="sample the surface and export it")
    common(p_gen)
    p_gen.add_argument("--format", choices=("obj", "csv"), default="csv",
                       help="output format (default csv)")

    p_ver = sub.add_parser("verify", help="run the certification suite")
    common(p_ver)
    p_ver.add_argument("--format", choices=("json",), default="json")
    p_ver.add_argument("--tolerance", action="append", default=[],
                       metavar="NAME=VALUE", help="override a check tolerance (repeatable)")

    p_proj = sub.add_parser("project", help="export the stereographic projection as OBJ")
    common(p_proj)
    p_proj.add_argument("--format", choices=("obj",), default="obj")
    return parser


def _parse_tolerances(pairs) -> Dict[str, float]:
    out = {}
    for item in pairs:
        name, sep, value = item.partition("=")
        if not sep or name not in DEFAULT_TOLERANCES:
            known = ", ".join(sorted(DEFAULT_TOLERANCES))
            raise GeometryError(
                f"bad --tolerance {item!r}; expected NAME=VALUE with NAME in {{{known}}}")
        try:
            out[name] = float(value)
        except ValueError as exc:
            raise GeometryError(f"bad --tolerance value in {item!r}") from exc
    return out


def _config_from_args(args) -> RunConfig:
    params = BergerParams(epsilon=args.epsilon, theta=args.theta)
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            profile = profile_from_config(json.load(fh))
    else:
        profile = example_profile()
    if args.nu < 2 or args.nv < 2:
        raise GeometryError(f"grid needs --nu and --nv >= 2, got ({args.nu}, {args.nv})")
    fmt = "obj" if args.command == "project" else args.format
    return RunConfig(
        params=params, profile=profile, nu=args.nu, nv=args.nv,
        output=args.output, fmt=fmt, pole=args.pole, fv_method=args.fv_method,
        tolerances=_parse_tolerances(getattr(args, "tolerance", [])),
    )


def _emit(data: bytes, output: Optional[str]):
    if output:
        with open(output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data.decode("ascii"))


def _run(args) -> int:
    if args.command == "constants":
        consts = compute_constants(BergerParams(epsilon=args.epsilon, theta=args.theta))
        text = json.dumps(dataclasses.asdict(consts), indent=2, sort_keys=True) + "\n"
        _emit(text.encode("ascii"), args.output)
        return 0

    cfg = _config_from_args(args)
    surface = make_surface(cfg.params, cfg.profile, fv_method=cfg.fv_method)

    if args.command == "verify":
        report = run_all(surface, VerifyConfig(nu=cfg.nu, nv=cfg.nv,
                                               tolerances=cfg.tolerances))
        _emit((report.to_json() + "\n").encode("ascii"), cfg.output)
        return 0 if report.overall_pass else 1

    grid = sample_grid(surface, cfg.nu, cfg.nv)
    if cfg.fmt == "csv":
        _emit(export_csv(grid), cfg.output)
    else:
        _emit(export_obj(project_grid(grid, pole=cfg.pole)), cfg.output)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return _run(args)
    except GeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
