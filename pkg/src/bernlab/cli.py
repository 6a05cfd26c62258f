"""Single executable: norm, roots, op, check, fuzz, alpha-map, extremal.

Machine-readable output only (JSON, CSV); --pretty indents the JSON.  Every
run writes a manifest (tool version, subcommand, parameter echo, seed,
wall time, warnings) to stderr, and next to the output file when --out is
used — the data artifact itself stays byte-deterministic.

Exit codes: 0 success / HOLDS, 2 VIOLATED found, 3 INCONCLUSIVE, 64 usage or
malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import __version__
from .explore import (
    AlphaPolicy,
    FuzzConfig,
    GeneratorKind,
    alpha_map,
    extremal_search,
    fuzz,
    gen_poly,
)
from .inequalities import DegenerateRHSError, InequalityId, Verdict, check
from .norms import NormExponent, norm_info
from .operators import d2_compose, d_alpha
from .polycore import Poly, PolyJSONError, poly_from_json, poly_to_json
from .roots import find_roots

_USAGE_EXIT = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse default exits 2; the contract is 64
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(_USAGE_EXIT)


class UsageError(ValueError):
    pass


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise UsageError(f"expected 're,im' (or a bare real), got {text!r}")


def _parse_pair(text: str, kind=float) -> tuple:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"expected 'a,b', got {text!r}")
    try:
        return kind(parts[0]), kind(parts[1])
    except ValueError:
        raise UsageError(f"expected 'a,b', got {text!r}") from None


_INEQ_BY_FLAG = {iid.value.lower().replace("_", "-"): iid for iid in InequalityId}


def _read_poly(args: argparse.Namespace) -> Poly:
    if getattr(args, "infile", None):
        with open(args.infile, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"input is not valid JSON: {exc}") from None
    return poly_from_json(obj)


def _emit(args: argparse.Namespace, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(args: argparse.Namespace, obj: dict) -> str:
    if getattr(args, "pretty", False):
        return json.dumps(obj, sort_keys=True, indent=2) + "\n"
    return json.dumps(obj, sort_keys=True) + "\n"


@dataclass
class RunManifest:
    tool_version: str
    subcommand: str
    params: dict
    seed: int | None
    wall_time_s: float
    warnings: list

    def to_json(self) -> dict:
        return {
            "tool_version": self.tool_version,
            "subcommand": self.subcommand,
            "params": self.params,
            "seed": self.seed,
            "wall_time_s": self.wall_time_s,
            "warnings": self.warnings,
        }


def _write_manifest(args: argparse.Namespace, started: float, warnings: list) -> None:
    params = {
        k: v for k, v in vars(args).items() if k not in ("func",) and not callable(v)
    }
    manifest = RunManifest(
        tool_version=__version__,
        subcommand=args.subcommand,
        params={k: repr(v) for k, v in sorted(params.items())},
        seed=getattr(args, "seed", None),
        wall_time_s=round(time.monotonic() - started, 6),
        warnings=warnings,
    )
    line = json.dumps(manifest.to_json(), sort_keys=True) + "\n"
    sys.stderr.write(line)
    if getattr(args, "out", None):
        with open(args.out + ".manifest.json", "w", encoding="utf-8") as fh:
            fh.write(line)


def _cmd_norm(args) -> int:
    P = _read_poly(args)
    e = NormExponent.parse(args.p)
    info = norm_info(P, e, args.rel_tol)
    _emit(args, _dump(args, {
        "value": info.value,
        "achieved_tol": info.achieved_tol,
        "warnings": list(info.warnings),
    }))
    return 0


def _cmd_roots(args) -> int:
    P = _read_poly(args)
    rep = find_roots(P)
    _emit(args, _dump(args, rep.to_json()))
    return 0


def _cmd_op(args) -> int:
    P = _read_poly(args)
    alpha = _parse_complex(args.alpha)
    if args.gamma is not None:
        out = d2_compose(P, alpha, _parse_complex(args.gamma))
    else:
        out = d_alpha(P, alpha)
    _emit(args, _dump(args, poly_to_json(out)))
    return 0


def _cmd_check(args) -> int:
    P = _read_poly(args)
    iid = _INEQ_BY_FLAG[args.ineq]
    e = NormExponent.parse(args.p)
    alpha = _parse_complex(args.alpha) if args.alpha is not None else None
    gamma = _parse_complex(args.gamma) if args.gamma is not None else None
    try:
        rep = check(iid, P, e, alpha, gamma, args.rel_tol)
    except DegenerateRHSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return _USAGE_EXIT
    _emit(args, _dump(args, rep.to_json()))
    return {Verdict.HOLDS: 0, Verdict.VIOLATED: 2, Verdict.INCONCLUSIVE: 3}[rep.verdict]


def _build_fuzz_config(args) -> FuzzConfig:
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            return FuzzConfig.from_json(json.load(fh))
    if not args.ineq:
        raise UsageError("fuzz needs --config or --ineq")
    family = None
    if args.family:
        with open(args.family, "r", encoding="utf-8") as fh:
            family = poly_from_json(json.load(fh))
    return FuzzConfig(
        inequality_id=_INEQ_BY_FLAG[args.ineq],
        count=args.count,
        degree_range=_parse_pair(args.degrees, int),
        p_grid=tuple(NormExponent.parse(t) for t in args.p_grid.split(",")),
        generator_kind=GeneratorKind(args.kind),
        seed=args.seed,
        alpha_policy=AlphaPolicy(args.alpha_policy),
        disk_radius=args.radius,
        family=family,
    )


def _cmd_fuzz(args) -> int:
    cfg = _build_fuzz_config(args)
    report = fuzz(cfg, threads=args.threads)
    if getattr(args, "pretty", False):
        _emit(args, json.dumps(report.to_json(), sort_keys=True, indent=2) + "\n")
    else:
        _emit(args, report.json_bytes().decode() + "\n")
    return 2 if report.counts.get("VIOLATED", 0) else 0


def _cmd_alpha_map(args) -> int:
    iid = _INEQ_BY_FLAG[args.ineq]
    e = NormExponent.parse(args.p)
    if args.infile:
        with open(args.infile, "r", encoding="utf-8") as fh:
            family = [poly_from_json(json.load(fh))]
    else:
        kind = GeneratorKind(args.kind)
        family = [
            gen_poly(kind, args.family_degree,
                     np.random.default_rng(np.random.SeedSequence(args.seed, spawn_key=(i,))),
                     args.radius)
            for i in range(args.family_count)
        ]
    gamma = _parse_complex(args.gamma) if args.gamma is not None else None
    result = alpha_map(
        family, e,
        _parse_pair(args.re), _parse_pair(args.im),
        _parse_pair(args.steps, int),
        iid=iid, gamma=gamma, rel_tol=args.rel_tol,
    )
    _emit(args, result.to_csv())
    return 0


def _cmd_extremal(args) -> int:
    iid = _INEQ_BY_FLAG[args.ineq]
    e = NormExponent.parse(args.p)
    alpha = _parse_complex(args.alpha) if args.alpha is not None else None
    gamma = _parse_complex(args.gamma) if args.gamma is not None else None
    result = extremal_search(
        iid, args.n, e, alpha, gamma, restarts=args.restarts, seed=args.seed,
    )
    _emit(args, _dump(args, result.to_json()))
    return 0


def _env_threads() -> int:
    raw = os.environ.get("BERNLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> _Parser:
    parser = _Parser(prog="bernlab", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p: _Parser, poly_input: bool = True):
        if poly_input:
            p.add_argument("--in", dest="infile", help="input Poly JSON file (default stdin)")
        p.add_argument("--out", help="output file (default stdout)")
        p.add_argument("--pretty", action="store_true", help="indent JSON output")
        p.add_argument("--rel-tol", type=float, default=1e-11)
        p.add_argument("--threads", type=int, default=_env_threads())

    p = sub.add_parser("norm", help="compute a norm of a polynomial")
    p.add_argument("--p", required=True, help="exponent: 0 (Mahler), inf (sup), or p > 0")
    common(p)
    p.set_defaults(func=_cmd_norm)

    p = sub.add_parser("roots", help="all roots with residuals")
    common(p)
    p.set_defaults(func=_cmd_roots)

    p = sub.add_parser("op", help="apply zP' - alpha P (or the second-order composition)")
    p.add_argument("--alpha", required=True, help="complex as re,im")
    p.add_argument("--gamma", help="complex as re,im; triggers the second-order operator")
    common(p)
    p.set_defaults(func=_cmd_op)

    p = sub.add_parser("check", help="evaluate one inequality instance")
    p.add_argument("--ineq", required=True, choices=sorted(_INEQ_BY_FLAG))
    p.add_argument("--alpha", help="complex as re,im")
    p.add_argument("--gamma", help="complex as re,im")
    p.add_argument("--p", required=True)
    common(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("fuzz", help="randomized falsification run")
    p.add_argument("--config", help="FuzzConfig JSON file (overrides the flags below)")
    p.add_argument("--ineq", choices=sorted(_INEQ_BY_FLAG))
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--degrees", default="1,12", help="degree range lo,hi")
    p.add_argument("--p-grid", default="0,0.5,1,2,3,inf", help="comma-separated exponents")
    p.add_argument("--kind", default="UNRESTRICTED", choices=[k.value for k in GeneratorKind])
    p.add_argument("--radius", type=float, default=1.0, help="disk radius for ZEROS_IN_DISK")
    p.add_argument("--alpha-policy", default="ADMISSIBLE", choices=[a.value for a in AlphaPolicy])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--family", help="fixed Poly JSON file instead of the generator")
    common(p)
    p.set_defaults(func=_cmd_fuzz)

    p = sub.add_parser("alpha-map", help="scan the alpha plane, max ratio per cell")
    p.add_argument("--ineq", default="thm1-first", choices=sorted(_INEQ_BY_FLAG))
    p.add_argument("--p", required=True)
    p.add_argument("--re", required=True, help="real-axis range lo,hi")
    p.add_argument("--im", required=True, help="imaginary-axis range lo,hi")
    p.add_argument("--steps", required=True, help="grid steps nre,nim")
    p.add_argument("--gamma", help="fixed gamma for second-order ids")
    p.add_argument("--kind", default="UNRESTRICTED", choices=[k.value for k in GeneratorKind])
    p.add_argument("--family-count", type=int, default=1)
    p.add_argument("--family-degree", type=int, default=5)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=_cmd_alpha_map)

    p = sub.add_parser("extremal", help="maximize the ratio by restarted local search")
    p.add_argument("--ineq", required=True, choices=sorted(_INEQ_BY_FLAG))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", help="complex as re,im")
    p.add_argument("--gamma", help="complex as re,im")
    p.add_argument("--p", required=True)
    p.add_argument("--restarts", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    common(p, poly_input=False)
    p.set_defaults(func=_cmd_extremal)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else _USAGE_EXIT
    started = time.monotonic()
    warnings: list = []
    try:
        code = args.func(args)
    except (UsageError, PolyJSONError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return _USAGE_EXIT
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return _USAGE_EXIT
    except (ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return _USAGE_EXIT
    _write_manifest(args, started, warnings)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
