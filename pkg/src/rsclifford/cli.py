"""Command line entry points.

``rsclifford verify <suite>`` runs verification suites and prints one
line per check; ``dump-basis`` materializes a monogenic basis to disk,
reusing a previous dump when it matches; ``eval`` evaluates library
fixtures at a point.

Configuration precedence, lowest to highest: built-in defaults, a JSON
config file (``--config``), ``RSCLIFFORD_*`` environment variables, then
explicit flags.  Exit codes: 0 all checks passed, 1 at least one check
failed, 2 the configuration was invalid.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction

from .higherspin import solve_polynomial_kernel
from .report import write_report_files
from .spaces import MonogenicBasis, ZonalKernel, constant_value, dump_basis, load_basis
from .suites import (
    SUITE_NAMES,
    ConfigError,
    RunConfig,
    default_tolerances,
    expand_suite_arg,
    run_suites,
)

ENV_PREFIX = "RSCLIFFORD_"

_INT_FIELDS = ("m", "k", "d", "sphere_order", "radial_order", "boundary_order", "seed")
_FLOAT_FIELDS = ("delta", "fd_step")

log = logging.getLogger("rsclifford")


def _parse_scalar(name: str, raw: str):
    try:
        if name in _INT_FIELDS:
            return int(raw)
        if name in _FLOAT_FIELDS:
            return float(raw)
        if name == "parallel":
            return raw.strip().lower() in ("1", "true", "yes", "on")
        return raw
    except ValueError as exc:
        raise ConfigError(f"bad value for {name}: {raw!r}") from exc


def _apply_mapping(config: RunConfig, values: dict, origin: str) -> None:
    for name, value in values.items():
        if name == "tolerances":
            if not isinstance(value, dict):
                raise ConfigError(f"{origin}: tolerances must be a mapping")
            for tol_name, tol_value in value.items():
                key = tol_name.replace("-", "_")
                if key not in config.tolerances:
                    raise ConfigError(f"{origin}: unknown tolerance {tol_name!r}")
                config.tolerances[key] = float(tol_value)
        elif hasattr(config, name):
            current = getattr(config, name)
            if isinstance(value, str) and not isinstance(current, (str, type(None))):
                value = _parse_scalar(name, value)
            setattr(config, name, value)
        else:
            raise ConfigError(f"{origin}: unknown option {name!r}")


def _config_from_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    return data


def _config_from_env(environ=None) -> dict:
    environ = os.environ if environ is None else environ
    out: dict = {}
    tols: dict = {}
    for key, raw in environ.items():
        if not key.startswith(ENV_PREFIX):
            continue
        name = key[len(ENV_PREFIX):].lower()
        if name.startswith("tol_"):
            tols[name[4:]] = raw
        else:
            out[name] = raw
    if tols:
        out["tolerances"] = tols
    return out


def build_config(args: argparse.Namespace) -> RunConfig:
    config = RunConfig()
    if args.config:
        _apply_mapping(config, _config_from_file(args.config), f"config {args.config}")
    _apply_mapping(config, _config_from_env(), "environment")
    flag_values: dict = {}
    for name in (*_INT_FIELDS, *_FLOAT_FIELDS, "regime", "out"):
        value = getattr(args, name, None)
        if value is not None:
            flag_values[name] = value
    if args.parallel:
        flag_values["parallel"] = True
    tols = {
        name: value
        for name, value in vars(args).items()
        if name.startswith("tol_") and value is not None
    }
    if tols:
        flag_values["tolerances"] = {n[4:]: v for n, v in tols.items()}
    _apply_mapping(config, flag_values, "flags")
    config.validate()
    return config


def _add_verify_parser(sub) -> None:
    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suite", choices=[*SUITE_NAMES, "all"])
    p.add_argument("--m", type=int, default=None, help="ambient dimension")
    p.add_argument("--k", type=int, default=None, help="spin degree")
    p.add_argument("--d", type=int, default=None, help="polynomial degree cap")
    p.add_argument("--sphere-order", type=int, default=None, dest="sphere_order")
    p.add_argument("--radial-order", type=int, default=None, dest="radial_order")
    p.add_argument("--boundary-order", type=int, default=None, dest="boundary_order")
    p.add_argument("--delta", type=float, default=None, help="polar split radius")
    p.add_argument("--fd-step", type=float, default=None, dest="fd_step")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--regime", choices=["exact", "float"], default=None)
    p.add_argument("--out", default=None, help="write report files at this path")
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--config", default=None, help="JSON config file")
    for name in sorted(default_tolerances()):
        p.add_argument(
            f"--tol-{name.replace('_', '-')}",
            type=float,
            default=None,
            dest=f"tol_{name}",
        )


def cmd_verify(args: argparse.Namespace) -> int:
    config = build_config(args)
    report = run_suites(expand_suite_arg(args.suite), config)
    for record in report.records:
        print(record.line())
    summary = report.summary()
    print(
        f"{summary['passed']}/{summary['asserted']} checks passed"
        f"  calibration={report.records[0].calibration_factor:.9f}"
    )
    if config.out:
        out = config.out
        if os.path.isdir(out) or out.endswith(os.sep):
            os.makedirs(out, exist_ok=True)
            out = os.path.join(out, "report.json")
        elif os.path.dirname(out):
            os.makedirs(os.path.dirname(out), exist_ok=True)
        for path in write_report_files(report, out):
            print(f"wrote {path}")
    return 0 if report.all_passed else 1


def cmd_dump_basis(m: int, k: int, path: str) -> int:
    if os.path.exists(path):
        try:
            cached = load_basis(path)
        except (ValueError, KeyError, json.JSONDecodeError):
            cached = None
        if cached is not None and cached.m == m and cached.k == k:
            log.info("basis cache hit for m=%d k=%d at %s, skipping rebuild", m, k, path)
            print(f"{path} already holds the (m={m}, k={k}) basis, dim {cached.dim}")
            return 0
    basis = MonogenicBasis.build(m, k)
    dump_basis(basis, path)
    print(f"wrote {path} with {basis.dim} elements")
    return 0


def _fraction_point(values, want: int, label: str) -> list[Fraction]:
    if len(values) != want:
        raise ConfigError(f"{label} expects {want} coordinates, got {len(values)}")
    out = []
    for raw in values:
        try:
            out.append(Fraction(raw))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad coordinate {raw!r}") from exc
    return out


def cmd_eval(fixture: str, point: list[str]) -> int:
    parts = fixture.split(":")
    kind = parts[0]
    try:
        ids = [int(p) for p in parts[1:]]
    except ValueError as exc:
        raise ConfigError(f"bad fixture id {fixture!r}") from exc
    if kind == "kernel" and len(ids) == 4:
        m, k, d, i = ids
        sols = solve_polynomial_kernel(m, k, d)
        if not 0 <= i < len(sols):
            raise ConfigError(f"index {i} outside kernel of dimension {len(sols)}")
        coords = _fraction_point(point, 2 * m, fixture)
        value = sols[i].evaluate(x=coords[:m], u=coords[m:])
    elif kind == "basis" and len(ids) == 3:
        m, k, i = ids
        basis = MonogenicBasis.build(m, k)
        if not 0 <= i < basis.dim:
            raise ConfigError(f"index {i} outside basis of dimension {basis.dim}")
        coords = _fraction_point(point, m, fixture)
        value = constant_value(basis[i].evaluate(u=coords))
    elif kind == "zonal" and len(ids) == 2:
        m, k = ids
        coords = _fraction_point(point, 2 * m, fixture)
        value = ZonalKernel.build(m, k).evaluate(coords[:m], coords[m:])
    else:
        raise ConfigError(
            f"unknown fixture {fixture!r}; use kernel:m:k:d:i, basis:m:k:i or zonal:m:k"
        )
    print(value)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rsclifford",
        description="verification suites for higher spin Clifford analysis",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    _add_verify_parser(sub)

    p = sub.add_parser("dump-basis", help="write a monogenic basis to a file")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("path")

    p = sub.add_parser("eval", help="evaluate a fixture at a point")
    p.add_argument("fixture", help="kernel:m:k:d:i, basis:m:k:i or zonal:m:k")
    p.add_argument(
        "point",
        nargs=argparse.REMAINDER,
        help="coordinates, rationals accepted, negatives included",
    )
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "dump-basis":
            return cmd_dump_basis(args.m, args.k, args.path)
        if args.command == "eval":
            return cmd_eval(args.fixture, args.point)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    parser.error("unknown command")
    return 2


if __name__ == "__main__":
    sys.exit(main())
