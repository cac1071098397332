"""Command-line entry point: ``point``, ``sweep`` and ``verify`` subcommands.

Natural units throughout (hbar = c = k_B = 1).  Acceleration therefore has the
dimension of a temperature (and of an inverse length); no unit conversion is
performed.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import DomainError, OracleError, QuadratureError
from .frontend import SweepConfig, run_point, run_sweep, run_verify
from .quadrature import tolerance_profile
from .shift import AtomPairConfig

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3

_STATES = {"sym": "symmetric", "antisym": "antisymmetric",
           "symmetric": "symmetric", "antisymmetric": "antisymmetric"}
_METHODS = {"closed": "closed_form", "closed_form": "closed_form", "oracle": "oracle"}

# config keys accepted from --config files, with their CLI counterparts
_CONFIG_KEYS = {"channel", "a", "z", "omega0", "state", "lambda", "dipole_a", "dipole_b",
                "method", "methods", "out", "tol_profile", "vary", "start", "stop",
                "num_points", "spacing", "workers", "grid", "json"}


class InputError(Exception):
    pass


def _vector(text):
    parts = text.split(",")
    try:
        vec = tuple(float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y,z with numbers, got {text!r}") from None
    if len(vec) != 3:
        raise argparse.ArgumentTypeError(f"expected three components, got {len(vec)}")
    return vec


def _common(p):
    p.add_argument("--config", help="JSON object of scalars and short arrays; "
                                    "command-line flags take precedence")
    p.add_argument("--channel", choices=("scalar", "em"))
    p.add_argument("--a", type=float, help="proper acceleration (>= 0)")
    p.add_argument("--z", type=float, help="separation along z (> 0)")
    p.add_argument("--omega0", type=float, help="atomic transition frequency (> 0)")
    p.add_argument("--state", choices=("sym", "antisym"))
    p.add_argument("--lambda", dest="lambda_", type=float, help="scalar coupling constant")
    p.add_argument("--dipole-a", type=_vector, metavar="X,Y,Z")
    p.add_argument("--dipole-b", type=_vector, metavar="X,Y,Z")
    p.add_argument("--method", choices=("closed", "oracle"))
    p.add_argument("--tol-profile", choices=("default", "strict", "fast"))
    p.add_argument("--out", help="output path")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rindler-resonance",
        description="Resonance interaction energy of two uniformly accelerated atoms "
                    "(natural units; acceleration has the dimension of temperature).")
    sub = parser.add_subparsers(dest="command", required=True)

    point = sub.add_parser("point", help="evaluate one configuration")
    _common(point)

    sweep = sub.add_parser("sweep", help="write a CSV sweep over one parameter")
    _common(sweep)
    sweep.add_argument("--vary", choices=("z", "a", "omega0"))
    sweep.add_argument("--start", type=float)
    sweep.add_argument("--stop", type=float)
    sweep.add_argument("--num-points", type=int)
    sweep.add_argument("--spacing", choices=("linear", "log"))
    sweep.add_argument("--methods", help="comma list from closed,oracle (overrides --method)")
    sweep.add_argument("--workers", type=int, help="threads for concurrent grid points")

    verify = sub.add_parser("verify", help="run the acceptance checks")
    _common(verify)
    verify.add_argument("--grid", help="JSON object overriding grid axes, e.g. '{\"a\": [0]}'")
    verify.add_argument("--tolerance", type=float,
                        help="replace every check tolerance (negative control)")
    verify.add_argument("--json", help="also write the machine-readable report here")
    return parser


def _load_config(path):
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("config must be a JSON object")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise InputError(f"unknown config keys: {sorted(unknown)}")
    return data


def _merged(args):
    """CLI flags over config-file values."""
    conf = _load_config(args.config)
    flags = {k: v for k, v in vars(args).items() if v is not None}
    if "lambda_" in flags:
        flags["lambda"] = flags.pop("lambda_")
    for key in ("dipole_a", "dipole_b"):
        if key in conf:
            conf[key] = tuple(float(c) for c in conf[key])
    return {**conf, **flags}


def _pair_config(opts, skip=()):
    params = {"omega0": opts.get("omega0", 1.0), "a": opts.get("a", 0.0),
              "z": opts.get("z", 1.0),
              "symmetry": _state(opts.get("state", "sym")),
              "coupling_lambda": opts.get("lambda", 1.0),
              "dipole_A": opts.get("dipole_a", (0.0, 0.0, 1.0)),
              "dipole_B": opts.get("dipole_b", (0.0, 0.0, 1.0))}
    for k in skip:
        params.pop(k, None)
    return params


def _state(name):
    try:
        return _STATES[name]
    except KeyError:
        raise InputError(f"state must be sym or antisym, got {name!r}") from None


def _method(name):
    try:
        return _METHODS[name]
    except KeyError:
        raise InputError(f"method must be closed or oracle, got {name!r}") from None


def _cmd_point(opts):
    _, oracle = tolerance_profile(opts.get("tol_profile", "default"))
    cfg = AtomPairConfig(**_pair_config(opts))
    run_point(cfg, opts.get("channel", "scalar"), _method(opts.get("method", "closed")), oracle)
    return EXIT_OK


def _cmd_sweep(opts):
    _, oracle = tolerance_profile(opts.get("tol_profile", "default"))
    for key in ("vary", "start", "stop", "num_points"):
        if key not in opts:
            raise InputError(f"sweep needs --{key.replace('_', '-')} (or '{key}' in the config)")
    methods = opts.get("methods", opts.get("method", "closed"))
    if isinstance(methods, str):
        methods = methods.split(",")
    sweep = SweepConfig(
        channel=opts.get("channel", "scalar"), vary=opts["vary"],
        start=float(opts["start"]), stop=float(opts["stop"]),
        num_points=int(opts["num_points"]), spacing=opts.get("spacing", "linear"),
        fixed=_pair_config(opts, skip=(opts["vary"],)),
        methods=tuple(_method(m.strip()) for m in methods),
        output_path=opts.get("out", "sweep.csv"))
    path = run_sweep(sweep, oracle, workers=int(opts.get("workers", 1)))
    print(f"wrote {sweep.num_points * len(sweep.methods)} rows to {path}")
    return EXIT_OK


def _cmd_verify(opts):
    special, oracle = tolerance_profile(opts.get("tol_profile", "default"))
    grid = opts.get("grid")
    if isinstance(grid, str):
        try:
            grid = json.loads(grid)
        except json.JSONDecodeError as exc:
            raise InputError(f"--grid is not valid JSON: {exc}") from exc
    report = run_verify(grid, special, oracle, tolerance_override=opts.get("tolerance"),
                        stream=sys.stdout)
    print(report.format_table())
    target = opts.get("json") or opts.get("out")
    if target:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(report.to_json() + "\n")
    return EXIT_OK if report.passed else EXIT_VERIFY


_COMMANDS = {"point": _cmd_point, "sweep": _cmd_sweep, "verify": _cmd_verify}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)  # argparse exits with status 2 on bad usage
    try:
        opts = _merged(args)
        return _COMMANDS[args.command](opts)
    except (InputError, DomainError, TypeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (QuadratureError, OracleError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
