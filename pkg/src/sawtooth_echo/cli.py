"""Command-line front end.

Subcommands:

* trace       -- one echo experiment, observables after every iteration
* echo-curve  -- echo-time observables across a reversal-time grid
* scaling     -- decay-law fits over a (n_q, epsilon) grid
* verify      -- built-in oracle suite, exit 0/2

Each data command writes a CSV plus a JSON manifest holding everything
needed to reproduce the CSV byte for byte (tool version aside, see README).
Exit codes: 0 success, 1 usage error, 2 verification failure, 3 I/O error.
"""

import argparse
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .echo import EchoConfig, run_echo_curve, run_trace
from .output import (
    CURVE_HEADER,
    TRACE_HEADER,
    load_manifest,
    manifest_path_for,
    read_records_csv,
    records_to_rows,
    write_csv,
    write_manifest,
)
from .program import MapParams, gates_per_iteration
from .scaling import DEFAULT_T_R_GRID, ScalingConfig, run_scaling, summarize_curves
from .verify import run_checks

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_IO = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route argparse failures to exit code 1
        raise UsageError(message)


def parse_int_grid(text: str):
    """Grid syntax: 'a..b', 'a..b:step', or a comma-separated list."""
    text = text.strip()
    try:
        if ".." in text:
            bounds, _, step_text = text.partition(":")
            start_text, _, stop_text = bounds.partition("..")
            start, stop = int(start_text), int(stop_text)
            step = int(step_text) if step_text else 1
            if step < 1:
                raise ValueError
            values = list(range(start, stop + 1, step))
        else:
            values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise UsageError(f"cannot parse grid {text!r}; use 'a..b[:step]' or 'a,b,c'")
    if not values:
        raise UsageError(f"grid {text!r} is empty")
    return tuple(values)


def parse_float_list(text: str):
    try:
        values = tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise UsageError(f"cannot parse float list {text!r}")
    if not values:
        raise UsageError(f"float list {text!r} is empty")
    return values


def _add_run_options(sub, realizations_default=400):
    sub.add_argument("--nq", type=int, help="number of qubits")
    sub.add_argument("--K", type=float, default=5.0, help="chaos parameter (default 5)")
    sub.add_argument("--epsilon", type=float, help="perturbation strength")
    sub.add_argument(
        "--realizations",
        type=int,
        default=realizations_default,
        help=f"noise realizations to average (default {realizations_default})",
    )
    sub.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    sub.add_argument(
        "--threads",
        type=int,
        default=None,
        help="parallel realization workers (default: available cores)",
    )
    sub.add_argument("--out", type=Path, help="output CSV path")


def build_parser() -> _Parser:
    parser = _Parser(prog="sawtooth-echo", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    commands = parser.add_subparsers(dest="command", required=True)

    trace = commands.add_parser(
        "trace", help="observables after every iteration of one echo experiment"
    )
    _add_run_options(trace)
    trace.add_argument("--tr", type=int, help="reversal time in map iterations")
    trace.add_argument(
        "--from-manifest", type=Path, help="re-run the experiment recorded in a manifest"
    )
    trace.set_defaults(handler=cmd_trace)

    curve = commands.add_parser(
        "echo-curve", help="echo-time observables across a reversal-time grid"
    )
    _add_run_options(curve)
    curve.add_argument(
        "--tr-grid",
        type=str,
        default="1..60",
        help="reversal times, 'a..b[:step]' or comma list (default 1..60)",
    )
    curve.add_argument(
        "--from-manifest", type=Path, help="re-run the experiment recorded in a manifest"
    )
    curve.set_defaults(handler=cmd_echo_curve)

    scaling = commands.add_parser(
        "scaling", help="decay-law fits over a grid of qubit counts and strengths"
    )
    scaling.add_argument("--nq-list", type=str, help="qubit counts, e.g. 4,5,6")
    scaling.add_argument("--epsilon-list", type=str, help="strengths, e.g. 0.01,0.02")
    scaling.add_argument(
        "--tr-grid",
        type=str,
        default=None,
        help="reversal-time grid per point (default: built-in coarse grid)",
    )
    scaling.add_argument("--c", type=float, default=0.9, help="echo threshold (default 0.9)")
    scaling.add_argument(
        "--realizations", type=int, default=200, help="realizations per point (default 200)"
    )
    scaling.add_argument("--K", type=float, default=5.0, help="chaos parameter (default 5)")
    scaling.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    scaling.add_argument("--threads", type=int, default=None, help="parallel workers")
    scaling.add_argument("--out", type=Path, help="output JSON summary path")
    scaling.add_argument(
        "--curves-dir",
        type=Path,
        default=None,
        help="directory for per-point curve CSVs (default: '<out stem>_curves')",
    )
    scaling.add_argument(
        "--from-csv",
        type=Path,
        nargs="+",
        default=None,
        help="fit existing echo-curve CSVs (with manifests) instead of simulating",
    )
    scaling.set_defaults(handler=cmd_scaling)

    verify = commands.add_parser("verify", help="run the built-in oracle suite")
    verify.add_argument(
        "--flip-kick-sign", action="store_true", help=argparse.SUPPRESS
    )
    verify.set_defaults(handler=cmd_verify)
    return parser


def _require(args, names):
    for name in names:
        if getattr(args, name.replace("-", "_"), None) is None:
            raise UsageError(f"--{name} is required")


def _base_manifest(command: str, config: EchoConfig, csv_path: Path) -> dict:
    params = MapParams(config.n_q, config.K)
    return {
        "command": command,
        "version": __version__,
        "generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "n_q": config.n_q,
        "K": config.K,
        "epsilon": config.epsilon,
        "realizations": config.realizations,
        "master_seed": config.master_seed,
        "N": params.N,
        "T": params.T,
        "k": params.k,
        "n_g_per_iteration": gates_per_iteration(config.n_q),
        "csv": csv_path.name,
    }


def _config_from_manifest(manifest: dict, command: str, threads) -> EchoConfig:
    if manifest.get("command") != command:
        raise UsageError(
            f"manifest records command {manifest.get('command')!r}, expected {command!r}"
        )
    return EchoConfig(
        n_q=int(manifest["n_q"]),
        epsilon=float(manifest["epsilon"]),
        K=float(manifest["K"]),
        t_r=int(manifest["t_r"]) if "t_r" in manifest else None,
        t_r_grid=tuple(manifest["t_r_grid"]) if "t_r_grid" in manifest else None,
        realizations=int(manifest["realizations"]),
        master_seed=int(manifest["master_seed"]),
        workers=threads,
    )


def cmd_trace(args) -> int:
    if args.from_manifest is not None:
        manifest = load_manifest(args.from_manifest)
        config = _config_from_manifest(manifest, "trace", args.threads)
        out = args.out or args.from_manifest.parent / manifest["csv"]
    else:
        _require(args, ["nq", "tr", "epsilon", "out"])
        config = EchoConfig(
            n_q=args.nq,
            epsilon=args.epsilon,
            K=args.K,
            t_r=args.tr,
            realizations=args.realizations,
            master_seed=args.seed,
            workers=args.threads,
        )
        out = args.out
    records = run_trace(config)
    write_csv(out, TRACE_HEADER, records_to_rows(records))
    manifest = _base_manifest("trace", config, out)
    manifest["t_r"] = config.t_r
    write_manifest(manifest_path_for(out), manifest)
    print(f"wrote {len(records)} rows -> {out}")
    return EXIT_OK


def cmd_echo_curve(args) -> int:
    if args.from_manifest is not None:
        manifest = load_manifest(args.from_manifest)
        config = _config_from_manifest(manifest, "echo-curve", args.threads)
        out = args.out or args.from_manifest.parent / manifest["csv"]
    else:
        _require(args, ["nq", "epsilon", "out"])
        config = EchoConfig(
            n_q=args.nq,
            epsilon=args.epsilon,
            K=args.K,
            t_r_grid=parse_int_grid(args.tr_grid),
            realizations=args.realizations,
            master_seed=args.seed,
            workers=args.threads,
        )
        out = args.out
    records = run_echo_curve(config)
    write_csv(out, CURVE_HEADER, records_to_rows(records))
    manifest = _base_manifest("echo-curve", config, out)
    manifest["t_r_grid"] = list(config.t_r_grid)
    write_manifest(manifest_path_for(out), manifest)
    print(f"wrote {len(records)} rows -> {out}")
    return EXIT_OK


def _load_curves(paths):
    curves = []
    for csv_path in paths:
        manifest = load_manifest(manifest_path_for(csv_path))
        if manifest.get("command") != "echo-curve":
            raise UsageError(f"{csv_path}: manifest is not an echo-curve record")
        curves.append(
            (int(manifest["n_q"]), float(manifest["epsilon"]), read_records_csv(csv_path))
        )
    return curves


def cmd_scaling(args) -> int:
    _require(args, ["out"])
    if args.from_csv is not None:
        summary = summarize_curves(_load_curves(args.from_csv), c=args.c)
        summary["source"] = [str(p) for p in args.from_csv]
        curve_files = None
    else:
        _require(args, ["nq-list", "epsilon-list"])
        config = ScalingConfig(
            nq_list=[int(n) for n in parse_int_grid(args.nq_list)],
            epsilon_list=parse_float_list(args.epsilon_list),
            t_r_grid=(
                parse_int_grid(args.tr_grid) if args.tr_grid else DEFAULT_T_R_GRID
            ),
            realizations=args.realizations,
            master_seed=args.seed,
            c=args.c,
            K=args.K,
            workers=args.threads,
        )
        summary, curves = run_scaling(config)
        curves_dir = args.curves_dir or args.out.parent / (args.out.stem + "_curves")
        curves_dir.mkdir(parents=True, exist_ok=True)
        curve_files = []
        for n_q, epsilon, records in curves:
            csv_path = curves_dir / f"echo_nq{n_q}_eps{epsilon!r}.csv"
            write_csv(csv_path, CURVE_HEADER, records_to_rows(records))
            point_config = EchoConfig(
                n_q=n_q,
                epsilon=epsilon,
                K=config.K,
                t_r_grid=config.t_r_grid,
                realizations=config.realizations,
                master_seed=config.master_seed,
            )
            manifest = _base_manifest("echo-curve", point_config, csv_path)
            manifest["t_r_grid"] = list(config.t_r_grid)
            write_manifest(manifest_path_for(csv_path), manifest)
            curve_files.append(str(csv_path))
        summary["config"] = {
            "nq_list": list(config.nq_list),
            "epsilon_list": list(config.epsilon_list),
            "t_r_grid": list(config.t_r_grid),
            "realizations": config.realizations,
            "master_seed": config.master_seed,
            "K": config.K,
        }
    summary["version"] = __version__
    summary["generated_at"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    if curve_files is not None:
        summary["curve_files"] = curve_files
    write_manifest(args.out, summary)
    constants = summary["constants"]
    print(f"wrote scaling summary -> {args.out}")
    for key in ("A_hat", "B_hat", "C_hat"):
        value = constants.get(key)
        print(f"  {key} = {value:.4e}" if value is not None else f"  {key} unavailable")
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = run_checks(flip_kick_sign=args.flip_kick_sign)
    failed = 0
    for check in checks:
        status = "PASS" if check.passed else "FAIL"
        print(f"[{status}] {check.name}: {check.detail}")
        failed += 0 if check.passed else 1
    if failed:
        print(f"{failed} of {len(checks)} checks failed")
        return EXIT_VERIFY
    print(f"all {len(checks)} checks passed")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def main_entry() -> None:  # console-script entry point
    raise SystemExit(main())
