"""Command-line entry point: ``xxzsim {entangle,speed,echo-fit,sweep}``.

Precedence for every setting: flag > --config JSON > preset > default.
``XXZSIM_SEED`` supplies the default seed.  Exit status 2 is a usage
error, 3 an internal-consistency failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys

from . import analytics, experiments, sweeps
from .fitting import samples_to_csv
from .gates import ModelParams
from .protocols import PrepAngles

EXIT_USAGE = 2
EXIT_INCONSISTENT = 3

_PI_EXPR = re.compile(r"^([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\*?pi(?:/(\d+(?:\.\d*)?))?$")


class UsageError(ValueError):
    pass


def parse_number(text) -> float:
    """Float, or a multiple of pi such as ``pi/18``, ``-3pi/32``, ``2*pi``."""
    if isinstance(text, (int, float)):
        return float(text)
    s = str(text).strip().replace(" ", "").lower()
    try:
        return float(s)
    except ValueError:
        pass
    m = _PI_EXPR.match(s)
    if not m:
        raise argparse.ArgumentTypeError(f"not a number or multiple of pi: {text!r}")
    coef = {"": 1.0, "+": 1.0, "-": -1.0}.get(m.group(1))
    coef = float(m.group(1)) if coef is None else coef
    return coef * math.pi / (float(m.group(2)) if m.group(2) else 1.0)


def parse_shots(text):
    if text is None or str(text).lower() == "exact":
        return None
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"shots must be an integer or 'exact', got {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError("shots must be positive")
    return n


def _common(parser: argparse.ArgumentParser) -> None:
    for name in ("theta0", "theta1", "phi0", "phi1"):
        parser.add_argument(f"--{name}", type=parse_number)
    parser.add_argument("-J", dest="J", type=parse_number)
    parser.add_argument("-d", dest="d", type=parse_number)
    parser.add_argument("-t", dest="t", type=parse_number)
    parser.add_argument("--shots", type=str, help="integer, or 'exact' for noise-free values")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--config", help="JSON file mirroring the flags")
    parser.add_argument("--out", help="output path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xxzsim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entangle", help="entanglement distance of one qubit after evolution")
    _common(p)
    p.add_argument("--qubit", type=int, choices=(0, 1))

    p = sub.add_parser("speed", help="speed of evolution v/gamma")
    _common(p)

    p = sub.add_parser("echo-fit", help="echo-decay scan and anchored quadratic fit")
    _common(p)
    p.add_argument("--alpha-range", nargs=3, type=parse_number, metavar=("START", "STOP", "STEP"))
    p.add_argument("--weighted", action="store_true", default=None)
    p.add_argument("--summary", help="write the JSON summary here")

    p = sub.add_parser("sweep", help="two-parameter grid sweep to CSV")
    _common(p)
    p.add_argument("--preset", choices=sorted(sweeps.PRESETS))
    p.add_argument("--mode", choices=sweeps.MODES)
    p.add_argument("--vary", nargs=2, metavar=("P1", "P2"))
    p.add_argument("--range", nargs=3, type=parse_number, metavar=("START", "STOP", "STEP"))
    p.add_argument("--qubit", type=int, choices=(0, 1))
    return parser


def resolve(args: argparse.Namespace) -> dict:
    """Merge defaults, preset, config file and flags."""
    cfg: dict = dict(sweeps.DEFAULTS)
    cfg.update(shots=1024, seed=int(os.environ.get("XXZSIM_SEED", 0)), qubit=0, weighted=False)
    if args.command == "echo-fit":
        fig7 = experiments.FIG7_PREP
        cfg.update(theta0=fig7.theta0, theta1=fig7.theta1, phi0=fig7.phi0, phi1=fig7.phi1, d=experiments.FIG7_D)
    if getattr(args, "preset", None):
        preset = sweeps.PRESETS[args.preset]
        cfg.update(preset["fixed"], mode=preset["mode"], vary=list(preset["vary"]), range=list(preset["range"]))
    if args.config:
        try:
            with open(args.config) as fh:
                file_cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}")
        if not isinstance(file_cfg, dict):
            raise UsageError("config file must hold a JSON object")
        cfg.update(file_cfg)
    cfg.update({k: v for k, v in vars(args).items() if v is not None and k not in ("command", "config")})
    try:
        for key in sweeps.DEFAULTS:
            cfg[key] = parse_number(cfg[key])
        for key in ("range", "alpha_range"):
            if cfg.get(key) is not None:
                cfg[key] = [parse_number(x) for x in cfg[key]]
        cfg["shots"] = parse_shots(cfg["shots"])
        cfg["seed"] = int(cfg["seed"])
    except (argparse.ArgumentTypeError, TypeError, ValueError) as exc:
        raise UsageError(str(exc))
    return cfg


def _params(cfg: dict) -> tuple[PrepAngles, ModelParams]:
    return sweeps.point_params({k: cfg[k] for k in sweeps.DEFAULTS})


def _summary(mode, cfg, exact, sampled, se) -> dict:
    return {
        "mode": mode,
        "params": {k: cfg[k] for k in sweeps.DEFAULTS},
        "exact": exact,
        "sampled": sampled,
        "std_error": se,
        "seed": cfg["seed"],
    }


def _report(summary: dict, shots) -> str:
    lines = [f"mode: {summary['mode']}", f"exact: {summary['exact']:.12g}"]
    if summary["sampled"] is not None:
        diff = summary["sampled"] - summary["exact"]
        se = summary["std_error"]
        z = diff / se if se > 0 else (0.0 if diff == 0 else math.inf)
        lines.append(f"sampled: {summary['sampled']:.12g} +/- {se:.3g} (shots={shots}, seed={summary['seed']})")
        lines.append(f"difference: {diff:+.3g} ({z:+.2f} std errors)")
    return "\n".join(lines)


def _write(path, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def run_single(mode: str, cfg: dict) -> dict:
    a, p = _params(cfg)
    sweep_mode = {"entangle": "entanglement"}.get(mode, mode)
    exact, sampled, se = sweeps.evaluate(sweep_mode, a, p, cfg["shots"], cfg["seed"], cfg["qubit"])
    summary = _summary(sweep_mode, cfg, exact, sampled, se)
    print(_report(summary, cfg["shots"]))
    if cfg.get("out"):
        _write(cfg["out"], json.dumps(summary, indent=2) + "\n")
    return summary


def run_echo_fit(cfg: dict) -> dict:
    a, p = _params(cfg)
    alpha_range = cfg.get("alpha_range")
    alphas = sweeps.grid(*alpha_range) if alpha_range else experiments.fig7_alphas()
    noiseless = experiments.echo_fit(a, p.J, p.d, alphas, shots=None)
    result = experiments.echo_fit(a, p.J, p.d, alphas, cfg["shots"], cfg["seed"], bool(cfg["weighted"]))
    theory = analytics.variance_H(a, p)
    lines = [
        "mode: echo-fit",
        f"points: {len(alphas)}, shots: {cfg['shots'] or 'exact'}, seed: {cfg['seed']}",
        f"curvature per alpha^2 (alpha = 2Jt): {result.fit.c:.6g} +/- {result.fit.c_std_error:.2g}",
        f"curvature per (Jt)^2:               {result.fit.c_jt:.6g}",
        f"<dH^2>/J^2 from fit: {result.fit.varH_from_fit:.6g}   noise-free fit: "
        f"{noiseless.fit.varH_from_fit:.6g}   exact: {theory.varH / p.J**2 if p.J else float('nan'):.6g}",
        f"v/gamma from fit: {result.v_over_gamma:.6g}   exact: {theory.v_over_gamma:.6g}",
        f"rms residual: {result.fit.rms_residual:.3g}",
    ]
    print("\n".join(lines))
    summary = _summary("echo-fit", cfg, theory.v_over_gamma, result.v_over_gamma if cfg["shots"] else None,
                       result.std_error if cfg["shots"] else None)
    summary["fit"] = {
        "c_per_alpha2": result.fit.c,
        "c_per_jt2": result.fit.c_jt,
        "c_std_error": result.fit.c_std_error,
        "varH_over_J2": result.fit.varH_from_fit,
        "rms_residual": result.fit.rms_residual,
        "weighted": bool(cfg["weighted"]),
    }
    if cfg.get("out"):
        _write(cfg["out"], samples_to_csv(result.samples))
    if cfg.get("summary"):
        _write(cfg["summary"], json.dumps(summary, indent=2) + "\n")
    return summary


def run_sweep(cfg: dict) -> str:
    missing = [k for k in ("mode", "vary", "range") if cfg.get(k) is None]
    if missing:
        raise UsageError(f"sweep needs {', '.join('--' + m for m in missing)} or --preset")
    spec = sweeps.SweepSpec(
        mode=cfg["mode"],
        vary=tuple(cfg["vary"]),
        range=tuple(cfg["range"]),
        fixed={k: cfg[k] for k in sweeps.DEFAULTS if k not in cfg["vary"]},
        shots=cfg["shots"],
        seed=cfg["seed"],
        qubit=cfg["qubit"],
    )
    text = sweeps.rows_to_csv(sweeps.run_sweep(spec))
    _write(cfg.get("out"), text)
    return text


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve(args)
        if args.command == "sweep":
            run_sweep(cfg)
        elif args.command == "echo-fit":
            run_echo_fit(cfg)
        else:
            run_single(args.command, cfg)
    except analytics.OracleMismatchError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (UsageError, ValueError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
