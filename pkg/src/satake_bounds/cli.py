"""Command-line entry point: ``satake-bounds <subcommand> [options]``.

Exit status is 0 when every asserted inequality held, 1 when one failed
(the offending instance is serialized in the output) and 2 on usage
errors. Options resolve as flag > ``--config`` file > environment
(``SATAKE_SEED`` for the seed) > built-in default.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from typing import Any, Optional, Sequence

import numpy as np

from . import suite
from .constants import N_MAX, table_json
from .dirichlet import CMSeries, run_bootstrap
from .majorization import lrs_delta, lrs_threshold, replay_counterexample, verify_bound
from .params import sample_unitary_class, to_record
from .symfunc import euler_expand, random_gaussian_rationals, rankin_coefficient

SEED_ENV = "SATAKE_SEED"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument parsing

def _iters(text: str):
    if text == "auto":
        return text
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("iters must be 'auto' or a nonnegative integer")
    return value


DEFAULTS: dict[str, dict[str, Any]] = {
    "constants": {"n": 4},
    "verify-bound": {"n": 4, "trials": 1000, "max_modulus": 100.0, "start_j": 1, "replay": None},
    "cauchy": {"n": 2, "r": 4, "exact": False},
    "bootstrap": {"series": "", "xmax": 100_000, "eps": 0.05, "iters": "auto",
                  "default": 1.0, "p_max": 10_000},
    "lrs": {"n": 2, "np": 4},
    "sample": {"n": 4, "max_modulus": 100.0, "count": 1},
    "report": {"trials": None, "timings": False, "criteria": None},
}
COMMON = {"format": "json", "config": None}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    common.add_argument("--seed", type=int, default=S, help=f"RNG seed (default: ${SEED_ENV} or {suite.DEFAULT_SEED})")
    common.add_argument("--format", choices=["json", "csv"], default=S, help="output format (default json)")
    common.add_argument("--config", default=S, metavar="FILE", help="key=value file of option defaults")

    parser = argparse.ArgumentParser(prog="satake-bounds", parents=[common],
                                     description="Explicit bounds for Satake parameters and Dirichlet series.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", parents=[common], help="threshold table and leading constant c_n")
    p.add_argument("--n", type=int, default=S)

    p = sub.add_parser("verify-bound", parents=[common], help="Monte Carlo check of the trace majorization")
    p.add_argument("--n", type=int, default=S)
    p.add_argument("--trials", type=int, default=S)
    p.add_argument("--max-modulus", type=float, default=S)
    p.add_argument("--start-j", type=int, choices=[1, 2], default=S)
    p.add_argument("--replay", metavar="FILE", default=S, help="re-check a serialized counterexample")

    p = sub.add_parser("cauchy", parents=[common], help="Rankin coefficient against the Euler-product expansion")
    p.add_argument("--n", type=int, default=S)
    p.add_argument("--r", type=int, default=S)
    p.add_argument("--exact", action="store_true", default=S)

    p = sub.add_parser("bootstrap", parents=[common], help="exponent halving for a completely multiplicative series")
    p.add_argument("--series", default=S, help='prime:value pairs, e.g. "2:2,3:1.5"')
    p.add_argument("--xmax", type=int, default=S)
    p.add_argument("--eps", type=float, default=S)
    p.add_argument("--iters", type=_iters, default=S)
    p.add_argument("--default", type=float, default=S, help="value at primes not listed")
    p.add_argument("--p-max", type=int, default=S)

    p = sub.add_parser("lrs", parents=[common], help="Luo-Rudnick-Sarnak exponent and threshold")
    p.add_argument("--n", type=int, default=S)
    p.add_argument("--np", type=int, default=S, help="norm of the prime")

    p = sub.add_parser("sample", parents=[common], help="draw seeded unitary classes")
    p.add_argument("--n", type=int, default=S)
    p.add_argument("--max-modulus", type=float, default=S)
    p.add_argument("--count", type=int, default=S)

    p = sub.add_parser("report", parents=[common], help="run the acceptance matrix")
    p.add_argument("--trials", type=int, default=S, help="0 skips every row; default runs full size")
    p.add_argument("--timings", action="store_true", default=S, help="include per-row runtime")
    p.add_argument("--criteria", type=lambda s: [int(x) for x in s.split(",")], default=S,
                   help="comma-separated subset, e.g. 1,3,11")
    return parser


def _read_config(path: str, parser: argparse.ArgumentParser, command: str) -> dict:
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction)).choices[command]
    actions = {a.dest: a for a in sub._actions}
    out = {}
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        dest = key.lstrip("-").replace("-", "_")
        if dest not in actions or dest in ("help", "config"):
            raise UsageError(f"{path}:{lineno}: unknown option {key!r} for {command}")
        action = actions[dest]
        try:
            if isinstance(action, argparse._StoreTrueAction):
                out[dest] = value.lower() in ("1", "true", "yes", "on")
            else:
                out[dest] = action.type(value) if action.type else value
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
        if action.choices is not None and out[dest] not in action.choices:
            raise UsageError(f"{path}:{lineno}: {key} must be one of {list(action.choices)}")
    return out


def resolve(argv: Optional[Sequence[str]] = None, environ=None) -> dict:
    """Parse ``argv`` into a flat config dict (raises ``SystemExit(2)`` on bad flags)."""
    environ = os.environ if environ is None else environ
    parser = _build_parser()
    ns = vars(parser.parse_args(argv))
    command = ns["command"]
    cfg = {**COMMON, **DEFAULTS[command]}
    seed_env = environ.get(SEED_ENV)
    if seed_env is not None:
        try:
            cfg["seed"] = int(seed_env)
        except ValueError as exc:
            raise UsageError(f"{SEED_ENV} must be an integer, got {seed_env!r}") from exc
    else:
        cfg["seed"] = suite.DEFAULT_SEED
    if "config" in ns:
        cfg.update(_read_config(ns["config"], parser, command))
    cfg.update(ns)
    _validate(cfg)
    return cfg


def _validate(cfg: dict) -> None:
    cmd = cfg["command"]

    def need(cond: bool, msg: str):
        if not cond:
            raise UsageError(msg)

    if cmd in ("constants",):
        need(2 <= cfg["n"] <= N_MAX, f"--n must be in [2, {N_MAX}]")
    if cmd == "verify-bound" and cfg["replay"] is None:
        need(2 <= cfg["n"] <= N_MAX, f"--n must be in [2, {N_MAX}]")
        need(cfg["trials"] >= 0, "--trials must be >= 0")
        need(math.isfinite(cfg["max_modulus"]) and cfg["max_modulus"] >= 1, "--max-modulus must be >= 1")
    if cmd == "cauchy":
        need(cfg["n"] >= 1, "--n must be >= 1")
        need(cfg["r"] >= 0, "--r must be >= 0")
    if cmd == "bootstrap":
        need(cfg["xmax"] >= 100, "--xmax must be >= 100")
        need(0 < cfg["eps"] < 1, "--eps must be in (0, 1)")
        need(cfg["default"] >= 0, "--default must be >= 0")
        need(cfg["p_max"] >= 2, "--p-max must be >= 2")
        try:
            CMSeries.parse(cfg["series"], p_max=cfg["p_max"], default=cfg["default"])
        except ValueError as exc:
            raise UsageError(f"--series: {exc}") from exc
    if cmd == "lrs":
        need(cfg["n"] >= 1, "--n must be >= 1")
        need(cfg["np"] >= 2, "--np must be >= 2")
    if cmd == "sample":
        need(cfg["n"] >= 1, "--n must be >= 1")
        need(cfg["count"] >= 1, "--count must be >= 1")
        need(math.isfinite(cfg["max_modulus"]) and cfg["max_modulus"] >= 1, "--max-modulus must be >= 1")
    if cmd == "report":
        need(cfg["trials"] is None or cfg["trials"] >= 0, "--trials must be >= 0")
        if cfg["criteria"] is not None:
            bad = [k for k in cfg["criteria"] if k not in suite.CRITERIA]
            need(not bad, f"unknown criteria {bad}; choose from {sorted(suite.CRITERIA)}")


# ---------------------------------------------------------------------------
# subcommands; each returns (document, exit code)

def _complex(z) -> list:
    if hasattr(z, "x"):  # exact Gaussian rational
        return [str(z.x), str(z.y)]
    z = complex(z)
    return [z.real, z.imag]


def cmd_constants(cfg: dict):
    return {"check": "constants", **table_json(cfg["n"])}, EXIT_OK


def cmd_verify_bound(cfg: dict):
    if cfg["replay"] is not None:
        try:
            with open(cfg["replay"]) as fh:
                doc = json.load(fh)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read replay file: {exc}") from exc
        record = doc.get("counterexample", doc)
        if not isinstance(record, dict) or "class" not in record:
            raise UsageError("replay file holds no counterexample")
        out = replay_counterexample(record)
        return out, EXIT_FAIL if out["violated"] else EXIT_OK
    out = verify_bound(cfg["n"], cfg["trials"], cfg["seed"], cfg["max_modulus"], cfg["start_j"])
    return out, EXIT_FAIL if out["failures"] or out["witness_failures"] else EXIT_OK


def cmd_cauchy(cfg: dict):
    n, r, exact = cfg["n"], cfg["r"], cfg["exact"]
    if exact:
        rng = np.random.default_rng(cfg["seed"])
        a, b = random_gaussian_rationals(rng, n), random_gaussian_rationals(rng, n)
    else:
        seeds = np.random.SeedSequence(cfg["seed"]).generate_state(2)
        a = list(sample_unitary_class(n, 4.0, int(seeds[0])).params.values)
        b = list(sample_unitary_class(n, 4.0, int(seeds[1])).params.values)
    lhs = rankin_coefficient(a, b, r, exact)
    rhs = euler_expand(a, b, r, exact)[r]
    if exact:
        err = 0.0 if not (lhs - rhs) else math.inf
    else:
        err = abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)
    agree = err == 0.0 if exact else err <= 1e-8
    out = {
        "check": "cauchy",
        "n": n,
        "r": r,
        "exact": exact,
        "alpha": [_complex(z) for z in a],
        "beta": [_complex(z) for z in b],
        "schur_side": _complex(lhs),
        "euler_side": _complex(rhs),
        "relative_error": err,
        "agree": agree,
    }
    return out, EXIT_OK if agree else EXIT_FAIL


def cmd_bootstrap(cfg: dict):
    series = CMSeries.parse(cfg["series"], p_max=cfg["p_max"], default=cfg["default"])
    iters = None if cfg["iters"] == "auto" else cfg["iters"]
    records = run_bootstrap(series, cfg["eps"], x_hi=cfg["xmax"], iters=iters)
    for rec in records:
        rec["check"] = "bootstrap"
    ok = all(r["holds"] for r in records)
    return records, EXIT_OK if ok else EXIT_FAIL


def cmd_lrs(cfg: dict):
    n, Np = cfg["n"], cfg["np"]
    thr = lrs_threshold(Np, n)
    return {"check": "lrs", "n": n, "np": Np, "delta": lrs_delta(n),
            "threshold": thr, "lower_threshold": 1.0 / thr}, EXIT_OK


def cmd_sample(cfg: dict):
    seeds = np.random.SeedSequence(cfg["seed"]).generate_state(cfg["count"])
    out = []
    for i, s in enumerate(seeds):
        uc = sample_unitary_class(cfg["n"], cfg["max_modulus"], int(s))
        out.append({"index": i, "sample_seed": int(s), "class": to_record(uc)})
    return out, EXIT_OK


def cmd_report(cfg: dict):
    rows = suite.report(cfg["seed"], cfg["trials"], cfg["criteria"])
    doc = [row.as_dict(cfg["timings"]) for row in rows]
    failed = any(row.passed is False for row in rows)
    return doc, EXIT_FAIL if failed else EXIT_OK


COMMANDS = {
    "constants": cmd_constants,
    "verify-bound": cmd_verify_bound,
    "cauchy": cmd_cauchy,
    "bootstrap": cmd_bootstrap,
    "lrs": cmd_lrs,
    "sample": cmd_sample,
    "report": cmd_report,
}


# ---------------------------------------------------------------------------
# output

def _cell(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    if v is None:
        return ""
    return str(v)


def render(doc, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    rows = doc if isinstance(doc, list) else [doc]
    header: list[str] = []
    for row in rows:
        header += [k for k in row if k not in header]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(row.get(k)) for k in header])
    return buf.getvalue()


def main(argv: Optional[Sequence[str]] = None, stdout=None, environ=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    try:
        cfg = resolve(argv, environ)
        doc, code = COMMANDS[cfg["command"]](cfg)
    except SystemExit as exc:  # argparse has already printed usage
        return EXIT_USAGE if exc.code else EXIT_OK
    except UsageError as exc:
        print(f"satake-bounds: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    stdout.write(render(doc, cfg["format"]))
    return code


if __name__ == "__main__":
    sys.exit(main())
