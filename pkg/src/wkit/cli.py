"""Batch front-end.

    wkit check --config FILE [--out FILE]
    wkit eval FN --at RE[,IM] [--N --q --s --p --c --m --n --k --kprime]
    wkit scan FN --from A --to B --points P [--log] [--csv FILE] [param flags]

`check` runs named verification suites from a JSON configuration and emits
a JSON array of check reports (exit 0 iff every check passed, 2 on a
malformed configuration).  `eval` prints one "re imag" pair per call at
full double precision; `scan` writes a CSV "x_re,x_im,f_re,f_im".
Identical configuration and seed produce byte-identical output.
"""

from __future__ import annotations

import argparse
import cmath
import json
import sys

from .errors import ConfigError, WkitError
from .params import DEFAULT_POLICY, EllipticParams, TruncationPolicy
from .reports import sort_reports
from .suites import SUITES, SuiteContext

_CONFIG_KEYS = {"params", "policy", "suites", "grid", "seed", "tolerances"}
_PARAM_KEYS = {"N", "q", "s", "p", "c"}
_POLICY_KEYS = {"tail_eps", "max_terms"}
_GRID_KEYS = {"from", "to", "points", "log"}


def _as_complex(v, what: str) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(x, (int, float)) for x in v):
        return complex(v[0], v[1])
    raise ConfigError(f"{what} must be a number or a [re, im] pair, got {v!r}")


def _reject_unknown(d: dict, allowed: set, where: str):
    unknown = set(d) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) {sorted(unknown)} in {where}")


def parse_config(cfg: dict) -> tuple[SuiteContext, list[str]]:
    if not isinstance(cfg, dict):
        raise ConfigError("top-level configuration must be an object")
    _reject_unknown(cfg, _CONFIG_KEYS, "configuration")

    pblock = cfg.get("params", {})
    if not isinstance(pblock, dict):
        raise ConfigError("params must be an object")
    _reject_unknown(pblock, _PARAM_KEYS, "params")
    N = pblock.get("N", 2)
    if not isinstance(N, int) or N < 2:
        raise ConfigError(f"N must be an integer >= 2, got {N!r}")
    q = _as_complex(pblock.get("q", 0.55), "q")
    c = _as_complex(pblock.get("c", 0.0), "c")
    if "s" in pblock and "p" in pblock:
        raise ConfigError("give either s or p, not both")
    if "s" in pblock:
        s = _as_complex(pblock["s"], "s")
    elif "p" in pblock:
        s = cmath.sqrt(_as_complex(pblock["p"], "p"))
    else:
        s = cmath.sqrt(0.3)
    try:
        params = EllipticParams(N=N, q=q, s=s, c=c)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    pol = cfg.get("policy", {})
    if not isinstance(pol, dict):
        raise ConfigError("policy must be an object")
    _reject_unknown(pol, _POLICY_KEYS, "policy")
    try:
        policy = TruncationPolicy(
            tail_eps=float(pol.get("tail_eps", DEFAULT_POLICY.tail_eps)),
            max_terms=int(pol.get("max_terms", DEFAULT_POLICY.max_terms)),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    suites = cfg.get("suites", sorted(SUITES))
    if not isinstance(suites, list) or not all(isinstance(s_, str) for s_ in suites):
        raise ConfigError("suites must be a list of suite names")
    for name in suites:
        if name not in SUITES:
            raise ConfigError(f"unknown suite {name!r}; available: {sorted(SUITES)}")

    grid = cfg.get("grid", {})
    if not isinstance(grid, dict):
        raise ConfigError("grid must be an object")
    _reject_unknown(grid, _GRID_KEYS, "grid")

    seed = cfg.get("seed", 7)
    if not isinstance(seed, int):
        raise ConfigError("seed must be an integer")

    tols = cfg.get("tolerances", {})
    if not isinstance(tols, dict) or not all(
            isinstance(k, str) and isinstance(v, (int, float)) for k, v in tols.items()):
        raise ConfigError("tolerances must map suite names to numbers")

    ctx = SuiteContext(
        params=params,
        policy=policy,
        seed=seed,
        tolerances=dict(tols),
        grid_from=float(grid.get("from", 0.5)),
        grid_to=float(grid.get("to", 2.0)),
        grid_points=int(grid.get("points", 200)),
        grid_log=bool(grid.get("log", True)),
    )
    return ctx, suites


def cmd_check(args) -> int:
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        ctx, suites = parse_config(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    reports = []
    for name in suites:
        reports.extend(SUITES[name](ctx))
    reports = sort_reports(reports)
    dicts = [r.to_dict() for r in reports]
    for d in dicts:
        d["wall_ms"] = 0.0  # volatile timing would break byte-identical reruns
    payload = json.dumps(dicts, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)
    n_fail = sum(1 for r in reports if not r.passed)
    print(f"{len(reports) - n_fail}/{len(reports)} checks passed", file=sys.stderr)
    return 0 if n_fail == 0 else 1


def _params_from_flags(args) -> EllipticParams:
    if args.s is not None and args.p is not None:
        raise ConfigError("give either --s or --p, not both")
    if args.s is not None:
        s = _parse_complex(args.s)
    elif args.p is not None:
        s = cmath.sqrt(_parse_complex(args.p))
    else:
        s = cmath.sqrt(0.3)
    return EllipticParams(N=args.N, q=_parse_complex(args.q), s=s,
                          c=_parse_complex(args.c))


def _parse_complex(text) -> complex:
    if isinstance(text, (int, float, complex)):
        return complex(text)
    parts = str(text).split(",")
    if len(parts) == 1:
        return complex(float(parts[0]))
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ConfigError(f"cannot parse complex number from {text!r}")


def _eval_function(name: str, x: complex, params: EllipticParams, args):
    from . import qseries

    if name == "theta_big":
        return qseries.theta_big(x, params.p, DEFAULT_POLICY)
    if name == "tau_N":
        return qseries.tau_N(x, params)
    if name == "U":
        return qseries.U(x, params)
    if name == "F_a":
        return qseries.F_a(x, args.m, params.s, params)
    if name == "Y_mn":
        return qseries.Y_mn(x, args.m, args.n, params)
    if name == "Y_FF":
        return qseries.Y_FF(x, params)
    if name == "I":
        return qseries.I_series(x, params)
    if name == "f_cr_series":
        return qseries.f_cr_series(x, args.k, args.kprime, params)
    if name == "f_cr_modes":
        return qseries.f_cr_modes(x, args.k, args.kprime, params)
    raise ConfigError(
        f"unknown function {name!r}; available: theta_big tau_N U F_a Y_mn "
        f"Y_FF I f_cr_series f_cr_modes")


def cmd_eval(args) -> int:
    try:
        params = _params_from_flags(args)
        x = _parse_complex(args.at)
        val = _eval_function(args.fn, x, params, args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except WkitError as exc:
        print(f"evaluation failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    print(f"{val.real:.17g} {val.imag:.17g}")
    return 0


def cmd_scan(args) -> int:
    import numpy as np

    try:
        params = _params_from_flags(args)
        if args.log:
            xs = np.geomspace(args.start, args.stop, args.points)
        else:
            xs = np.linspace(args.start, args.stop, args.points)
        rows = []
        for xr in xs:
            val = _eval_function(args.fn, complex(xr), params, args)
            rows.append((float(xr), 0.0, val.real, val.imag))
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except WkitError as exc:
        print(f"evaluation failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    lines = ["x_re,x_im,f_re,f_im"]
    lines += [f"{a:.17g},{b:.17g},{c:.17g},{d:.17g}" for a, b, c, d in rows]
    text = "\n".join(lines) + "\n"
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _add_param_flags(p: argparse.ArgumentParser):
    p.add_argument("--N", type=int, default=2)
    p.add_argument("--q", default="0.55")
    p.add_argument("--s", default=None)
    p.add_argument("--p", default=None)
    p.add_argument("--c", default="0")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--n", type=int, default=-1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--kprime", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wkit",
                                 description="verification toolkit CLI")
    sub = ap.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="run verification suites from a config")
    p_check.add_argument("--config", required=True)
    p_check.add_argument("--out", default=None)

    p_eval = sub.add_parser("eval", help="evaluate one scalar function at a point")
    p_eval.add_argument("fn")
    p_eval.add_argument("--at", required=True, help="RE or RE,IM")
    _add_param_flags(p_eval)

    p_scan = sub.add_parser("scan", help="tabulate a scalar function over a grid")
    p_scan.add_argument("fn")
    p_scan.add_argument("--from", dest="start", type=float, required=True)
    p_scan.add_argument("--to", dest="stop", type=float, required=True)
    p_scan.add_argument("--points", type=int, default=100)
    p_scan.add_argument("--log", action="store_true")
    p_scan.add_argument("--csv", default=None)
    _add_param_flags(p_scan)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "check":
        return cmd_check(args)
    if args.command == "eval":
        return cmd_eval(args)
    if args.command == "scan":
        return cmd_scan(args)
    return 2


if __name__ == "__main__":
    sys.exit(main())
