#!/usr/bin/env python3
"""Command-line interface for dormant"""

import argparse
import json
import logging
import sys
from typing import List, Optional, Tuple

from dormant.charp.digits import DigitContext, lift_and_digits, negate_digits, split_M, tau
from dormant.config import RunConfig, default_enum_cap, default_precision, load_sweep_config
from dormant.counting.formula import Rank2CountInput, count_report
from dormant.counting.sweep import run_sweep, write_csv, write_json
from dormant.disc.descent import (
    LocalParabolicDatum,
    ParabolicFlatDatum,
    local_descent,
    local_det,
    local_pullback,
    monodromy_operator_on,
)
from dormant.disc.series import monodromy
from dormant.errors import DormantError, InputError, InvariantViolation
from dormant.selftest import SCALES, run_selftest
from dormant.serialize import dumps, fraction_to_json, loads_local, local_to_json, to_jsonable
from dormant.stability.destabilized import destabilizing_degrees, oper_det_degree
from dormant.stability.polygon import dominates, hn_polygon, oper_match, oper_polygon, slope_gap_report

logger = logging.getLogger("dormant")

LOCAL_ACTIONS = ("pullback", "descent", "roundtrip", "det", "monodromy")


def _pair(text: str) -> Tuple[int, int]:
    try:
        a, b = (int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two comma-separated integers, got {text!r}") from None
    return a, b


def _pairs(values: Optional[List[str]]) -> List[Tuple[int, int]]:
    """--pairs may be repeated or use ';' between pairs"""
    pairs = []
    for value in values or []:
        pairs.extend(_pair(part) for part in value.split(";") if part.strip())
    return pairs


def _emit(config: RunConfig, payload, lines: List[str]) -> None:
    if config.json_output:
        print(dumps(payload))
    else:
        for line in lines:
            print(line)


def cmd_count(config: RunConfig) -> int:
    params = config.params
    pairs = params["pairs"]
    r = params["r"] if params["r"] is not None else len(pairs)
    inp = Rank2CountInput(params["p"], params["g"], r, tuple(pairs))
    report = count_report(inp, params["degL_even"], None if params["no_oracle"] else config.precision)
    flags = report.hypotheses
    payload = {
        "p": inp.p,
        "g": inp.g,
        "r": inp.r,
        "pairs": [list(pair) for pair in inp.pairs],
        "hypotheses": {
            "parity": flags.parity,
            "gap": flags.gap,
            "prime_bound": flags.prime_bound,
            "degL_even": flags.degL_even,
            "all_ok": flags.all_ok,
        },
        "count": fraction_to_json(report.count),
        "count_tau": fraction_to_json(report.count_tau),
        "pgl_count": fraction_to_json(report.pgl_count),
        "label": report.label,
        "oracle": None if report.oracle is None else {
            "lo": str(report.oracle.lo), "hi": str(report.oracle.hi), "bits": report.oracle.bits,
        },
    }
    lines = [
        f"p={inp.p} g={inp.g} r={inp.r} pairs={list(inp.pairs)}",
        "hypotheses: " + " ".join(
            f"{name}={'ok' if ok else 'FAIL'}"
            for name, ok in (
                ("parity", flags.parity), ("gap", flags.gap),
                ("prime_bound", flags.prime_bound), ("degL_even", flags.degL_even),
            )
        ),
        f"count: {report.count} ({report.label})",
        f"pgl_count: {report.pgl_count}",
    ]
    if report.oracle is not None:
        lines.append(f"oracle ({report.oracle.bits} bits): [{report.oracle.lo}, {report.oracle.hi}]")
        if not report.oracle_agrees:
            raise InvariantViolation(f"oracle interval misses the exact count {report.count}")
    _emit(config, payload, lines)
    return 0


def _read_local(config: RunConfig):
    params = config.params
    if params.get("data") is not None:
        return loads_local(params["data"])
    if config.input_path is None:
        raise InputError("local commands need --input PATH (or -) or --data JSON")
    if config.input_path == "-":
        return loads_local(sys.stdin.read())
    try:
        with open(config.input_path, "r") as f:
            return loads_local(f.read())
    except OSError as exc:
        raise InputError(f"cannot read {config.input_path}: {exc.strerror}") from None


def cmd_local(config: RunConfig) -> int:
    action = config.params["action"]
    if action == "monodromy" and config.params.get("d") is not None:
        ctx = DigitContext(config.params["p"], config.params["N"])
        values = monodromy(config.params["d"], ctx)
        _emit(config, {"d": config.params["d"], "monodromy": values}, [str(tuple(values))])
        return 0

    datum = _read_local(config)
    if action == "pullback":
        if not isinstance(datum, LocalParabolicDatum):
            raise InputError("pullback expects a parabolic datum with weights and type")
        result = local_to_json(local_pullback(datum))
        _emit(config, result, [json.dumps(result)])
    elif action == "descent":
        if isinstance(datum, LocalParabolicDatum):
            raise InputError("descent expects a flat datum with atoms")
        result = local_to_json(local_descent(datum))
        _emit(config, result, [json.dumps(result)])
    elif action == "roundtrip":
        if isinstance(datum, LocalParabolicDatum):
            there = local_pullback(datum)
            back = local_descent(there)
            ok = back == datum
        else:
            there = local_descent(datum)
            pulled = local_pullback(there)
            back = pulled if isinstance(datum, ParabolicFlatDatum) else pulled.flat
            ok = back == datum
        payload = {"ok": ok, "image": local_to_json(there), "back": local_to_json(back)}
        _emit(config, payload, [f"roundtrip: {ok}", json.dumps(payload["image"]), json.dumps(payload["back"])])
        if not ok:
            raise InvariantViolation("roundtrip did not return the input")
    elif action == "det":
        s, residue = local_det(datum)
        _emit(config, {"s": s, "det_exponent": residue}, [f"s={s} det_exponent={residue}"])
    else:
        if isinstance(datum, LocalParabolicDatum):
            raise InputError("monodromy expects a flat datum, or --p --N --d")
        flat = datum.flat if isinstance(datum, ParabolicFlatDatum) else datum
        rows = monodromy_operator_on(flat)
        payload = [{"exponent": a, "monodromy": list(mu), "multiplicity": m} for a, mu, m in rows]
        _emit(config, payload, [f"{a}: {tuple(mu)} x{m}" for a, mu, m in rows])
    return 0


def cmd_polygon(config: RunConfig) -> int:
    n, a, g, r = (config.params[key] for key in ("n", "a", "g", "r"))
    oper = oper_polygon(n, a, g, r)
    vertices = ", ".join(f"({x},{y})" for x, y in oper.vertices)
    payload = {
        "oper_polygon": oper,
        "destabilizing_degrees": destabilizing_degrees(n, a, g, r),
        "det_degree": oper_det_degree(n, g, r, a),
    }
    lines = [
        f"oper polygon: {vertices}",
        f"destabilizing degrees: {payload['destabilizing_degrees']} (det degree {payload['det_degree']})",
    ]
    pieces = config.params["hn"]
    if pieces:
        hn = hn_polygon(pieces)
        gaps = slope_gap_report(pieces, g, r)
        dominated = dominates(oper, hn)
        matched = oper_match(hn, n, a, g, r)
        payload.update({"hn_polygon": hn, "dominated": dominated, "matched": matched, "slope_gaps": gaps})
        lines += [
            "hn polygon: " + ", ".join(f"({x},{y})" for x, y in hn.vertices),
            f"dominated by oper polygon: {dominated}",
            f"matches oper polygon: {matched}",
            f"slope gaps: {[str(gap) for gap in gaps.gaps]} (bound {gaps.bound}, ok={gaps.gaps_ok})",
        ]
    _emit(config, to_jsonable(payload), lines)
    return 0


def _write_rows(path: str, writer, rows) -> None:
    try:
        with open(path, "w", newline="") as f:
            writer(rows, f)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def cmd_sweep(config: RunConfig) -> int:
    sweep = load_sweep_config(config.params["config"], config.enum_cap)
    if config.output_path is not None:
        sweep.output = config.output_path
    if config.params.get("workers") is not None:
        sweep.workers = config.params["workers"]
    result = run_sweep(sweep)
    # --json switches the primary output to JSON, on stdout or at the output path
    writer = write_json if config.json_output else write_csv
    if sweep.output:
        _write_rows(sweep.output, writer, result.rows)
    else:
        writer(result.rows, sys.stdout)
    if sweep.json_output:
        _write_rows(sweep.json_output, write_json, result.rows)
    print(result.summary, file=sys.stderr)
    if result.disagreements:
        raise InvariantViolation(f"{len(result.disagreements)} sweep rows disagree with the oracle")
    return 0


def cmd_selftest(config: RunConfig) -> int:
    scale, seed = config.params["scale"], config.params["seed"]
    results = run_selftest(scale, seed)
    payload = {
        "scale": scale,
        "seed": seed,
        "suites": [
            {"name": s.name, "passed": s.passed, "checked": s.checked, "failures": s.failures} for s in results
        ],
    }
    lines = [f"selftest scale={scale} seed={seed}"]
    for s in results:
        lines.append(f"{'PASS' if s.passed else 'FAIL'} {s.name} ({s.checked} checks)")
        lines.extend(f"    {failure}" for failure in s.failures)
    failed = sum(not s.passed for s in results)
    lines.append(f"{len(results) - failed}/{len(results)} suites passed")
    _emit(config, payload, lines)
    return 0 if not failed else InvariantViolation.exit_status


def cmd_digits(config: RunConfig) -> int:
    params = config.params
    ctx = DigitContext(params["p"], params["N"])
    d = params["d"]
    payload = {"lift": d % ctx.modulus, "digits": lift_and_digits(d, ctx), "negated": negate_digits(d, ctx)}
    lines = [
        f"lift: {payload['lift']}",
        f"digits: {payload['digits']}",
        f"negated digits: {payload['negated']}",
    ]
    if params["M"] is not None:
        s1, s2 = split_M(d % ctx.modulus, params["M"], ctx)
        payload["split"] = [s1, s2]
        lines.append(f"split at M={params['M']}: s1={s1} s2={s2}")
    if ctx.N == 1 and ctx.p % 2 and 0 <= d < ctx.p:
        payload["tau"] = tau(d, ctx.p)
        lines.append(f"tau: {payload['tau']}")
    _emit(config, payload, lines)
    return 0


COMMANDS = {
    "count": cmd_count,
    "local": cmd_local,
    "polygon": cmd_polygon,
    "sweep": cmd_sweep,
    "selftest": cmd_selftest,
    "digits": cmd_digits,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dormant",
        description="dormant - exact arithmetic for Frobenius-destabilized bundles and dormant oper counts",
    )
    parser.add_argument("--verbose", action="store_true", help="Log debug output to stderr")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print machine-readable JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    count = sub.add_parser("count", parents=[common], help="Evaluate the rank-2 counting formula")
    count.add_argument("--p", type=int, required=True, help="Odd prime")
    count.add_argument("--g", type=int, required=True, help="Genus")
    count.add_argument("--r", type=int, default=None, help="Number of marked points (default: number of pairs)")
    count.add_argument("--pairs", action="append", help="Weight pair a1,a2 (repeat, or separate with ';')")
    count.add_argument("--degL-parity", choices=("even", "odd"), default="even", help="Parity of deg L (default: even)")
    count.add_argument("--precision", type=int, default=None, help="Oracle precision in bits")
    count.add_argument("--no-oracle", action="store_true", help="Skip the interval oracle")

    local = sub.add_parser("local", parents=[common], help="Local pull-back and descent on split data")
    local.add_argument("action", choices=LOCAL_ACTIONS)
    local.add_argument("--input", default=None, help="JSON file with the local datum ('-' for stdin)")
    local.add_argument("--data", default=None, help="Local datum as inline JSON")
    local.add_argument("--p", type=int, help="Prime (monodromy of a single exponent)")
    local.add_argument("--N", type=int, help="Level horizon (monodromy of a single exponent)")
    local.add_argument("--d", type=int, help="Exponent (monodromy of a single exponent)")

    polygon = sub.add_parser("polygon", parents=[common], help="Oper polygon and HN comparison")
    polygon.add_argument("--n", type=int, required=True, help="Rank")
    polygon.add_argument("--a", type=int, required=True, help="Degree of the top filtration step")
    polygon.add_argument("--g", type=int, required=True, help="Genus")
    polygon.add_argument("--r", type=int, required=True, help="Number of marked points")
    polygon.add_argument("--hn", type=_pair, action="append", default=[], help="HN piece rank,degree, top first (repeat)")

    sweep = sub.add_parser("sweep", parents=[common], help="Tabulate counts over a parameter grid")
    sweep.add_argument("config", help="Sweep config file (key = value lines)")
    sweep.add_argument("--output", default=None, help="Output path, CSV or with --json JSON (overrides the config)")
    sweep.add_argument("--workers", type=int, default=None, help="Worker processes (overrides the config)")

    selftest = sub.add_parser("selftest", parents=[common], help="Run the acceptance suites")
    selftest.add_argument("--scale", choices=SCALES, default="quick")
    selftest.add_argument("--seed", type=int, default=0)

    digits = sub.add_parser("digits", parents=[common], help="Inspect base-p digits of a residue")
    digits.add_argument("--p", type=int, required=True)
    digits.add_argument("--N", type=int, required=True)
    digits.add_argument("--d", type=int, required=True)
    digits.add_argument("--M", type=int, default=None, help="Also split at level M")
    return parser


def make_config(args: argparse.Namespace) -> RunConfig:
    params = {k: v for k, v in vars(args).items() if k not in ("command", "json", "verbose", "input", "output")}
    if args.command == "count":
        params["pairs"] = _pairs(args.pairs)
        params["degL_even"] = args.degL_parity == "even"
    if args.command == "local" and args.action == "monodromy" and args.d is not None:
        if args.p is None or args.N is None:
            raise InputError("monodromy of a single exponent needs --p, --N and --d")
    precision = getattr(args, "precision", None) or default_precision()
    if precision < 64:
        raise InputError(f"precision must be at least 64 bits, got {precision}")
    return RunConfig(
        command=args.command,
        params=params,
        input_path=getattr(args, "input", None),
        output_path=getattr(args, "output", None),
        precision=precision,
        enum_cap=default_enum_cap(),
        json_output=args.json,
        verbose=args.verbose,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for dormant command"""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        config = make_config(args)
        return COMMANDS[config.command](config)
    except DormantError as exc:
        print(f"dormant: {exc}", file=sys.stderr)
        return exc.exit_status


if __name__ == "__main__":
    sys.exit(main())
