"""Command-line entry point: ``c5bench <subcommand>``."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .benchmark import (
    BenchmarkReport,
    curve_table,
    evaluate_goals,
    exhaustive_verification,
    find_crossover,
    goals_table,
    polarization_histogram,
    randomized_verification,
    run_error_grid,
)
from .code5 import StabilizerCode, check_code, five_qubit_code
from .noise import channel_from_spec
from .pipeline import Pipeline


def _load_code(path: str | None) -> StabilizerCode:
    if path is None:
        return five_qubit_code()
    return StabilizerCode.from_text(Path(path).read_text())


def _noise_spec(text: str | None) -> dict:
    if not text:
        return {"kind": "none"}
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    return json.loads(text)


def cmd_verify_code(args) -> int:
    code = _load_code(args.code)
    chk = check_code(code)
    print(f"generators commute:      {chk.generators_commute}")
    print(f"generators independent:  {chk.generators_independent}")
    print(f"weight-1/2 products checked: {chk.distance.checked}, violations: {len(chk.distance.violations)}")
    for v in chk.distance.violations[:10]:
        print(f"  commutes with all generators: {v}")
    print(f"distinct syndromes for correctable errors: {chk.distinct_syndromes}")
    if chk.ok:
        print(f"logical X: {code.logical_x}   logical Z: {code.logical_z}")
        print(f"encoder: {len(code.encoder_gates)} gates")
        print(code.correction_table_csv(), end="")
    print("OK" if chk.ok else "FAILED")
    return 0 if chk.ok else 1


def cmd_run_grid(args) -> int:
    spec = _noise_spec(args.noise)
    if args.shots:
        spec = {**spec, "shots": args.shots, "seed": args.seed}
    code = _load_code(args.code)
    noise = channel_from_spec(spec, code.n)
    if spec.get("kind", "none") == "none" and "shots" not in spec:
        noise = None
    report = run_error_grid(code, fe=args.fe, noise=noise, engine=args.engine, seed=args.seed,
                            noise_config=spec)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(report.to_json())
    out.with_suffix(".csv").write_text(report.records_csv())
    print(goals_table(report.goal_results))
    print(f"report: {out}  records: {out.with_suffix('.csv')}")
    return 0


def cmd_goals(args) -> int:
    report = BenchmarkReport.from_json(Path(args.report).read_text())
    goals = evaluate_goals(report)
    print(goals_table(goals))
    print(json.dumps([g.__dict__ | {"margin": round(g.margin, 4)} for g in goals], indent=2))
    return 0


def cmd_curve(args) -> int:
    rows = curve_table(args.fe, args.pmin, args.pmax, args.steps)
    dest = open(args.out, "w", newline="") if args.out else sys.stdout
    w = csv.writer(dest, lineterminator="\n")
    w.writerow(["p", "unencoded", "encoded"])
    for p, u, e in rows:
        w.writerow([f"{p:.10g}", f"{u:.12g}", f"{e:.12g}"])
    if args.out:
        dest.close()
    cross = find_crossover(args.fe) if args.fe > 0.25 else None
    msg = "crossover: no crossover" if cross is None else f"crossover: p={cross:.8f}"
    print(msg, file=sys.stdout if args.out else sys.stderr)
    return 0


def cmd_histogram(args) -> int:
    report = BenchmarkReport.from_json(Path(args.report).read_text())
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["bin_low", "bin_high", "count"])
    for lo, hi, c in polarization_histogram(report, args.bin_width):
        w.writerow([f"{lo:.6g}", f"{hi:.6g}", c])
    return 0


def cmd_verify_random(args) -> int:
    code = _load_code(args.code)
    spec = _noise_spec(args.noise)
    noise = channel_from_spec(spec, code.n) if spec.get("kind", "none") != "none" else None
    pipe = Pipeline(code, fe=args.fe, noise=noise)
    res = randomized_verification(pipe, args.samples, args.seed, engine=args.engine)
    print(f"samples={res.samples} seed={res.seed} engine={res.engine}")
    print(f"mean fidelity = {res.mean:.6f} +- {res.half_width:.6f}")
    if args.exhaustive:
        exact = exhaustive_verification(pipe)
        inside = "inside" if res.contains(exact) else "OUTSIDE"
        print(f"exhaustive mean over all {4**code.n} products = {exact:.6f} ({inside} interval)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="c5bench", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-code", help="generator, distance and syndrome checks")
    p.add_argument("--code", help="code definition file (default: standard five-qubit code)")
    p.set_defaults(func=cmd_verify_code)

    p = sub.add_parser("run-grid", help="16 errors x 3 axes polarization grid")
    p.add_argument("--fe", type=float, default=1.0)
    p.add_argument("--noise", help="JSON channel spec, or @path to one")
    p.add_argument("--engine", choices=("dense", "pauli", "both"), default="dense")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shots", type=int, default=0, help="sample the noise channel (Monte Carlo)")
    p.add_argument("--code")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_run_grid)

    p = sub.add_parser("goals", help="goal verdicts for a saved report")
    p.add_argument("--report", required=True)
    p.set_defaults(func=cmd_goals)

    p = sub.add_parser("curve", help="encoded vs unencoded fidelity curve")
    p.add_argument("--fe", type=float, default=0.97)
    p.add_argument("--pmin", type=float, default=0.0)
    p.add_argument("--pmax", type=float, default=0.5)
    p.add_argument("--steps", type=int, default=21)
    p.add_argument("--out")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("histogram", help="binned polarizations of a saved report")
    p.add_argument("--report", required=True)
    p.add_argument("--bin-width", type=float, default=0.05)
    p.set_defaults(func=cmd_histogram)

    p = sub.add_parser("verify-random", help="randomized stabilizer verification")
    p.add_argument("--samples", type=int, default=4096)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fe", type=float, default=1.0)
    p.add_argument("--noise")
    p.add_argument("--engine", choices=("pauli", "dense"), default="pauli")
    p.add_argument("--exhaustive", action="store_true", help="also compute the exact mean")
    p.add_argument("--code")
    p.set_defaults(func=cmd_verify_random)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
