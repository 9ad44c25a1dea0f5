"""Run the 16-error x 3-axis polarization grid and print goal verdicts.

    python3 scripts/error_grid.py --fe 0.97 --engine both --out results/grid.json
    python3 scripts/error_grid.py --noise '{"kind": "independent_depolarizing", "p": 0.02}'
"""

import argparse
import json
from pathlib import Path

from c5bench import five_qubit_code, run_error_grid
from c5bench.benchmark import goals_table, polarization_histogram
from c5bench.noise import channel_from_spec


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--fe", type=float, default=0.97)
    ap.add_argument("--noise", default='{"kind": "none"}')
    ap.add_argument("--engine", default="both", choices=("dense", "pauli", "both"))
    ap.add_argument("--bin-width", type=float, default=0.05)
    ap.add_argument("--out", default="results/grid.json")
    args = ap.parse_args()

    spec = json.loads(args.noise)
    noise = None if spec.get("kind") == "none" else channel_from_spec(spec)
    report = run_error_grid(five_qubit_code(), fe=args.fe, noise=noise, engine=args.engine, noise_config=spec)

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(report.to_json())
    out.with_suffix(".csv").write_text(report.records_csv())

    print(f"{'error':<8}{'fidelity':>10}")
    for label, f in report.per_error_fidelity.items():
        print(f"{label:<8}{f:>10.6f}")
    print(f"\naggregate over random single-qubit depolarization: {report.aggregate_E2:.6f}")
    d = report.demonic
    print(f"worst single-qubit depolarization: qubit {d['qubit']}, fidelity {d['fidelity']:.6f}\n")
    print(goals_table(report.goal_results))
    print("\npolarization histogram")
    for lo, hi, c in polarization_histogram(report, args.bin_width):
        print(f"  [{lo:.2f}, {hi:.2f})  {'#' * c}")
    print(f"\nreport: {out}")


if __name__ == "__main__":
    main()
