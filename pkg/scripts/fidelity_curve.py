"""Encoded vs unencoded entanglement fidelity under independent depolarization.

Writes p, unencoded, encoded for several implementation fidelities and checks
the closed-form curve against full simulation at a few points.

    python3 scripts/fidelity_curve.py --out results/curve.csv
"""

import argparse
import csv
from pathlib import Path

import numpy as np

from c5bench import (
    Pipeline,
    encoded_curve,
    find_crossover,
    five_qubit_code,
    unencoded_curve,
)
from c5bench.noise import independent_depolarizing


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--fe", type=float, nargs="+", default=[1.0, 0.99, 0.97, 0.95])
    ap.add_argument("--steps", type=int, default=101)
    ap.add_argument("--pmax", type=float, default=0.5)
    ap.add_argument("--out", default="results/curve.csv")
    args = ap.parse_args()

    ps = np.linspace(0, args.pmax, args.steps)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["p", "unencoded"] + [f"encoded_fe{fe:g}" for fe in args.fe])
        for p in ps:
            w.writerow([f"{p:.6g}", f"{unencoded_curve(p):.12g}"] + [f"{encoded_curve(p, fe):.12g}" for fe in args.fe])
    print(f"wrote {out}")

    for fe in args.fe:
        cross = find_crossover(fe) if fe > 0.25 else None
        print(f"fe={fe:<6g} crossover: {'none' if cross is None else f'{cross:.6f}'}")

    code = five_qubit_code()
    for p in (0.05, 0.1, 0.2):
        sim = Pipeline(code, fe=args.fe[-1], noise=independent_depolarizing(p, 5)).reference_fidelity().value
        print(f"p={p:<5g} simulated {sim:.10f}  closed form {encoded_curve(p, args.fe[-1]):.10f}")


if __name__ == "__main__":
    main()
