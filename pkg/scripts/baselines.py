"""Unencoded baselines behind the goal thresholds, and the encoded values.

    python3 scripts/baselines.py
"""

from c5bench import five_qubit_code
from c5bench.benchmark import e4_on, unencoded_pipeline
from c5bench.noise import random_single_qubit_depolarizing
from c5bench.pipeline import Pipeline


def main():
    e2 = random_single_qubit_depolarizing(5)
    rows = [("unencoded", unencoded_pipeline()), ("encoded", Pipeline(five_qubit_code()))]
    for fe in (0.97, 0.9):
        rows.append((f"encoded fe={fe}", Pipeline(five_qubit_code(), fe=fe)))
    print(f"{'storage':<18}{'F(E2)':>10}{'F(E4)':>10}  worst qubit")
    for name, pipe in rows:
        f2 = pipe.logical_channel(e2).entanglement_fidelity()
        k, _, _, f4 = e4_on(pipe)
        print(f"{name:<18}{f2:>10.4f}{f4:>10.4f}  {k}")


if __name__ == "__main__":
    main()
