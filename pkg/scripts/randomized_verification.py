"""Randomized check of the corrected fidelity over random Pauli products.

Compares the seeded sample mean and its interval with the exhaustive mean
over all 4**5 products, for a few noise settings.

    python3 scripts/randomized_verification.py --samples 4096 --seed 7
"""

import argparse

from c5bench import Pipeline, five_qubit_code, randomized_verification
from c5bench.benchmark import exhaustive_verification
from c5bench.noise import independent_depolarizing

SETTINGS = [
    ("noiseless", 1.0, None),
    ("fe=0.97", 0.97, None),
    ("p=0.05", 1.0, independent_depolarizing(0.05, 5)),
    ("p=0.05, fe=0.97", 0.97, independent_depolarizing(0.05, 5)),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=4096)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    code = five_qubit_code()
    print(f"{'setting':<18}{'sampled':>10}{'+-':>10}{'exhaustive':>12}  inside")
    for name, fe, noise in SETTINGS:
        pipe = Pipeline(code, fe=fe, noise=noise)
        res = randomized_verification(pipe, args.samples, args.seed)
        exact = exhaustive_verification(pipe)
        print(f"{name:<18}{res.mean:>10.6f}{res.half_width:>10.6f}{exact:>12.6f}  {res.contains(exact)}")


if __name__ == "__main__":
    main()
