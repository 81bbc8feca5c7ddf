"""Clue-count statistics of generated minimal puzzles.

    python scripts/clue_band.py --n 1000 --seed 1
"""

import argparse
from statistics import fmean

from resrules.generator import GENERATOR_ID, generate_puzzle


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    clues = [len(generate_puzzle(args.seed, i)[0]) for i in range(args.n)]
    print(f"generator_id: {GENERATOR_ID}")
    print(f"master_seed: {args.seed}")
    print(f"n: {args.n}")
    print(f"clues_min: {min(clues)}")
    print(f"clues_mean: {fmean(clues):.3f}")
    print(f"clues_max: {max(clues)}")


if __name__ == "__main__":
    main()
