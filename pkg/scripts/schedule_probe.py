"""Compare final states of the basic theory under several scan orders.

    python scripts/schedule_probe.py --n 200 --seed 1 --k 5
"""

import argparse

from resrules.campaign import schedule_robustness
from resrules.generator import generate_puzzles


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--k", type=int, default=5)
    args = ap.parse_args()
    rep = schedule_robustness(generate_puzzles(args.n, args.seed), k=args.k, seed=args.seed)
    print(f"puzzles: {rep.n_puzzles}")
    print(f"schedules: {rep.k}")
    print(f"agreeing: {rep.agreeing}")
    print(f"solved: {rep.n_solved}")
    print(f"solved_agreeing: {rep.solved_agreeing}")
    print(f"agreement: {rep.agreement:.4f}")


if __name__ == "__main__":
    main()
