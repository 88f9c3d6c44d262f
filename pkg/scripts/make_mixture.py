"""Write a random epsilon-heavy k-sparse mixture as mixture JSON."""
import argparse

import numpy as np

from app.services.distribution_service import random_mixture
from app.utils.io import dump_mixture


def make_mixture():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--k", type=int, required=True)
    parser.add_argument("--epsilon", type=float, required=True)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default="mixture.json")
    args = parser.parse_args()

    mixture = random_mixture(args.n, args.k, args.epsilon, np.random.default_rng(args.seed))
    with open(args.out, "w", encoding="utf-8") as handle:
        handle.write(dump_mixture(mixture))
    print(f"Wrote {len(mixture)} atoms over S_{args.n} to {args.out}")


if __name__ == "__main__":
    make_mixture()
