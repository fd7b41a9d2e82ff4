"""Check prenucleolus in kernel in bargaining set, and core in strong in ordinary bargaining set.

    python3 scripts/sweep_inclusion.py --games 100 --seed 0
"""
from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from belgames.coregeo import exante_membership  # noqa: E402
from belgames.solutions import (  # noqa: E402
    bargaining_set_membership, kernel_membership, prenucleolus_contract,
    strong_bargaining_set_membership,
)
from strategies import rand_feasible_contract, rand_prob_game  # noqa: E402


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--games", type=int, default=100)
    ap.add_argument("--contracts", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    failures = 0
    counts = {"core": 0, "strong": 0, "ordinary": 0, "kernel": 0}
    for _ in range(args.games):
        g = rand_prob_game(rng, rng.randint(2, 4), rng.randint(1, 3))
        nuc = prenucleolus_contract(g)
        if not (kernel_membership(g, nuc) and bargaining_set_membership(g, nuc)):
            failures += 1
            print("prenucleolus outside kernel or bargaining set:", g)
        for _ in range(args.contracts):
            c = rand_feasible_contract(rng, g, efficient=True)
            core = exante_membership(g, c)
            strong = strong_bargaining_set_membership(g, c)
            ordinary = bargaining_set_membership(g, c)
            kernel = kernel_membership(g, c)
            for key, flag in zip(counts, (core, strong, ordinary, kernel)):
                counts[key] += flag
            if (core and not strong) or (strong and not ordinary):
                failures += 1
                print("chain broken:", g, c)
    summary = " ".join(f"{k}={v}" for k, v in counts.items())
    print(f"games={args.games} sampled={args.games * args.contracts} {summary} failures={failures}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
