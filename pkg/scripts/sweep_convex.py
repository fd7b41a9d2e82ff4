"""Compare strong bargaining set and ex-ante core membership on random ex-ante convex games.

    python3 scripts/sweep_convex.py --games 50 --seed 0
"""
from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from belgames.coregeo import exante_core_vrep, exante_membership  # noqa: E402
from belgames.games import is_exante_convex  # noqa: E402
from belgames.solutions import strong_bargaining_set_membership  # noqa: E402
from strategies import rand_convex_prob_game, rand_feasible_contract  # noqa: E402


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--games", type=int, default=50)
    ap.add_argument("--contracts", type=int, default=40)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    checked = mismatches = members = 0
    for _ in range(args.games):
        g = rand_convex_prob_game(rng, rng.randint(2, 4), rng.randint(1, 3))
        assert is_exante_convex(g)
        samples = list(exante_core_vrep(g).pseudo_vertices)
        samples += [rand_feasible_contract(rng, g, efficient=True) for _ in range(args.contracts)]
        for c in samples:
            core = exante_membership(g, c)
            members += core
            checked += 1
            if strong_bargaining_set_membership(g, c) != core:
                mismatches += 1
                print("mismatch:", g, c)
    print(f"games={args.games} contracts={checked} core_members={members} mismatches={mismatches}")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
