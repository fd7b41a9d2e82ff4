"""Print the main quantities of the bundled three-player, two-state example.

    python3 scripts/worked_example.py
"""
from __future__ import annotations

from belgames.cli import load_game
from belgames.coregeo import core_vertices, exante_core_vrep, exante_membership
from belgames.games import shapley_contract
from belgames.solutions import (
    kernel_membership, prenucleolus_contract, strong_bargaining_set_membership,
)
from regen_golden import GAME


def fmt(xs) -> str:
    return "(" + ", ".join(str(x) for x in xs) + ")"


def main() -> None:
    g, contracts = load_game(GAME)
    print("expected game:", fmt(g.expected.values))
    print("core vertices of V:", ", ".join(fmt(v) for v in core_vertices(g.expected)))
    vr = exante_core_vrep(g)
    for p in vr.pseudo_vertices:
        print("pseudo-vertex:", fmt(p.to_vector()))
    print("lineality basis:", ", ".join(fmt(w) for w in vr.lineality_basis))
    print("prenucleolus:", fmt(prenucleolus_contract(g).to_vector()))
    print("shapley contract:", fmt(shapley_contract(g).to_vector()))
    for name, c in contracts.items():
        print(f"{name}: core={exante_membership(g, c)} kernel={kernel_membership(g, c)} "
              f"strong_bargaining={strong_bargaining_set_membership(g, c)}")


if __name__ == "__main__":
    main()
