"""Regenerate the committed CLI golden reports for the bundled worked example.

    python3 scripts/regen_golden.py
"""
from __future__ import annotations

import contextlib
import io
import sys
from pathlib import Path

from belgames.cli import main

ROOT = Path(__file__).resolve().parents[1]
GAME = ROOT / "src" / "belgames" / "data" / "worked_example.json"
GOLDEN = ROOT / "tests" / "golden"

# (command, contract, strong)
CASES = [
    ("validate", None, False),
    ("expected-game", None, False),
    ("shapley", None, False),
    ("core-vertices", None, False),
    ("exante-geometry", None, False),
    ("prenucleolus", None, False),
    ("convexity", None, False),
    ("exante-check", "pv1", False),
    ("exante-check", "greedy", False),
    ("kernel-check", "shapley", False),
    ("kernel-check", "greedy", False),
    ("bargaining-check", "pv1", False),
    ("bargaining-check", "greedy", False),
    ("bargaining-check", "pv1", True),
    ("bargaining-check", "greedy", True),
    ("excess-table", "pv1", False),
    ("excess-table", "greedy", False),
]
FORMATS = ("json", "text")


def case_name(command, contract, strong, fmt) -> str:
    parts = [command] + ([contract] if contract else []) + (["strong"] if strong else [])
    return "__".join(parts) + "." + ("json" if fmt == "json" else "txt")


def case_argv(command, contract, strong, fmt) -> list[str]:
    argv = [command, "--game", str(GAME), "--format", fmt]
    if contract:
        argv += ["--contract", contract]
    if strong:
        argv.append("--strong")
    return argv


def render_case(command, contract, strong, fmt) -> str:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(case_argv(command, contract, strong, fmt))
    if code != 0:
        raise SystemExit(f"{command} exited with {code}")
    return buf.getvalue()


def main_regen() -> int:
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for case in CASES:
        for fmt in FORMATS:
            path = GOLDEN / case_name(*case, fmt)
            path.write_text(render_case(*case, fmt), encoding="utf-8")
            print(path.relative_to(ROOT))
    return 0


if __name__ == "__main__":
    sys.exit(main_regen())
