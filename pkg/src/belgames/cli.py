"""
Command-line front end.

    belgames <command> --game GAME.json [--contract NAME] [--strong] [--format json|text]

Game documents are JSON with every rational written as a string
("3/4", "-2", "10").  Exit status is 0 on success, 1 for invalid input and
2 when the game does not meet a command's precondition (for instance a
belief prior where a probabilistic one is required).
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction
from itertools import combinations

from . import coregeo, games, solutions
from .errors import PreconditionError, ValidationError
from .games import BelGame, Contract, TUGame
from .setfunc import Kind, MassFunction, StateSpace, classify, members

EXIT_OK, EXIT_VALIDATION, EXIT_PRECONDITION = 0, 1, 2

COMMANDS = (
    "validate", "expected-game", "shapley", "core-vertices", "exante-check",
    "exante-geometry", "prenucleolus", "kernel-check", "bargaining-check",
    "convexity", "excess-table",
)
NEEDS_CONTRACT = {"exante-check", "kernel-check", "bargaining-check", "excess-table"}


# -- parsing ---------------------------------------------------------------

def parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ValidationError(f"{where}: expected a rational string, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"{where}: cannot parse {value!r} as a rational") from None


def _labels(doc, key) -> tuple[str, ...]:
    raw = doc.get(key)
    if not isinstance(raw, list) or not raw:
        raise ValidationError(f"{key}: expected a nonempty list of labels")
    labels = tuple(str(x) for x in raw)
    if len(set(labels)) != len(labels):
        raise ValidationError(f"{key}: labels must be distinct")
    return labels


def _coalition(labels, players, where) -> int:
    if not isinstance(labels, list):
        raise ValidationError(f"{where}: coalition must be a list of player labels")
    mask = 0
    for lab in labels:
        if str(lab) not in players:
            raise ValidationError(f"{where}: unknown player {lab!r}")
        mask |= 1 << players.index(str(lab))
    return mask


def _mass(entries, states: StateSpace, where: str) -> MassFunction:
    if not isinstance(entries, list):
        raise ValidationError(f"{where}: expected a list of {{subset, mass}} entries")
    table = [Fraction(0)] * (1 << states.d)
    for k, entry in enumerate(entries):
        try:
            subset, mass = entry["subset"], entry["mass"]
        except (TypeError, KeyError):
            raise ValidationError(f"{where}[{k}]: entry needs 'subset' and 'mass'") from None
        if not isinstance(subset, list):
            raise ValidationError(f"{where}[{k}].subset: expected a list of state labels")
        try:
            mask = states.mask(subset)
        except ValidationError as err:
            raise ValidationError(f"{where}[{k}].subset: {err}") from None
        table[mask] += parse_rational(mass, f"{where}[{k}].mass")
    try:
        return MassFunction(tuple(table))
    except ValidationError as err:
        raise ValidationError(f"{where}: {err}") from None


def parse_document(doc: dict) -> tuple[BelGame, dict[str, Contract]]:
    if not isinstance(doc, dict):
        raise ValidationError("document must be a JSON object")
    players = _labels(doc, "players")
    states = StateSpace(_labels(doc, "states"))
    n, d = len(players), states.d

    priors_doc = doc.get("priors")
    if not isinstance(priors_doc, dict):
        raise ValidationError("priors: expected an object with 'common' or one entry per player")
    if "common" in priors_doc:
        if len(priors_doc) != 1:
            raise ValidationError("priors: 'common' cannot be mixed with per-player priors")
        priors = (_mass(priors_doc["common"], states, "priors.common"),) * n
    else:
        missing = [p for p in players if p not in priors_doc]
        if missing:
            raise ValidationError(f"priors: missing prior for player {missing[0]!r}")
        extra = [k for k in priors_doc if k not in players]
        if extra:
            raise ValidationError(f"priors: unknown player {extra[0]!r}")
        priors = tuple(_mass(priors_doc[p], states, f"priors.{p}") for p in players)

    values_doc = doc.get("values")
    if not isinstance(values_doc, dict):
        raise ValidationError("values: expected an object keyed by state label")
    for key in values_doc:
        if key not in states.labels:
            raise ValidationError(f"values: unknown state {key!r}")
    state_games = []
    for w in states.labels:
        where = f"values.{w}"
        entries = values_doc.get(w)
        if not isinstance(entries, list):
            raise ValidationError(f"{where}: expected a list of {{coalition, value}} entries")
        table: list[Fraction | None] = [None] * (1 << n)
        table[0] = Fraction(0)
        for k, entry in enumerate(entries):
            try:
                coal, val = entry["coalition"], entry["value"]
            except (TypeError, KeyError):
                raise ValidationError(f"{where}[{k}]: entry needs 'coalition' and 'value'") from None
            mask = _coalition(coal, players, f"{where}[{k}].coalition")
            x = parse_rational(val, f"{where}[{k}].value")
            if mask == 0 and x != 0:
                raise ValidationError(f"{where}[{k}]: v(empty set) must be 0")
            if mask and table[mask] is not None:
                raise ValidationError(f"{where}[{k}]: duplicate coalition {coal}")
            table[mask] = x
        gaps = [s for s, x in enumerate(table) if x is None]
        if gaps:
            raise ValidationError(f"{where}: missing coalition {[players[i] for i in members(gaps[0])]}")
        state_games.append(TUGame(tuple(table)))

    try:
        g = BelGame(priors, tuple(state_games), players, states)
    except ValidationError as err:
        raise ValidationError(f"priors: {err}") from None

    contracts = {}
    for name, matrix in (doc.get("contracts") or {}).items():
        where = f"contracts.{name}"
        if not isinstance(matrix, list) or len(matrix) != n:
            raise ValidationError(f"{where}: expected {n} rows (one per player)")
        rows = []
        for i, row in enumerate(matrix):
            if not isinstance(row, list) or len(row) != d:
                raise ValidationError(f"{where}[{i}]: expected {d} entries (one per state)")
            rows.append(tuple(parse_rational(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)))
        contracts[str(name)] = Contract.grand(rows)
    return g, contracts


def parse_game(text: str) -> tuple[BelGame, dict[str, Contract]]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise ValidationError(f"invalid JSON: {err}") from None
    return parse_document(doc)


def load_game(path) -> tuple[BelGame, dict[str, Contract]]:
    with open(path, encoding="utf-8") as fh:
        return parse_game(fh.read())


# -- serialization ---------------------------------------------------------

def fmt(x: Fraction) -> str:
    return str(Fraction(x))


def vec(xs) -> list[str]:
    return [fmt(x) for x in xs]


def coalition_labels(g: BelGame, mask: int) -> list[str]:
    return [g.players[i] for i in members(mask)]


def _mass_entries(m: MassFunction, states: StateSpace) -> list[dict]:
    return [{"subset": states.subset(a), "mass": fmt(v)} for a, v in enumerate(m.values) if v]


def dump_document(g: BelGame, contracts: dict[str, Contract] | None = None) -> dict:
    """Inverse of :func:`parse_document`; rationals stay strings."""
    if g.common_prior:
        priors = {"common": _mass_entries(g.priors[0], g.states)}
    else:
        priors = {p: _mass_entries(m, g.states) for p, m in zip(g.players, g.priors)}
    doc = {
        "players": list(g.players),
        "states": list(g.states.labels),
        "priors": priors,
        "values": {
            w: [{"coalition": coalition_labels(g, s), "value": fmt(v(s))} for s in _by_size(g.n)]
            for w, v in zip(g.states.labels, g.games)
        },
    }
    if contracts:
        doc["contracts"] = {name: [vec(r) for r in c.rows] for name, c in contracts.items()}
    return doc


def _by_size(n: int) -> list[int]:
    """Nonempty coalitions by size, then lexicographically by members."""
    out = []
    for k in range(1, n + 1):
        for combo in combinations(range(n), k):
            out.append(sum(1 << i for i in combo))
    return out


def contract_doc(g: BelGame, c: Contract) -> dict:
    return {g.players[i]: vec(c.payoff(i)) for i in c.members}


def coordinate_names(g: BelGame) -> list[str]:
    return [f"x[{w}][{p}]" for w in g.states.labels for p in g.players]


# -- commands --------------------------------------------------------------

def _contract(contracts, name):
    if name is None:
        raise ValidationError("this command needs --contract NAME")
    if name not in contracts:
        raise ValidationError(f"contracts: no contract named {name!r}")
    return contracts[name]


def _prior_kind(g: BelGame) -> str:
    if not g.common_prior:
        return "distinct"
    return "probability" if classify(g.belief) is Kind.PROBABILITY else "belief"


def cmd_validate(g, contracts, args, warn):
    out = {
        "players": list(g.players),
        "states": list(g.states.labels),
        "common_prior": g.common_prior,
        "prior_kind": _prior_kind(g),
        "contracts": [
            {"name": name, "feasible": games.is_feasible(g, c), "efficient": games.is_efficient(g, c)}
            for name, c in contracts.items()
        ],
    }
    if g.common_prior:
        out["focal_elements"] = [g.states.subset(a) for a in range(1 << g.d) if g.prior[a] > 0]
    return out


def cmd_expected_game(g, contracts, args, warn):
    V = games.expected_game(g)
    return {"expected_game": [{"coalition": coalition_labels(g, s), "value": fmt(V(s))}
                              for s in _by_size(g.n)]}


def cmd_shapley(g, contracts, args, warn):
    c = games.shapley_contract(g)
    out = {"shapley_contract": contract_doc(g, c),
           "null_players": [g.players[i] for i in sorted(games.null_players(g))],
           "symmetric_pairs": [[g.players[i], g.players[j]] for i, j in sorted(games.symmetric_pairs(g))]}
    if g.common_prior:
        out["shapley_of_expected_game"] = vec(games.shapley_value(g.expected))
    return out


def cmd_core_vertices(g, contracts, args, warn):
    V = games.expected_game(g)
    nonempty, _ = coregeo.core_nonempty(V)
    return {"core_nonempty": nonempty, "vertices": [vec(y) for y in coregeo.core_vertices(V)]}


def cmd_exante_check(g, contracts, args, warn):
    c = _contract(contracts, args.contract)
    out = {"feasible": games.is_feasible(g, c),
           "efficient": games.is_efficient(g, c)}
    if g.probabilistic:
        out["expected_payoffs"] = vec(solutions.contract_values(g, c))
        out["member"] = coregeo.exante_membership(g, c)
    else:
        games.require_common_prior(g, "exante-check")
        warn.append("belief prior: only the sufficient condition is decided; "
                    "false does not prove the contract is outside the ex-ante core")
        out["choquet_payoffs"] = vec(solutions.contract_values(g, c))
        out["sufficient_condition"] = coregeo.exante_sufficient(g, c)
    return out


def cmd_exante_geometry(g, contracts, args, warn):
    vr = coregeo.exante_core_vrep(g)
    hrep = coregeo.exante_core_hrep(g)
    V = g.expected
    verts = coregeo.core_vertices(V)
    return {
        "coordinates": coordinate_names(g),
        "lineality_dimension": len(vr.lineality_basis),
        "lineality_basis": [vec(w) for w in vr.lineality_basis],
        "pseudo_vertices": [
            {"core_vertex": vec(y), "vector": vec(p.to_vector()),
             "tight_rank": hrep.tight_rank(p.to_vector())}
            for y, p in zip(verts, vr.pseudo_vertices)
        ],
        "inequalities": [
            {"coalition": coalition_labels(g, s), "coefficients": vec(c.coeffs), "rhs": fmt(c.rhs)}
            for s, c in zip(hrep.coalitions, hrep.inequalities)
        ],
        "equalities": [
            {"state": w, "coefficients": vec(c.coeffs), "rhs": fmt(c.rhs)}
            for w, c in zip(g.states.labels, hrep.equalities)
        ],
    }


def cmd_prenucleolus(g, contracts, args, warn):
    games.require_common_prior(g, "prenucleolus")
    nuc = solutions.prenucleolus_tu(g.expected)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", solutions.CertainContractWarning)
        c = solutions.prenucleolus_contract(g)
    if not g.probabilistic:
        warn.append("belief prior: certain contract at the prenucleolus of V; "
                    "it may not be efficient in every state")
    return {"expected_game_prenucleolus": vec(nuc),
            "contract": contract_doc(g, c),
            "efficient": games.is_efficient(g, c),
            "kernel_member": solutions.kernel_membership(g, c)}


def cmd_kernel_check(g, contracts, args, warn):
    c = _contract(contracts, args.contract)
    games.require_common_prior(g, "kernel-check")
    feasible = games.is_feasible(g, c)
    surpluses = []
    for i in range(g.n):
        for j in range(g.n):
            if i != j:
                surpluses.append({"i": g.players[i], "j": g.players[j],
                                  "surplus": fmt(solutions.surplus(g, c, i, j))})
    return {"feasible": feasible,
            "surpluses": surpluses, "member": solutions.kernel_membership(g, c)}


def cmd_bargaining_check(g, contracts, args, warn):
    c = _contract(contracts, args.contract)
    games.require_probabilistic(g, "bargaining-check")
    rows = []
    for s in _by_size(g.n):
        rep = solutions.legitimate_blocking(g, c, s, restrict_outside=args.strong)
        rows.append({
            "coalition": coalition_labels(g, s),
            "verdict": rep.verdict.value,
            "witness": vec(rep.witness) if rep.witness is not None else None,
            "counterblockers": [coalition_labels(g, t) for t in rep.counterblockers],
        })
    if args.strong:
        member = solutions.strong_bargaining_set_membership(g, c)
    else:
        member = solutions.bargaining_set_membership(g, c)
    return {"feasible": games.is_feasible(g, c), "coalitions": rows, "member": member}


def cmd_convexity(g, contracts, args, warn):
    out = {"state_games_convex": {w: games.is_convex_tu(v) for w, v in zip(g.states.labels, g.games)}}
    out["expected_game_convex"] = games.is_convex_tu(games.expected_game(g))
    out["exante_convex"] = games.is_exante_convex(g)
    return out


def cmd_excess_table(g, contracts, args, warn):
    c = _contract(contracts, args.contract)
    e = solutions.excess_table(g, c)
    th = solutions.theta_from_excesses(e)
    return {"excesses": [{"coalition": coalition_labels(g, s), "excess": fmt(e[s])}
                         for s in [0] + _by_size(g.n)],
            "theta": vec(th.values),
            "theta_coalitions": [coalition_labels(g, s) for s in th.coalitions]}


HANDLERS = {
    "validate": cmd_validate,
    "expected-game": cmd_expected_game,
    "shapley": cmd_shapley,
    "core-vertices": cmd_core_vertices,
    "exante-check": cmd_exante_check,
    "exante-geometry": cmd_exante_geometry,
    "prenucleolus": cmd_prenucleolus,
    "kernel-check": cmd_kernel_check,
    "bargaining-check": cmd_bargaining_check,
    "convexity": cmd_convexity,
    "excess-table": cmd_excess_table,
}


def run(command: str, g: BelGame, contracts: dict[str, Contract], args) -> dict:
    """Build the report for ``command``; raises on validation or precondition failures."""
    if command in NEEDS_CONTRACT:
        _contract(contracts, args.contract)
    warn: list[str] = []
    result = HANDLERS[command](g, contracts, args, warn)
    options = {}
    if command in NEEDS_CONTRACT:
        options["contract"] = args.contract
    if command == "bargaining-check":
        options["strong"] = args.strong
    return {"command": command, "options": options, "result": result, "warnings": warn}


# -- rendering -------------------------------------------------------------

SET_KEYS = {"players", "states", "coalition", "focal_elements", "null_players",
            "symmetric_pairs", "counterblockers", "theta_coalitions"}


def _cell(x, setlike=False) -> str:
    if x is None:
        return "-"
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, list):
        if x and all(isinstance(y, list) for y in x):
            return ", ".join(_cell(y, setlike) for y in x) or "none"
        left, right = ("{", "}") if setlike else ("(", ")")
        return left + ", ".join(_cell(y) for y in x) + right
    return str(x)


def _table(rows: list[list[str]]) -> list[str]:
    widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
    return ["  " + "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]


def render_text(report: dict) -> str:
    lines = [f"command: {report['command']}"]
    for k, v in report["options"].items():
        lines.append(f"{k}: {_cell(v)}")
    for key, val in report["result"].items():
        setlike = key in SET_KEYS
        if isinstance(val, list) and val and all(isinstance(x, dict) for x in val):
            cols = list(val[0])
            lines.append(f"{key}:")
            lines += _table([cols] + [[_cell(x[c], c in SET_KEYS) for c in cols] for x in val])
        elif isinstance(val, list) and val and all(isinstance(x, list) for x in val) and not setlike:
            lines.append(f"{key}:")
            lines += _table([[_cell(y) for y in x] for x in val])
        elif isinstance(val, dict):
            lines.append(f"{key}:")
            lines += _table([[str(k), _cell(x)] for k, x in val.items()])
        else:
            lines.append(f"{key}: {_cell(val, setlike)}")
    for w in report["warnings"]:
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


def render(report: dict, form: str) -> str:
    if form == "text":
        return render_text(report)
    return json.dumps(report, indent=2) + "\n"


# -- entry point -----------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="belgames", description="Exact analyses of Bel coalitional games (ex-ante).")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--game", required=True, help="path to a JSON game document")
    p.add_argument("--contract", help="name of a contract in the document")
    p.add_argument("--strong", action="store_true", help="strong bargaining set (bargaining-check)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        g, contracts = load_game(args.game)
        report = run(args.command, g, contracts, args)
    except OSError as err:
        print(f"error: cannot read game document: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValidationError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    except PreconditionError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PRECONDITION
    sys.stdout.write(render(report, args.format))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
