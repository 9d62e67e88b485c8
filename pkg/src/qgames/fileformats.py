"""Line-based text formats for games and environments.

Game files:

    game: <name>
    rows: <labels>
    cols: <labels>
    payoff <row> <col> = <p1> <p2>     # one line per cell

Environment files:

    var1: <names>          # player 1's variables
    var2: <names>
    atoms: <count>
    atom <id> prob <p> <VAR>=<label> ...

Numbers are decimal literals or exact rationals `a/b` (parsed exactly,
converted to double precision once). `#` starts a comment; blank lines are
ignored.
"""

from __future__ import annotations

from fractions import Fraction

from .environments import Environment, RandomVariable, SampleSpace
from .errors import ValidationError
from .games import Game


class FileFormatError(ValidationError):
    """Malformed game or environment file."""

    def __init__(self, message, line_no=None):
        where = f" (line {line_no})" if line_no else ""
        super().__init__(f"{message}{where}")


def parse_number(token: str) -> float:
    """Decimal or rational literal to a double."""
    token = token.strip()
    try:
        if "/" in token:
            return float(Fraction(token))
        return float(token)
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"bad number literal {token!r}") from None


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def parse_game(text: str) -> Game:
    name = None
    rows = None
    cols = None
    payoffs = {}
    for no, line in _content_lines(text):
        if line.startswith("game:"):
            name = line[len("game:") :].strip()
        elif line.startswith("rows:"):
            rows = tuple(line[len("rows:") :].split())
        elif line.startswith("cols:"):
            cols = tuple(line[len("cols:") :].split())
        elif line.startswith("payoff"):
            if rows is None or cols is None:
                raise FileFormatError("payoff line before rows:/cols: declarations", no)
            head, _, values = line.partition("=")
            parts = head.split()
            if len(parts) != 3:
                raise FileFormatError(f"expected 'payoff <row> <col> = <p1> <p2>', got {line!r}", no)
            _, r, c = parts
            if r not in rows or c not in cols:
                raise FileFormatError(f"unknown labels in payoff line {line!r}", no)
            nums = values.split()
            if len(nums) != 2:
                raise FileFormatError(f"expected two payoff numbers, got {values!r}", no)
            if (r, c) in payoffs:
                raise FileFormatError(f"duplicate payoff for ({r}, {c})", no)
            payoffs[(r, c)] = (parse_number(nums[0]), parse_number(nums[1]))
        else:
            raise FileFormatError(f"unrecognized line {line!r}", no)
    if name is None or rows is None or cols is None:
        raise FileFormatError("game file needs game:, rows: and cols: lines")
    missing = {(r, c) for r in rows for c in cols} - set(payoffs)
    if missing:
        raise FileFormatError(f"missing payoff lines for cells {sorted(missing)}")
    return Game(name, rows, cols, payoffs)


def serialize_game(g: Game) -> str:
    lines = [f"game: {g.name}", f"rows: {' '.join(g.strategies1)}", f"cols: {' '.join(g.strategies2)}"]
    for r in g.strategies1:
        for c in g.strategies2:
            p1, p2 = g.payoffs[(r, c)]
            lines.append(f"payoff {r} {c} = {p1:.17g} {p2:.17g}")
    return "\n".join(lines) + "\n"


def parse_env(text: str) -> Environment:
    names1 = None
    names2 = None
    declared = None
    atom_rows = []
    for no, line in _content_lines(text):
        if line.startswith("var1:"):
            names1 = tuple(line[len("var1:") :].split())
        elif line.startswith("var2:"):
            names2 = tuple(line[len("var2:") :].split())
        elif line.startswith("atoms:"):
            declared = int(line[len("atoms:") :].strip())
        elif line.startswith("atom "):
            if names1 is None or names2 is None:
                raise FileFormatError("atom line before var1:/var2: declarations", no)
            parts = line.split()
            if len(parts) < 4 or parts[2] != "prob":
                raise FileFormatError(f"expected 'atom <id> prob <p> VAR=label ...', got {line!r}", no)
            atom_id = parts[1]
            prob = parse_number(parts[3])
            assignments = {}
            for token in parts[4:]:
                if "=" not in token:
                    raise FileFormatError(f"bad assignment token {token!r}", no)
                var, _, label = token.partition("=")
                assignments[var] = label
            missing = (set(names1) | set(names2)) - set(assignments)
            if missing:
                raise FileFormatError(f"atom {atom_id!r} missing assignments for {sorted(missing)}", no)
            atom_rows.append((atom_id, prob, assignments))
        else:
            raise FileFormatError(f"unrecognized line {line!r}", no)
    if names1 is None or names2 is None:
        raise FileFormatError("environment file needs var1: and var2: lines")
    if declared is not None and declared != len(atom_rows):
        raise FileFormatError(f"declared {declared} atoms but found {len(atom_rows)}")
    atoms = tuple(a for a, _, _ in atom_rows)
    if len(set(atoms)) != len(atoms):
        raise FileFormatError("duplicate atom identifiers")
    probs = {a: p for a, p, _ in atom_rows}
    total = sum(probs.values())
    if abs(total - 1.0) > 1e-9:
        raise FileFormatError(f"atom probabilities sum to {total}, expected 1")
    # absorb sub-1e-9 rounding so SampleSpace's strict 1e-12 check passes
    if total != 1.0:
        probs = {a: p / total for a, p in probs.items()}
    space = SampleSpace(atoms, probs)

    def build(names, target):
        out = []
        for nm in names:
            values = {a: assign[nm] for a, _, assign in atom_rows}
            out.append(RandomVariable(nm, space, values, target))
        return tuple(out)

    return Environment(space, build(names1, 1), build(names2, 2))


def load_game(path) -> Game:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_game(fh.read())


def load_env(path) -> Environment:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_env(fh.read())
