"""Canonical small games, environments and strategy profiles.

These are the fixtures the CLI and the test-suite verify against: the
prisoner's dilemma, a 2x2 anti-coordination game with a pair of correlated
signals, and the red/green private-information matching game together with
its two reference angle profiles.
"""

from __future__ import annotations

from fractions import Fraction
from math import pi

from .environments import Environment, RandomVariable, SampleSpace
from .games import Game
from .private_info import PrivateInfoGame


def prisoners_dilemma() -> Game:
    return Game(
        "prisoners-dilemma",
        ("C", "D"),
        ("C", "D"),
        {
            ("C", "C"): (3.0, 3.0),
            ("C", "D"): (0.0, 5.0),
            ("D", "C"): (5.0, 0.0),
            ("D", "D"): (1.0, 1.0),
        },
    )


def anti_coordination_game() -> Game:
    """2x2 game paying (2,1) at (C,D) and (1,2) at (D,C), zero elsewhere."""
    return Game(
        "anti-coordination",
        ("C", "D"),
        ("C", "D"),
        {
            ("C", "C"): (0.0, 0.0),
            ("C", "D"): (2.0, 1.0),
            ("D", "C"): (1.0, 2.0),
            ("D", "D"): (0.0, 0.0),
        },
    )


def noisy_signal_environment() -> Environment:
    """Environment ({X, Y}, {W}) with W uniform and two anti-correlated signals.

    Pairwise joints: Prob(X=W=C) = Prob(X=W=D) = 1/8 and
    Prob(Y=W=C) = Prob(Y=W=D) = 1/12; the carrier couples X and Y
    conditionally independently given W (the induced game only depends on
    the pairwise joints, so the choice of coupling is immaterial).
    """
    labels = ("C", "D")
    atoms = []
    probs = {}
    vals_w = {}
    vals_x = {}
    vals_y = {}
    # Prob(X agrees with W) = 1/4, Prob(Y agrees with W) = 1/6.
    for w in labels:
        for x in labels:
            for y in labels:
                atom = f"{w}{x}{y}"
                px = Fraction(1, 4) if x == w else Fraction(3, 4)
                py = Fraction(1, 6) if y == w else Fraction(5, 6)
                probs[atom] = float(Fraction(1, 2) * px * py)
                vals_w[atom] = w
                vals_x[atom] = x
                vals_y[atom] = y
                atoms.append(atom)
    space = SampleSpace(tuple(atoms), probs)
    x = RandomVariable("X", space, vals_x, 1)
    y = RandomVariable("Y", space, vals_y, 1)
    w = RandomVariable("W", space, vals_w, 2)
    return Environment(space, (x, y), (w,))


def red_green_game() -> PrivateInfoGame:
    """Private-information game: match on red/red, mismatch otherwise.

    Both players privately observe red or green (uniform, independent).
    When both see red they are paid for choosing equal strategies; in every
    other type cell they are paid for choosing opposite strategies.
    """
    types = ("red", "green")
    strategies = ("C", "D")
    type_dist = {(a1, a2): 0.25 for a1 in types for a2 in types}
    payoffs = {}
    for a1 in types:
        for a2 in types:
            match_pays = a1 == a2 == "red"
            for s1 in strategies:
                for s2 in strategies:
                    hit = (s1 == s2) if match_pays else (s1 != s2)
                    payoffs[(a1, a2, s1, s2)] = (1.0, 1.0) if hit else (0.0, 0.0)
    return PrivateInfoGame("red-green-matching", types, types, type_dist, strategies, strategies, payoffs)


def red_green_type_a() -> tuple[dict[str, float], dict[str, float]]:
    """Reference profile earning 3/4: three type cells pay 1, one pays 0."""
    return ({"red": 0.0, "green": pi / 2}, {"red": 0.0, "green": pi / 2})


def red_green_type_b() -> tuple[dict[str, float], dict[str, float]]:
    """Reference profile earning 1/2 + sqrt(2)/4 in every type cell."""
    return ({"red": pi / 8, "green": 3 * pi / 8}, {"red": 0.0, "green": 3 * pi / 4})
