"""Games of private information and the map-strategy (behavioral) lift.

A private-information game draws a type pair, shows each player their own
type, and pays by type-dependent tables. Lifting turns it into an ordinary
game whose strategies are maps from types to strategies; environments lift
the same way, to maps from types to random variables. Both lift orders
(lift the game first or resolve the environment first) produce the same
ordinary game, which `check_commute` verifies cell by cell.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .environments import Environment, RandomVariable, joint_distribution
from .errors import BijectionMismatchError, SizeLimitError, ValidationError
from .games import TOL, Game

SHARP_LIMIT = 4096


@dataclass(frozen=True)
class PrivateInfoGame:
    name: str
    info1: tuple[str, ...]
    info2: tuple[str, ...]
    type_dist: dict[tuple[str, str], float]
    strategies1: tuple[str, ...]
    strategies2: tuple[str, ...]
    payoffs: dict[tuple[str, str, str, str], tuple[float, float]]

    def __post_init__(self):
        object.__setattr__(self, "info1", tuple(self.info1))
        object.__setattr__(self, "info2", tuple(self.info2))
        object.__setattr__(self, "strategies1", tuple(self.strategies1))
        object.__setattr__(self, "strategies2", tuple(self.strategies2))
        cells = list(itertools.product(self.info1, self.info2))
        if set(self.type_dist) != set(cells):
            raise ValidationError("type distribution must cover exactly the type cells")
        total = sum(self.type_dist.values())
        if abs(total - 1.0) > TOL:
            raise ValidationError(f"type distribution sums to {total}, expected 1")
        for a1, a2 in cells:
            for s1 in self.strategies1:
                for s2 in self.strategies2:
                    if (a1, a2, s1, s2) not in self.payoffs:
                        raise ValidationError(f"missing payoff for {(a1, a2, s1, s2)}")

    def cell_game(self, a1: str, a2: str) -> Game:
        """The ordinary game played when the type pair is (a1, a2)."""
        return Game(
            f"{self.name}[{a1},{a2}]",
            self.strategies1,
            self.strategies2,
            {
                (s1, s2): self.payoffs[(a1, a2, s1, s2)]
                for s1 in self.strategies1
                for s2 in self.strategies2
            },
        )


def map_label(values) -> str:
    """Canonical label for a type->item map, joining items in type order."""
    return ",".join(str(v) for v in values)


def _enumerate_maps(info: tuple[str, ...], items):
    """All maps info -> items, lexicographic in the item order per type."""
    for combo in itertools.product(items, repeat=len(info)):
        yield dict(zip(info, combo)), combo


def _check_sharp_size(pg: PrivateInfoGame):
    n1 = len(pg.strategies1) ** len(pg.info1)
    n2 = len(pg.strategies2) ** len(pg.info2)
    if n1 > SHARP_LIMIT or n2 > SHARP_LIMIT:
        raise SizeLimitError(f"map-strategy spaces {n1}x{n2} exceed limit {SHARP_LIMIT}")


def sharp_game(pg: PrivateInfoGame) -> Game:
    """Ordinary game over map strategies (type -> strategy).

    A map profile is paid its type-distribution expectation of the
    underlying cellwise payoffs.
    """
    _check_sharp_size(pg)
    maps1 = list(_enumerate_maps(pg.info1, pg.strategies1))
    maps2 = list(_enumerate_maps(pg.info2, pg.strategies2))
    payoffs = {}
    for f1, combo1 in maps1:
        for f2, combo2 in maps2:
            p1 = 0.0
            p2 = 0.0
            for (a1, a2), w in pg.type_dist.items():
                a, b = pg.payoffs[(a1, a2, f1[a1], f2[a2])]
                p1 += w * a
                p2 += w * b
            payoffs[(map_label(combo1), map_label(combo2))] = (p1, p2)
    return Game(
        f"{pg.name}#",
        tuple(map_label(c) for _, c in maps1),
        tuple(map_label(c) for _, c in maps2),
        payoffs,
    )


def sharp_environment(e: Environment, pg: PrivateInfoGame) -> Environment:
    """Lift an environment to map strategies.

    Each lifted variable picks one base variable per type; at an atom it
    realizes the map (type -> value of the chosen variable), encoded with
    the same labels `sharp_game` uses.
    """
    _check_sharp_size(pg)

    def lift(variables, info, target):
        lifted = []
        for choice in itertools.product(variables, repeat=len(info)):
            name = map_label(v.name for v in choice)
            values = {
                atom: map_label(v.values[atom] for v in choice)
                for atom in e.space.atoms
            }
            lifted.append(RandomVariable(name, e.space, values, target))
        return tuple(lifted)

    return Environment(e.space, lift(e.vars1, pg.info1, 1), lift(e.vars2, pg.info2, 2))


def game_of_env(pg: PrivateInfoGame, e: Environment) -> PrivateInfoGame:
    """Resolve the randomness first: strategies become the environment's variables.

    Types and their distribution are unchanged; the payoff of a variable
    pair at a type cell is the expectation of the cell payoffs under the
    pair's joint distribution.
    """
    payoffs = {}
    for x in e.vars1:
        for y in e.vars2:
            joint = joint_distribution(x, y)
            for a1, a2 in pg.type_dist:
                p1 = 0.0
                p2 = 0.0
                for (s1, s2), w in joint.items():
                    a, b = pg.payoffs[(a1, a2, s1, s2)]
                    p1 += w * a
                    p2 += w * b
                payoffs[(a1, a2, x.name, y.name)] = (p1, p2)
    return PrivateInfoGame(
        f"{pg.name}(env)",
        pg.info1,
        pg.info2,
        pg.type_dist,
        tuple(x.name for x in e.vars1),
        tuple(y.name for y in e.vars2),
        payoffs,
    )


def check_commute(pg: PrivateInfoGame, e: Environment) -> tuple[float, bool]:
    """Compare the two lift orders cell by cell.

    Builds (a) the map-strategy lift of the resolved game and (b) the lifted
    game played in the lifted environment, matches strategies through the
    shared map labels, and returns the maximum absolute payoff difference
    together with a <= 1e-12 verdict.
    """
    left = sharp_game(game_of_env(pg, e))

    right_base = sharp_game(pg)
    right_env = sharp_environment(e, pg)
    if set(left.strategies1) != {v.name for v in right_env.vars1} or set(
        left.strategies2
    ) != {v.name for v in right_env.vars2}:
        raise BijectionMismatchError("lifted strategy labels disagree between constructions")

    max_diff = 0.0
    for x in right_env.vars1:
        for y in right_env.vars2:
            joint = joint_distribution(x, y)
            p1 = 0.0
            p2 = 0.0
            for (m1, m2), w in joint.items():
                a, b = right_base.payoff(m1, m2)
                p1 += w * a
                p2 += w * b
            l1, l2 = left.payoff(x.name, y.name)
            max_diff = max(max_diff, abs(p1 - l1), abs(p2 - l2))
    return (max_diff, max_diff <= TOL)
