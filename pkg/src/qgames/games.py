"""Finite two-player normal-form games and their equilibria.

Payoffs are stored as double-precision pairs keyed by strategy labels.
Equality checks against stored payoffs use an absolute tolerance of 1e-12;
mixed equilibria are verified against all pure deviations with eps = 1e-9.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import SizeLimitError, UnknownLabelError, ValidationError

TOL = 1e-12
NASH_EPS = 1e-9

# A pure strategy profile is simply a (row label, column label) pair.
Profile = tuple[str, str]


def _check_labels(labels, side: str) -> tuple[str, ...]:
    labels = tuple(labels)
    if not labels:
        raise ValidationError(f"{side} strategy list is empty")
    if len(set(labels)) != len(labels):
        raise ValidationError(f"{side} strategy list has duplicates: {labels}")
    return labels


@dataclass(frozen=True)
class Game:
    """Two-player game: strategy label lists plus a total payoff table."""

    name: str
    strategies1: tuple[str, ...]
    strategies2: tuple[str, ...]
    payoffs: dict[Profile, tuple[float, float]]

    def __post_init__(self):
        object.__setattr__(self, "strategies1", _check_labels(self.strategies1, "row"))
        object.__setattr__(self, "strategies2", _check_labels(self.strategies2, "column"))
        table = {}
        for s1, s2 in itertools.product(self.strategies1, self.strategies2):
            if (s1, s2) not in self.payoffs:
                raise ValidationError(f"game {self.name!r}: missing payoff for ({s1}, {s2})")
            p1, p2 = self.payoffs[(s1, s2)]
            table[(s1, s2)] = (float(p1), float(p2))
        extra = set(self.payoffs) - set(table)
        if extra:
            raise ValidationError(f"game {self.name!r}: payoffs for unknown cells {sorted(extra)}")
        object.__setattr__(self, "payoffs", table)

    def payoff(self, s1: str, s2: str) -> tuple[float, float]:
        try:
            return self.payoffs[(s1, s2)]
        except KeyError:
            raise UnknownLabelError(
                f"({s1}, {s2}) is not a profile of game {self.name!r}"
            ) from None

    def payoff_matrix(self, player: int) -> np.ndarray:
        """Payoff table of one player as a dense (rows x cols) array."""
        idx = 0 if player == 1 else 1
        return np.array(
            [[self.payoffs[(r, c)][idx] for c in self.strategies2] for r in self.strategies1]
        )


class MixedStrategy:
    """Probability distribution over strategy labels."""

    def __init__(self, weights: dict[str, float]):
        w = {str(k): float(v) for k, v in weights.items()}
        for label, p in w.items():
            if p < -TOL:
                raise ValidationError(f"negative weight {p} for {label!r}")
            w[label] = max(p, 0.0)
        total = sum(w.values())
        if abs(total - 1.0) > 1e-12:
            raise ValidationError(f"weights sum to {total}, expected 1")
        self.weights = w

    @classmethod
    def point(cls, label: str) -> "MixedStrategy":
        return cls({label: 1.0})

    @classmethod
    def uniform(cls, labels) -> "MixedStrategy":
        labels = list(labels)
        return cls({lab: 1.0 / len(labels) for lab in labels})

    def weight(self, label: str) -> float:
        return self.weights.get(label, 0.0)

    def support(self) -> tuple[str, ...]:
        return tuple(lab for lab, p in self.weights.items() if p > 0.0)

    def __repr__(self):
        inner = ", ".join(f"{lab}: {p:.6g}" for lab, p in sorted(self.weights.items()))
        return f"MixedStrategy({{{inner}}})"


@dataclass(frozen=True)
class DeviationReport:
    """One profitable (or best) unilateral deviation."""

    player: int
    strategy: str
    payoff: float
    gain: float
    value: object = field(default=None, compare=False)


@dataclass(frozen=True)
class EquilibriumVerdict:
    """Outcome of an equilibrium check, with the best deviation as witness."""

    is_equilibrium: bool
    payoffs: tuple[float, float]
    best_deviation: DeviationReport | None
    epsilon: float

    def __bool__(self):
        return self.is_equilibrium


def payoff(g: Game, p: Profile) -> tuple[float, float]:
    """Payoff pair at a pure profile."""
    return g.payoff(p[0], p[1])


def pure_nash(g: Game) -> list[Profile]:
    """All pure Nash equilibria, row-major, ties kept (tolerance 1e-12)."""
    a = g.payoff_matrix(1)
    b = g.payoff_matrix(2)
    col_max = a.max(axis=0)
    row_max = b.max(axis=1)
    out = []
    for i, r in enumerate(g.strategies1):
        for j, c in enumerate(g.strategies2):
            if a[i, j] >= col_max[j] - TOL and b[i, j] >= row_max[i] - TOL:
                out.append((r, c))
    return out


def _validate_mixed(g: Game, m: MixedStrategy, labels: tuple[str, ...], side: str):
    unknown = set(m.weights) - set(labels)
    if unknown:
        raise ValidationError(f"{side} mixture uses labels {sorted(unknown)} not in game {g.name!r}")


def expected_payoff(g: Game, m1: MixedStrategy, m2: MixedStrategy) -> tuple[float, float]:
    """Product-measure expectation of the payoff pair."""
    _validate_mixed(g, m1, g.strategies1, "row")
    _validate_mixed(g, m2, g.strategies2, "column")
    p1 = 0.0
    p2 = 0.0
    for s1, w1 in m1.weights.items():
        if w1 == 0.0:
            continue
        for s2, w2 in m2.weights.items():
            if w2 == 0.0:
                continue
            a, b = g.payoffs[(s1, s2)]
            p1 += w1 * w2 * a
            p2 += w1 * w2 * b
    return (p1, p2)


def best_pure_payoff(g: Game, player: int, opponent: MixedStrategy) -> float:
    """Best payoff the player can get with a pure strategy vs a fixed mixture."""
    own = g.strategies1 if player == 1 else g.strategies2
    best = -np.inf
    for s in own:
        if player == 1:
            v = sum(w * g.payoffs[(s, t)][0] for t, w in opponent.weights.items())
        else:
            v = sum(w * g.payoffs[(t, s)][1] for t, w in opponent.weights.items())
        best = max(best, v)
    return float(best)


def _joint_of(m1: MixedStrategy, m2: MixedStrategy, g: Game) -> np.ndarray:
    w1 = np.array([m1.weight(s) for s in g.strategies1])
    w2 = np.array([m2.weight(s) for s in g.strategies2])
    return np.outer(w1, w2)


def _solve_support(a: np.ndarray, rows, cols) -> np.ndarray | None:
    """Opponent weights on `cols` equalizing payoff matrix `a` over `rows`.

    Solves the square indifference system [payoffs | -1; 1...1 | 0] = e_last;
    returns the weight vector or None when the system is singular or the
    weights leave [0, 1] beyond tolerance.
    """
    k = len(rows)
    sub = a[np.ix_(rows, cols)]
    lhs = np.zeros((k + 1, k + 1))
    lhs[:k, :k] = sub
    lhs[:k, k] = -1.0
    lhs[k, :k] = 1.0
    rhs = np.zeros(k + 1)
    rhs[k] = 1.0
    try:
        sol = np.linalg.solve(lhs, rhs)
    except np.linalg.LinAlgError:
        return None
    w = sol[:k]
    if np.any(w < -1e-9):
        return None
    return np.clip(w, 0.0, None)


def mixed_nash_small(g: Game) -> list[tuple[MixedStrategy, MixedStrategy]]:
    """Mixed equilibria of games up to 4x4 by support enumeration.

    Enumerates equal-size support pairs, solves the indifference systems,
    keeps solutions that survive an explicit eps-Nash check (eps = 1e-9)
    against every pure deviation, and deduplicates profiles whose induced
    joint distributions are within total-variation distance 1e-9.
    """
    n1, n2 = len(g.strategies1), len(g.strategies2)
    if n1 > 4 or n2 > 4:
        raise SizeLimitError(f"support enumeration limited to 4x4 games, got {n1}x{n2}")
    a = g.payoff_matrix(1)
    b = g.payoff_matrix(2)

    found: list[tuple[MixedStrategy, MixedStrategy]] = []
    joints: list[np.ndarray] = []
    for k in range(1, min(n1, n2) + 1):
        for rows in itertools.combinations(range(n1), k):
            for cols in itertools.combinations(range(n2), k):
                # Player 2's weights make player 1 indifferent across `rows`,
                # and vice versa.
                w2 = _solve_support(a, rows, cols)
                w1 = _solve_support(b.T, cols, rows)
                if w1 is None or w2 is None:
                    continue
                m1 = MixedStrategy(
                    {g.strategies1[i]: w for i, w in zip(rows, w1 / w1.sum())}
                )
                m2 = MixedStrategy(
                    {g.strategies2[j]: w for j, w in zip(cols, w2 / w2.sum())}
                )
                v1, v2 = expected_payoff(g, m1, m2)
                if best_pure_payoff(g, 1, m2) > v1 + NASH_EPS:
                    continue
                if best_pure_payoff(g, 2, m1) > v2 + NASH_EPS:
                    continue
                joint = _joint_of(m1, m2, g)
                if any(0.5 * np.abs(joint - j).sum() < 1e-9 for j in joints):
                    continue
                joints.append(joint)
                found.append((m1, m2))
    return found
