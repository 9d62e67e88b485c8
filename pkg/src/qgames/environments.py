"""Finite probability spaces, strategy-valued random variables, environments.

An environment gives each player a set of random variables on a common
sample space (no independence assumed across players). Playing a pair of
variables induces a joint distribution over strategy profiles; equilibrium
checks close each player's variable set under relabelings sigma: S -> S
before searching for profitable deviations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    MembershipError,
    MismatchedSpaceError,
    NonBinaryVariableError,
    ValidationError,
)
from .games import (
    TOL,
    DeviationReport,
    EquilibriumVerdict,
    Game,
    Profile,
)

DEFAULT_EPS = 1e-9


@dataclass(frozen=True)
class SampleSpace:
    atoms: tuple[str, ...]
    probs: dict[str, float]

    def __post_init__(self):
        atoms = tuple(str(a) for a in self.atoms)
        if len(set(atoms)) != len(atoms):
            raise ValidationError("duplicate atoms in sample space")
        probs = {str(a): float(p) for a, p in self.probs.items()}
        if set(probs) != set(atoms):
            raise ValidationError("probabilities must be assigned to exactly the atoms")
        if any(p < -TOL for p in probs.values()):
            raise ValidationError("negative atom probability")
        total = sum(probs.values())
        if abs(total - 1.0) > TOL:
            raise ValidationError(f"atom probabilities sum to {total}, expected 1")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "probs", {a: max(p, 0.0) for a, p in probs.items()})


@dataclass(frozen=True)
class RandomVariable:
    """Strategy-valued map on a sample space; target is the player index."""

    name: str
    space: SampleSpace
    values: dict[str, str]
    target: int

    def __post_init__(self):
        values = {str(a): str(v) for a, v in self.values.items()}
        missing = set(self.space.atoms) - set(values)
        if missing:
            raise ValidationError(f"variable {self.name!r} undefined on atoms {sorted(missing)}")
        if self.target not in (1, 2):
            raise ValidationError("target must be player 1 or 2")
        object.__setattr__(self, "values", values)

    def value_tuple(self) -> tuple[str, ...]:
        return tuple(self.values[a] for a in self.space.atoms)

    def range(self) -> set[str]:
        return set(self.values.values())

    def compose(self, sigma: dict[str, str], name: str) -> "RandomVariable":
        """The variable sigma(X): relabel every realized value through sigma."""
        return RandomVariable(
            name, self.space, {a: sigma[v] for a, v in self.values.items()}, self.target
        )


@dataclass(frozen=True)
class Environment:
    space: SampleSpace
    vars1: tuple[RandomVariable, ...]
    vars2: tuple[RandomVariable, ...]

    def __post_init__(self):
        object.__setattr__(self, "vars1", tuple(self.vars1))
        object.__setattr__(self, "vars2", tuple(self.vars2))
        if not self.vars1 or not self.vars2:
            raise ValidationError("both variable lists must be nonempty")
        for v in self.vars1 + self.vars2:
            if v.space is not self.space and v.space != self.space:
                raise MismatchedSpaceError(f"variable {v.name!r} lives on a different space")
        for v, t in [(v, 1) for v in self.vars1] + [(v, 2) for v in self.vars2]:
            if v.target != t:
                raise ValidationError(f"variable {v.name!r} targets player {v.target}, expected {t}")


def joint_distribution(x: RandomVariable, y: RandomVariable) -> dict[Profile, float]:
    """Joint distribution over (value of x, value of y) pairs."""
    if x.space != y.space:
        raise MismatchedSpaceError("variables live on different sample spaces")
    if (x.target, y.target) != (1, 2):
        raise ValidationError("joint_distribution expects a (player 1, player 2) pair")
    joint: dict[Profile, float] = {}
    for atom in x.space.atoms:
        key = (x.values[atom], y.values[atom])
        joint[key] = joint.get(key, 0.0) + x.space.probs[atom]
    return joint


def _sigma_name(x: RandomVariable, sigma: dict[str, str], labels) -> str:
    outputs = set(sigma.values())
    if all(sigma[s] == s for s in labels):
        return x.name
    if len(outputs) == 1:
        return f"const_{next(iter(outputs))}"
    desc = ",".join(f"{s}>{sigma[s]}" for s in labels if sigma[s] != s)
    return f"{x.name}[{desc}]"


def close_variables(
    variables, labels: tuple[str, ...]
) -> tuple[RandomVariable, ...]:
    """Close a variable list under all maps sigma: labels -> labels.

    Duplicates (identical value tuples) are removed, keeping the first
    occurrence; the original variables come first, so their names survive.
    """
    out: list[RandomVariable] = []
    seen: set[tuple[str, ...]] = set()
    for x in variables:
        if x.value_tuple() not in seen:
            seen.add(x.value_tuple())
            out.append(x)
    for x in variables:
        if not x.range() <= set(labels):
            raise ValidationError(
                f"variable {x.name!r} takes values outside the strategy set {labels}"
            )
        for outputs in itertools.product(labels, repeat=len(labels)):
            sigma = dict(zip(labels, outputs))
            composed = x.compose(sigma, _sigma_name(x, sigma, labels))
            if composed.value_tuple() not in seen:
                seen.add(composed.value_tuple())
                out.append(composed)
    return tuple(out)


def close_environment(
    e: Environment,
    strategies1: tuple[str, ...] | None = None,
    strategies2: tuple[str, ...] | None = None,
) -> Environment:
    """Close both variable lists under relabelings; idempotent.

    Without explicit strategy sets, each player's label set is the union of
    the values their variables take.
    """
    if strategies1 is None:
        strategies1 = tuple(sorted(set().union(*(v.range() for v in e.vars1))))
    if strategies2 is None:
        strategies2 = tuple(sorted(set().union(*(v.range() for v in e.vars2))))
    return Environment(
        e.space,
        close_variables(e.vars1, tuple(strategies1)),
        close_variables(e.vars2, tuple(strategies2)),
    )


def env_payoff(g: Game, x: RandomVariable, y: RandomVariable) -> tuple[float, float]:
    """Expected payoff pair when the players observe and play (x, y)."""
    joint = joint_distribution(x, y)
    p1 = 0.0
    p2 = 0.0
    for (s1, s2), w in joint.items():
        a, b = g.payoff(s1, s2)
        p1 += w * a
        p2 += w * b
    return (p1, p2)


def _find_member(variables, x: RandomVariable) -> bool:
    return any(v.value_tuple() == x.value_tuple() for v in variables)


def is_env_nash(
    g: Game,
    e: Environment,
    x: RandomVariable,
    y: RandomVariable,
    eps: float = DEFAULT_EPS,
) -> EquilibriumVerdict:
    """Is (x, y) a Nash equilibrium of the game induced by environment e?

    The environment is closed under relabelings first; each player's
    deviations range over their closed variable list with the opponent's
    variable held fixed. The verdict carries the highest-gain deviation.
    """
    closed = close_environment(e, g.strategies1, g.strategies2)
    if not _find_member(closed.vars1, x):
        raise MembershipError(f"{x.name!r} is not in the closed player-1 variable list")
    if not _find_member(closed.vars2, y):
        raise MembershipError(f"{y.name!r} is not in the closed player-2 variable list")
    base = env_payoff(g, x, y)
    best: DeviationReport | None = None
    for alt in closed.vars1:
        v = env_payoff(g, alt, y)[0]
        gain = v - base[0]
        if best is None or gain > best.gain:
            best = DeviationReport(1, alt.name, v, gain, value=alt)
    for alt in closed.vars2:
        v = env_payoff(g, x, alt)[1]
        gain = v - base[1]
        if gain > best.gain:
            best = DeviationReport(2, alt.name, v, gain, value=alt)
    return EquilibriumVerdict(best.gain <= eps, base, best, eps)


def is_correlated_equilibrium(
    g: Game,
    x: RandomVariable,
    y: RandomVariable,
    eps: float = DEFAULT_EPS,
) -> EquilibriumVerdict:
    """Equilibrium check in the singleton environment ({x}, {y}).

    Deviations are exactly the relabelings sigma(x) and sigma(y).
    """
    e = Environment(x.space, (x,), (y,))
    return is_env_nash(g, e, x, y, eps)


def realize_joint(
    joint: dict[Profile, float], names: tuple[str, str] = ("X", "Y")
) -> tuple[SampleSpace, RandomVariable, RandomVariable]:
    """A sample space carrying one atom per profile of a joint distribution."""
    cells = list(joint.items())
    atoms = tuple(f"w{i}" for i in range(len(cells)))
    space = SampleSpace(atoms, {a: p for a, (_, p) in zip(atoms, cells)})
    x = RandomVariable(names[0], space, {a: c[0] for a, (c, _) in zip(atoms, cells)}, 1)
    y = RandomVariable(names[1], space, {a: c[1] for a, (c, _) in zip(atoms, cells)}, 2)
    return space, x, y


def disagreement_probability(x: RandomVariable, y: RandomVariable) -> float:
    if x.space != y.space:
        raise MismatchedSpaceError("variables live on different sample spaces")
    return sum(
        x.space.probs[a] for a in x.space.atoms if x.values[a] != y.values[a]
    )


def chain_disagreement_bound(
    space: SampleSpace,
    x: RandomVariable,
    y: RandomVariable,
    z: RandomVariable,
    w: RandomVariable,
) -> tuple[float, float, bool]:
    """Check Prob(x != w) <= Prob(x != y) + Prob(y != z) + Prob(z != w).

    Holds for every quadruple of classical binary variables; the returned
    flag is lhs <= rhs + 1e-12.
    """
    for v in (x, y, z, w):
        if v.space != space:
            raise MismatchedSpaceError(f"variable {v.name!r} lives on a different space")
        if len(v.range()) > 2:
            raise NonBinaryVariableError(f"variable {v.name!r} is not binary-valued")
    lhs = disagreement_probability(x, w)
    rhs = (
        disagreement_probability(x, y)
        + disagreement_probability(y, z)
        + disagreement_probability(z, w)
    )
    return (lhs, rhs, lhs <= rhs + TOL)
