"""Quantum environments and the equilibria of the games they induce.

A quantum environment is a shared bipartite state plus, per player, a
family of local unitaries (an explicit finite list, or the one-parameter
rotation family). Applying a pair of operators and measuring induces a
joint distribution over strategy profiles, hence an ordinary game over
operator choices. Best responses over the rotation family are found by a
4096-point grid followed by golden-section refinement; the objectives here
are degree-2 trigonometric polynomials, so the grid localizes every
maximum and refinement certifies gains well below the 1e-9 tolerance.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import FamilyKindError, ValidationError
from .games import DeviationReport, EquilibriumVerdict, Game, Profile
from .private_info import PrivateInfoGame, SHARP_LIMIT, _enumerate_maps
from .quantum import StateVector, UnitaryOp, apply_local, entangled_pair, measure_joint, rotation

DEFAULT_EPS = 1e-9
GRID_SIZE = 4096
REFINE_WIDTH = 1e-10
TWO_PI = 2.0 * math.pi


class RotationFamily:
    """Marker for the one-parameter family of planar rotations."""

    def operator(self, theta: float) -> UnitaryOp:
        return rotation(float(theta))

    def __repr__(self):
        return "RotationFamily()"

    def __eq__(self, other):
        return isinstance(other, RotationFamily)

    def __hash__(self):
        return hash(RotationFamily)


ROTATIONS = RotationFamily()


@dataclass(frozen=True)
class QuantumEnvironment:
    xi: StateVector
    family1: RotationFamily | tuple[UnitaryOp, ...]
    family2: RotationFamily | tuple[UnitaryOp, ...]

    def __post_init__(self):
        if self.xi.norm() == 0.0:
            raise ValidationError("environment state must be nonzero")
        for which, fam, dim in (("1", self.family1, self.xi.dims[0]), ("2", self.family2, self.xi.dims[1])):
            if isinstance(fam, RotationFamily):
                if dim != 2:
                    raise ValidationError("rotation family needs a 2-dimensional factor")
                continue
            fam = tuple(fam)
            if not fam:
                raise ValidationError(f"player {which} operator family is empty")
            for op in fam:
                if op.dim != dim:
                    raise ValidationError(
                        f"player {which} operator of dim {op.dim} cannot act on factor of dim {dim}"
                    )
            object.__setattr__(self, f"family{which}", fam)

    def operator(self, who: int, param) -> UnitaryOp:
        fam = self.family1 if who == 1 else self.family2
        if isinstance(fam, RotationFamily):
            return fam.operator(param)
        idx = int(param)
        if not 0 <= idx < len(fam):
            raise ValidationError(f"operator index {param} out of range for player {who}")
        return fam[idx]

    def is_rotation(self, who: int) -> bool:
        fam = self.family1 if who == 1 else self.family2
        return isinstance(fam, RotationFamily)


def rotation_environment() -> QuantumEnvironment:
    """Maximally entangled pair with free rotations on both sides."""
    return QuantumEnvironment(entangled_pair(), ROTATIONS, ROTATIONS)


def _check_game_dims(g: Game, qe: QuantumEnvironment):
    if (len(g.strategies1), len(g.strategies2)) != qe.xi.dims:
        raise ValidationError(
            f"game is {len(g.strategies1)}x{len(g.strategies2)} but the state has dims {qe.xi.dims}"
        )


def outcome_joint(
    qe: QuantumEnvironment, u, v,
    strategies1: tuple[str, ...] = ("C", "D"),
    strategies2: tuple[str, ...] = ("C", "D"),
) -> dict[Profile, float]:
    """Measured joint distribution with basis outcomes mapped to labels."""
    state = apply_local(qe.xi, qe.operator(1, u), qe.operator(2, v))
    probs = measure_joint(state)
    return {(strategies1[i], strategies2[j]): p for (i, j), p in probs.items()}


def quantum_profile_joint(qe: QuantumEnvironment, u, v, **kw) -> dict[Profile, float]:
    """Induced joint distribution over strategy profiles.

    Realizing this joint on a small sample space turns any equilibrium
    check into a classical correlated-equilibrium check (see
    environments.realize_joint).
    """
    return outcome_joint(qe, u, v, **kw)


def qgame_payoff(g: Game, qe: QuantumEnvironment, u, v) -> tuple[float, float]:
    """Expected payoffs when the players apply operators u and v."""
    _check_game_dims(g, qe)
    joint = outcome_joint(qe, u, v, g.strategies1, g.strategies2)
    p1 = sum(w * g.payoffs[cell][0] for cell, w in joint.items())
    p2 = sum(w * g.payoffs[cell][1] for cell, w in joint.items())
    return (p1, p2)


def _rotation_matrices(thetas: np.ndarray) -> np.ndarray:
    c, s = np.cos(thetas), np.sin(thetas)
    return np.stack([np.stack([c, s], -1), np.stack([-s, c], -1)], -2)


def _payoff_grid(
    g: Game, qe: QuantumEnvironment, who: int, other_param, thetas: np.ndarray
) -> np.ndarray:
    """This player's payoff at every grid angle, opponent fixed (simulated)."""
    _check_game_dims(g, qe)
    a0 = qe.xi.grid()
    norm2 = float(np.vdot(qe.xi.amps, qe.xi.amps).real)
    rots = _rotation_matrices(thetas)
    if who == 1:
        fixed = a0 @ qe.operator(2, other_param).matrix.T
        amps = np.einsum("gik,kj->gij", rots.astype(complex), fixed)
    else:
        fixed = qe.operator(1, other_param).matrix @ a0
        amps = np.einsum("ik,gjk->gij", fixed, rots.astype(complex))
    probs = (np.abs(amps) ** 2) / norm2
    pay = g.payoff_matrix(who)
    return np.einsum("gij,ij->g", probs, pay)


def _golden_max(f, lo: float, hi: float, width: float = REFINE_WIDTH):
    """Golden-section maximization of a unimodal-on-[lo,hi] function."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > width:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    mid = 0.5 * (a + b)
    return mid, f(mid)


def _canonical_angle(theta: float) -> float:
    t = theta % TWO_PI
    if TWO_PI - t < 1e-8:
        t = 0.0
    return t


def _maximize_angle(objective_grid: np.ndarray, thetas: np.ndarray, f) -> tuple[float, float]:
    """Grid argmax plus golden-section refinement; smallest angle on ties."""
    vmax = float(objective_grid.max())
    vmin = float(objective_grid.min())
    scale = max(1.0, abs(vmax))
    if vmax - vmin <= 1e-12 * scale:
        return 0.0, float(f(0.0))
    step = thetas[1] - thetas[0]
    near = np.flatnonzero(objective_grid >= vmax - 1e-9 * scale)
    # group consecutive indices into clusters, refine each once
    clusters = []
    for idx in near:
        if clusters and idx == clusters[-1][-1] + 1:
            clusters[-1].append(idx)
        else:
            clusters.append([idx])
    candidates = []
    for cluster in clusters:
        i = cluster[int(np.argmax(objective_grid[cluster]))]
        lo, hi = thetas[i] - step, thetas[i] + step
        candidates.append(_golden_max(f, lo, hi))
    best_val = max(v for _, v in candidates)
    winners = [
        _canonical_angle(t) for t, v in candidates if v >= best_val - 1e-12 * scale
    ]
    return min(winners), best_val


def best_response_rotation(
    g: Game, qe: QuantumEnvironment, opponent, who: int
) -> tuple[float, float]:
    """Best rotation angle against a fixed opponent parameter.

    4096-point grid over [0, 2pi) then golden-section refinement to an
    interval of width 1e-10; the smallest maximizing angle wins ties.
    """
    if not (qe.is_rotation(1) and qe.is_rotation(2)):
        raise FamilyKindError("best responses over angles need rotation families on both sides")
    thetas = np.arange(GRID_SIZE) * (TWO_PI / GRID_SIZE)
    grid = _payoff_grid(g, qe, who, opponent, thetas)

    def value(theta):
        if who == 1:
            return qgame_payoff(g, qe, theta, opponent)[0]
        return qgame_payoff(g, qe, opponent, theta)[1]

    return _maximize_angle(grid, thetas, value)


def _best_response_finite(g: Game, qe: QuantumEnvironment, opponent, who: int):
    fam = qe.family1 if who == 1 else qe.family2
    best_idx, best_val = None, -np.inf
    for idx in range(len(fam)):
        if who == 1:
            v = qgame_payoff(g, qe, idx, opponent)[0]
        else:
            v = qgame_payoff(g, qe, opponent, idx)[1]
        if v > best_val + 1e-15:
            best_idx, best_val = idx, v
    return best_idx, float(best_val)


def is_quantum_equilibrium(
    g: Game, qe: QuantumEnvironment, u, v, eps: float = DEFAULT_EPS
) -> EquilibriumVerdict:
    """Accept iff neither player's best response gains more than eps."""
    base = qgame_payoff(g, qe, u, v)
    if qe.is_rotation(1) and qe.is_rotation(2):
        dev1, val1 = best_response_rotation(g, qe, v, 1)
        dev2, val2 = best_response_rotation(g, qe, u, 2)
        label1, label2 = f"theta={dev1:.10g}", f"phi={dev2:.10g}"
    else:
        dev1, val1 = _best_response_finite(g, qe, v, 1)
        dev2, val2 = _best_response_finite(g, qe, u, 2)
        label1, label2 = f"op[{dev1}]", f"op[{dev2}]"
    gain1 = val1 - base[0]
    gain2 = val2 - base[1]
    if gain1 >= gain2:
        best = DeviationReport(1, label1, val1, gain1, value=dev1)
    else:
        best = DeviationReport(2, label2, val2, gain2, value=dev2)
    return EquilibriumVerdict(best.gain <= eps, base, best, eps)


@dataclass(frozen=True)
class InfoStrategy:
    """Per-type strategy parameter (rotation angle or operator index)."""

    assignment: dict[str, float]

    def __post_init__(self):
        object.__setattr__(self, "assignment", dict(self.assignment))

    def param(self, type_label: str):
        try:
            return self.assignment[type_label]
        except KeyError:
            raise ValidationError(f"no strategy assigned to type {type_label!r}") from None


def _as_info_strategy(f) -> InfoStrategy:
    return f if isinstance(f, InfoStrategy) else InfoStrategy(f)


def private_quantum_payoff(
    pg: PrivateInfoGame, qe: QuantumEnvironment, f1, f2
) -> tuple[float, float]:
    """Type-distribution average of the per-cell induced payoffs."""
    f1, f2 = _as_info_strategy(f1), _as_info_strategy(f2)
    p1 = 0.0
    p2 = 0.0
    for (a1, a2), w in pg.type_dist.items():
        a, b = qgame_payoff(pg.cell_game(a1, a2), qe, f1.param(a1), f2.param(a2))
        p1 += w * a
        p2 += w * b
    return (p1, p2)


def _type_objective_grid(pg, qe, who, own_type, f_other, thetas):
    """Grid of this type's contribution: sum over opponent types of
    type-weight times the cell payoff at each candidate angle."""
    total = np.zeros(len(thetas))
    if who == 1:
        for a2 in pg.info2:
            w = pg.type_dist[(own_type, a2)]
            if w == 0.0:
                continue
            total += w * _payoff_grid(pg.cell_game(own_type, a2), qe, 1, f_other.param(a2), thetas)
    else:
        for a1 in pg.info1:
            w = pg.type_dist[(a1, own_type)]
            if w == 0.0:
                continue
            total += w * _payoff_grid(pg.cell_game(a1, own_type), qe, 2, f_other.param(a1), thetas)
    return total


def _type_objective_value(pg, qe, who, own_type, f_other, theta):
    total = 0.0
    if who == 1:
        for a2 in pg.info2:
            w = pg.type_dist[(own_type, a2)]
            if w:
                total += w * qgame_payoff(pg.cell_game(own_type, a2), qe, theta, f_other.param(a2))[0]
    else:
        for a1 in pg.info1:
            w = pg.type_dist[(a1, own_type)]
            if w:
                total += w * qgame_payoff(pg.cell_game(a1, own_type), qe, f_other.param(a1), theta)[1]
    return total


def best_response_per_type(
    pg: PrivateInfoGame, qe: QuantumEnvironment, who: int, f_own, f_other
) -> tuple[dict[str, float], dict[str, float]]:
    """Best angle and gain for each of the player's own types.

    The opponent's per-type angles stay fixed, so the player's objective
    separates across their own types and each type is a one-dimensional
    maximization.
    """
    if not (qe.is_rotation(1) and qe.is_rotation(2)):
        raise FamilyKindError("per-type best responses need rotation families")
    f_own, f_other = _as_info_strategy(f_own), _as_info_strategy(f_other)
    own_types = pg.info1 if who == 1 else pg.info2
    thetas = np.arange(GRID_SIZE) * (TWO_PI / GRID_SIZE)
    best_angles: dict[str, float] = {}
    best_values: dict[str, float] = {}
    gains: dict[str, float] = {}
    for t in own_types:
        grid = _type_objective_grid(pg, qe, who, t, f_other, thetas)
        angle, val = _maximize_angle(
            grid, thetas, lambda th, t=t: _type_objective_value(pg, qe, who, t, f_other, th)
        )
        current = _type_objective_value(pg, qe, who, t, f_other, f_own.param(t))
        best_angles[t] = angle
        best_values[t] = val
        gains[t] = max(0.0, val - current)
    return best_angles, gains, best_values


@dataclass(frozen=True)
class PrivateVerdict:
    is_equilibrium: bool
    payoffs: tuple[float, float]
    total_gains: tuple[float, float]
    deviations: tuple[DeviationReport, ...]
    epsilon: float

    def __bool__(self):
        return self.is_equilibrium


def is_private_quantum_equilibrium(
    pg: PrivateInfoGame, qe: QuantumEnvironment, f1, f2, eps: float = DEFAULT_EPS
) -> PrivateVerdict:
    """Accept iff no player can gain more than eps by re-optimizing all of
    their own per-type angles (gains add across a player's types)."""
    f1, f2 = _as_info_strategy(f1), _as_info_strategy(f2)
    base = private_quantum_payoff(pg, qe, f1, f2)
    reports = []
    totals = []
    for who, f_own, f_other in ((1, f1, f2), (2, f2, f1)):
        angles, gains, values = best_response_per_type(pg, qe, who, f_own, f_other)
        totals.append(sum(gains.values()))
        for t in sorted(gains):
            if gains[t] > eps:
                reports.append(
                    DeviationReport(
                        who, f"{t}: angle={angles[t]:.10g}", values[t], gains[t], value=(t, angles[t])
                    )
                )
    ok = totals[0] <= eps and totals[1] <= eps
    return PrivateVerdict(ok, base, (totals[0], totals[1]), tuple(reports), eps)


def classical_value_bound(pg: PrivateInfoGame) -> float:
    """Best expected player-1 payoff over all pure type->strategy profiles.

    Any play in a classical environment, correlated or not, is atomwise a
    pure map profile, so its payoff is a convex mixture of these values and
    the maximum bounds every classical environment.
    """
    n1 = len(pg.strategies1) ** len(pg.info1)
    n2 = len(pg.strategies2) ** len(pg.info2)
    if n1 > SHARP_LIMIT or n2 > SHARP_LIMIT:
        raise ValidationError(f"map profile spaces {n1}x{n2} exceed limit {SHARP_LIMIT}")
    asymmetric = any(
        abs(a - b) > 1e-12 for a, b in pg.payoffs.values()
    )
    if asymmetric:
        warnings.warn(
            "player payoffs differ; classical bound reported for player 1",
            stacklevel=2,
        )
    best = -math.inf
    for f1, _ in _enumerate_maps(pg.info1, pg.strategies1):
        for f2, _ in _enumerate_maps(pg.info2, pg.strategies2):
            total = sum(
                w * pg.payoffs[(a1, a2, f1[a1], f2[a2])][0]
                for (a1, a2), w in pg.type_dist.items()
            )
            best = max(best, total)
    return best


def _joint_key(joint: dict[Profile, float], digits: int = 8):
    return tuple(sorted((cell, round(p, digits)) for cell, p in joint.items()))


def search_rotation_equilibria(
    g: Game,
    qe: QuantumEnvironment,
    n_starts: int = 16,
    seed: int = 20120,
    eps: float = DEFAULT_EPS,
    max_rounds: int = 64,
) -> list[dict]:
    """Seeded best-response sweeps; returns equilibrium classes found.

    Classes are keyed by the induced joint distribution (equivalent
    profiles collapse). Not exhaustive: a reconnaissance tool, not a proof.
    """
    rng = np.random.default_rng(seed)
    classes: dict = {}
    for _ in range(n_starts):
        theta = float(rng.uniform(0.0, TWO_PI))
        phi = float(rng.uniform(0.0, TWO_PI))
        converged = False
        for _ in range(max_rounds):
            t_new, _ = best_response_rotation(g, qe, phi, 1)
            p_new, _ = best_response_rotation(g, qe, t_new, 2)
            verdict = is_quantum_equilibrium(g, qe, t_new, p_new, eps)
            theta, phi = t_new, p_new
            if verdict.is_equilibrium:
                converged = True
                break
        if not converged:
            continue
        joint = outcome_joint(qe, theta, phi, g.strategies1, g.strategies2)
        key = _joint_key(joint)
        if key not in classes:
            classes[key] = {
                "theta": theta,
                "phi": phi,
                "payoffs": qgame_payoff(g, qe, theta, phi),
                "joint": joint,
            }
    return list(classes.values())


def search_private_equilibria(
    pg: PrivateInfoGame,
    qe: QuantumEnvironment,
    n_starts: int = 24,
    seed: int = 4712,
    eps: float = DEFAULT_EPS,
    max_rounds: int = 40,
) -> list[dict]:
    """Seeded per-type best-response sweeps for private-information games.

    Reports converged profiles grouped by their per-type-cell joint
    distributions; informational only.
    """
    rng = np.random.default_rng(seed)
    classes: dict = {}
    for _ in range(n_starts):
        f1 = InfoStrategy({t: float(rng.uniform(0.0, TWO_PI)) for t in pg.info1})
        f2 = InfoStrategy({t: float(rng.uniform(0.0, TWO_PI)) for t in pg.info2})
        converged = False
        for _ in range(max_rounds):
            a1, _, _ = best_response_per_type(pg, qe, 1, f1, f2)
            f1 = InfoStrategy(a1)
            a2, _, _ = best_response_per_type(pg, qe, 2, f2, f1)
            f2 = InfoStrategy(a2)
            verdict = is_private_quantum_equilibrium(pg, qe, f1, f2, eps)
            if verdict.is_equilibrium:
                converged = True
                break
        if not converged:
            continue
        cell_joints = tuple(
            (a1, a2, _joint_key(outcome_joint(qe, f1.param(a1), f2.param(a2)), 6))
            for a1, a2 in sorted(pg.type_dist)
        )
        if cell_joints not in classes:
            classes[cell_joints] = {
                "f1": dict(f1.assignment),
                "f2": dict(f2.assignment),
                "payoffs": private_quantum_payoff(pg, qe, f1, f2),
            }
    return list(classes.values())
