"""The entangled two-penny communication game and its quaternion form.

Both players apply local unitaries to halves of the maximally entangled
pair; the referee measures in the orthonormal basis generated by the four
instructed move pairs. Equivalently, strategies are unit quaternions and
the outcome probabilities are squared components of the product p*q read
through an outcome assignment. `calibrate` constructs the change of
variables (a conjugating unit quaternion plus a sign pattern) that matches
the quaternion form to the direct simulation exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CalibrationError, ValidationError
from .games import TOL, DeviationReport, EquilibriumVerdict, Game, Profile
from .jacobi import jacobi_eigh
from .pennyflip import F_OP, N_OP
from .quantum import UnitaryOp, apply_local, entangled_pair, random_unitary
from .quaternions import (
    Quaternion,
    from_rotation_matrix,
    from_su2,
    left_matrix,
    right_matrix,
    rotation_action,
)

DEFAULT_EPS = 1e-9
SLOTS = ("A", "B", "C", "D")
CELLS = (("C", "C"), ("C", "D"), ("D", "C"), ("D", "D"))


@dataclass(frozen=True)
class OutcomeAssignment:
    """Bijection from squared product components to outcome cells.

    The A^2 slot (the real part) is always the (C,C) cell; the three
    imaginary slots are configurable.
    """

    b_cell: Profile
    c_cell: Profile
    d_cell: Profile

    def __post_init__(self):
        cells = {self.b_cell, self.c_cell, self.d_cell}
        if ("C", "C") in cells or len(cells) != 3:
            raise ValidationError("slots B, C, D must cover the three non-(C,C) cells")
        for cell in cells:
            if cell not in CELLS:
                raise ValidationError(f"unknown outcome cell {cell}")

    def cell(self, slot: str) -> Profile:
        return {
            "A": ("C", "C"),
            "B": self.b_cell,
            "C": self.c_cell,
            "D": self.d_cell,
        }[slot]

    def cells(self) -> tuple[Profile, Profile, Profile, Profile]:
        return (("C", "C"), self.b_cell, self.c_cell, self.d_cell)


# The assignment under which the worked mixed-strategy examples come out
# right; the commonly printed variant is kept for comparison.
DEFAULT_ASSIGNMENT = OutcomeAssignment(("D", "D"), ("C", "D"), ("D", "C"))
ALT_ASSIGNMENT = OutcomeAssignment(("C", "D"), ("D", "C"), ("D", "D"))


@dataclass(frozen=True)
class MixedQuatStrategy:
    """Finitely supported mixture of unit quaternions (at most 8 points)."""

    support: tuple[tuple[Quaternion, float], ...]

    def __post_init__(self):
        support = tuple((q, float(w)) for q, w in self.support)
        if not 1 <= len(support) <= 8:
            raise ValidationError("mixture support must have 1 to 8 points")
        for q, w in support:
            if abs(q.norm() - 1.0) > TOL:
                raise ValidationError(f"support point {q!r} is not a unit quaternion")
            if w < -TOL:
                raise ValidationError(f"negative weight {w}")
        total = sum(w for _, w in support)
        if abs(total - 1.0) > TOL:
            raise ValidationError(f"weights sum to {total}, expected 1")
        object.__setattr__(self, "support", tuple((q, max(w, 0.0)) for q, w in support))

    @classmethod
    def point(cls, q: Quaternion) -> "MixedQuatStrategy":
        return cls(((q, 1.0),))

    @classmethod
    def uniform(cls, qs) -> "MixedQuatStrategy":
        qs = list(qs)
        return cls(tuple((q, 1.0 / len(qs)) for q in qs))


def _check_penny_game(g: Game):
    if g.strategies1 != ("C", "D") or g.strategies2 != ("C", "D"):
        raise ValidationError("quaternion payoffs need a 2x2 game with strategies (C, D)")


def measurement_basis() -> list[tuple[Profile, np.ndarray]]:
    """The four referee states (move1 (x) move2) applied to the shared pair.

    Heads moves (N) read as C and flips (F) as D; orthonormality is
    asserted to 1e-12 at construction.
    """
    xi = entangled_pair()
    ops = {"C": N_OP, "D": F_OP}
    basis = []
    for s1, s2 in CELLS:
        vec = apply_local(xi, ops[s1], ops[s2]).amps
        basis.append(((s1, s2), vec))
    gram = np.array([[np.vdot(u, v) for _, v in basis] for _, u in basis])
    residual = np.abs(gram - np.eye(4)).max()
    if residual > 1e-12:
        raise CalibrationError(f"measurement basis not orthonormal (residual {residual:.3g})")
    return basis


_BASIS = measurement_basis()


def ewl_direct(u1: UnitaryOp, u2: UnitaryOp) -> dict[Profile, float]:
    """Outcome distribution of the protocol under moves (u1, u2)."""
    state = apply_local(entangled_pair(), u1, u2)
    out = {}
    for cell, vec in _BASIS:
        amp = np.vdot(vec, state.amps)
        out[cell] = float(abs(amp) ** 2)
    return out


def slot_probabilities(p: Quaternion, q: Quaternion) -> np.ndarray:
    """Squared components of the Hamilton product p*q, in slot order."""
    return (p * q).components() ** 2


def quat_payoff(
    g: Game, p: Quaternion, q: Quaternion, asg: OutcomeAssignment = DEFAULT_ASSIGNMENT
) -> tuple[float, float]:
    """Payoff pair of pure quaternion strategies."""
    _check_penny_game(g)
    probs = slot_probabilities(p, q)
    p1 = sum(w * g.payoffs[cell][0] for w, cell in zip(probs, asg.cells()))
    p2 = sum(w * g.payoffs[cell][1] for w, cell in zip(probs, asg.cells()))
    return (float(p1), float(p2))


def mixed_quat_payoff(
    g: Game,
    s1: MixedQuatStrategy,
    s2: MixedQuatStrategy,
    asg: OutcomeAssignment = DEFAULT_ASSIGNMENT,
) -> tuple[float, float]:
    """Weight-bilinear expectation of the pure payoffs."""
    p1 = 0.0
    p2 = 0.0
    for q1, w1 in s1.support:
        for q2, w2 in s2.support:
            a, b = quat_payoff(g, q1, q2, asg)
            p1 += w1 * w2 * a
            p2 += w1 * w2 * b
    return (p1, p2)


def outcome_distribution(
    s1: MixedQuatStrategy, s2: MixedQuatStrategy, asg: OutcomeAssignment = DEFAULT_ASSIGNMENT
) -> dict[Profile, float]:
    """Induced distribution over the four outcome cells."""
    out = {cell: 0.0 for cell in CELLS}
    for q1, w1 in s1.support:
        for q2, w2 in s2.support:
            for prob, cell in zip(slot_probabilities(q1, q2), asg.cells()):
                out[cell] += w1 * w2 * float(prob)
    return out


def _slot_payoffs(g: Game, who: int, asg: OutcomeAssignment) -> np.ndarray:
    idx = 0 if who == 1 else 1
    return np.array([g.payoffs[cell][idx] for cell in asg.cells()])


def best_response_matrix(
    g: Game,
    opponent: MixedQuatStrategy,
    who: int,
    asg: OutcomeAssignment = DEFAULT_ASSIGNMENT,
) -> np.ndarray:
    """Quadratic form of the responder's payoff against a fixed mixture.

    The product p*q is linear in the responder's components, so their
    payoff is r^T M r with M a weighted sum of payoff-diagonal matrices
    conjugated by the opponent's (orthogonal) multiplication matrices.
    """
    _check_penny_game(g)
    diag = np.diag(_slot_payoffs(g, who, asg))
    m = np.zeros((4, 4))
    for q, w in opponent.support:
        mult = right_matrix(q) if who == 1 else left_matrix(q)
        m += w * (mult.T @ diag @ mult)
    return 0.5 * (m + m.T)


def is_quat_equilibrium(
    g: Game,
    s1: MixedQuatStrategy,
    s2: MixedQuatStrategy,
    asg: OutcomeAssignment = DEFAULT_ASSIGNMENT,
    eps: float = DEFAULT_EPS,
) -> EquilibriumVerdict:
    """Accept iff neither player's top response eigenvalue beats their payoff.

    The best pure response to a mixture is the leading eigenvector of the
    response quadratic form (computed by Jacobi iteration); a mixture is a
    best response exactly when its payoff reaches that eigenvalue.
    """
    base = mixed_quat_payoff(g, s1, s2, asg)
    best: DeviationReport | None = None
    for who, own in ((1, s1), (2, s2)):
        opp = s2 if who == 1 else s1
        m = best_response_matrix(g, opp, who, asg)
        values, vectors = jacobi_eigh(m)
        top = float(values[-1])
        vec = vectors[:, -1]
        gain = top - base[who - 1]
        dev = Quaternion(*(float(x) for x in vec)).normalized()
        report = DeviationReport(who, repr(dev), top, gain, value=dev)
        if best is None or report.gain > best.gain:
            best = report
    return EquilibriumVerdict(best.gain <= eps, base, best, eps)


@dataclass(frozen=True)
class CalibrationResult:
    found: bool
    assignment: OutcomeAssignment
    conjugator: Quaternion | None
    signs: tuple[int, int, int] | None
    max_tv_error: float | None
    pairs: int
    seed: int


def _basis_quaternions() -> dict[Profile, Quaternion]:
    """Det-normalized quaternions of move1 @ move2^T for the four cells."""
    ops = {"C": N_OP.matrix, "D": F_OP.matrix}
    return {
        (s1, s2): from_su2(ops[s1] @ ops[s2].T) for s1, s2 in CELLS
    }


def quaternion_outcome_map(
    u1: UnitaryOp, u2: UnitaryOp, asg: OutcomeAssignment, conjugator: Quaternion
) -> dict[Profile, float]:
    """Outcome distribution predicted by the calibrated quaternion form."""
    p = from_su2(u1.matrix)
    q = from_su2(u2.matrix)
    a = conjugator
    abar = a.conjugate()
    v = (abar * p * a) * (abar * q.transpose_twist() * a)
    return {cell: float(x) for x, cell in zip(v.components() ** 2, asg.cells())}


def calibrate(
    asg: OutcomeAssignment = DEFAULT_ASSIGNMENT,
    pairs: int = 1000,
    seed: int = 90711,
) -> CalibrationResult:
    """Identify the quaternion form with the direct simulation.

    Pairs the imaginary units i, j, k with the imaginary parts of the
    measurement-basis quaternions as the assignment dictates; when the
    resulting frame admits a +1-determinant sign choice, the frame is a
    rotation whose quaternion conjugates strategies into protocol
    coordinates. The identification is validated on seeded random unitary
    pairs (total-variation error <= 1e-9) before it is returned.
    """
    basis = _basis_quaternions()
    infeasible = CalibrationResult(False, asg, None, None, None, pairs, seed)
    real_parts = [abs(basis[asg.cell(s)].a) for s in ("B", "C", "D")]
    if max(real_parts) > 1e-12:
        return infeasible
    frame = np.stack([basis[asg.cell(s)].imag() for s in ("B", "C", "D")])
    if np.abs(frame @ frame.T - np.eye(3)).max() > 1e-12:
        return infeasible
    signs = [1, 1, 1]
    if np.linalg.det(frame) < 0.0:
        signs[0] = -1
    rotation = np.diag(signs) @ frame
    conjugator = from_rotation_matrix(rotation).conjugate()
    # internal consistency: the conjugation must reproduce the frame rows
    check = rotation_action(conjugator.conjugate())
    if np.abs(check - rotation).max() > 1e-9:
        raise CalibrationError("rotation extraction failed to reproduce the frame")

    rng = np.random.default_rng(np.uint64(seed))
    worst = 0.0
    for _ in range(pairs):
        u1 = random_unitary(2, rng)
        u2 = random_unitary(2, rng)
        direct = ewl_direct(u1, u2)
        predicted = quaternion_outcome_map(u1, u2, asg, conjugator)
        tv = 0.5 * sum(abs(direct[cell] - predicted[cell]) for cell in CELLS)
        worst = max(worst, tv)
    if worst > 1e-9:
        raise CalibrationError(
            f"identification found algebraically but max TV error {worst:.3g} exceeds 1e-9"
        )
    return CalibrationResult(True, asg, conjugator, tuple(signs), worst, pairs, seed)


def random_orthonormal_quadruple(rng: np.random.Generator) -> list[Quaternion]:
    """Four mutually orthogonal unit quaternions from a random rotation."""
    z = rng.normal(size=(4, 4))
    q, r = np.linalg.qr(z)
    q = q * np.sign(np.diagonal(r))
    return [Quaternion(*(float(x) for x in q[:, k])) for k in range(4)]


def search_quat_equilibria(
    g: Game,
    asg: OutcomeAssignment = DEFAULT_ASSIGNMENT,
    n_starts: int = 64,
    seed: int = 35711,
    eps: float = DEFAULT_EPS,
    max_rounds: int = 32,
) -> list[dict]:
    """Seeded local search for mixed quaternion equilibria.

    Each start draws a random orthonormal frame and tries uniform mixtures
    over sub-frames; iteration replaces a player's mixture by the uniform
    mixture over the top eigenspace of their response form (pure best
    responses cycle in this game, eigenspace mixtures can be stationary).
    Fixed points are grouped by induced outcome distribution. Informational
    only; completeness is not claimed.
    """
    rng = np.random.default_rng(np.uint64(seed))
    classes: dict = {}
    for _ in range(n_starts):
        frame1 = random_orthonormal_quadruple(rng)
        frame2 = random_orthonormal_quadruple(rng)
        k = int(rng.choice([1, 2, 4]))
        s1 = MixedQuatStrategy.uniform(frame1[:k])
        s2 = MixedQuatStrategy.uniform(frame2[:k])
        for _ in range(max_rounds):
            s1 = _eigenspace_response(g, s2, 1, asg)
            s2 = _eigenspace_response(g, s1, 2, asg)
            verdict = is_quat_equilibrium(g, s1, s2, asg, eps)
            if verdict.is_equilibrium:
                dist = outcome_distribution(s1, s2, asg)
                key = tuple(sorted((cell, round(p, 8)) for cell, p in dist.items()))
                if key not in classes:
                    classes[key] = {
                        "payoffs": verdict.payoffs,
                        "joint": dist,
                        "support_sizes": (len(s1.support), len(s2.support)),
                    }
                break
    return list(classes.values())


def _eigenspace_response(
    g: Game, opponent: MixedQuatStrategy, who: int, asg: OutcomeAssignment
) -> MixedQuatStrategy:
    m = best_response_matrix(g, opponent, who, asg)
    values, vectors = jacobi_eigh(m)
    top = values[-1]
    idx = [k for k in range(4) if values[k] >= top - 1e-9]
    qs = [Quaternion(*(float(x) for x in vectors[:, k])).normalized() for k in idx]
    return MixedQuatStrategy.uniform(qs)
