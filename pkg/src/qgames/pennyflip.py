"""Penny-passing communication protocols and the unitary cheat.

Two protocols realize the same 4x2 base game: a one-shot protocol where
player one marks two pennies and player two marks one, and a sequential
protocol where a single penny passes P1 -> P2 -> P1 with both players
blindfolded. Flipping and not-flipping are the unitary matrices F and N;
a player who smuggles in arbitrary unitaries changes nothing in the
one-shot protocol but can force a win in the sequential one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, ValidationError
from .games import Game
from .quantum import StateVector, UnitaryOp, measure_joint

F_OP = UnitaryOp(np.array([[0.0, 1.0], [-1.0j, 0.0]]))
N_OP = UnitaryOp(np.eye(2))
MEYER_U = UnitaryOp(
    0.5
    * np.array(
        [
            [1.0 + 1.0j, math.sqrt(2.0)],
            [-math.sqrt(2.0), 1.0 - 1.0j],
        ]
    )
)

_H = np.array([1.0, 0.0], dtype=complex)


def penny_game() -> Game:
    """The 4x2 marker game: rows are P1's two marks, columns P2's mark."""
    rows = ("NN", "NF", "FN", "FF")
    cols = ("N", "F")
    win = {("NN", "N"), ("FF", "N"), ("NF", "F"), ("FN", "F")}
    payoffs = {
        (r, c): (1.0, 0.0) if (r, c) in win else (0.0, 1.0) for r in rows for c in cols
    }
    return Game("penny-flip", rows, cols, payoffs)


def run_sequential(ops) -> tuple[np.ndarray, tuple[float, float]]:
    """Play the pass-the-penny protocol: P1, then P2, then P1 again.

    The penny starts heads-up; the final state is op3 op2 op1 applied to H.
    Payoffs are the expected (1,0)-if-heads / (0,1)-if-tails split.
    """
    ops = list(ops)
    if len(ops) != 3:
        raise ValidationError(f"sequential protocol takes exactly 3 moves, got {len(ops)}")
    for op in ops:
        if not isinstance(op, UnitaryOp) or op.dim != 2:
            raise ValidationError("sequential moves must be 2x2 unitary operators")
    state = _H
    for op in ops:
        state = op.matrix @ state
    p_heads = float(abs(state[0]) ** 2 / (abs(state[0]) ** 2 + abs(state[1]) ** 2))
    return state, (p_heads, 1.0 - p_heads)


def run_sequential_sampled(ops, shots: int, seed: int) -> dict[str, int]:
    """Demo helper: sample heads/tails outcomes of the sequential protocol."""
    _, (p_heads, _) = run_sequential(ops)
    rng = np.random.default_rng(np.uint64(seed))
    heads = int(np.count_nonzero(rng.random(shots) < p_heads))
    return {"H": heads, "T": shots - heads}


@dataclass(frozen=True)
class MeyerCheatReport:
    unitarity_residual: float
    offdiag_conjugated_flip: float
    offdiag_conjugated_identity: float
    win_prob_vs_flip: float
    win_prob_vs_identity: float
    min_win_prob_mixtures: float

    @property
    def passed(self) -> bool:
        return (
            self.unitarity_residual <= 1e-12
            and self.offdiag_conjugated_flip <= 1e-12
            and self.offdiag_conjugated_identity <= 1e-12
            and abs(self.win_prob_vs_flip - 1.0) <= 1e-12
            and abs(self.win_prob_vs_identity - 1.0) <= 1e-12
            and abs(self.min_win_prob_mixtures - 1.0) <= 1e-12
        )


def meyer_cheat_check() -> MeyerCheatReport:
    """Verify the sandwich cheat: U first, U^-1 last wins regardless.

    Checks that U is unitary, that conjugating both flip and identity by U
    gives diagonal matrices (so heads stays heads up to phase), and that
    the win probability is 1 against F, against N, and against every
    probability mixture of the two (11 mixture points).
    """
    u = MEYER_U.matrix
    u_inv = u.conj().T
    unit_res = float(np.abs(u_inv @ u - np.eye(2)).max())

    def offdiag(m):
        return float(max(abs(m[0, 1]), abs(m[1, 0])))

    conj_f = u_inv @ F_OP.matrix @ u
    conj_n = u_inv @ N_OP.matrix @ u

    def win_prob(middle: UnitaryOp) -> float:
        _, (p, _) = run_sequential([MEYER_U, middle, UnitaryOp(u_inv)])
        return p

    w_f = win_prob(F_OP)
    w_n = win_prob(N_OP)
    mixtures = [
        p * w_f + (1.0 - p) * w_n for p in (i / 10.0 for i in range(11))
    ]
    return MeyerCheatReport(
        unitarity_residual=unit_res,
        offdiag_conjugated_flip=offdiag(conj_f),
        offdiag_conjugated_identity=offdiag(conj_n),
        win_prob_vs_flip=w_f,
        win_prob_vs_identity=w_n,
        min_win_prob_mixtures=min(mixtures),
    )


def _single_penny_distribution(op: UnitaryOp) -> dict[str, float]:
    """Measure one penny that starts heads-up after applying op."""
    state = op.matrix @ _H
    total = float(abs(state[0]) ** 2 + abs(state[1]) ** 2)
    return {"N": float(abs(state[0]) ** 2) / total, "F": float(abs(state[1]) ** 2) / total}


def run_simple(p1, p2: UnitaryOp) -> dict[tuple[str, str], float]:
    """Play the one-shot protocol; returns the joint outcome distribution.

    P1's move is a pair of 2x2 unitaries (one per penny) or a single 4x4
    unitary acting on both pennies jointly; P2's move is one 2x2 unitary.
    Every penny starts heads-up and is measured independently; heads reads
    as N and tails as F, so P1's outcome is one of NN/NF/FN/FF and P2's is
    N or F. P1's pennies never interact with P2's: the result is always the
    product of the two players' marginals, i.e. a mixed-strategy profile of
    the 4x2 game.
    """
    labels1 = {(0, 0): "NN", (0, 1): "NF", (1, 0): "FN", (1, 1): "FF"}
    if isinstance(p1, UnitaryOp):
        if p1.dim != 4:
            raise DimensionMismatchError("joint move for P1 must be a 4x4 unitary")
        start = np.zeros(4, dtype=complex)
        start[0] = 1.0
        joint_state = StateVector((2, 2), p1.matrix @ start)
        marginal1 = {
            labels1[idx]: p for idx, p in measure_joint(joint_state).items()
        }
    else:
        a, b = p1
        if a.dim != 2 or b.dim != 2:
            raise DimensionMismatchError("per-penny moves for P1 must be 2x2 unitaries")
        da = _single_penny_distribution(a)
        db = _single_penny_distribution(b)
        marginal1 = {
            f"{la}{lb}": da[la] * db[lb] for la in ("N", "F") for lb in ("N", "F")
        }
    if p2.dim != 2:
        raise DimensionMismatchError("P2's move must be a 2x2 unitary")
    marginal2 = _single_penny_distribution(p2)
    return {
        (r, c): marginal1[r] * marginal2[c] for r in marginal1 for c in marginal2
    }


@dataclass(frozen=True)
class ProtocolScript:
    """A recorded protocol run: kind, the moves, and how outcomes pay.

    `sequential` scripts hold the fixed P1, P2, P1 turn order as three
    operators; `simple` scripts hold P1's two-penny move and P2's move.
    """

    kind: str
    moves: tuple

    def __post_init__(self):
        if self.kind not in ("simple", "sequential"):
            raise ValidationError(f"unknown protocol kind {self.kind!r}")
        object.__setattr__(self, "moves", tuple(self.moves))
        if self.kind == "sequential" and len(self.moves) != 3:
            raise ValidationError("sequential scripts take 3 moves")
        if self.kind == "simple" and len(self.moves) != 2:
            raise ValidationError("simple scripts take (P1 move, P2 move)")

    def run(self):
        if self.kind == "sequential":
            return run_sequential(self.moves)
        return run_simple(*self.moves)
