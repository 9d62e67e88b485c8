"""Bipartite pure-state simulator: tensor states, local unitaries, measurement.

States live in C^n1 (x) C^n2 and are stored as flat amplitude vectors with
index (i, j) -> i*n2 + j. Basis index 0 is heads (strategy C downstream),
index 1 is tails (strategy D). States are rays: overall scaling does not
change measurement outcomes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, ValidationError, ZeroStateError

UNITARY_TOL = 1e-10


class UnitaryOp:
    """Square complex matrix verified unitary at construction."""

    def __init__(self, matrix):
        m = np.asarray(matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValidationError(f"operator must be square, got shape {m.shape}")
        residual = np.abs(m.conj().T @ m - np.eye(m.shape[0])).max()
        if residual > UNITARY_TOL:
            raise ValidationError(f"matrix is not unitary (residual {residual:.3g})")
        m.flags.writeable = False
        self.matrix = m
        self.dim = m.shape[0]

    def dagger(self) -> "UnitaryOp":
        return UnitaryOp(self.matrix.conj().T)

    def __matmul__(self, other: "UnitaryOp") -> "UnitaryOp":
        return UnitaryOp(self.matrix @ other.matrix)

    def __repr__(self):
        return f"UnitaryOp(dim={self.dim})"


@dataclass(frozen=True)
class StateVector:
    dims: tuple[int, int]
    amps: np.ndarray

    def __post_init__(self):
        n1, n2 = self.dims
        if n1 < 1 or n2 < 1:
            raise ValidationError("state dimensions must be positive")
        a = np.asarray(self.amps, dtype=complex)
        if a.shape != (n1 * n2,):
            raise ValidationError(f"expected {n1 * n2} amplitudes, got shape {a.shape}")
        if not np.all(np.isfinite(a.view(float))):
            raise ValidationError("amplitudes must be finite")
        a = a.copy()
        a.flags.writeable = False
        object.__setattr__(self, "amps", a)
        object.__setattr__(self, "dims", (int(n1), int(n2)))

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def grid(self) -> np.ndarray:
        """Amplitudes reshaped to (n1, n2)."""
        return self.amps.reshape(self.dims)


def entangled_pair() -> StateVector:
    """Maximally entangled two-penny state, amplitudes (1,0,0,1)/sqrt(2)."""
    s = 1.0 / math.sqrt(2.0)
    return StateVector((2, 2), np.array([s, 0.0, 0.0, s], dtype=complex))


def apply_local(s: StateVector, u: UnitaryOp, v: UnitaryOp) -> StateVector:
    """Apply u to the first factor and v to the second: (u (x) v) s."""
    n1, n2 = s.dims
    if u.dim != n1 or v.dim != n2:
        raise DimensionMismatchError(
            f"operators of dims ({u.dim}, {v.dim}) cannot act on state of dims {s.dims}"
        )
    out = u.matrix @ s.grid() @ v.matrix.T
    return StateVector(s.dims, out.reshape(-1))


def measure_joint(s: StateVector) -> dict[tuple[int, int], float]:
    """Joint outcome distribution of a product-basis measurement."""
    norm2 = float(np.vdot(s.amps, s.amps).real)
    if norm2 == 0.0:
        raise ZeroStateError("cannot measure the zero state")
    probs = np.abs(s.grid()) ** 2 / norm2
    n1, n2 = s.dims
    return {(i, j): float(probs[i, j]) for i in range(n1) for j in range(n2)}


def rotation(theta: float) -> UnitaryOp:
    """Real 2x2 rotation [[cos, sin], [-sin, cos]]."""
    c, si = math.cos(theta), math.sin(theta)
    return UnitaryOp(np.array([[c, si], [-si, c]]))


def disagreement(theta1: float, theta2: float) -> float:
    """Probability the two halves of the entangled pair disagree.

    Each half is rotated by its angle and measured; computed through the
    simulator (equals sin^2(theta1 - theta2)).
    """
    probs = measure_joint(apply_local(entangled_pair(), rotation(theta1), rotation(theta2)))
    return probs[(0, 1)] + probs[(1, 0)]


def bell_chain_demo(
    a_x: float, a_y: float, a_z: float, a_w: float
) -> tuple[float, float, bool]:
    """Pairwise-disagreement chain check at four measurement angles.

    Returns (lhs, rhs, violated) for
    dis(x,w) <= dis(x,y) + dis(y,z) + dis(z,w). Only pairwise quantities
    exist here: no joint distribution of all four measurements is formed,
    and (x, z) or (y, w) are never measured together.
    """
    lhs = disagreement(a_x, a_w)
    rhs = disagreement(a_x, a_y) + disagreement(a_y, a_z) + disagreement(a_z, a_w)
    return (lhs, rhs, lhs > rhs + 1e-12)


def random_unitary(n: int, rng: np.random.Generator) -> UnitaryOp:
    """Haar-ish random unitary via QR of a complex Gaussian matrix."""
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    # Fix column phases so the factorization is unique.
    d = np.diagonal(r)
    q = q * (d / np.abs(d))
    return UnitaryOp(q)
