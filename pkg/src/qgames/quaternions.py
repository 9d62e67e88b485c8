"""Quaternion algebra: Hamilton products, matrix forms, SU(2) conversion.

Conventions: i*j = k, j*k = i, k*i = j. A quaternion a+bi+cj+dk
corresponds to the special-unitary matrix [[a+bi, c+di], [-c+di, a-bi]];
this is a group isomorphism onto SU(2). Conjugation x -> g x conj(g) by a
unit quaternion g rotates the imaginary 3-space; `rotation_action` gives
that matrix and `from_rotation_matrix` inverts it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError


@dataclass(frozen=True)
class Quaternion:
    a: float
    b: float
    c: float
    d: float

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm(self) -> float:
        return math.sqrt(self.a**2 + self.b**2 + self.c**2 + self.d**2)

    def normalized(self) -> "Quaternion":
        n = self.norm()
        if n == 0.0:
            raise ValidationError("cannot normalize the zero quaternion")
        return Quaternion(self.a / n, self.b / n, self.c / n, self.d / n)

    def components(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d])

    def imag(self) -> np.ndarray:
        return np.array([self.b, self.c, self.d])

    def transpose_twist(self) -> "Quaternion":
        """Negate the j component: matrix transpose under the SU(2) map."""
        return Quaternion(self.a, self.b, -self.c, self.d)

    def __neg__(self):
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __repr__(self):
        return f"Quaternion({self.a:.6g}, {self.b:.6g}, {self.c:.6g}, {self.d:.6g})"


ONE = Quaternion(1.0, 0.0, 0.0, 0.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def quat_mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product."""
    return p * q


def from_array(v) -> Quaternion:
    a, b, c, d = (float(x) for x in v)
    return Quaternion(a, b, c, d)


def is_unit(q: Quaternion, tol: float = 1e-12) -> bool:
    return abs(q.norm() - 1.0) <= tol


def left_matrix(p: Quaternion) -> np.ndarray:
    """Matrix L with components(p*q) = L @ components(q)."""
    a, b, c, d = p.a, p.b, p.c, p.d
    return np.array(
        [
            [a, -b, -c, -d],
            [b, a, -d, c],
            [c, d, a, -b],
            [d, -c, b, a],
        ]
    )


def right_matrix(q: Quaternion) -> np.ndarray:
    """Matrix R with components(p*q) = R @ components(p)."""
    w, x, y, z = q.a, q.b, q.c, q.d
    return np.array(
        [
            [w, -x, -y, -z],
            [x, w, z, -y],
            [y, -z, w, x],
            [z, y, -x, w],
        ]
    )


def to_su2(q: Quaternion) -> np.ndarray:
    """The special-unitary matrix of a unit quaternion."""
    a, b, c, d = q.a, q.b, q.c, q.d
    return np.array(
        [
            [a + 1j * b, c + 1j * d],
            [-c + 1j * d, a - 1j * b],
        ]
    )


def det_normalize(u: np.ndarray) -> np.ndarray:
    """Scale a 2x2 unitary to determinant 1.

    Divides by the principal square root of the determinant (nonnegative
    real part, ties to nonnegative imaginary part); outcome probabilities
    are phase-invariant, so the branch choice only flips quaternion signs.
    """
    u = np.asarray(u, dtype=complex)
    det = u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0]
    if abs(det) < 1e-12:
        raise ValidationError("matrix is singular; cannot det-normalize")
    return u / np.sqrt(det)


def from_su2(u: np.ndarray) -> Quaternion:
    """Unit quaternion of a 2x2 unitary after det-normalization."""
    m = det_normalize(u)
    q = Quaternion(float(m[0, 0].real), float(m[0, 0].imag), float(m[0, 1].real), float(m[0, 1].imag))
    residual = np.abs(to_su2(q) - m).max()
    if residual > 1e-9:
        raise ValidationError(f"matrix is not special-unitary (residual {residual:.3g})")
    return q


def rotation_action(g: Quaternion) -> np.ndarray:
    """3x3 matrix of x -> g x conj(g) acting on imaginary quaternions."""
    a, b, c, d = g.a, g.b, g.c, g.d
    return np.array(
        [
            [1 - 2 * (c * c + d * d), 2 * (b * c - a * d), 2 * (b * d + a * c)],
            [2 * (b * c + a * d), 1 - 2 * (b * b + d * d), 2 * (c * d - a * b)],
            [2 * (b * d - a * c), 2 * (c * d + a * b), 1 - 2 * (b * b + c * c)],
        ]
    )


def from_rotation_matrix(r: np.ndarray) -> Quaternion:
    """A unit quaternion g with rotation_action(g) == r.

    Shepperd-style extraction branching on the largest diagonal entry;
    defined for proper rotations (determinant +1).
    """
    r = np.asarray(r, dtype=float)
    if r.shape != (3, 3) or abs(np.linalg.det(r) - 1.0) > 1e-9:
        raise ValidationError("need a proper 3x3 rotation matrix")
    t = np.trace(r)
    if t > max(r[0, 0], r[1, 1], r[2, 2]):
        a = math.sqrt(1.0 + t) / 2.0
        s = 4.0 * a
        b = (r[2, 1] - r[1, 2]) / s
        c = (r[0, 2] - r[2, 0]) / s
        d = (r[1, 0] - r[0, 1]) / s
    elif r[0, 0] >= r[1, 1] and r[0, 0] >= r[2, 2]:
        b = math.sqrt(1.0 + r[0, 0] - r[1, 1] - r[2, 2]) / 2.0
        s = 4.0 * b
        a = (r[2, 1] - r[1, 2]) / s
        c = (r[0, 1] + r[1, 0]) / s
        d = (r[0, 2] + r[2, 0]) / s
    elif r[1, 1] >= r[2, 2]:
        c = math.sqrt(1.0 - r[0, 0] + r[1, 1] - r[2, 2]) / 2.0
        s = 4.0 * c
        a = (r[0, 2] - r[2, 0]) / s
        b = (r[0, 1] + r[1, 0]) / s
        d = (r[1, 2] + r[2, 1]) / s
    else:
        d = math.sqrt(1.0 - r[0, 0] - r[1, 1] + r[2, 2]) / 2.0
        s = 4.0 * d
        a = (r[1, 0] - r[0, 1]) / s
        b = (r[0, 2] + r[2, 0]) / s
        c = (r[1, 2] + r[2, 1]) / s
    return Quaternion(a, b, c, d).normalized()
