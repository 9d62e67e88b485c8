"""Jacobi eigenvalue iteration for small dense symmetric matrices."""

from __future__ import annotations

import math

import numpy as np

from .errors import ValidationError


def jacobi_eigh(matrix, tol: float = 1e-12, max_sweeps: int = 64):
    """Eigenvalues and eigenvectors of a real symmetric matrix.

    Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops
    below tol. Returns (values, vectors) with eigenvalues ascending and
    vectors in the matching columns, like numpy.linalg.eigh.
    """
    a = np.array(matrix, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValidationError("matrix must be square")
    if np.abs(a - a.T).max() > 1e-9:
        raise ValidationError("matrix must be symmetric")
    a = 0.5 * (a + a.T)
    v = np.eye(n)

    def offdiag_norm(m):
        off = m - np.diag(np.diagonal(m))
        return math.sqrt(float((off * off).sum()))

    for _ in range(max_sweeps):
        if offdiag_norm(a) < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < tol / (n * n):
                    continue
                # rotation zeroing a[p, q]
                theta = 0.5 * (a[q, q] - a[p, p]) / apq
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
                v = v @ rot
    order = np.argsort(np.diagonal(a))
    values = np.diagonal(a)[order]
    vectors = v[:, order]
    return values, vectors
