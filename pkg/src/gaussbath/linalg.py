"""Fixed-size dense real linear algebra kernels.

Everything in the simulation lives in 2x2 blocks of a 4x4 covariance matrix,
so the kernels here are written for that size range: closed-form small
determinants, Gaussian elimination with partial pivoting for systems up to
~16 unknowns, and a scaling-and-squaring matrix exponential used as an
oracle for the analytic propagator.

All functions are pure and operate on plain float ndarrays.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

from .errors import InvalidParams, SingularMatrix

# 2x2 and 4x4 real matrices are represented as plain float64 arrays.
Mat2 = NDArray[np.float64]
Mat4 = NDArray[np.float64]

# Absolute pivot threshold below which a system is declared singular.
PIVOT_TOL = 1e-13

# Scaling-and-squaring parameters: halve until the 1-norm is at or below
# _SQUARING_THRESHOLD, then evaluate a Taylor polynomial of this order.
_SQUARING_THRESHOLD = 0.5
_TAYLOR_ORDER = 16


def det2(m: Mat2) -> float:
    """Determinant of a 2x2 matrix, ad - bc."""
    return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def det3(m: NDArray[np.float64]) -> float:
    """Determinant of a 3x3 matrix by cofactor expansion along the first row."""
    return float(
        m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
        - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
        + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
    )


def det4(m: Mat4) -> float:
    """Determinant of a 4x4 matrix by cofactor expansion along the first row."""
    r = m[1:]
    return float(
        m[0, 0] * det3(r[:, [1, 2, 3]])
        - m[0, 1] * det3(r[:, [0, 2, 3]])
        + m[0, 2] * det3(r[:, [0, 1, 3]])
        - m[0, 3] * det3(r[:, [0, 1, 2]])
    )


def solve_linear(a: NDArray[np.float64], b: NDArray[np.float64]) -> NDArray[np.float64]:
    """Solve a @ x = b by Gaussian elimination with partial pivoting.

    Parameters
    ----------
    a : (n, n) array
        Square coefficient matrix (intended for n <= 16).
    b : (n,) array
        Right-hand side.

    Returns
    -------
    (n,) array
        Solution x.

    Raises
    ------
    SingularMatrix
        If the largest available pivot in some column falls below
        ``PIVOT_TOL`` in absolute value.
    """
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidParams(f"coefficient matrix must be square, got shape {a.shape}")
    n = a.shape[0]
    if b.shape != (n,):
        raise InvalidParams(f"right-hand side has shape {b.shape}, expected ({n},)")

    for k in range(n):
        piv = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[piv, k]) < PIVOT_TOL:
            raise SingularMatrix(
                f"pivot magnitude {abs(a[piv, k]):.3e} below {PIVOT_TOL:g} in column {k}"
            )
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            b[[k, piv]] = b[[piv, k]]
        factors = a[k + 1 :, k] / a[k, k]
        a[k + 1 :, k:] -= np.outer(factors, a[k, k:])
        b[k + 1 :] -= factors * b[k]

    x = np.zeros(n)
    for i in range(n - 1, -1, -1):
        x[i] = (b[i] - a[i, i + 1 :] @ x[i + 1 :]) / a[i, i]
    return x


def expm_generic(m: Mat4) -> Mat4:
    """Matrix exponential by scaling and squaring with a truncated Taylor series.

    The argument is halved until its 1-norm is at or below 0.5, an
    order-16 Taylor polynomial is evaluated by Horner's scheme, and the
    result is squared back up.  Relative accuracy is well below 1e-10 for
    norms up to ~50, which covers every drift matrix and time used here.
    """
    a = np.asarray(m, dtype=float)
    n = a.shape[0]
    norm = float(np.max(np.abs(a).sum(axis=0)))

    squarings = 0
    while norm > _SQUARING_THRESHOLD:
        norm /= 2.0
        squarings += 1

    x = a / (2.0**squarings)
    eye = np.eye(n)
    result = eye.copy()
    for k in range(_TAYLOR_ORDER, 0, -1):
        result = eye + (x @ result) / k
    for _ in range(squarings):
        result = result @ result
    return result
