"""Explicit monodromy matrices on one block of cycles in the planar case.

For integers ``p``, ``h >= 1``, ``d1 >= 1`` and ``c = (c1, c2)`` put
``eps1 = exp(2 pi i c1)`` and ``eps2 = exp(-2 pi i c2)``.  The basis
``delta[i][j]`` (``1 <= i <= d1``, ``1 <= j <= h``) is shifted along ``i``
and, at the last block, wrapped back with a twist:

    Phi(delta[i][j])  = delta[i+1][j]                              (i < d1)
    Phi(delta[d1][j]) = eps1 * eps2**{j+p} * delta[1][[j+p]]

where ``m = h * {m} + [m]`` with ``1 <= [m] <= h``.  As a matrix this is the
block companion ``L`` with ``K = eps1 * Cyc**p`` in its top-right corner,
``Cyc`` being the ``h x h`` cyclic shift with ``eps2`` in its top-right
entry.  Its characteristic polynomial is the product over ``zeta^h = eps2``
of ``t^{d1} - eps1 * zeta^p``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.linalg

from .monodromy_engine import ParameterVector, as_parameters
from .spectral_algebra import FactoredCharPoly, UnitScalar, expand, make_factor, product

AGREEMENT_TOL = 1e-12
CHARPOLY_TOL = 1e-10


def split_index(m: int, h: int) -> tuple[int, int]:
    """``({m}_h, [m]_h)`` with ``m = h*{m}_h + [m]_h`` and ``1 <= [m]_h <= h``."""
    r = (m - 1) % h + 1
    return (m - r) // h, r


def _e(turns) -> complex:
    if isinstance(turns, Fraction):
        return UnitScalar.from_angle(turns).to_complex()
    return cmath.exp(2j * math.pi * turns)


def _eps(c: ParameterVector) -> tuple[complex, complex]:
    c1, c2 = c.entries
    return _e(c1), _e(-c2)


def cyclic_matrix(h: int, eps2: complex) -> np.ndarray:
    C = np.zeros((h, h), dtype=complex)
    C[0, h - 1] = eps2
    for i in range(1, h):
        C[i, i - 1] = 1.0
    return C


def block_matrix(p: int, h: int, d1: int, c) -> np.ndarray:
    """``L`` assembled from ``K = eps1 * Cyc**p``."""
    c = as_parameters(c)
    eps1, eps2 = _eps(c)
    K = eps1 * np.linalg.matrix_power(cyclic_matrix(h, eps2), p)
    size = h * d1
    L = np.zeros((size, size), dtype=complex)
    L[:h, size - h:] = K
    for i in range(1, d1):
        L[i * h:(i + 1) * h, (i - 1) * h:i * h] = np.eye(h)
    return L


def index_map_matrix(p: int, h: int, d1: int, c) -> np.ndarray:
    """The same operator built column by column from the action on ``delta[i][j]``."""
    c = as_parameters(c)
    c1, c2 = c.entries
    size = h * d1
    L = np.zeros((size, size), dtype=complex)

    def col(i: int, j: int) -> int:
        return (i - 1) * h + (j - 1)

    for i in range(1, d1 + 1):
        for j in range(1, h + 1):
            if i < d1:
                L[col(i + 1, j), col(i, j)] = 1.0
            else:
                q, r = split_index(j + p, h)
                # eps1 * eps2**q = e(c1 - q*c2)
                L[col(1, r), col(i, j)] = _e(c1 - q * c2)
    return L


def phi1_matrix(p: int, h: int, d1: int, c) -> np.ndarray:
    if h < 1 or d1 < 1:
        raise ValueError("h and d1 must be positive")
    L = block_matrix(p, h, d1, c)
    M = index_map_matrix(p, h, d1, c)
    if not np.allclose(L, M, rtol=0, atol=AGREEMENT_TOL):
        raise AssertionError("block and index-map constructions disagree")
    return L


def hessenberg_charpoly(A: np.ndarray) -> np.ndarray:
    """Monic characteristic polynomial (highest degree first) via a Hessenberg recurrence."""
    n = A.shape[0]
    H = scipy.linalg.hessenberg(np.asarray(A, dtype=complex))
    polys = [np.array([1.0 + 0j])]
    for k in range(n):
        pk = np.convolve(np.array([1.0, -H[k, k]]), polys[k])
        sub = 1.0 + 0j
        for i in range(k - 1, -1, -1):
            sub *= H[i + 1, i]
            term = H[i, k] * sub * polys[i]
            pk[-len(term):] -= term
        polys.append(pk)
    return polys[n]


def zeta_product(p: int, h: int, d1: int, c) -> FactoredCharPoly:
    """``prod_{zeta^h = eps2} (t^{d1} - eps1 zeta^p)`` in factored form."""
    c = as_parameters(c)
    c1, c2 = c.entries
    factors = []
    for k in range(h):
        zeta = (-c2 + k) / h  # zeta = e(zeta)
        turns = c1 + p * zeta
        mu = UnitScalar.from_angle(turns) if c.mode == "exact" else UnitScalar.from_complex(_e(turns))
        factors.append(make_factor(d1, mu, 1))
    return product(factors)


@dataclass(frozen=True)
class IdentityVerdict:
    passed: bool
    max_coefficient_error: float
    matrices_agree: bool


def phi1_charpoly_identity(p: int, h: int, d1: int, c, tol: float = CHARPOLY_TOL) -> IdentityVerdict:
    c = as_parameters(c)
    L = block_matrix(p, h, d1, c)
    agree = bool(np.allclose(L, index_map_matrix(p, h, d1, c), rtol=0, atol=AGREEMENT_TOL))
    lhs = hessenberg_charpoly(L)
    rhs = expand(zeta_product(p, h, d1, c))
    err = float(np.max(np.abs(lhs - rhs)))
    return IdentityVerdict(agree and err <= tol, err, agree)
