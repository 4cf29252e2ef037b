"""Numeric cross-checks: loop monodromy of small ODEs and a second volume algorithm.

Catalog
-------
Each entry is the restriction of a small GKZ system to a line parallel to
the ``z_{j0}`` axis, with the other coordinates frozen, reduced by hand to a
scalar ODE ``sum_k p_k(z) u^{(k)}(z) = 0`` in the loop variable ``z``.

``power``          A = {1}, j0 = 1:                 z u' + c u = 0
``hermite``        A = {1, 2}, j0 = 2, z1 frozen:
                   4 z^2 u'' + ((4c + 6) z - z1^2) u' + c (c + 1) u = 0
``kummer_square``  A = {(1,0), (0,1), (1,1)}, j0 = 3, z1, z2 frozen:
                   z^2 u'' + ((c1 + c2 + 1) z - z1 z2) u' + c1 c2 u = 0

The Euler operators give ``z_j d/dz_j`` for the frozen coordinates in terms
of ``E = z d/dz``; substituting into the box operator (``d1^2 = d2`` resp.
``d1 d2 = d3``) leaves the equations above.  ``catalog_residual`` checks
them against the integral representation
``u(z) = ∫ exp(sum_j z_j x^{a(j)}) x^{c-1} dx`` evaluated by quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

import numpy as np
from scipy import integrate, special

from .spectral_algebra import SpectrumMultiset, spectrum_from_values

CATALOG_IDS = ("power", "hermite", "kummer_square")

CATALOG_CONFIGS = {
    "power": ((1,),),
    "hermite": ((1,), (2,)),
    "kummer_square": ((1, 0), (0, 1), (1, 1)),
}
CATALOG_J0 = {"power": 1, "hermite": 2, "kummer_square": 3}

MIN_INITIAL_STEPS = 256


class MonodromyIntegrationError(RuntimeError):
    pass


@dataclass(frozen=True)
class OdeSystem:
    """``Y' = M(z) Y`` in the loop variable; ``coefficients`` holds the scalar form if any.

    ``coefficients[k]`` is the polynomial ``p_k`` (lowest degree first) in
    front of ``u^{(k)}``.
    """

    size: int
    matrix: Callable[[complex], np.ndarray]
    singularity_moduli: tuple[float, ...] = ()
    catalog_id: str | None = None
    params: dict = field(default_factory=dict, compare=False)
    coefficients: tuple[tuple, ...] | None = None

    @classmethod
    def from_scalar(cls, coefficients: Sequence[Sequence], catalog_id=None, params=None) -> "OdeSystem":
        coeffs = tuple(tuple(p) for p in coefficients)
        m = len(coeffs) - 1
        lead = [complex(x) for x in coeffs[m]]
        polys = [np.polynomial.Polynomial([complex(x) for x in p]) for p in coeffs]
        roots = np.polynomial.Polynomial(lead).roots() if len(lead) > 1 else []
        moduli = tuple(sorted(float(abs(r)) for r in roots))

        def matrix(z: complex) -> np.ndarray:
            M = np.zeros((m, m), dtype=complex)
            M[np.arange(m - 1), np.arange(1, m)] = 1.0
            pm = polys[m](z)
            M[m - 1, :] = [-polys[k](z) / pm for k in range(m)]
            return M

        return cls(m, matrix, moduli, catalog_id, dict(params or {}), coeffs)


@dataclass(frozen=True)
class MonodromyMatrix:
    matrix: np.ndarray = field(compare=False)
    steps: int
    evaluations: int
    radius: float
    theta0: float
    orientation: str


def _num(x):
    return Fraction(x) if isinstance(x, (int, str, Fraction)) else complex(x)


def catalog_system(catalog_id: str, **params) -> OdeSystem:
    if catalog_id == "power":
        c = _num(params.get("c", Fraction(1, 2)))
        return OdeSystem.from_scalar([(c,), (0, 1)], catalog_id, {"c": c})
    if catalog_id == "hermite":
        c = _num(params.get("c", Fraction(1, 3)))
        z1 = _num(params.get("z1", 1))
        p0 = (c * (c + 1),)
        p1 = (-z1 * z1, 4 * c + 6)
        p2 = (0, 0, 4)
        return OdeSystem.from_scalar([p0, p1, p2], catalog_id, {"c": c, "z1": z1})
    if catalog_id == "kummer_square":
        c1, c2 = (_num(x) for x in params.get("c", (Fraction(1, 3), Fraction(1, 5))))
        z1 = _num(params.get("z1", 1))
        z2 = _num(params.get("z2", 1))
        p0 = (c1 * c2,)
        p1 = (-z1 * z2, c1 + c2 + 1)
        p2 = (0, 0, 1)
        return OdeSystem.from_scalar([p0, p1, p2], catalog_id, {"c": (c1, c2), "z1": z1, "z2": z2})
    raise KeyError(f"unknown catalog system {catalog_id!r}; known: {', '.join(CATALOG_IDS)}")


def auto_radius(sys: OdeSystem) -> float:
    return max(10.0, 2.0 * max(sys.singularity_moduli, default=0.0))


def numeric_monodromy(sys: OdeSystem, radius: float | str = "auto", tol: float = 1e-10,
                      theta0: float = 0.0, orientation: str = "ccw",
                      max_steps: int = 200_000) -> MonodromyMatrix:
    """Transport the identity once around ``|z| = radius`` (DOP853, complex state)."""
    R = auto_radius(sys) if radius == "auto" else float(radius)
    if R <= 0 or R <= max(sys.singularity_moduli, default=0.0):
        raise ValueError(f"radius {R} does not enclose all singularities {sys.singularity_moduli}")
    sign = 1.0 if orientation == "ccw" else -1.0
    m = sys.size

    def rhs(theta, y):
        z = R * np.exp(1j * theta)
        Y = y.reshape(m, m)
        return (1j * z * sys.matrix(z) @ Y).ravel()

    h0 = 2 * math.pi / MIN_INITIAL_STEPS
    sol = integrate.solve_ivp(
        rhs, (theta0, theta0 + sign * 2 * math.pi), np.eye(m, dtype=complex).ravel(),
        method="DOP853", rtol=tol, atol=tol * 1e-2, first_step=h0, max_step=h0,
    )
    if not sol.success or len(sol.t) > max_steps:
        raise MonodromyIntegrationError(f"integration failed: {sol.message} after {len(sol.t)} steps")
    T = sol.y[:, -1].reshape(m, m)
    return MonodromyMatrix(T, len(sol.t) - 1, int(sol.nfev), R, theta0, orientation)


def numeric_spectrum(M: MonodromyMatrix | np.ndarray, cluster_tol: float = 1e-6) -> SpectrumMultiset:
    A = M.matrix if isinstance(M, MonodromyMatrix) else np.asarray(M, dtype=complex)
    if A.shape[0] > 16:
        raise ValueError("numeric_spectrum is meant for matrices of size <= 16")
    return spectrum_from_values(np.linalg.eigvals(A), cluster_tol)


# -- residual check against the integral representation ------------------------


def _moment(fn: Callable[[float], float], alpha: float) -> float:
    # ∫_0^∞ fn(x) x^alpha dx with an integrable endpoint singularity at 0
    head, _ = integrate.quad(fn, 0.0, 1.0, weight="alg", wvar=(alpha, 0.0), epsabs=1e-14, epsrel=1e-13, limit=200)
    tail, _ = integrate.quad(lambda x: fn(x) * x ** alpha, 1.0, np.inf, epsabs=1e-14, epsrel=1e-13, limit=200)
    return head + tail


def _integral_jets(catalog_id: str, params: dict, s: float) -> tuple[float, float, float, float]:
    """``(z, u, u', u'')`` at ``z = -s`` from the integral representation."""
    if any(complex(x).imag != 0 or complex(x).real <= 0 for x in np.atleast_1d(params["c"])):
        raise ValueError("residual check needs real positive parameters")
    if catalog_id == "power":
        c = float(params["c"])
        u = _moment(lambda x: math.exp(-s * x), c - 1)
        du = _moment(lambda x: math.exp(-s * x), c)
        return -s, u, du, 0.0
    if catalog_id == "hermite":
        c = float(params["c"])
        z1 = complex(params["z1"])
        if z1.imag != 0 or z1.real == 0:
            raise ValueError("residual check needs a real nonzero frozen z1")
        w = abs(z1.real)
        # z1 -> -w leaves the equation (it only sees z1^2) and makes the integral converge
        f = lambda x: math.exp(-w * x - s * x * x)  # noqa: E731
        return -s, _moment(f, c - 1), _moment(f, c + 1), _moment(f, c + 3)
    if catalog_id == "kummer_square":
        c1, c2 = (float(x) for x in params["c"])
        w = complex(params["z1"]) * complex(params["z2"])
        if w.imag != 0 or w.real <= 0:
            raise ValueError("residual check needs z1 * z2 real and positive")
        w = w.real
        # z1 = -1, z2 = -w; the x2 integral is Gamma(c2) (w + s x1)^(-c2)
        g = special.gamma(c2)
        u = g * _moment(lambda x: math.exp(-x) * (w + s * x) ** (-c2), c1 - 1)
        du = g * c2 * _moment(lambda x: math.exp(-x) * (w + s * x) ** (-c2 - 1), c1)
        d2u = g * c2 * (c2 + 1) * _moment(lambda x: math.exp(-x) * (w + s * x) ** (-c2 - 2), c1 + 1)
        return -s, u, du, d2u
    raise KeyError(catalog_id)


def catalog_residual(sys: OdeSystem, rays: Sequence[float] = (0.5, 1.0, 2.0, 4.0)) -> float:
    """Largest relative residual of the scalar ODE on integral-representation solutions.

    Needs real parameters with ``0 < c < 1`` style convergence (each ``c_i > 0``)
    and positive frozen data.
    """
    if sys.coefficients is None or sys.catalog_id is None:
        raise ValueError("residual check needs a catalog system")
    worst = 0.0
    for s in rays:
        z, *jets = _integral_jets(sys.catalog_id, sys.params, s)
        terms = [complex(np.polynomial.Polynomial([complex(x) for x in p])(z)) * d
                 for p, d in zip(sys.coefficients, jets)]
        scale = sum(abs(t) for t in terms)
        worst = max(worst, abs(sum(terms)) / scale)
    return worst


# -- independent volume oracle -------------------------------------------------


def _det(M: list[list[int]]) -> int:
    # cofactor expansion; the oracle avoids the library determinant on purpose
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * _det([row[:j] + row[j + 1:] for row in M[1:]])
               for j in range(n) if M[0][j])


def _simplex_volume(simplex: Sequence[Sequence[int]]) -> int:
    # index of the edge lattice in its saturation = gcd of maximal minors
    base = simplex[0]
    edges = [[a - b for a, b in zip(v, base)] for v in simplex[1:]]
    d, n = len(edges), len(base)
    g = 0
    for cols in combinations(range(n), d):
        g = math.gcd(g, _det([[row[c] for c in cols] for row in edges]))
    return g


def _orientation(simplex_proj: Sequence[Sequence[int]]) -> int:
    base = simplex_proj[0]
    return _det([[a - b for a, b in zip(v, base)] for v in simplex_proj[1:]])


def volume_bruteforce(points: Sequence[Sequence[int]]) -> int:
    """Normalized volume from a placing (beneath-beyond) triangulation."""
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        raise ValueError("empty point set")
    n = len(pts[0])
    # greedy affinely independent start
    start = [0]
    for i in range(1, len(pts)):
        trial = start + [i]
        if _simplex_volume([pts[k] for k in trial]) != 0:
            start = trial
    d = len(start) - 1
    if d == 0:
        return 1
    # coordinates on which the affine span projects bijectively
    base = pts[start[0]]
    edges = [[a - b for a, b in zip(pts[k], base)] for k in start[1:]]
    cols = next(cs for cs in combinations(range(n), d) if _det([[r[c] for c in cs] for r in edges]) != 0)
    proj = [tuple(p[c] for c in cols) for p in pts]

    simplices: list[tuple[int, ...]] = [tuple(start)]
    for i in range(len(pts)):
        if i in start:
            continue
        # boundary ridges with the vertex opposite to them
        count: dict[frozenset, list] = {}
        for s in simplices:
            for k in range(d + 1):
                ridge = frozenset(s[:k] + s[k + 1:])
                count.setdefault(ridge, []).append(s[k])
        new = []
        for ridge, opp in count.items():
            if len(opp) != 1:
                continue
            r = sorted(ridge)
            inside = _orientation([proj[k] for k in r] + [proj[opp[0]]])
            here = _orientation([proj[k] for k in r] + [proj[i]])
            if inside * here < 0:
                new.append(tuple(r) + (i,))
        simplices.extend(new)
    return sum(_simplex_volume([pts[k] for k in s]) for s in simplices)
