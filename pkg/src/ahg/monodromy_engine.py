"""Characteristic polynomial of the monodromy at infinity from lattice geometry.

Given a point configuration ``A`` in ``Z^n``, a parameter ``c`` and a
distinguished point ``a(j0)``, the monodromy of the solutions along a large
circle in the ``z_{j0}`` coordinate has characteristic polynomial

    prod_{i,j} (t^{h_ij} - exp(-2 pi i <rho_ij, c>))^{Vol(G_ij^)}
        * (t - 1)^{Vol(D) - sum_i Vol(D_i^)}

where ``D = conv(A ∪ {0})``, ``D_i`` runs over the facets of ``D`` through
``a(j0)`` but not through the origin, ``G_ij`` over the facets of ``D_i``
missing ``a(j0)``, hats denote cones with apex ``0``, ``rho_ij`` is the
primitive inner conormal of ``G_ij^`` in ``D_i^`` and
``h_ij = <rho_ij, a(j0)>``.  This is valid for non-resonant ``c``; for
resonant ``c`` the same expression is returned with a flag.

Indices ``j0`` are 1-based.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from . import integer_linalg as il
from . import lattice_geometry as lg
from .spectral_algebra import FactoredCharPoly, UnitScalar, make_factor, product

logger = logging.getLogger(__name__)

RESONANCE_TOL = 1e-9
RESONANCE_WARN = 1e-6

Scalar = Union[Fraction, complex]


class InvalidConfigurationError(ValueError):
    pass


@dataclass(frozen=True)
class PointConfiguration:
    points: tuple[lg.Point, ...]

    def __post_init__(self):
        pts = tuple(tuple(int(x) for x in p) for p in self.points)
        if not pts:
            raise ValueError("empty point configuration")
        if len({len(p) for p in pts}) != 1 or len(pts[0]) == 0:
            raise ValueError("points must share a positive dimension")
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return len(self.points[0])

    @property
    def N(self) -> int:
        return len(self.points)

    def point(self, j0: int) -> lg.Point:
        if not 1 <= j0 <= self.N:
            raise IndexError(f"j0={j0} out of range 1..{self.N}")
        return self.points[j0 - 1]

    def delta(self) -> lg.LatticePolytope:
        """``conv(A ∪ {0})``."""
        return lg.convex_hull(list(self.points) + [(0,) * self.n])

    def transformed(self, U: Sequence[Sequence[int]]) -> "PointConfiguration":
        return PointConfiguration(tuple(tuple(il.matvec(U, p)) for p in self.points))


def _parse_scalar(x) -> Scalar:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a parameter value")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, dict):
        return complex(x["re"], x["im"])
    return complex(x)


@dataclass(frozen=True)
class ParameterVector:
    """Entries are all ``Fraction`` (exact mode) or all ``complex`` (float mode)."""

    entries: tuple

    def __post_init__(self):
        vals = tuple(_parse_scalar(x) for x in self.entries)
        if not all(isinstance(v, Fraction) for v in vals):
            vals = tuple(complex(v) for v in vals)
        object.__setattr__(self, "entries", vals)

    @classmethod
    def of(cls, *entries) -> "ParameterVector":
        return cls(tuple(entries))

    @property
    def mode(self) -> str:
        return "exact" if all(isinstance(v, Fraction) for v in self.entries) else "float"

    @property
    def n(self) -> int:
        return len(self.entries)

    def pair(self, rho: Sequence[int]) -> Scalar:
        return sum((r * v for r, v in zip(rho, self.entries)), Fraction(0) if self.mode == "exact" else 0j)

    def transformed(self, U: Sequence[Sequence[int]]) -> "ParameterVector":
        return ParameterVector(tuple(sum((u * v for u, v in zip(row, self.entries)), self.entries[0] * 0)
                                     for row in U))


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    divisors: tuple[int, ...]
    dim: int
    message: str


@dataclass(frozen=True)
class ResonanceWitness:
    facet: tuple[lg.Point, ...]
    conormal: lg.Point
    pairing: Scalar
    distance: float


@dataclass(frozen=True)
class ResonanceVerdict:
    status: str  # "non-resonant" | "resonant" | "near-integer-warning"
    witnesses: tuple[ResonanceWitness, ...] = ()

    @property
    def resonant(self) -> bool:
        return self.status == "resonant"


@dataclass(frozen=True)
class SubfacetTerm:
    face: lg.Face
    conormal: lg.Point
    height: int
    gamma_hat_volume: int


@dataclass(frozen=True)
class FacetContribution:
    facet: lg.Face
    terms: tuple[SubfacetTerm, ...]
    delta_hat_volume: int


@dataclass(frozen=True)
class MonodromyReport:
    j0: int
    char_poly: FactoredCharPoly
    contributions: tuple[FacetContribution, ...]
    volume: int
    t_minus_one_exponent: int
    resonance: ResonanceVerdict
    theorem_hypotheses_met: bool
    orientation: str = "ccw"
    lattice_divisors: tuple[int, ...] = ()

    @property
    def degree(self) -> int:
        return self.char_poly.degree


def as_configuration(A) -> PointConfiguration:
    return A if isinstance(A, PointConfiguration) else PointConfiguration(tuple(A))


def as_parameters(c) -> ParameterVector:
    return c if isinstance(c, ParameterVector) else ParameterVector(tuple(c))


def validate_configuration(A) -> ValidationReport:
    A = as_configuration(A)
    cols = il.transpose(A.points)  # n x N, columns are the points
    divisors = tuple(abs(d) for d in il.smith_normal_form(cols).divisors)
    dim = A.delta().dim
    problems = []
    if any(d != 1 for d in divisors):
        problems.append(f"A does not generate Z^n (divisors: {list(divisors)})")
    if dim != A.n:
        problems.append(f"conv(A ∪ {{0}}) has dimension {dim} < {A.n}")
    return ValidationReport(not problems, divisors, dim, "; ".join(problems) or "ok")


def _require_full_dimensional(A: PointConfiguration) -> ValidationReport:
    # a non-generating A still has well-defined geometry; callers flag it
    report = validate_configuration(A)
    if report.dim != A.n:
        raise InvalidConfigurationError(report.message)
    return report


def _distance_to_integer(v: Scalar) -> float:
    if isinstance(v, Fraction):
        return float(abs(v - round(v)))
    return abs(v - round(v.real))


def check_nonresonance(A, c) -> ResonanceVerdict:
    """``<rho, c>`` must avoid ``Z`` for every facet of ``conv(A ∪ {0})`` through 0.

    For such a facet ``Lin`` is the orthogonal complement of its primitive
    conormal ``rho`` and ``<rho, Z^n> = Z``, so ``c ∈ Z^n + Lin`` exactly
    when ``<rho, c>`` is an integer.
    """
    A, c = as_configuration(A), as_parameters(c)
    if c.n != A.n:
        raise ValueError(f"parameter has length {c.n}, expected {A.n}")
    delta = A.delta()
    resonant, warn = [], []
    for f in delta.facets:
        if f.offset != 0:
            continue
        v = c.pair(f.normal)
        dist = _distance_to_integer(v)
        pts = tuple(sorted(delta.vertices[i] for i in f.incident))
        w = ResonanceWitness(pts, f.normal, v, dist)
        if c.mode == "exact":
            if v.denominator == 1:
                resonant.append(w)
        elif dist <= RESONANCE_TOL:
            resonant.append(w)
        elif dist <= RESONANCE_WARN:
            warn.append(w)
    if resonant:
        return ResonanceVerdict("resonant", tuple(resonant))
    if warn:
        logger.warning("parameter within %g of a resonance hyperplane", RESONANCE_WARN)
        return ResonanceVerdict("near-integer-warning", tuple(warn))
    return ResonanceVerdict("non-resonant")


def relevant_facet_data(A, j0: int) -> list[FacetContribution]:
    A = as_configuration(A)
    a = A.point(j0)
    _require_full_dimensional(A)
    n = A.n
    origin = (0,) * n
    delta = A.delta()
    out = []
    for f in delta.facets:
        # facets through a(j0) avoiding the origin (0 ∈ delta forces offset <= 0)
        if f.offset == 0 or il.dot(f.normal, a) != f.offset:
            continue
        facet_pts = [delta.vertices[i] for i in sorted(f.incident)]
        facet_face = lg.face_from_points(facet_pts, f.incident)
        facet_poly = lg.convex_hull(facet_pts)
        a_chart = facet_poly.chart.to_chart(a)
        delta_hat = lg.convex_hull(facet_pts + [origin])
        terms = []
        for gamma, gd in _subfacets(facet_poly):
            if gd is not None and il.dot(gd.normal, a_chart) == gd.offset:
                continue
            gamma_hat = lg.face_from_points(list(gamma.points) + [origin])
            rho, b = lg.inner_conormal(delta_hat, gamma_hat)
            assert b == 0
            h = lg.lattice_height(rho, b, a)
            assert h > 0
            terms.append(SubfacetTerm(gamma, rho, h, lg.normalized_volume(gamma_hat)))
        vol_hat = lg.normalized_volume(delta_hat)
        if sum(t.height * t.gamma_hat_volume for t in terms) != vol_hat:
            raise AssertionError(f"pyramid identity fails on facet {facet_pts}")
        out.append(FacetContribution(facet_face, tuple(terms), vol_hat))
    return out


def _subfacets(p: lg.LatticePolytope):
    faces = lg.faces_of_codim_one(p)
    if p.dim == 0:
        return [(faces[0], None)]
    return list(zip(faces, p.facets))


def monodromy_at_infinity(A, c, j0: int, orientation: str = "ccw") -> MonodromyReport:
    """Factored characteristic polynomial of the loop around ``|z_{j0}| = R``.

    ``orientation="cw"`` conjugates every multiplier.  Raises if
    ``conv(A ∪ {0})`` is not full-dimensional.  If ``A`` does not generate
    ``Z^n`` or ``c`` is resonant the polynomial is still computed but
    ``theorem_hypotheses_met`` is false.
    """
    if orientation not in ("ccw", "cw"):
        raise ValueError("orientation must be 'ccw' or 'cw'")
    A, c = as_configuration(A), as_parameters(c)
    A.point(j0)
    validation = _require_full_dimensional(A)
    resonance = check_nonresonance(A, c)
    contributions = relevant_facet_data(A, j0)
    sign = -1 if orientation == "ccw" else 1
    factors = []
    for contrib in contributions:
        for t in contrib.terms:
            v = c.pair(t.conormal)
            if c.mode == "exact":
                mu = UnitScalar.from_angle(sign * v)
            else:
                mu = UnitScalar.from_complex(cmath.exp(sign * 2j * math.pi * v))
            factors.append(make_factor(t.height, mu, t.gamma_hat_volume))
    volume = lg.normalized_volume(A.delta())
    rest = volume - sum(contrib.delta_hat_volume for contrib in contributions)
    if rest < 0:
        raise AssertionError("cones over the facets exceed the volume of the polytope")
    if rest:
        factors.append(make_factor(1, UnitScalar.from_angle(0), rest))
    poly = product(factors)
    return MonodromyReport(
        j0=j0,
        char_poly=poly,
        contributions=tuple(contributions),
        volume=volume,
        t_minus_one_exponent=rest,
        resonance=resonance,
        theorem_hypotheses_met=validation.ok and not resonance.resonant,
        orientation=orientation,
        lattice_divisors=validation.divisors,
    )


def all_reports(A, c, j0s: Iterable[int] | None = None, orientation: str = "ccw") -> list[MonodromyReport]:
    A = as_configuration(A)
    idx = range(1, A.N + 1) if j0s is None else j0s
    return [monodromy_at_infinity(A, c, j, orientation) for j in idx]
