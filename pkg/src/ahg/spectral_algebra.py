"""Factored characteristic polynomials with unit-modulus multipliers.

A multiplier is either an exact rational angle ``q`` (meaning
``exp(2*pi*i*q)``, stored reduced into ``[0, 1)``) or a complex float.
Polynomials are products of factors ``(t^h - mu)^mult`` kept in a canonical
order so that equal polynomials compare (and serialize) identically.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

UNIT_TOL = 1e-9
FLOAT_MERGE_TOL = 1e-12


@dataclass(frozen=True)
class UnitScalar:
    angle: Fraction | None = None
    value: complex | None = None

    def __post_init__(self):
        if (self.angle is None) == (self.value is None):
            raise ValueError("UnitScalar needs exactly one of angle / value")
        if self.angle is not None:
            object.__setattr__(self, "angle", Fraction(self.angle) % 1)
        else:
            object.__setattr__(self, "value", complex(self.value))

    @classmethod
    def from_angle(cls, q) -> "UnitScalar":
        return cls(angle=Fraction(q))

    @classmethod
    def from_complex(cls, z) -> "UnitScalar":
        return cls(value=complex(z))

    @property
    def is_exact(self) -> bool:
        return self.angle is not None

    @property
    def kind(self) -> str:
        return "rational_angle" if self.is_exact else "complex"

    def to_complex(self) -> complex:
        if self.angle is None:
            return self.value
        q = self.angle
        # exact special values keep expand() clean
        if q == 0:
            return 1 + 0j
        if q == Fraction(1, 2):
            return -1 + 0j
        if q == Fraction(1, 4):
            return 1j
        if q == Fraction(3, 4):
            return -1j
        return cmath.exp(2j * math.pi * float(q))

    def turns(self) -> float:
        """Principal argument as a fraction of a full turn, in ``[0, 1)``."""
        if self.angle is not None:
            return float(self.angle)
        return (cmath.phase(self.value) / (2 * math.pi)) % 1.0

    def is_unit(self, tol: float = UNIT_TOL) -> bool:
        return self.is_exact or abs(abs(self.value) - 1) <= tol

    def conjugate(self) -> "UnitScalar":
        if self.angle is not None:
            return UnitScalar(angle=-self.angle)
        return UnitScalar(value=self.value.conjugate())

    def symmetric_angle(self) -> Fraction:
        """Representative of the angle in ``(-1/2, 1/2]``."""
        q = self.angle
        return q - 1 if q > Fraction(1, 2) else q

    def sort_key(self):
        if self.angle is not None:
            return (0, self.angle, 0.0)
        return (1, Fraction(0), self.turns())


@dataclass(frozen=True)
class Factor:
    """``(t^h - mu)^mult``."""

    h: int
    mu: UnitScalar
    mult: int


@dataclass(frozen=True)
class FactoredCharPoly:
    factors: tuple[Factor, ...]

    @property
    def degree(self) -> int:
        return sum(f.h * f.mult for f in self.factors)

    def conjugate(self) -> "FactoredCharPoly":
        return product(Factor(f.h, f.mu.conjugate(), f.mult) for f in self.factors)


@dataclass(frozen=True)
class SpectrumMultiset:
    items: tuple[tuple[UnitScalar, int], ...]

    @property
    def count(self) -> int:
        return sum(m for _, m in self.items)

    def values(self) -> list[complex]:
        out = []
        for mu, m in self.items:
            out.extend([mu.to_complex()] * m)
        return out


@dataclass(frozen=True)
class MatchReport:
    passed: bool
    max_distance: float
    count_a: int
    count_b: int
    pairs: tuple[tuple[complex, complex], ...] = ()
    witness: tuple[complex, complex] | None = None


def make_factor(h: int, mu, mult: int = 1) -> Factor:
    if h < 1 or mult < 1:
        raise ValueError(f"factor needs h >= 1 and mult >= 1 (got h={h}, mult={mult})")
    if not isinstance(mu, UnitScalar):
        mu = UnitScalar.from_complex(mu) if isinstance(mu, (complex, float)) else UnitScalar.from_angle(mu)
    return Factor(int(h), mu, int(mult))


def _same(a: UnitScalar, b: UnitScalar) -> bool:
    if a.is_exact and b.is_exact:
        return a.angle == b.angle
    if a.is_exact or b.is_exact:
        return False
    return abs(a.value - b.value) <= FLOAT_MERGE_TOL


def product(factors: Iterable[Factor]) -> FactoredCharPoly:
    merged: list[Factor] = []
    for f in sorted(factors, key=lambda f: (f.h, f.mu.sort_key(), f.mult)):
        if merged and merged[-1].h == f.h and _same(merged[-1].mu, f.mu):
            last = merged[-1]
            merged[-1] = Factor(last.h, last.mu, last.mult + f.mult)
        else:
            merged.append(f)
    return FactoredCharPoly(tuple(merged))


def expand(p: FactoredCharPoly) -> np.ndarray:
    """Monic coefficient vector, highest degree first."""
    coeffs = np.array([1.0 + 0j])
    for f in p.factors:
        base = np.zeros(f.h + 1, dtype=complex)
        base[0] = 1.0
        base[-1] = -f.mu.to_complex()
        for _ in range(f.mult):
            coeffs = np.convolve(coeffs, base)
    return coeffs


def roots(p: FactoredCharPoly) -> SpectrumMultiset:
    counts: dict = {}
    order: list = []
    for f in p.factors:
        if f.mu.is_exact:
            rs = [UnitScalar(angle=(f.mu.angle + k) / f.h) for k in range(f.h)]
        else:
            r0 = f.mu.value ** (1.0 / f.h) if f.mu.value != 0 else 0j
            rs = [UnitScalar(value=r0 * cmath.exp(2j * math.pi * k / f.h)) for k in range(f.h)]
        for r in rs:
            key = next((k for k in order if _same(k, r)), None)
            if key is None:
                order.append(r)
                counts[r] = f.mult
            else:
                counts[key] += f.mult
    items = sorted(counts.items(), key=lambda kv: kv[0].sort_key())
    return SpectrumMultiset(tuple(items))


def spectrum_from_values(values: Sequence[complex], cluster_tol: float = 1e-6) -> SpectrumMultiset:
    groups: list[list[complex]] = []
    for v in values:
        for g in groups:
            if abs(g[0] - v) <= cluster_tol:
                g.append(v)
                break
        else:
            groups.append([complex(v)])
    items = [(UnitScalar(value=complex(np.mean(g))), len(g)) for g in groups]
    return SpectrumMultiset(tuple(sorted(items, key=lambda kv: kv[0].sort_key())))


def compare_spectra(a: SpectrumMultiset, b: SpectrumMultiset, tol: float) -> MatchReport:
    """Match two multisets by optimal assignment and report the worst pair."""
    va, vb = a.values(), b.values()
    if len(va) != len(vb):
        return MatchReport(False, math.inf, len(va), len(vb))
    if not va:
        return MatchReport(True, 0.0, 0, 0)
    cost = np.abs(np.subtract.outer(np.array(va), np.array(vb)))
    rows, cols = linear_sum_assignment(cost)
    pairs = tuple((va[i], vb[j]) for i, j in zip(rows, cols))
    dists = [abs(x - y) for x, y in pairs]
    worst = int(np.argmax(dists))
    max_d = float(dists[worst])
    passed = max_d <= tol
    return MatchReport(passed, max_d, len(va), len(vb), pairs, None if passed else pairs[worst])


# -- serialization -------------------------------------------------------------


def _fraction_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def unit_to_dict(mu: UnitScalar) -> dict:
    if mu.is_exact:
        return {"kind": "rational_angle", "q": _fraction_str(mu.symmetric_angle())}
    return {"kind": "complex", "re": mu.value.real, "im": mu.value.imag}


def unit_from_dict(d: dict) -> UnitScalar:
    if d["kind"] == "rational_angle":
        return UnitScalar(angle=Fraction(d["q"]))
    if d["kind"] == "complex":
        return UnitScalar(value=complex(d["re"], d["im"]))
    raise ValueError(f"unknown multiplier kind {d['kind']!r}")


def poly_to_list(p: FactoredCharPoly) -> list[dict]:
    return [{"h": f.h, "mu": unit_to_dict(f.mu), "mult": f.mult} for f in p.factors]


def poly_from_list(items: Sequence[dict]) -> FactoredCharPoly:
    return product(make_factor(d["h"], unit_from_dict(d["mu"]), d["mult"]) for d in items)


def format_unit(mu: UnitScalar) -> str:
    if mu.is_exact:
        q = mu.symmetric_angle()
        if q == 0:
            return "1"
        return f"e({_fraction_str(q).replace('-', '−')})"
    z = mu.value
    return f"({z.real:.12g}{'+' if z.imag >= 0 else '−'}{abs(z.imag):.12g}i)"


def format_poly(p: FactoredCharPoly) -> str:
    """Human readable form, e.g. ``(t^2 − e(−1/3))^1 (t − 1)^3``; ``e(q) = exp(2πi q)``."""
    if not p.factors:
        return "1"
    parts = []
    for f in p.factors:
        var = "t" if f.h == 1 else f"t^{f.h}"
        parts.append(f"({var} − {format_unit(f.mu)})^{f.mult}")
    return " ".join(parts)
