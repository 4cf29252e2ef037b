"""Face-by-face non-degeneracy diagnostics for ``h_z(x) = sum_j z_j x^{a(j)}``.

Only faces of ``conv(A ∪ {0})`` that avoid the origin matter.  Vertices and
edges are decided exactly (or numerically for float ``z``); faces of
dimension two or more are reported as ``unchecked``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import integer_linalg as il
from . import lattice_geometry as lg
from .monodromy_engine import as_configuration

DISCRIMINANT_TOL = 1e-9


@dataclass(frozen=True)
class FaceVerdict:
    face: tuple[lg.Point, ...]
    dim: int
    verdict: str  # "nondegenerate" | "degenerate" | "unchecked"
    detail: str


@dataclass(frozen=True)
class NondegeneracyReport:
    verdict: str
    faces: tuple[FaceVerdict, ...]


def _coerce_z(z: Sequence) -> tuple[list, bool]:
    vals = []
    for x in z:
        if isinstance(x, dict):
            vals.append(complex(x["re"], x["im"]))
        elif isinstance(x, str):
            vals.append(Fraction(x))
        elif isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            vals.append(Fraction(x))
        else:
            vals.append(complex(x))
    exact = all(isinstance(v, Fraction) for v in vals)
    if not exact:
        vals = [complex(v) for v in vals]
    return vals, exact


def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    return coeffs


def _poly_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    # coefficients lowest degree first
    a = list(a)
    while len(a) >= len(b) and a:
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, x in enumerate(b):
            a[shift + i] -= f * x
        a = _trim(a)
    return a


def _poly_gcd_degree(a: list[Fraction], b: list[Fraction]) -> int:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _poly_rem(a, b)
    return len(a) - 1


def _derivative(g: list) -> list:
    return [k * g[k] for k in range(1, len(g))]


def _normalized_discriminant(g: list[complex]) -> float:
    # |Res(g, g')| / (|g|^{deg g'} |g'|^{deg g}); at most 1 by Hadamard
    dg = _derivative(g)
    m, k = len(g) - 1, len(dg) - 1
    size = m + k
    S = np.zeros((size, size), dtype=complex)
    ga, da = np.array(g[::-1]), np.array(dg[::-1])
    for i in range(k):
        S[i, i:i + m + 1] = ga
    for i in range(m):
        S[k + i, i:i + k + 1] = da
    res = abs(np.linalg.det(S))
    scale = np.linalg.norm(ga) ** k * np.linalg.norm(da) ** m
    return float(res / scale) if scale else 0.0


def _edge_verdict(face: lg.Face, members: list[tuple[lg.Point, object]], exact: bool) -> tuple[str, str]:
    v, w = face.points[0], face.points[-1]
    e = il.primitive_vector([b - a for a, b in zip(v, w)])
    g: dict[int, object] = {}
    for pt, coef in members:
        k = il.integer_coordinates([e], [b - a for a, b in zip(v, pt)])[0]
        g[k] = g.get(k, 0) + coef
    top = max(g)
    coeffs = _trim([g.get(k, 0) for k in range(top + 1)])
    if not coeffs:
        return "degenerate", "face polynomial vanishes identically"
    low = next(k for k, x in enumerate(coeffs) if x != 0)
    coeffs = coeffs[low:]  # roots at s = 0 are not in the torus
    if len(coeffs) <= 2:
        return "nondegenerate", f"edge polynomial of degree {len(coeffs) - 1}"
    if exact:
        gd = _poly_gcd_degree(coeffs, _derivative(coeffs))
        if gd >= 1:
            return "degenerate", f"gcd(g, g') has degree {gd}"
        return "nondegenerate", "g has simple roots (exact gcd)"
    disc = _normalized_discriminant([complex(x) for x in coeffs])
    if disc <= DISCRIMINANT_TOL:
        return "degenerate", f"normalized discriminant {disc:.3e} <= {DISCRIMINANT_TOL}"
    return "nondegenerate", f"normalized discriminant {disc:.3e}"


def check_nondegeneracy(A, z: Sequence) -> NondegeneracyReport:
    A = as_configuration(A)
    if len(z) != A.N:
        raise ValueError(f"z has length {len(z)}, expected {A.N}")
    vals, exact = _coerce_z(z)
    delta = A.delta()
    verdicts = []
    for face in lg.all_faces(delta):
        defining = [f for f in delta.facets if face.indices <= f.incident]
        if all(f.offset == 0 for f in defining):
            continue  # the face contains the origin
        members = [(pt, zj) for pt, zj in zip(A.points, vals)
                   if all(il.dot(f.normal, pt) == f.offset for f in defining)]
        if face.dim == 0:
            coef = sum((zj for _, zj in members), 0)
            if coef == 0:
                verdicts.append(FaceVerdict(face.points, 0, "degenerate", "vertex coefficient vanishes"))
            else:
                verdicts.append(FaceVerdict(face.points, 0, "nondegenerate", f"vertex coefficient {coef}"))
        elif face.dim == 1:
            verdict, detail = _edge_verdict(face, members, exact)
            verdicts.append(FaceVerdict(face.points, 1, verdict, detail))
        else:
            verdicts.append(FaceVerdict(face.points, face.dim, "unchecked",
                                        "faces of dimension >= 2 need elimination theory"))
    states = {v.verdict for v in verdicts}
    if "degenerate" in states:
        overall = "degenerate"
    elif "unchecked" in states:
        overall = "unchecked"
    else:
        overall = "nondegenerate"
    return NondegeneracyReport(overall, tuple(verdicts))
