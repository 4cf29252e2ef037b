"""Seeded random inputs shared by the test suite and the experiment scripts."""

from __future__ import annotations

import random
from fractions import Fraction

from . import integer_linalg as il
from .monodromy_engine import (
    ParameterVector,
    PointConfiguration,
    check_nonresonance,
    validate_configuration,
)


def random_unimodular(rng: random.Random, n: int, steps: int = 8, bound: int = 2) -> il.Matrix:
    U = il.identity(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i != j:
            k = rng.randint(-bound, bound)
            U[i] = [a + k * b for a, b in zip(U[i], U[j])]
        if rng.random() < 0.3:
            r = rng.randrange(n)
            U[r] = [-a for a in U[r]]
        if n > 1 and rng.random() < 0.3:
            a, b = rng.sample(range(n), 2)
            U[a], U[b] = U[b], U[a]
    return U


def random_configuration(rng: random.Random, n: int, max_points: int = 7, bound: int = 3,
                         max_tries: int = 1000) -> PointConfiguration:
    """Random ``A`` in ``[-bound, bound]^n`` that generates ``Z^n`` (hence is full-dimensional)."""
    for _ in range(max_tries):
        N = rng.randint(max(1, n), max_points)
        pts = tuple(tuple(rng.randint(-bound, bound) for _ in range(n)) for _ in range(N))
        A = PointConfiguration(pts)
        if validate_configuration(A).ok:
            return A
    raise RuntimeError("could not draw a generating configuration")


def random_rational(rng: random.Random, max_den: int = 11, span: int = 2) -> Fraction:
    q = rng.randint(1, max_den)
    return Fraction(rng.randint(-span * q, span * q), q)


def random_nonresonant(rng: random.Random, A: PointConfiguration, max_den: int = 11,
                       max_tries: int = 1000) -> ParameterVector:
    for _ in range(max_tries):
        c = ParameterVector(tuple(random_rational(rng, max_den) for _ in range(A.n)))
        if check_nonresonance(A, c).status == "non-resonant":
            return c
    raise RuntimeError("could not draw a non-resonant parameter")


def acceptance_suite(seed: int = 20261018, count: int = 200, max_points: int = 7,
                     bound: int = 3) -> list[tuple[PointConfiguration, ParameterVector]]:
    rng = random.Random(seed)
    out = []
    for k in range(count):
        n = (1, 2, 3)[k % 3]
        A = random_configuration(rng, n, max_points, bound)
        out.append((A, random_nonresonant(rng, A)))
    return out
