import cmath
import math
import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ahg import spectral_algebra as sa


def e(q):
    return cmath.exp(2j * math.pi * q)


def test_make_factor():
    f = sa.make_factor(1, F(0), 3)
    assert (f.h, f.mu.angle, f.mult) == (1, 0, 3)
    f = sa.make_factor(2, F(2, 3), 1)
    assert f.mu.angle == F(2, 3)
    f = sa.make_factor(1, -1.0 + 0j, 1)
    assert f.mu.kind == "complex"
    assert np.allclose(sa.expand(sa.product([f])), [1, 1])
    with pytest.raises(ValueError):
        sa.make_factor(0, F(0), 1)
    with pytest.raises(ValueError):
        sa.make_factor(1, F(0), 0)


def test_unit_scalar_reduces_mod_one():
    assert sa.UnitScalar.from_angle(F(-1, 3)).angle == F(2, 3)
    assert sa.UnitScalar.from_angle(F(7, 5)).symmetric_angle() == F(2, 5)
    assert sa.UnitScalar.from_angle(F(1, 2)).symmetric_angle() == F(1, 2)


def test_product_merges_and_is_canonical():
    p = sa.product([sa.make_factor(1, F(0), 1), sa.make_factor(1, F(0), 2)])
    assert p.factors == (sa.make_factor(1, F(0), 3),)
    fs = [sa.make_factor(2, F(1, 3)), sa.make_factor(1, F(1, 5)), sa.make_factor(1, F(0), 2),
          sa.make_factor(1, F(4, 5))]
    canon = sa.product(fs)
    for seed in range(10):
        shuffled = fs[:]
        random.Random(seed).shuffle(shuffled)
        assert sa.product(shuffled) == canon
    assert [(f.h, f.mu.angle) for f in canon.factors] == [(1, 0), (1, F(1, 5)), (1, F(4, 5)), (2, F(1, 3))]


def test_expand_examples():
    assert np.allclose(sa.expand(sa.product([sa.make_factor(1, F(0), 2)])), [1, -2, 1], atol=0)
    assert np.allclose(sa.expand(sa.product([sa.make_factor(2, F(-1, 2))])), [1, 0, 1], atol=0)
    p = sa.product([sa.make_factor(1, F(-1, 3)), sa.make_factor(1, F(-1, 5))])
    direct = np.convolve([1, -e(-1 / 3)], [1, -e(-1 / 5)])
    got = sa.expand(p)
    assert np.allclose(got, direct, atol=1e-14)
    assert abs(got[-1] - e(-(1 / 3 + 1 / 5))) < 1e-14
    assert got[0] == 1


def test_roots_examples():
    q = F(1, 3)
    r = sa.roots(sa.product([sa.make_factor(2, -q)]))
    assert {mu.angle for mu, _ in r.items} == {(-q + k) / 2 % 1 for k in range(2)}
    r = sa.roots(sa.product([sa.make_factor(1, F(0), 3)]))
    assert r.items == ((sa.UnitScalar.from_angle(0), 3),)
    r = sa.roots(sa.product([sa.make_factor(1, F(1, 4)), sa.make_factor(1, F(3, 4))]))
    assert r.count == 2


def test_compare_spectra():
    a = sa.spectrum_from_values([1j, -1j])
    assert sa.compare_spectra(a, a, 1e-6).max_distance == 0
    b = sa.spectrum_from_values([1j + 1e-8, -1j])
    rep = sa.compare_spectra(a, b, 1e-6)
    assert rep.passed and rep.max_distance == pytest.approx(1e-8, rel=1e-6)
    one = sa.SpectrumMultiset(((sa.UnitScalar.from_angle(0), 2),))
    rep = sa.compare_spectra(one, sa.spectrum_from_values([1, -1]), 1e-6)
    assert not rep.passed and rep.witness is not None
    rep = sa.compare_spectra(one, sa.spectrum_from_values([1]), 1e-6)
    assert not rep.passed and (rep.count_a, rep.count_b) == (2, 1)


factor_st = st.builds(
    sa.make_factor,
    st.integers(1, 4),
    st.builds(F, st.integers(-20, 20), st.integers(1, 11)),
    st.integers(1, 3),
)


@settings(max_examples=100, deadline=None)
@given(st.lists(factor_st, max_size=5), st.lists(factor_st, max_size=5))
def test_expand_properties(f1, f2):
    p, q, pq = sa.product(f1), sa.product(f2), sa.product(f1 + f2)
    coeffs = sa.expand(pq)
    assert len(coeffs) - 1 == pq.degree == sum(f.h * f.mult for f in f1 + f2)
    # float error grows with the coefficient size, which is up to 2^degree
    scale = float(np.sum(np.abs(coeffs)))
    assert np.max(np.abs(coeffs - np.convolve(sa.expand(p), sa.expand(q)))) <= 1e-12 * scale
    spec = sa.roots(pq)
    assert spec.count == pq.degree
    for z in spec.values():
        assert abs(abs(z) - 1) <= 1e-12
        assert abs(np.polyval(coeffs, z)) <= 1e-12 * scale


@given(st.lists(factor_st, max_size=5))
def test_serialization_round_trip(fs):
    p = sa.product(fs)
    assert sa.poly_from_list(sa.poly_to_list(p)) == p


def test_format_poly():
    assert sa.format_poly(sa.product([sa.make_factor(1, F(0), 9)])) == "(t − 1)^9"
    p = sa.product([sa.make_factor(1, F(-1, 3)), sa.make_factor(1, F(-1, 5))])
    assert sa.format_poly(p) == "(t − e(−1/3))^1 (t − e(−1/5))^1"
