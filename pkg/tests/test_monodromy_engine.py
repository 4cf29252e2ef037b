import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ahg import lattice_geometry as lg
from ahg import monodromy_engine as me
from ahg import spectral_algebra as sa

from conftest import configurations, unimodular

SQUARE = [(1, 0), (0, 1), (1, 1)]
INTERIOR = [(3, 0), (0, 3), (1, 1)]


def poly(*factors):
    return sa.product([sa.make_factor(h, F(q), m) for h, q, m in factors])


def test_validate_configuration():
    assert me.validate_configuration(SQUARE).ok
    rep = me.validate_configuration(INTERIOR)
    assert not rep.ok and rep.divisors == (1, 3) and rep.dim == 2
    assert "does not generate" in rep.message
    rep = me.validate_configuration([(2,)])
    assert not rep.ok and rep.divisors == (2,)
    rep = me.validate_configuration([(1, 0), (2, 0)])
    assert not rep.ok and rep.dim == 1


def test_configuration_errors():
    with pytest.raises(IndexError):
        me.as_configuration(SQUARE).point(4)
    with pytest.raises(IndexError):
        me.as_configuration(SQUARE).point(0)
    with pytest.raises(me.InvalidConfigurationError):
        me.monodromy_at_infinity([(1, 0), (2, 0)], (F(1, 3), F(1, 5)), 1)
    with pytest.raises(ValueError):
        me.monodromy_at_infinity(SQUARE, (F(1, 3), F(1, 5)), 1, orientation="up")


def test_nonresonance_examples():
    v = me.check_nonresonance(SQUARE, (F(1), F(1, 2)))
    assert v.status == "resonant"
    assert [(w.facet, w.conormal) for w in v.witnesses] == [(((0, 0), (0, 1)), (1, 0))]
    assert me.check_nonresonance(SQUARE, (F(1, 3), F(1, 5))).status == "non-resonant"
    assert me.check_nonresonance([(1,)], (F(1, 2),)).status == "non-resonant"
    assert me.check_nonresonance([(1,)], (F(3),)).status == "resonant"
    # a point with the origin in the interior has no facet through 0
    assert me.check_nonresonance([(1,), (-1,)], (F(0),)).status == "non-resonant"
    with pytest.raises(ValueError):
        me.check_nonresonance(SQUARE, (F(1, 3),))


def test_nonresonance_float_band():
    assert me.check_nonresonance(SQUARE, (1 / 3, 0.2)).status == "non-resonant"
    assert me.check_nonresonance(SQUARE, (1 / 3, 1 - 5e-7)).status == "near-integer-warning"
    assert me.check_nonresonance(SQUARE, (1 / 3, 1 + 1e-10)).status == "resonant"


def test_relevant_facet_data():
    contrib = me.relevant_facet_data(SQUARE, 3)
    assert len(contrib) == 2
    for c in contrib:
        assert c.delta_hat_volume == 1
        assert [(t.height, t.gamma_hat_volume) for t in c.terms] == [(1, 1)]
    assert {t.conormal for c in contrib for t in c.terms} == {(1, 0), (0, 1)}
    assert me.relevant_facet_data(INTERIOR, 3) == []
    (c,) = me.relevant_facet_data([(1,), (2,)], 2)
    assert c.delta_hat_volume == 2
    (t,) = c.terms
    assert t.face.is_empty and t.height == 2 and t.conormal == (1,)


@pytest.mark.parametrize(
    "A, c, j0, expected",
    [
        (SQUARE, (F(1, 3), F(1, 5)), 3, poly((1, F(-1, 3), 1), (1, F(-1, 5), 1))),
        (SQUARE, (F(1, 3), F(1, 5)), 1, poly((1, 0, 1), (1, F(-2, 15), 1))),
        (SQUARE, (F(1, 3), F(1, 5)), 2, poly((1, 0, 1), (1, F(2, 15), 1))),
        (INTERIOR, (F(1, 3), F(1, 5)), 3, poly((1, 0, 9))),
        ([(1,)], (F(1, 2),), 1, poly((1, F(1, 2), 1))),
        ([(1,), (2,)], (F(1, 3),), 2, poly((2, F(-1, 3), 1))),
        ([(1,), (2,)], (F(1, 3),), 1, poly((1, 0, 2))),  # 1 is interior to [0, 2]
    ],
)
def test_monodromy_examples(A, c, j0, expected):
    rep = me.monodromy_at_infinity(A, c, j0)
    assert rep.char_poly == expected
    assert rep.degree == rep.volume


def test_interior_flags_hypotheses():
    rep = me.monodromy_at_infinity(INTERIOR, (F(1, 3), F(1, 5)), 3)
    assert not rep.theorem_hypotheses_met and rep.lattice_divisors == (1, 3)
    assert rep.t_minus_one_exponent == 9


def test_point_at_origin_gives_trivial_loop():
    rep = me.monodromy_at_infinity([(0, 0), (1, 0), (0, 1)], (F(1, 3), F(1, 5)), 1)
    assert rep.char_poly == poly((1, 0, 1))


def test_float_mode_matches_exact():
    ex = me.monodromy_at_infinity(SQUARE, (F(1, 3), F(1, 5)), 3)
    fl = me.monodromy_at_infinity(SQUARE, (1 / 3, 0.2), 3)
    a = sorted(sa.roots(ex.char_poly).values(), key=lambda z: (z.real, z.imag))
    b = sorted(sa.roots(fl.char_poly).values(), key=lambda z: (z.real, z.imag))
    assert max(abs(x - y) for x, y in zip(a, b)) < 1e-12


@settings(max_examples=60, deadline=None)
@given(configurations())
def test_degree_and_remainder(case):
    A, c = case
    vol = lg.normalized_volume(A.delta())
    for rep in me.all_reports(A, c):
        assert rep.degree == vol
        assert rep.t_minus_one_exponent >= 0
        for contrib in rep.contributions:
            assert sum(t.height * t.gamma_hat_volume for t in contrib.terms) == contrib.delta_hat_volume


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(configurations(n=n), unimodular(n))))
def test_unimodular_equivariance(case):
    (A, c), U = case
    for j0 in range(1, A.N + 1):
        a = me.monodromy_at_infinity(A, c, j0).char_poly
        b = me.monodromy_at_infinity(A.transformed(U), c.transformed(U), j0).char_poly
        assert a == b


@settings(max_examples=40, deadline=None)
@given(configurations(), st.integers(0, 2**32 - 1))
def test_ordering_independence(case, seed):
    A, c = case
    perm = list(range(A.N))
    random.Random(seed).shuffle(perm)
    B = me.PointConfiguration(tuple(A.points[k] for k in perm))
    for new, old in enumerate(perm, start=1):
        assert me.monodromy_at_infinity(B, c, new).char_poly == me.monodromy_at_infinity(A, c, old + 1).char_poly


@settings(max_examples=40, deadline=None)
@given(configurations())
def test_clockwise_is_conjugate(case):
    A, c = case
    for j0 in range(1, A.N + 1):
        ccw = me.monodromy_at_infinity(A, c, j0).char_poly
        assert me.monodromy_at_infinity(A, c, j0, orientation="cw").char_poly == ccw.conjugate()
