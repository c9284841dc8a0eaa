from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lcdring.code import FieldCode
from lcdring.cyclic import (
    Poly,
    bch_bound,
    cyclic_code,
    cyclic_criterion,
    cyclic_dual_generator,
    cyclic_is_lcd,
    format_poly,
    is_self_reciprocal,
    is_self_reciprocal_up_to_scalar,
    mds_distance,
    mds_expected,
    mds_lcd_generator,
    mds_mu_range,
    monic_divisors,
    parse_poly,
    poly_gcd,
    r_cyclic_code,
    r_cyclic_criterion,
    reciprocal,
)
from lcdring.errors import DivisionByZeroPoly, MuOutOfRange, NotADivisor, OracleDisagreement, ZeroPolynomial
from lcdring.gf import field_for_q
from lcdring.ring import ring_new
from conftest import PROPERTY_CASES

F2, F3, F5 = field_for_q(2), field_for_q(3), field_for_q(5)


def P(F, *c):
    return Poly.of(F, c)


def test_poly_arithmetic():
    assert P(F3, -1, 1) * P(F3, 1, 1, 1) == Poly.x_pow_minus_one(F3, 3)
    assert divmod(Poly.x_pow_minus_one(F3, 3), P(F3, -1, 1)) == (P(F3, 1, 1, 1), Poly(F3, ()))
    assert poly_gcd(P(F5, -1, 0, 1), P(F5, -1, 1)) == P(F5, -1, 1)
    assert P(F5, 1, 2, 3).eval(2) == (1 + 4 + 12) % 5
    assert Poly(F3, ()).degree == float("-inf")
    with pytest.raises(DivisionByZeroPoly):
        divmod(P(F3, 1, 1), Poly(F3, ()))
    assert parse_poly(F3, format_poly(P(F3, 2, 0, 1))) == P(F3, 2, 0, 1)


def test_reciprocal_examples():
    assert reciprocal(P(F3, 1, 2, 0, 1)) == P(F3, 1, 0, 2, 1)
    assert reciprocal(P(F3, 1, 1, 1)) == P(F3, 1, 1, 1)
    assert reciprocal(P(F3, 0, 1)) == P(F3, 1)
    with pytest.raises(ZeroPolynomial):
        reciprocal(Poly(F3, ()))


def test_strict_and_scaled_self_reciprocity():
    assert is_self_reciprocal(P(F3, 1, 1, 1))
    assert not is_self_reciprocal(P(F3, -1, 1))
    assert is_self_reciprocal_up_to_scalar(P(F3, -1, 1))
    assert is_self_reciprocal(P(F3, 1, 1))


def test_cyclic_code_examples():
    C = cyclic_code(P(F3, -1, 1), 3)
    assert (C.n, C.k) == (3, 2) and C.same_code(FieldCode(F3, [[1, 2, 0], [0, 1, 2]]))
    assert cyclic_code(P(F3, 1), 4).k == 4
    assert cyclic_code(Poly.x_pow_minus_one(F3, 4), 4).k == 0
    with pytest.raises(NotADivisor):
        cyclic_code(P(F3, 1, 0, 1), 3)


def test_dual_generator_examples():
    f = P(F3, -1, 1)
    h = cyclic_dual_generator(f, 3)
    assert h == P(F3, 1, 1, 1)
    assert cyclic_code(h, 3).same_code(FieldCode(F3, [[1, 1, 1]]))
    assert cyclic_dual_generator(P(F3, 1), 3) == Poly.x_pow_minus_one(F3, 3)
    assert cyclic_dual_generator(Poly.x_pow_minus_one(F3, 3), 3) == P(F3, 1)


def test_repeated_root_criterion_fails():
    # x - 1 for n = 3 over F_3 is self-reciprocal up to sign, but the all-ones
    # word lies in both the code and its dual, so the code is not LCD.
    f = P(F3, -1, 1)
    assert cyclic_criterion(f, 3)
    assert cyclic_code(f, 3).hull_dim() == 1
    assert cyclic_is_lcd(f, 3) is False


def test_cyclic_lcd_examples():
    ham = P(F2, 1, 1, 0, 1)
    assert not cyclic_criterion(ham, 7)
    assert cyclic_is_lcd(ham, 7) is False
    assert cyclic_is_lcd(Poly.x_pow_minus_one(F3, 4), 4)


@pytest.mark.parametrize("q", [3, 5])
@pytest.mark.parametrize("n", range(3, 9))
def test_criterion_matches_hull_for_coprime_lengths(q, n):
    F = field_for_q(q)
    for f in monic_divisors(F, n):
        hull = cyclic_code(f, n).hull_dim() == 0
        if gcd(n, q) == 1:
            assert cyclic_criterion(f, n) == hull == cyclic_is_lcd(f, n)
        else:
            assert cyclic_is_lcd(f, n) == hull  # the hull verdict wins for repeated roots


def test_monic_divisors_multiply_out():
    for f in monic_divisors(F5, 4):
        assert f.divides(Poly.x_pow_minus_one(F5, 4))
    assert len(monic_divisors(F5, 4)) == 16  # four distinct linear factors


def test_dual_generator_matches_nullspace_dual():
    for q, n in [(3, 4), (3, 8), (5, 6), (5, 4)]:
        F = field_for_q(q)
        for f in monic_divisors(F, n):
            assert cyclic_code(cyclic_dual_generator(f, n), n).same_code(cyclic_code(f, n).dual())


def test_r_cyclic_code_examples():
    R = ring_new(3)
    one, xm1 = P(F3, 1), Poly.x_pow_minus_one(F3, 3)
    assert r_cyclic_code(R, one, one, one, 3).log_q_size == 9
    C = r_cyclic_code(R, P(F3, -1, 1), one, xm1, 3)
    assert C.log_q_size == 5 and C.size == 3**5


def test_r_cyclic_lcd_for_coprime_length():
    R = ring_new(3)
    ds = monic_divisors(F3, 4)
    for f1 in ds:
        for f2 in ds[::3]:
            for f3 in ds[::5]:
                C = r_cyclic_code(R, f1, f2, f3, 4)
                assert C.is_lcd() == r_cyclic_criterion(f1, f2, f3, 4)


@pytest.mark.parametrize("n", [3, 4, 6])
def test_no_self_dual_cyclic_ring_code(n):
    R = ring_new(3)
    ds = monic_divisors(F3, n)
    for f1 in ds:
        for f2 in ds:
            for f3 in ds:
                assert not r_cyclic_code(R, f1, f2, f3, n).is_self_dual()


def test_mds_examples():
    for q, mu, params in [(5, 1, (6, 3, 4)), (5, 2, (6, 1, 6)), (4, 1, (5, 1, 5)), (7, 2, (8, 3, 6))]:
        g, C = mds_lcd_generator(q, mu)
        d, exact, _ = mds_distance(q, mu)
        assert (C.n, C.k, d) == params == mds_expected(q, mu) and exact
        assert C.is_lcd() and is_self_reciprocal_up_to_scalar(g)
        assert g.divides(Poly.x_pow_minus_one(g.F, q + 1))
    with pytest.raises(MuOutOfRange):
        mds_lcd_generator(5, 3)
    with pytest.raises(MuOutOfRange):
        mds_lcd_generator(4, 2)


def test_mds_large_case_certified_by_bch():
    d, exact, how = mds_distance(25, 2, budget=10**4)
    assert (d, exact, how) == (6, True, "bch+singleton")
    assert bch_bound([0, 1, 2, 5], 7) == 4


@st.composite
def nonzero_polys(draw, q=5, max_deg=6):
    F = field_for_q(q)
    c = draw(st.lists(st.integers(0, q - 1), min_size=1, max_size=max_deg + 1))
    f = Poly.of(F, c)
    if f.is_zero():
        f = Poly.of(F, [1])
    return f


@settings(max_examples=PROPERTY_CASES)
@given(nonzero_polys(), nonzero_polys())
def test_reciprocal_properties(f, g):
    if f.coeffs[0]:
        assert reciprocal(reciprocal(f)) == f
    assert reciprocal(f * g) == reciprocal(f) * reciprocal(g)
    qt, r = divmod(f, g)
    assert qt * g + r == f and (r.is_zero() or r.degree < g.degree)
