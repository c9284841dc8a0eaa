import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lcdring.errors import (
    DivisionByZero,
    EvenCharacteristic,
    MissingModulus,
    NonPrimeCharacteristic,
    OrderDoesNotDivide,
    ParseError,
    ReducibleModulus,
)
from lcdring.gf import (
    DEFAULT_MODULI,
    element_of_order,
    field_for_q,
    field_new,
    format_field,
    multiplicative_order,
    parse_field,
    quadratic_character,
    quadratic_character_table,
    subfield_embedding,
)
from conftest import PROPERTY_CASES

FIELDS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49]


def test_prime_field():
    F = field_new(3, 1)
    assert (F.p, F.r, F.q) == (3, 1, 3)


def test_f9_from_x2_plus_1():
    F = field_new(3, 2, (1, 0, 1))
    assert F.q == 9
    x = F((0, 1))
    assert int(x * x) == 2  # x^2 = -1 = 2


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulus):
        field_new(5, 2, (1, 0, 1))  # 2^2 = -1 mod 5


def test_non_prime_and_missing_modulus():
    with pytest.raises(NonPrimeCharacteristic):
        field_new(6, 1)
    with pytest.raises(MissingModulus):
        field_new(3, 7)


def test_inverse_in_f5():
    F = field_new(5)
    assert int(F(2).inv()) == 3
    with pytest.raises(DivisionByZero):
        F(0).inv()


def test_default_moduli_irreducible_and_sized():
    for q, mod in DEFAULT_MODULI.items():
        F = field_for_q(q)
        assert F.q == q and len(mod) == F.r + 1


def test_quadratic_character_examples():
    F5 = field_new(5)
    assert quadratic_character(F5(0)) == 0
    assert quadratic_character(F5(2)) == -1
    for q in (3, 5, 9, 25):
        assert quadratic_character(field_for_q(q)(1)) == 1
    with pytest.raises(EvenCharacteristic):
        quadratic_character(field_for_q(4)(1))


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13, 25, 27, 49])
def test_quadratic_character_counts_and_minus_one(q):
    F = field_for_q(q)
    eta = quadratic_character_table(F)
    assert eta[0] == 0
    assert (eta == 1).sum() == (q - 1) // 2
    squares = {int(F.mul(x, x)) for x in range(1, q)}
    for x in range(1, q):
        assert (eta[x] == 1) == (x in squares)
    # eta(-1) = -1 exactly when q = 3 mod 4
    assert (eta[F.minus_one()] == -1) == (q % 4 == 3)


def test_element_of_order():
    F5 = field_new(5)
    assert int(element_of_order(F5, 4)) == 2
    assert int(element_of_order(F5, 1)) == 1
    F25 = field_for_q(25)
    x = element_of_order(F25, 6)
    assert int(x**6) == 1 and int(x**3) != 1 and int(x**2) != 1
    with pytest.raises(OrderDoesNotDivide):
        element_of_order(F5, 3)


def test_field_spec_strings():
    assert parse_field("3").q == 3
    F = parse_field("3^2:1,0,1")
    assert F.q == 9 and format_field(F) == "3^2:1,0,1"
    assert parse_field("3^2:1,0").q == 9  # leading 1 implied
    assert parse_field("3^2").q == 9
    with pytest.raises(ParseError):
        parse_field("three")


def test_subfield_embedding_is_a_homomorphism():
    K, L = field_for_q(4), field_for_q(16)
    emb = subfield_embedding(K, L)
    for a in range(4):
        for b in range(4):
            assert emb[int(K.add(a, b))] == int(L.add(emb[a], emb[b]))
            assert emb[int(K.mul(a, b))] == int(L.mul(emb[a], emb[b]))


@st.composite
def field_triples(draw):
    F = field_for_q(draw(st.sampled_from(FIELDS)))
    a, b, c = (draw(st.integers(0, F.q - 1)) for _ in range(3))
    return F, F(a), F(b), F(c)


@settings(max_examples=PROPERTY_CASES)
@given(field_triples())
def test_field_axioms(t):
    F, a, b, c = t
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == F(0) and a + (-a) == F(0)
    assert a ** F.q == a
    if int(a):
        assert a * a.inv() == F(1)
        assert a ** (F.q - 1) == F(1)


@settings(max_examples=PROPERTY_CASES)
@given(st.sampled_from([3, 5, 7, 9, 11, 25, 27]), st.data())
def test_quadratic_character_multiplicative(q, data):
    F = field_for_q(q)
    x = F(data.draw(st.integers(1, q - 1)))
    y = F(data.draw(st.integers(1, q - 1)))
    assert quadratic_character(x * y) == quadratic_character(x) * quadratic_character(y)


def test_vectorised_ops_match_scalar():
    F = field_for_q(9)
    a = np.arange(9)
    for b in range(9):
        assert list(F.mul(a, b)) == [int(F(x) * F(b)) for x in range(9)]
    assert multiplicative_order(F, 1) == 1
