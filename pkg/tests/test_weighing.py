import numpy as np
import pytest

from lcdring.code import FieldCode
from lcdring.construct import weighing_generator
from lcdring.errors import NotFound, NotSkew, NotWeighing, ParseError, WrongResidueClass
from lcdring.gf import field_for_q, quadratic_character_table
from lcdring.weighing import (
    WeighingMatrix,
    find_skew_circulant,
    find_skew_two_circulant,
    load_fixture,
    paley_conference,
    paley_hadamard,
    paley_skew_conference,
    read_weighing,
    skew_double,
    wm_validate,
    write_weighing,
)

W64 = [
    [0, 1, 1, 1, 1, 0],
    [-1, 0, 1, -1, 0, 1],
    [-1, -1, 0, 0, 1, -1],
    [-1, 1, 0, 0, -1, -1],
    [-1, 0, -1, 1, 0, 1],
    [0, -1, 1, 1, -1, 0],
]


def test_validate_examples():
    I = wm_validate(np.eye(4, dtype=int), 1)
    assert I.symmetric and not I.skew
    with pytest.raises(NotWeighing):
        wm_validate(np.ones((2, 2), dtype=int), 2)
    with pytest.raises(NotWeighing):
        wm_validate([[2]], 4)


def test_w64_fixture_is_skew():
    W = load_fixture("W6_4")
    assert W.skew and (W.n, W.k) == (6, 4)
    assert np.array_equal(W.entries @ W.entries.T, 4 * np.eye(6, dtype=int))


def test_paley_hadamard_examples():
    H4 = paley_hadamard(3)
    assert (H4.n, H4.k) == (4, 4) and (H4.entries[0] == 1).all()
    F3 = field_for_q(3)
    C = FieldCode(F3, weighing_generator(F3, 1, H4))
    assert (C.n, C.k, C.min_distance()[0]) == (8, 4, 4) and C.is_lcd()
    H8 = paley_hadamard(7)
    assert np.isin(H8.entries, (-1, 1)).all()
    with pytest.raises(WrongResidueClass):
        paley_hadamard(5)


def test_paley_conference_examples():
    for q in (5, 9, 13):
        Q = paley_conference(q)
        assert Q.symmetric and (Q.n, Q.k) == (q + 1, q) and not Q.entries.diagonal().any()
    # a different enumeration of F_9 still gives a symmetric conference matrix
    order = list(reversed(range(9)))
    assert paley_conference(9, order).symmetric
    with pytest.raises(WrongResidueClass):
        paley_conference(7)


def test_paley_skew_examples():
    for q in (3, 7, 11, 19):
        Q = paley_skew_conference(q)
        assert Q.skew and (Q.n, Q.k) == (q + 1, q)
    with pytest.raises(WrongResidueClass):
        paley_skew_conference(9)


def test_skew_double_examples():
    D = skew_double(WeighingMatrix(np.zeros((1, 1), dtype=np.int64), 0))
    assert np.array_equal(D.entries, [[0, -1], [1, 0]]) and D.k == 1
    W8 = skew_double(paley_skew_conference(3))
    assert W8.skew and (W8.n, W8.k) == (8, 7)
    W16 = skew_double(paley_skew_conference(7))
    assert W16.skew and (W16.n, W16.k) == (16, 15)
    with pytest.raises(NotSkew):
        skew_double(paley_conference(5))


def test_find_skew_circulant():
    assert np.array_equal(find_skew_circulant(1, 0).entries, [[0]])
    with pytest.raises(NotFound):
        find_skew_circulant(2, 2)
    # a skew matrix of odd order has zero determinant, so W W^t = 4 I is impossible
    with pytest.raises(NotFound):
        find_skew_circulant(7, 4)
    # even order forces the middle entry to vanish, capping the weight at n - 2
    with pytest.raises(NotFound):
        find_skew_circulant(4, 3)


def test_skew_two_circulant_w14_9():
    W = find_skew_two_circulant(7, 9)
    assert W.skew and (W.n, W.k) == (14, 9)
    assert W == load_fixture("W14_9")


def test_eta_minus_one_dichotomy():
    for q in (3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27):
        F = field_for_q(q)
        eta = quadratic_character_table(F)
        assert (eta[F.minus_one()] == -1) == (q % 4 == 3)


def test_read_write_round_trip(tmp_path):
    W = load_fixture("W6_4")
    path = tmp_path / "w.txt"
    path.write_text(write_weighing(W))
    assert read_weighing(str(path)) == W
    bad = tmp_path / "bad.txt"
    bad.write_text("2 2\n1 1\n")
    with pytest.raises(ParseError):
        read_weighing(str(bad))
