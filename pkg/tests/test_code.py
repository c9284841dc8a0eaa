import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from lcdring import matrix as mx
from lcdring.code import (
    FieldCode,
    RingCode,
    WeightDistribution,
    dual,
    format_code,
    hull_dim,
    macwilliams,
    min_distance,
    parse_code,
    weight_distribution,
)
from lcdring.construct import weighing_generator
from lcdring.cyclic import Poly, cyclic_code
from lcdring.errors import BudgetExceeded, EmptyCode, LengthMismatch, NonIntegralResult, ParseError
from lcdring.gf import field_for_q
from lcdring.ring import ring_new
from lcdring.weighing import load_fixture
from conftest import PROPERTY_CASES

F2, F3, F5 = field_for_q(2), field_for_q(3), field_for_q(5)
R3 = ring_new(3)
REP3 = FieldCode(F3, [[1, 1, 1]])


def test_dual_examples():
    assert dual(FieldCode(F3, mx.identity(4))).k == 0
    D = dual(REP3)
    assert D.k == 2 and D.same_code(FieldCode(F3, [[1, 2, 0], [0, 1, 2]]))
    golay = parse_code(_data("golay24.code"))
    assert golay.dual().same_code(golay)


def _data(name):
    from importlib import resources

    return resources.files("lcdring.data").joinpath(name).read_text()


def test_min_distance_examples():
    assert min_distance(REP3) == (3, True)
    # the [12,6] code of the bundled W(6,4): see the notes on the weight-4 words
    C = FieldCode(F3, weighing_generator(F3, 2, load_fixture("W6_4")))
    assert min_distance(C) == (oracles.min_distance(3, C.gen), True)
    H = FieldCode(F3, weighing_generator(F3, 2, load_fixture("H4")))
    assert min_distance(H) == (4, True)
    with pytest.raises(EmptyCode):
        FieldCode(F3, np.zeros((0, 3), dtype=np.int64)).min_distance()


def test_w64_code_has_weight_four_word():
    C = FieldCode(F3, weighing_generator(F3, 2, load_fixture("W6_4")))
    word = F3.matmul(np.array([[0, 0, 0, 1, 1, 0]]), C.gen)[0]
    assert np.count_nonzero(word) == 4


def test_weight_distribution_examples():
    assert weight_distribution(REP3).nonzero() == {0: 1, 3: 2}
    assert weight_distribution(dual(REP3)).nonzero() == {0: 1, 2: 6, 3: 2}
    assert FieldCode(F3, np.zeros((0, 4), dtype=np.int64)).weight_distribution().nonzero() == {0: 1}
    with pytest.raises(BudgetExceeded):
        FieldCode(F5, weighing_generator(F5, 1, load_fixture("W6_4"))).weight_distribution(budget=10)


def test_macwilliams_examples():
    W = WeightDistribution((1, 0, 0, 2))
    assert macwilliams(W, 3, 1, 3).counts == (1, 0, 6, 2)
    golay = parse_code(_data("golay24.code"))
    Wg = golay.weight_distribution()
    assert macwilliams(Wg, 24, 12, 2) == Wg
    full = WeightDistribution((1, 6, 12, 8))  # F_3^3
    assert macwilliams(full, 3, 3, 3).counts == (1, 0, 0, 0)
    with pytest.raises(NonIntegralResult):
        macwilliams(WeightDistribution((1, 1, 0, 0)), 3, 1, 3)


def test_hull_examples():
    assert hull_dim(FieldCode(F3, mx.identity(3))) == 0
    golay = parse_code(_data("golay24.code"))
    assert hull_dim(golay) == 12 and golay.is_self_dual() and not golay.is_lcd()
    C = FieldCode(F3, weighing_generator(F3, 2, load_fixture("W6_4")))
    assert hull_dim(C) == 0


def test_cyclic_hamming_code_not_lcd():
    C = cyclic_code(Poly.of(F2, [1, 1, 0, 1]), 7)
    assert C.k == 4 and not C.is_lcd() and C.hull_dim() > 0


def test_formally_self_dual_examples():
    assert parse_code(_data("golay24.code")).is_formally_self_dual()
    assert not REP3.is_formally_self_dual()


def test_worker_count_does_not_change_results():
    C = FieldCode(F5, weighing_generator(F5, 2, load_fixture("W6_4")))
    a = C.enumerator().scan(workers=1)
    b = C.enumerator().scan(workers=3)
    assert a.min_weight == b.min_weight and np.array_equal(a.hist, b.hist)


def test_budget_truncation_gives_upper_bound():
    C = FieldCode(F5, weighing_generator(F5, 2, load_fixture("W6_4")))
    d_exact, exact = C.min_distance()
    d_bound, exact_b = C.min_distance(budget=50)
    assert exact and not exact_b and d_bound >= d_exact


def test_code_file_round_trip():
    C = FieldCode(F3, weighing_generator(F3, 2, load_fixture("H4")))
    assert parse_code(format_code(C)).same_code(C)
    with pytest.raises(ParseError):
        parse_code("code 3\n1 1\n1\n")


# -- codes over R --


def lift(C):
    return RingCode.from_components(R3, C, C, C)


def test_ring_code_components_and_dual():
    C = FieldCode(F3, [[1, 1, 0], [0, 1, 2]])
    X = lift(C)
    assert all(Ci.same_code(C) for Ci in X.components)
    assert X.dual().same_code(lift(C.dual()))
    full = RingCode(R3, mx.rmat_identity(R3, 3))
    assert full.dual().log_q_size == 0
    with pytest.raises(LengthMismatch):
        RingCode.from_components(R3, C, C, FieldCode(F3, [[1, 1]]))


def test_eta1_only_code():
    e1 = R3.idempotents()[0].triple
    G = np.array([[e1, np.zeros(3, dtype=np.int64)]])
    X = RingCode(R3, G)
    assert X.ks == (1, 0, 0)


def test_round_trip_from_components():
    G = np.array([[R3.parse("1+v").triple, R3.parse("v^2").triple, R3.one.triple]])
    X = RingCode(R3, G)
    assert RingCode.from_components(R3, *X.components).same_code(X)


def test_lcd_of_lifts():
    lcd = FieldCode(F3, weighing_generator(F3, 2, load_fixture("H4")))
    assert lift(lcd).is_lcd()
    sd = FieldCode(F3, [[1, 1, 1, 0], [0, 1, 2, 1]])
    assert sd.is_self_dual()
    assert not lift(sd).is_lcd() and lift(sd).is_self_dual()


def test_gray_image_of_lift():
    C = FieldCode(F3, weighing_generator(F3, 2, load_fixture("H4")))
    g = lift(C).gray_image()
    assert (g.n, g.k) == (24, 12) and g.min_distance() == (4, True)
    assert lift(C).min_lee() == (4, True)


def test_zero_ring_code_has_no_distance():
    Z = RingCode(R3, np.zeros((0, 3, 3), dtype=np.int64), 3)
    with pytest.raises(EmptyCode):
        Z.min_lee()
    with pytest.raises(EmptyCode):
        Z.min_hamming()


def _ring_span(R, G):
    """All R-combinations of the rows of G, by brute force over R^k."""
    k = G.shape[0]
    elems = np.array([e.triple for e in R.elements()])
    out = set()
    for coeffs in np.array(np.meshgrid(*[np.arange(len(elems))] * k)).T.reshape(-1, k):
        acc = np.zeros(G.shape[1:], dtype=np.int64)
        for c, row in zip(coeffs, G):
            acc = R.add(acc, R.mul(elems[c], row))
        out.add(acc.tobytes())
    return [np.frombuffer(b, dtype=np.int64).reshape(G.shape[1:]) for b in out]


def test_ring_dual_exhaustive_orthogonality_n2():
    G = np.array([[R3.parse("1+v").triple, R3.parse("v^2").triple]])
    X = RingCode(R3, G)
    words = _ring_span(R3, G)
    assert len(words) == X.size
    dual_words = _ring_span(R3, X.dual().gen)
    assert len(dual_words) == X.dual().size
    for a in words:
        for b in dual_words:
            ip = R3.zero.triple
            for x, y in zip(a, b):
                ip = R3.add(ip, R3.mul(x, y))
            assert not np.any(ip)
    # the dual is the full orthogonal complement: sizes multiply to |R|^n
    assert X.size * X.dual().size == 27**2


def test_hamming_distribution_brute_force():
    G = np.array([[R3.parse("1+v").triple, R3.parse("v^2").triple, R3.one.triple]])
    X = RingCode(R3, G)
    words = _ring_span(R3, G)
    hist = np.bincount([sum(1 for e in w if e.any()) for w in words], minlength=4).tolist()
    assert list(X.hamming_distribution().counts) == hist
    lee = np.bincount([int(np.count_nonzero(R3.gray(w))) for w in words], minlength=10).tolist()
    assert list(X.lee_distribution().counts) == lee


# -- properties --


@st.composite
def prime_codes(draw, qs=(3, 5), max_n=8, max_k=4):
    p = draw(st.sampled_from(qs))
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(1, min(max_k, n)))
    G = np.array(draw(st.lists(st.integers(0, p - 1), min_size=n * k, max_size=n * k)), dtype=np.int64)
    return p, G.reshape(k, n)


@settings(max_examples=PROPERTY_CASES)
@given(prime_codes())
def test_macwilliams_matches_brute_force_dual(t):
    p, G = t
    C = FieldCode(field_for_q(p), G)
    W = C.weight_distribution()
    assert list(W.counts) == oracles.weight_hist(oracles.codewords(p, G), C.n)
    expected = oracles.weight_hist(oracles.dual_words(p, G), C.n)
    assert list(macwilliams(W, C.n, C.k, p).counts) == expected
    assert list(C.dual().weight_distribution().counts) == expected


@settings(max_examples=PROPERTY_CASES)
@given(prime_codes(max_n=10, max_k=5))
def test_lcd_hull_oracle_agreement(t):
    p, G = t
    C = FieldCode(field_for_q(p), G)
    assert C.k == oracles.rank_mod_p(p, G)
    assert C.is_lcd() == oracles.is_lcd(p, G)  # hull_dim checks its two routes internally
    assert C.dual().dual().same_code(C)
    if C.k:
        assert C.min_distance()[0] == oracles.min_distance(p, G)


@st.composite
def small_ring_codes(draw, free=False):
    n = draw(st.integers(1, 4))
    k = draw(st.integers(1, min(2, n)))
    vals = draw(st.lists(st.integers(0, 2), min_size=3 * n * k, max_size=3 * n * k))
    G = np.array(vals, dtype=np.int64).reshape(k, n, 3)
    if free:
        # systematic generators [I | B] are free bases
        B = G[:, : n - k] if n > k else G[:, :0]
        G = np.concatenate([mx.rmat_identity(R3, k), B], axis=1)
    return G


@settings(max_examples=PROPERTY_CASES)
@given(small_ring_codes())
def test_gray_dual_and_distance_identities(G):
    X = RingCode(R3, G)
    g = X.gray_image()
    assert g.k == X.log_q_size
    assert X.dual().gray_image().same_code(g.dual())
    if X.log_q_size:
        d_gray = g.min_distance()
        d_comp = min(C.min_distance()[0] for C in X.components if C.k)
        assert d_gray == (d_comp, True) == X.min_lee()


@settings(max_examples=PROPERTY_CASES)
@given(small_ring_codes(free=True))
def test_ring_lcd_routes_agree(G):
    X = RingCode(R3, G)
    assert X.gen_is_free_basis
    routes = X.lcd_routes()
    assert routes["components"] == routes["gram"]
