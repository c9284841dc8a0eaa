"""Weighing, Hadamard and conference matrices.

Matrices stay as signed integer arrays; they are reduced into a field only
when a code is built from them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .errors import NotFound, NotSkew, NotWeighing, WrongResidueClass, ParseError
from .gf import Field, field_for_q, quadratic_character_table
from .matrix import parse_matrix, format_matrix


@dataclass(frozen=True, eq=False)
class WeighingMatrix:
    entries: np.ndarray
    k: int
    name: str = field(default="", compare=False)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def symmetric(self) -> bool:
        return bool(np.array_equal(self.entries, self.entries.T))

    @property
    def skew(self) -> bool:
        return bool(np.array_equal(self.entries, -self.entries.T))

    def __repr__(self):
        tag = " skew" if self.skew else (" symmetric" if self.symmetric else "")
        return f"W({self.n},{self.k}){tag}"

    def __eq__(self, other):
        return isinstance(other, WeighingMatrix) and self.k == other.k and np.array_equal(self.entries, other.entries)

    __hash__ = None

    def to_field(self, F: Field) -> np.ndarray:
        return F.from_signed(self.entries)


def wm_validate(entries, k: int, name: str = "") -> WeighingMatrix:
    """Check W W^t = k I over the integers and wrap the matrix."""
    W = np.array(entries, dtype=np.int64)
    if W.ndim != 2 or W.shape[0] != W.shape[1]:
        raise NotWeighing(f"not a square matrix: shape {W.shape}")
    if not np.isin(W, (-1, 0, 1)).all():
        raise NotWeighing("entries outside {-1, 0, 1}")
    gram = W @ W.T
    expected = k * np.eye(W.shape[0], dtype=np.int64)
    bad = np.argwhere(gram != expected)
    if bad.size:
        i, j = (int(x) for x in bad[0])
        raise NotWeighing(f"row {i} . row {j} = {int(gram[i, j])}, expected {int(expected[i, j])}")
    return WeighingMatrix(W, k, name)


def _paley_core(q: int, order: list[int] | None = None) -> tuple[np.ndarray, Field]:
    """b_ij = eta(x_j - x_i) over a fixed enumeration x_1..x_q of F_q."""
    F = field_for_q(q)
    if F.p == 2:
        raise WrongResidueClass("Paley constructions need odd q")
    xs = np.arange(F.q) if order is None else np.asarray(order)
    eta = quadratic_character_table(F)
    diff = F.sub(xs[None, :], xs[:, None])
    return eta[diff], F


def paley_hadamard(q: int, order: list[int] | None = None) -> WeighingMatrix:
    if q % 4 != 3:
        raise WrongResidueClass(f"q = {q} is not 3 mod 4")
    B, _ = _paley_core(q, order)
    H = np.ones((q + 1, q + 1), dtype=np.int64)
    H[1:, 1:] = B - np.eye(q, dtype=np.int64)
    return wm_validate(H, q + 1, f"H{q + 1} (Paley, q={q})")


def paley_conference(q: int, order: list[int] | None = None) -> WeighingMatrix:
    """Symmetric conference matrix W(q+1, q) for q = 1 mod 4."""
    if q % 4 != 1:
        raise WrongResidueClass(f"q = {q} is not 1 mod 4")
    B, _ = _paley_core(q, order)
    Q = np.zeros((q + 1, q + 1), dtype=np.int64)
    Q[0, 1:] = 1
    Q[1:, 0] = 1
    Q[1:, 1:] = B
    return wm_validate(Q, q, f"W{q + 1},{q} (symmetric Paley, q={q})")


def paley_skew_conference(q: int, order: list[int] | None = None) -> WeighingMatrix:
    """Skew conference matrix W(q+1, q) for q = 3 mod 4."""
    if q % 4 != 3:
        raise WrongResidueClass(f"q = {q} is not 3 mod 4")
    B, _ = _paley_core(q, order)
    Q = np.zeros((q + 1, q + 1), dtype=np.int64)
    Q[0, 1:] = 1
    Q[1:, 0] = -1
    Q[1:, 1:] = B
    return wm_validate(Q, q, f"W{q + 1},{q} (skew Paley, q={q})")


def skew_double(W: WeighingMatrix) -> WeighingMatrix:
    """Skew W(2n, 2k+1) from a skew W(n, k): [[W, -W-I], [I-W, -W]]."""
    if not W.skew:
        raise NotSkew(f"{W} is not skew")
    A = W.entries
    I = np.eye(W.n, dtype=np.int64)
    # lower row [W+I, W] would leave 2W in the off-diagonal block of D D^t
    D = np.block([[A, -A - I], [I - A, -A]])
    out = wm_validate(D, 2 * W.k + 1, f"W{2 * W.n},{2 * W.k + 1} (doubled {W.name or W})")
    assert out.skew
    return out


def circulant(first_row) -> np.ndarray:
    row = np.asarray(first_row, dtype=np.int64)
    return np.array([np.roll(row, i) for i in range(row.size)], dtype=np.int64)


def find_skew_circulant(n: int, k: int) -> WeighingMatrix:
    """First skew circulant W(n, k) in lexicographic order of first rows over (-1, 0, 1)."""
    if n > 16:
        raise ValueError("circulant search is limited to n <= 16")
    for row in itertools.product((-1, 0, 1), repeat=n):
        if row[0] != 0 or sum(x != 0 for x in row) != k:
            continue
        # skew circulant: r_{n-j} = -r_j
        if any(row[(n - j) % n] != -row[j] for j in range(1, n)):
            continue
        W = circulant(row)
        if np.array_equal(W @ W.T, k * np.eye(n, dtype=np.int64)):
            return WeighingMatrix(W, k, f"W{n},{k} (skew circulant)")
    raise NotFound(f"no skew circulant W({n},{k})")


def find_skew_two_circulant(m: int, k: int) -> WeighingMatrix:
    """First skew W(2m, k) of the form [[A, B], [-B^t, A^t]] with A skew circulant
    and B circulant, scanning (A, B) first rows lexicographically over (-1, 0, 1).

    Circulants commute, so the off-diagonal blocks of D D^t vanish and the
    search only needs A A^t + B B^t = k I.
    """
    if m > 8:
        raise ValueError("two-circulant search is limited to m <= 8")
    half = (m - 1) // 2
    I = np.eye(m, dtype=np.int64)
    for a_half in itertools.product((-1, 0, 1), repeat=half):
        a = [0] * m
        for j, x in enumerate(a_half, start=1):
            a[j], a[m - j] = x, -x
        if m % 2 == 0 and m > 1:
            a[m // 2] = 0  # r_{m/2} = -r_{m/2}
        A = circulant(a)
        wa = sum(x != 0 for x in a)
        if wa > k:
            continue
        AA = A @ A.T
        for b in itertools.product((-1, 0, 1), repeat=m):
            if wa + sum(x != 0 for x in b) != k:
                continue
            B = circulant(b)
            if np.array_equal(AA + B @ B.T, k * I):
                D = np.block([[A, B], [-B.T, A.T]])
                out = wm_validate(D, k, f"W{2 * m},{k} (skew two-circulant)")
                assert out.skew
                return out
    raise NotFound(f"no skew two-circulant W({2 * m},{k})")


# -- bundled fixtures --


def load_fixture(name: str) -> WeighingMatrix:
    """Load and validate a bundled matrix, e.g. ``"W6_4"``."""
    text = resources.files("lcdring.data").joinpath(f"{name}.txt").read_text()
    W = parse_matrix(text, None)
    k = int(np.count_nonzero(W[0]))
    out = wm_validate(W, k, name)
    return out


def read_weighing(path: str) -> WeighingMatrix:
    with open(path) as fh:
        W = parse_matrix(fh.read(), None)
    if W.size == 0:
        raise ParseError("empty matrix")
    return wm_validate(W, int(np.count_nonzero(W[0])), path)


def write_weighing(W: WeighingMatrix) -> str:
    return format_matrix(W.entries)
