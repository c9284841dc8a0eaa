"""Exact arithmetic in small finite fields F_{p^r}.

Elements are encoded as integers 0..q-1: the integer t stands for the
polynomial sum(d_i x^i) where d_i are the base-p digits of t.  Prime
fields therefore use the residues themselves.  Vectorised operations
accept numpy integer arrays of encoded elements; extension fields go
through precomputed addition/multiplication tables.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DivisionByZero,
    EvenCharacteristic,
    MissingModulus,
    MixedFields,
    NonPrimeCharacteristic,
    OrderDoesNotDivide,
    ParseError,
    ReducibleModulus,
)

# low-to-high coefficients, monic
DEFAULT_MODULI: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (1, 0, 1),
    16: (1, 1, 0, 0, 1),
    25: (2, 0, 1),
    27: (1, 2, 0, 1),
    49: (1, 0, 1),
    121: (1, 0, 1),
    169: (2, 0, 1),
    # quadratic extensions of F_8, F_9, F_16 and F_25
    64: (1, 1, 0, 0, 0, 0, 1),
    81: (2, 1, 0, 0, 1),
    256: (1, 0, 1, 1, 1, 0, 0, 0, 1),
    625: (2, 0, 1, 0, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, r) with q = p^r, or None."""
    if q < 2:
        return None
    p = prime_factors(q)[0]
    r = 0
    while q % p == 0:
        q //= p
        r += 1
    return (p, r) if q == 1 else None


# -- polynomials over Z_p as lists (low to high), used for modulus checks --

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _ptrim([x % p for x in a])
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _ptrim(a)
    return a


def _pmulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pmod(out, m, p)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible_mod_p(m: Sequence[int], p: int) -> bool:
    """Rabin-style test: m has no factor of degree <= deg(m)/2."""
    m = _ptrim([c % p for c in m])
    r = len(m) - 1
    if r < 1:
        return False
    if r == 1:
        return True
    xp = [0, 1]
    for _ in range(r // 2):
        # xp <- xp^p mod m
        acc = [1]
        base = xp
        e = p
        while e:
            if e & 1:
                acc = _pmulmod(acc, base, m, p)
            base = _pmulmod(base, base, m, p)
            e >>= 1
        xp = acc
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(m, _ptrim(diff), p)
        if len(g) > 1:
            return False
    return True


class Field:
    """The field F_q, q = p^r, together with its arithmetic tables.

    Use :func:`field_new` rather than instantiating directly; it validates the
    modulus and caches instances so that equal fields are the same object.
    """

    def __init__(self, p: int, r: int, modulus: tuple[int, ...] | None):
        self.p = p
        self.r = r
        self.modulus = modulus
        self.q = p**r
        self.is_prime = r == 1
        q = self.q
        digits = np.array([[(t // p**i) % p for i in range(r)] for t in range(q)], dtype=np.int64)
        self._digits = digits
        weights = p ** np.arange(r, dtype=np.int64)
        self._weights = weights
        if self.is_prime:
            idx = np.arange(q, dtype=np.int64)
            self.add_table = (idx[:, None] + idx[None, :]) % p
            self.mul_table = (idx[:, None] * idx[None, :]) % p
        else:
            self.add_table = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
            self.mul_table = np.zeros((q, q), dtype=np.int64)
            for a in range(q):
                for b in range(a, q):
                    c = self._encode(_pmulmod(list(digits[a]), list(digits[b]), list(modulus), p))
                    self.mul_table[a, b] = self.mul_table[b, a] = c
        self.neg_table = ((-digits) % p) @ weights
        self.inv_table = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            b = int(np.nonzero(self.mul_table[a] == 1)[0][0])
            self.inv_table[a] = b
        self.sub_table = self.add_table[:, self.neg_table]

    def _encode(self, coeffs: Sequence[int]) -> int:
        return int(sum(int(c) % self.p * self.p**i for i, c in enumerate(coeffs)))

    def __repr__(self) -> str:
        if self.is_prime:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.r})"

    def __reduce__(self):
        return (field_new, (self.p, self.r, self.modulus))

    # -- element helpers --

    def __call__(self, value: int | Sequence[int]) -> "FieldElem":
        return FieldElem(self, self.coerce(value))

    def coerce(self, value) -> int:
        if isinstance(value, FieldElem):
            if value.field is not self:
                raise MixedFields(f"element of {value.field} used in {self}")
            return value.value
        if isinstance(value, (int, np.integer)):
            value = int(value)
            if self.is_prime:
                return value % self.p
            if value < 0:
                return int(self.neg_table[self.coerce(-value)])
            if value >= self.q:
                raise ValueError(f"integer {value} does not encode an element of {self}")
            return value
        return self._encode(list(value))

    def coeffs(self, t: int) -> tuple[int, ...]:
        return tuple(int(d) for d in self._digits[t])

    def elements(self) -> list["FieldElem"]:
        return [FieldElem(self, t) for t in range(self.q)]

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    def minus_one(self) -> int:
        return int(self.neg_table[1])

    # -- vectorised arithmetic on encoded ints / arrays --

    def add(self, a, b):
        if self.is_prime:
            return (np.asarray(a) + b) % self.p
        return self.add_table[a, b]

    def sub(self, a, b):
        if self.is_prime:
            return (np.asarray(a) - b) % self.p
        return self.sub_table[a, b]

    def mul(self, a, b):
        if self.is_prime:
            return (np.asarray(a) * b) % self.p
        return self.mul_table[a, b]

    def neg(self, a):
        if self.is_prime:
            return (-np.asarray(a)) % self.p
        return self.neg_table[a]

    def inv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        return self.inv_table[a]

    def pow(self, a: int, e: int) -> int:
        a = int(a)
        if e < 0:
            a = int(self.inv(a))
            e = -e
        acc = 1
        while e:
            if e & 1:
                acc = int(self.mul(acc, a))
            a = int(self.mul(a, a))
            e >>= 1
        return acc

    def sum(self, a, axis=0):
        a = np.asarray(a)
        if self.is_prime:
            return a.sum(axis=axis) % self.p
        a = np.moveaxis(a, axis, 0)
        acc = np.zeros(a.shape[1:], dtype=np.int64)
        for row in a:
            acc = self.add_table[acc, row]
        return acc

    def matmul(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.is_prime:
            return (A @ B) % self.p
        acc = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for j in range(A.shape[1]):
            acc = self.add_table[acc, self.mul_table[A[:, j, None], B[None, j, :]]]
        return acc

    def from_signed(self, A):
        """Map an integer array (e.g. a {-1,0,1} matrix) into the field."""
        # prime-subfield elements encode as 0..p-1 in every extension
        return np.asarray(A, dtype=np.int64) % self.p


@dataclass(frozen=True, eq=False)
class FieldElem:
    """An element of a :class:`Field`, supporting the usual operators."""

    field: Field
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.field is not self.field:
                raise MixedFields(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.field.coerce(int(other))
        return NotImplemented

    def _wrap(self, v) -> "FieldElem":
        return FieldElem(self.field, int(v))

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def inv(self) -> "FieldElem":
        return self._wrap(self.field.inv(self.value))

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.mul(self.value, self.field.inv(o)))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field is other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == self.field.coerce(int(other))
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.field}({self.value})"


@functools.lru_cache(maxsize=None)
def _field_cached(p: int, r: int, modulus: tuple[int, ...] | None) -> Field:
    return Field(p, r, modulus)


def field_new(p: int, r: int = 1, modulus: Sequence[int] | None = None) -> Field:
    """Validated, cached construction of F_{p^r}.

    ``modulus`` lists coefficients low-to-high; the leading 1 may be omitted.
    """
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if r < 1:
        raise ValueError("extension degree must be >= 1")
    if r == 1:
        return _field_cached(p, 1, None)
    if modulus is None:
        modulus = DEFAULT_MODULI.get(p**r)
        if modulus is None:
            raise MissingModulus(f"no bundled modulus for q = {p}^{r}")
    mod = [int(c) % p for c in modulus]
    if len(mod) == r:
        mod.append(1)
    if len(mod) != r + 1 or mod[-1] != 1:
        raise ReducibleModulus(f"modulus {tuple(modulus)} is not monic of degree {r}")
    if not is_irreducible_mod_p(mod, p):
        raise ReducibleModulus(f"modulus {tuple(mod)} is reducible over Z_{p}")
    return _field_cached(p, r, tuple(mod))


def field_for_q(q: int) -> Field:
    pr = prime_power(q)
    if pr is None:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    return field_new(*pr)


_FIELD_RE = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+)\s*(?::\s*([-\d,\s]+))?)?\s*$")


def parse_field(text: str) -> Field:
    """Parse ``"p"``, ``"p^r"`` or ``"p^r:c0,c1,...,cr"``."""
    m = _FIELD_RE.match(text)
    if not m:
        raise ParseError(f"bad field spec {text!r}")
    p = int(m.group(1))
    r = int(m.group(2) or 1)
    modulus = None
    if m.group(3):
        modulus = [int(c) for c in m.group(3).split(",") if c.strip()]
    return field_new(p, r, modulus)


def format_field(F: Field) -> str:
    if F.is_prime:
        return str(F.p)
    return f"{F.p}^{F.r}:" + ",".join(str(c) for c in F.modulus)


def quadratic_character(x: FieldElem) -> int:
    F = x.field
    if F.p == 2:
        raise EvenCharacteristic("quadratic character needs odd q")
    if x.value == 0:
        return 0
    t = F.pow(x.value, (F.q - 1) // 2)
    return 1 if t == 1 else -1


def quadratic_character_table(F: Field) -> np.ndarray:
    """eta(t) for every encoded element t."""
    return np.array([quadratic_character(FieldElem(F, t)) for t in range(F.q)], dtype=np.int64)


def multiplicative_order(F: Field, t: int) -> int:
    if t == 0:
        raise DivisionByZero("zero has no multiplicative order")
    n = F.q - 1
    order = n
    for ell in prime_factors(n):
        while order % ell == 0 and F.pow(t, order // ell) == 1:
            order //= ell
    return order


@functools.lru_cache(maxsize=None)
def primitive_element(F: Field) -> int:
    for t in range(1, F.q):
        if multiplicative_order(F, t) == F.q - 1:
            return t
    raise AssertionError("finite field without a generator")


def element_of_order(F: Field, m: int) -> FieldElem:
    if m < 1 or (F.q - 1) % m:
        raise OrderDoesNotDivide(f"{m} does not divide q-1 = {F.q - 1}")
    g = primitive_element(F)
    return FieldElem(F, F.pow(g, (F.q - 1) // m))


def subfield_embedding(K: Field, L: Field) -> np.ndarray:
    """Table mapping encoded elements of K to encoded elements of L.

    K and L share the characteristic and K.r divides L.r.  The generator of K
    is sent to the smallest root of K's modulus in L.
    """
    if K.p != L.p or L.r % K.r:
        raise MixedFields(f"{K} is not a subfield of {L}")
    if K.is_prime:
        return np.arange(K.q, dtype=np.int64)
    mod = K.modulus
    root = None
    for t in range(L.q):
        acc = 0
        for c in reversed(mod):
            acc = int(L.add(L.mul(acc, t), c))
        if acc == 0:
            root = t
            break
    if root is None:
        raise AssertionError("modulus has no root in extension")
    table = np.zeros(K.q, dtype=np.int64)
    powers = [1]
    for _ in range(K.r - 1):
        powers.append(int(L.mul(powers[-1], root)))
    for t in range(K.q):
        acc = 0
        for d, pw in zip(K.coeffs(t), powers):
            acc = int(L.add(acc, L.mul(d, pw)))
        table[t] = acc
    return table


def _validate_defaults() -> None:
    for q, mod in DEFAULT_MODULI.items():
        p, r = prime_power(q)
        if len(mod) != r + 1 or not is_irreducible_mod_p(mod, p):
            raise ReducibleModulus(f"bundled modulus for q = {q} is invalid")


_validate_defaults()


def elements(F: Field) -> Iterable[FieldElem]:
    return F.elements()
