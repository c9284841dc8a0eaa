"""The ring R = F_q + vF_q + v^2 F_q with v^3 = v, for odd q.

A ring element a + bv + cv^2 is stored as the triple (a, b, c) of encoded
field elements; arrays of ring elements carry a trailing axis of length 3.
Evaluating at v = 0, 1, -1 gives the CRT isomorphism R -> F_q^3.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import EvenCharacteristic, MixedRings, ParseError
from .gf import Field, field_new, format_field, parse_field


class Ring:
    """R over a field of odd characteristic."""

    def __init__(self, field: Field):
        if field.p == 2:
            raise EvenCharacteristic("R needs 1/2; characteristic 2 is not allowed")
        self.field = field
        self.half = int(field.inv(2 % field.p))

    def __repr__(self):
        return f"R({self.field})"

    def __eq__(self, other):
        return isinstance(other, Ring) and other.field is self.field

    def __hash__(self):
        return hash(("R", id(self.field)))

    @property
    def q(self) -> int:
        return self.field.q

    def __call__(self, a=0, b=0, c=0) -> "RingElem":
        F = self.field
        return RingElem(self, F.coerce(a), F.coerce(b), F.coerce(c))

    def elem(self, triple) -> "RingElem":
        return RingElem(self, *(int(x) for x in triple))

    def elements(self):
        q = self.q
        for a in range(q):
            for b in range(q):
                for c in range(q):
                    yield RingElem(self, a, b, c)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def v(self):
        return self(0, 1, 0)

    # -- vectorised ops on (..., 3) arrays --

    def add(self, x, y):
        return self.field.add(np.asarray(x), np.asarray(y))

    def sub(self, x, y):
        return self.field.sub(np.asarray(x), np.asarray(y))

    def neg(self, x):
        return self.field.neg(np.asarray(x))

    def mul(self, x, y):
        """Closed-form product, reducing v^3 -> v and v^4 -> v^2."""
        F = self.field
        x, y = np.asarray(x), np.asarray(y)
        a, b, c = x[..., 0], x[..., 1], x[..., 2]
        a2, b2, c2 = y[..., 0], y[..., 1], y[..., 2]
        m = F.mul
        const = m(a, a2)
        vco = F.add(F.add(m(a, b2), m(a2, b)), F.add(m(b, c2), m(b2, c)))
        v2co = F.add(F.add(m(a, c2), m(a2, c)), F.add(m(b, b2), m(c, c2)))
        return np.stack(np.broadcast_arrays(const, vco, v2co), axis=-1)

    def mul_crt(self, x, y):
        """Product computed componentwise in F_q^3; must equal :meth:`mul`."""
        return self.from_crt(self.field.mul(self.to_crt(x), self.to_crt(y)))

    def to_crt(self, x):
        F = self.field
        x = np.asarray(x)
        a, b, c = x[..., 0], x[..., 1], x[..., 2]
        return np.stack(np.broadcast_arrays(a, F.add(F.add(a, b), c), F.add(F.sub(a, b), c)), axis=-1)

    def from_crt(self, phi):
        F = self.field
        phi = np.asarray(phi)
        f1, f2, f3 = phi[..., 0], phi[..., 1], phi[..., 2]
        a = f1
        b = F.mul(F.sub(f2, f3), self.half)
        c = F.sub(F.mul(F.add(f2, f3), self.half), f1)
        return np.stack(np.broadcast_arrays(a, b, c), axis=-1)

    def idempotents(self) -> tuple["RingElem", "RingElem", "RingElem"]:
        F = self.field
        h = self.half
        eta1 = self(1, 0, F.minus_one())
        eta2 = RingElem(self, 0, h, h)
        eta3 = RingElem(self, 0, int(F.neg(h)), h)
        return eta1, eta2, eta3

    def is_unit(self, x) -> np.ndarray | bool:
        return np.all(self.to_crt(x) != 0, axis=-1)

    def inv(self, x):
        phi = self.to_crt(x)
        return self.from_crt(self.field.inv(phi))

    def gray(self, word):
        """Psi: R^n -> F_q^{3n}, block ordered (phi1 | phi2 | phi3).

        For a 2-d array of words (rows) the map is applied row by row.
        """
        phi = self.to_crt(word)
        return np.concatenate([phi[..., 0], phi[..., 1], phi[..., 2]], axis=-1)

    def lee_weight(self, x) -> int:
        """Lee weight of an element or of a whole word."""
        return int(np.count_nonzero(self.to_crt(x)))

    def hamming_weight(self, word) -> int:
        return int(np.count_nonzero(np.any(np.asarray(word) != 0, axis=-1)))

    def from_field(self, A):
        """Embed an array over F_q into R (constants)."""
        A = np.asarray(A)
        out = np.zeros(A.shape + (3,), dtype=np.int64)
        out[..., 0] = A
        return out

    # -- text --

    def parse(self, text: str) -> "RingElem":
        return self.elem(parse_ring_literal(self, text))

    def format(self, x) -> str:
        return format_ring_literal(tuple(int(t) for t in x))


@dataclass(frozen=True, eq=False)
class RingElem:
    ring: Ring
    a: int
    b: int
    c: int

    @property
    def triple(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c], dtype=np.int64)

    def _other(self, other):
        if isinstance(other, RingElem):
            if other.ring != self.ring:
                raise MixedRings(f"{self.ring} vs {other.ring}")
            return other.triple
        if isinstance(other, (int, np.integer)):
            return self.ring(int(other)).triple
        return None

    def _wrap(self, arr) -> "RingElem":
        return self.ring.elem(arr)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else self._wrap(self.ring.add(self.triple, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else self._wrap(self.ring.sub(self.triple, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else self._wrap(self.ring.sub(o, self.triple))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else self._wrap(self.ring.mul(self.triple, o))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(self.ring.neg(self.triple))

    def __pow__(self, e: int):
        acc = self.ring.one
        for _ in range(e):
            acc = acc * self
        return acc

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return bool(np.array_equal(self.triple, o))

    def __hash__(self):
        return hash((self.a, self.b, self.c))

    def to_crt(self) -> tuple[int, int, int]:
        return tuple(int(t) for t in self.ring.to_crt(self.triple))

    def is_unit(self) -> bool:
        return bool(self.ring.is_unit(self.triple))

    def lee_weight(self) -> int:
        return self.ring.lee_weight(self.triple)

    def __repr__(self):
        return format_ring_literal((self.a, self.b, self.c))


def from_crt(ring: Ring, phi1, phi2, phi3) -> RingElem:
    F = ring.field
    return ring.elem(ring.from_crt(np.array([F.coerce(phi1), F.coerce(phi2), F.coerce(phi3)])))


_TERM_RE = re.compile(r"^(\d*)\*?(v(?:\^?([12]))?)?$")


def parse_ring_literal(ring: Ring, text: str) -> tuple[int, int, int]:
    """Parse ``"a+b*v+c*v^2"``; forms like ``2v``, ``v^2``, ``4v+1``, ``-1`` are accepted."""
    F = ring.field
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty ring literal")
    coeffs = [0, 0, 0]
    for sign, body in re.findall(r"([+-]?)([^+-]+)", s):
        m = _TERM_RE.match(body)
        if not m or (not m.group(1) and not m.group(2)):
            raise ParseError(f"bad ring literal {text!r}")
        num = int(m.group(1)) if m.group(1) else 1
        if m.group(2) is None:
            power = 0
        else:
            power = int(m.group(3) or 1)
        try:
            val = F.coerce(num)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        if sign == "-":
            val = int(F.neg(val))
        coeffs[power] = int(F.add(coeffs[power], val))
    if "".join(sign + body for sign, body in re.findall(r"([+-]?)([^+-]+)", s)) != s:
        raise ParseError(f"bad ring literal {text!r}")
    return tuple(coeffs)


def format_ring_literal(triple: tuple[int, int, int]) -> str:
    a, b, c = triple
    parts = []
    if a:
        parts.append(str(a))
    if b:
        parts.append("v" if b == 1 else f"{b}v")
    if c:
        parts.append("v^2" if c == 1 else f"{c}v^2")
    return "+".join(parts) if parts else "0"


def ring_new(field: Field | int | str) -> Ring:
    if isinstance(field, Field):
        return Ring(field)
    if isinstance(field, int):
        from .gf import field_for_q

        return Ring(field_for_q(field))
    return Ring(parse_field(field))


def format_ring(ring: Ring) -> str:
    return format_field(ring.field)


__all__ = [
    "Ring",
    "RingElem",
    "from_crt",
    "ring_new",
    "format_ring",
    "parse_ring_literal",
    "format_ring_literal",
    "field_new",
]
