"""Exhaustive codeword enumeration.

Messages are visited one per scalar class (the highest nonzero digit is 1)
in lexicographic order, digit 0 varying fastest.  Each odometer step adds a
precomputed sparse delta row to the running codeword, so a step costs the
number of nonzeros of one generator row.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numba
import numpy as np

from .gf import Field

# digits below this many are scanned inside one kernel call
_UNIT_SIZE = 1 << 20


@numba.njit(cache=True, nogil=True)
def _scan(start, didx, dval, dlen, ndig, q, count, addt, hist):
    n = start.shape[0]
    cw = start.copy()
    w = 0
    for i in range(n):
        if cw[i] != 0:
            w += 1
    best = w
    best_step = 0
    hist[w] += 1
    digits = np.zeros(max(ndig, 1), dtype=np.int64)
    for step in range(1, count):
        j = 0
        while True:
            t = digits[j]
            for e in range(dlen[j, t]):
                idx = didx[j, t, e]
                old = cw[idx]
                new = addt[old, dval[j, t, e]]
                cw[idx] = new
                if old == 0:
                    if new != 0:
                        w += 1
                elif new == 0:
                    w -= 1
            t += 1
            if t == q:
                digits[j] = 0
                j += 1
            else:
                digits[j] = t
                break
        hist[w] += 1
        if w < best:
            best = w
            best_step = step
    return best, best_step


@numba.njit(cache=True, nogil=True)
def _scan_masks(start, didx, dval, dlen, ndig, q, count, addt, out):
    """Write the support bitmask of every visited codeword into ``out``."""
    n = start.shape[0]
    cw = start.copy()
    digits = np.zeros(max(ndig, 1), dtype=np.int64)
    for step in range(count):
        if step > 0:
            j = 0
            while True:
                t = digits[j]
                for e in range(dlen[j, t]):
                    idx = didx[j, t, e]
                    cw[idx] = addt[cw[idx], dval[j, t, e]]
                t += 1
                if t == q:
                    digits[j] = 0
                    j += 1
                else:
                    digits[j] = t
                    break
        m = 0
        for i in range(n):
            if cw[i] != 0:
                m |= 1 << i
        out[step] = m


@numba.njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@numba.njit(cache=True)
def _union_hist(m1, c1, m2, c2, m3, c3, hist):
    """hist[popcount(a|b|c)] += ca*cb*cc over all triples."""
    for i in range(m1.shape[0]):
        a = m1[i]
        for j in range(m2.shape[0]):
            ab = a | m2[j]
            cab = c1[i] * c2[j]
            for k in range(m3.shape[0]):
                hist[_popcount(ab | m3[k])] += cab * c3[k]


@dataclass
class ScanResult:
    min_weight: int | None
    hist: np.ndarray  # counts per weight over the visited projective messages
    visited: int
    total: int
    argmin: np.ndarray | None  # a message achieving min_weight

    @property
    def complete(self) -> bool:
        return self.visited == self.total


class Enumerator:
    """Projective message enumeration for a generator matrix with independent rows."""

    def __init__(self, F: Field, G: np.ndarray):
        self.F = F
        self.G = np.ascontiguousarray(G, dtype=np.int64)
        self.k, self.n = self.G.shape
        q = F.q
        self.total = (q**self.k - 1) // (q - 1) if self.k else 0
        k, n = self.k, self.n
        # delta(j, t) = (s_{t+1} - s_t) * row_j with s_t = t
        vals = np.arange(q, dtype=np.int64)
        steps = F.sub(np.roll(vals, -1), vals)
        nnz = max(1, int(np.count_nonzero(self.G, axis=1).max(initial=0)))
        self.didx = np.zeros((max(k, 1), q, nnz), dtype=np.int64)
        self.dval = np.zeros((max(k, 1), q, nnz), dtype=np.int64)
        self.dlen = np.zeros((max(k, 1), q), dtype=np.int64)
        for j in range(k):
            support = np.nonzero(self.G[j])[0]
            for t in range(q):
                d = F.mul(self.G[j, support], steps[t])
                self.didx[j, t, : support.size] = support
                self.dval[j, t, : support.size] = d
                self.dlen[j, t] = support.size
        self.addt = np.ascontiguousarray(F.add_table, dtype=np.int64)
        self.free_digits = 0
        while q ** (self.free_digits + 1) <= _UNIT_SIZE:
            self.free_digits += 1

    def units(self):
        """Yield (L, high_digit_values, free, size) in lexicographic order."""
        q = self.F.q
        for L in range(self.k):
            free = min(L, self.free_digits)
            nhigh = L - free
            size = q**free
            for idx in range(q**nhigh):
                high = [(idx // q**i) % q for i in range(nhigh)]  # digit free+i
                yield L, high, free, size

    def unit_start(self, L: int, high) -> np.ndarray:
        F = self.F
        cw = self.G[L].copy()
        free = L - len(high)
        for i, val in enumerate(high):
            if val:
                cw = F.add(cw, F.mul(self.G[free + i], val))
        return np.ascontiguousarray(cw, dtype=np.int64)

    def message(self, L: int, high, free: int, step: int) -> np.ndarray:
        q = self.F.q
        m = np.zeros(self.k, dtype=np.int64)
        for i in range(free):
            m[i] = (step // q**i) % q
        for i, val in enumerate(high):
            m[free + i] = val
        m[L] = 1
        return m

    def _plan(self, budget: int | None):
        plan = []
        remaining = self.total if budget is None else min(budget, self.total)
        for L, high, free, size in self.units():
            if remaining <= 0:
                break
            cnt = min(size, remaining)
            plan.append((L, high, free, cnt))
            remaining -= cnt
        return plan

    def scan(self, budget: int | None = None, workers: int = 1) -> ScanResult:
        n, q = self.n, self.F.q
        plan = self._plan(budget)

        def run(item):
            L, high, free, cnt = item
            hist = np.zeros(n + 1, dtype=np.int64)
            best, step = _scan(self.unit_start(L, high), self.didx, self.dval, self.dlen,
                               free, q, cnt, self.addt, hist)
            return hist, best, step

        if workers > 1 and len(plan) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(run, plan))
        else:
            results = [run(item) for item in plan]
        hist = np.zeros(n + 1, dtype=np.int64)
        best = None
        argmin = None
        visited = 0
        for item, (h, b, step) in zip(plan, results):
            hist += h
            visited += item[3]
            if best is None or b < best:
                best = int(b)
                L, high, free, _ = item
                argmin = self.message(L, high, free, int(step))
        return ScanResult(best, hist, visited, self.total, argmin)

    def support_masks(self) -> np.ndarray:
        """Support bitmask of every projective codeword (n <= 62)."""
        if self.n > 62:
            raise ValueError("support masks need n <= 62")
        out = np.zeros(self.total, dtype=np.int64)
        pos = 0
        for L, high, free, size in self.units():
            _scan_masks(self.unit_start(L, high), self.didx, self.dval, self.dlen,
                        free, self.F.q, size, self.addt, out[pos : pos + size])
            pos += size
        return out


def union_weight_hist(masks, counts, n: int) -> np.ndarray:
    """Distribution of |supp(a) u supp(b) u supp(c)| over weighted triples."""
    hist = np.zeros(n + 1, dtype=np.int64)
    (m1, m2, m3), (c1, c2, c3) = masks, counts
    _union_hist(m1, c1, m2, c2, m3, c3, hist)
    return hist
