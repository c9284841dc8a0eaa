"""Dense exact linear algebra over F_q and over R.

Field matrices are 2-d integer arrays of encoded elements; ring matrices
are 3-d arrays whose last axis holds the (a, b, c) triple.  Every function
takes the field (or ring) explicitly.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import NonSquare, NonUnitLambda, ParseError
from .gf import Field
from .ring import Ring, parse_ring_literal, format_ring_literal


def as_matrix(A, cols: int | None = None) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(0 if A.size == 0 else 1, -1) if cols is None else A.reshape(-1, cols)
    return A


def rref(F: Field, A) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row echelon form, its rank and pivot columns.

    Pivots are taken leftmost-first, using the first nonzero row at or below
    the current position, scaled to 1.
    """
    M = as_matrix(A).copy()
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        M[r] = F.mul(M[r], F.inv(M[r, c]))
        others = np.nonzero(M[:, c])[0]
        others = others[others != r]
        if others.size:
            factors = M[others, c]
            M[others] = F.sub(M[others], F.mul(factors[:, None], M[r][None, :]))
        pivots.append(c)
        r += 1
    return M, r, pivots


def rank(F: Field, A) -> int:
    return rref(F, A)[1]


def row_basis(F: Field, A) -> np.ndarray:
    """Nonzero rows of the RREF (a canonical basis of the row space)."""
    R, r, _ = rref(F, A)
    return R[:r]


def transpose(A) -> np.ndarray:
    A = np.asarray(A)
    return np.swapaxes(A, 0, 1)


def matmul(F: Field, A, B) -> np.ndarray:
    return F.matmul(as_matrix(A), as_matrix(B))


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def det(F: Field, A) -> int:
    """Determinant by Bareiss fraction-free elimination."""
    M = as_matrix(A).copy()
    n, m = M.shape
    if n != m:
        raise NonSquare(f"det of a {n}x{m} matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k, k] == 0:
            nz = np.nonzero(M[k + 1 :, k])[0]
            if nz.size == 0:
                return 0
            i = k + 1 + int(nz[0])
            M[[k, i]] = M[[i, k]]
            sign = -sign
        inv_prev = F.inv(prev)
        for i in range(k + 1, n):
            # M[i,j] = (M[k,k] M[i,j] - M[i,k] M[k,j]) / prev
            num = F.sub(F.mul(M[k, k], M[i, k + 1 :]), F.mul(M[i, k], M[k, k + 1 :]))
            M[i, k + 1 :] = F.mul(num, inv_prev)
            M[i, k] = 0
        prev = int(M[k, k])
    d = int(M[n - 1, n - 1])
    return d if sign == 1 else int(F.neg(d))


def nullspace(F: Field, A) -> np.ndarray:
    """Rows spanning {x : A x^t = 0}; there are cols - rank of them."""
    A = as_matrix(A)
    cols = A.shape[1]
    R, r, pivots = rref(F, A)
    free = [c for c in range(cols) if c not in pivots]
    N = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        N[i, f] = 1
        for j, pc in enumerate(pivots):
            N[i, pc] = F.neg(R[j, f])
    return N


def inverse(F: Field, A) -> np.ndarray:
    A = as_matrix(A)
    n, m = A.shape
    if n != m:
        raise NonSquare(f"inverse of a {n}x{m} matrix")
    R, r, _ = rref(F, np.hstack([A, identity(n)]))
    if r < n or not np.array_equal(R[:, :n], identity(n)):
        raise ZeroDivisionError("singular matrix")
    return R[:, n:]


def same_row_space(F: Field, A, B) -> bool:
    A, B = as_matrix(A), as_matrix(B)
    ra, rb = row_basis(F, A), row_basis(F, B)
    return ra.shape == rb.shape and np.array_equal(ra, rb)


# -- ring matrices --


def rmat_crt_split(R: Ring, M) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    phi = R.to_crt(np.asarray(M, dtype=np.int64))
    return phi[..., 0], phi[..., 1], phi[..., 2]


def rmat_crt_join(R: Ring, M1, M2, M3) -> np.ndarray:
    return R.from_crt(np.stack([M1, M2, M3], axis=-1))


def rmat_mul(R: Ring, A, B) -> np.ndarray:
    """Matrix product over R using the closed-form element product."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    out = np.zeros((A.shape[0], B.shape[1], 3), dtype=np.int64)
    for j in range(A.shape[1]):
        out = R.add(out, R.mul(A[:, j, None, :], B[None, j, :, :]))
    return out


def rmat_transpose(M) -> np.ndarray:
    return np.swapaxes(np.asarray(M), 0, 1)


def rmat_identity(R: Ring, n: int) -> np.ndarray:
    return R.from_field(identity(n))


def rmat_det_crt(R: Ring, M) -> tuple[int, int, int]:
    M = np.asarray(M)
    if M.shape[0] != M.shape[1]:
        raise NonSquare(f"det of a {M.shape[0]}x{M.shape[1]} ring matrix")
    F = R.field
    return tuple(det(F, Mi) for Mi in rmat_crt_split(R, M))


def rmat_det(R: Ring, M) -> np.ndarray:
    return R.from_crt(np.array(rmat_det_crt(R, M)))


def rmat_nonsingular(R: Ring, M) -> bool:
    """det(M) is a unit of R, i.e. all three component determinants are nonzero."""
    return all(d != 0 for d in rmat_det_crt(R, M))


def rmat_inverse(R: Ring, M) -> np.ndarray:
    F = R.field
    return rmat_crt_join(R, *(inverse(F, Mi) for Mi in rmat_crt_split(R, M)))


# -- lambda-circulants --


def lambda_circulant(algebra: Field | Ring, lam, first_row, require_unit: bool = False) -> np.ndarray:
    """Square matrix whose rows are successive right shifts of ``first_row``
    with the wrapped entry multiplied by ``lam``.

    ``algebra`` is a Field (entries are encoded ints) or a Ring (entries are
    triples).  Non-unit ``lam`` is accepted unless ``require_unit`` is set.
    """
    row = np.asarray(first_row, dtype=np.int64)
    lam = np.asarray(lam, dtype=np.int64)
    n = row.shape[0]
    if isinstance(algebra, Ring):
        unit = bool(algebra.is_unit(lam))
    else:
        unit = int(lam) != 0
    if require_unit and not unit:
        raise NonUnitLambda(f"lambda = {lam.tolist()} is not a unit")
    M = np.zeros((n,) + row.shape, dtype=np.int64)
    M[0] = row
    for i in range(1, n):
        prev = M[i - 1]
        M[i, 1:] = prev[:-1]
        M[i, 0] = algebra.mul(lam, prev[-1])
    return M


def lambda_shift(algebra: Field | Ring, lam, n: int) -> np.ndarray:
    """The lambda-circulant with first row (0, 1, 0, ..., 0)."""
    if isinstance(algebra, Ring):
        row = np.zeros((n, 3), dtype=np.int64)
        if n > 1:
            row[1, 0] = 1
        else:
            row[0] = lam
    else:
        row = np.zeros(n, dtype=np.int64)
        if n > 1:
            row[1] = 1
        else:
            row[0] = lam
    return lambda_circulant(algebra, lam, row)


def is_lambda_circulant(algebra: Field | Ring, lam, M) -> bool:
    M = np.asarray(M)
    return np.array_equal(lambda_circulant(algebra, lam, M[0]), M)


# -- text format --


def _split_lines(text: str) -> list[str]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_matrix_lines(lines: Sequence[str], algebra: Field | Ring | None) -> np.ndarray:
    """Parse "rows cols" followed by rows of entries.

    ``algebra=None`` keeps raw signed integers (weighing matrices).
    """
    if not lines:
        raise ParseError("empty matrix")
    try:
        rows, cols = (int(t) for t in lines[0].split())
    except ValueError:
        raise ParseError(f"bad matrix header {lines[0]!r}") from None
    body = lines[1:]
    if len(body) != rows:
        raise ParseError(f"expected {rows} rows, got {len(body)}")
    shape = (rows, cols, 3) if isinstance(algebra, Ring) else (rows, cols)
    out = np.zeros(shape, dtype=np.int64)
    for i, line in enumerate(body):
        toks = line.split()
        if len(toks) != cols:
            raise ParseError(f"row {i}: expected {cols} entries, got {len(toks)}")
        for j, tok in enumerate(toks):
            try:
                if algebra is None:
                    out[i, j] = int(tok)
                elif isinstance(algebra, Ring):
                    out[i, j] = parse_ring_literal(algebra, tok)
                else:
                    out[i, j] = algebra.coerce(int(tok))
            except ValueError as exc:
                raise ParseError(f"row {i}, col {j}: {exc}") from None
    return out


def parse_matrix(text: str, algebra: Field | Ring | None) -> np.ndarray:
    return parse_matrix_lines(_split_lines(text), algebra)


def format_matrix(M, ring: bool = False) -> str:
    M = np.asarray(M)
    rows, cols = M.shape[0], M.shape[1]
    lines = [f"{rows} {cols}"]
    for i in range(rows):
        if ring:
            lines.append(" ".join(format_ring_literal(tuple(int(t) for t in M[i, j])) for j in range(cols)))
        else:
            lines.append(" ".join(str(int(x)) for x in M[i]))
    return "\n".join(lines) + "\n"
