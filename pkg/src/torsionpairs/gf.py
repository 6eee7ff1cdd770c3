"""Exact dense linear algebra over the prime fields GF(2), GF(3), GF(5).

All matrices are numpy integer arrays whose entries are residues in
``[0, p)``.  Row vectors are the default orientation: a subspace is held
as a matrix whose *rows* span it, and linear maps act on the right
(``v @ A``).  Everything here is pure and deterministic; pivots are
always chosen as the first nonzero entry scanning top-to-bottom,
left-to-right.
"""

from __future__ import annotations

import numpy as np

SUPPORTED_PRIMES = (2, 3, 5)

_INVERSES = {p: [0] + [pow(a, -1, p) for a in range(1, p)] for p in SUPPORTED_PRIMES}


def check_prime(p: int) -> int:
    if p not in SUPPORTED_PRIMES:
        raise ValueError(f"unsupported field GF({p}); p must be one of {SUPPORTED_PRIMES}")
    return p


def asmatrix(mat, p: int) -> np.ndarray:
    """Coerce to a 2-D int64 array of residues mod p."""
    a = np.asarray(mat, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={a.ndim}")
    return a % p


def rref(mat, p: int):
    """Reduced row echelon form over GF(p).

    Returns ``(R, rank, pivot_cols)`` where ``R`` is the (unique) RREF of
    ``mat``, ``rank`` the number of pivots and ``pivot_cols`` their column
    indices in increasing order.
    """
    check_prime(p)
    R = asmatrix(mat, p).copy()
    m, n = R.shape
    if p == 2 and 0 < n <= 63 and m:
        return _rref_gf2_small(R)
    inv = _INVERSES[p]
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        nz = np.nonzero(R[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            R[[row, piv]] = R[[piv, row]]
        R[row] = (R[row] * inv[int(R[row, col])]) % p
        mask = np.nonzero(R[:, col])[0]
        for r in mask:
            if r != row:
                R[r] = (R[r] - R[r, col] * R[row]) % p
        pivots.append(col)
        row += 1
    return R, len(pivots), pivots


def _rref_gf2_small(M: np.ndarray):
    """Bit-twiddling RREF over GF(2) for matrices of width <= 63.

    Rows are packed as integers with the leftmost column in the highest
    bit, so leading-bit pivoting matches the leftmost-column pivot rule;
    the unique RREF is identical to the generic routine's output.
    """
    m, n = M.shape
    weights = 1 << np.arange(n - 1, -1, -1, dtype=np.int64)
    packed = (M @ weights).tolist()
    lead = {}
    for v in packed:
        cur = v
        while cur:
            h = cur.bit_length() - 1
            if h in lead:
                cur ^= lead[h]
            else:
                lead[h] = cur
                break
    for h in sorted(lead, reverse=True):
        v = lead[h]
        for h2 in lead:
            if h2 != h and (lead[h2] >> h) & 1:
                lead[h2] ^= v
    R = np.zeros((m, n), dtype=np.int64)
    pivots = []
    for r, h in enumerate(sorted(lead, reverse=True)):
        pivots.append(n - 1 - h)
        v = lead[h]
        R[r] = (v >> (n - 1 - np.arange(n))) & 1
    return R, len(pivots), pivots


def rank(mat, p: int) -> int:
    return rref(mat, p)[1]


def solve_linear(A, b, p: int):
    """Solve ``A @ x = b`` exactly over GF(p), or return None.

    ``b`` may be a vector or a matrix of stacked right-hand-side columns;
    the solution has matching shape.  Raises on a row-count mismatch.
    """
    A = asmatrix(A, p)
    b_arr = np.asarray(b, dtype=np.int64) % p
    vector_rhs = b_arr.ndim == 1
    B = b_arr.reshape(-1, 1) if vector_rhs else b_arr
    if B.shape[0] != A.shape[0]:
        raise ValueError(f"dimension mismatch: A has {A.shape[0]} rows, b has {B.shape[0]}")
    aug = np.hstack([A, B])
    R, _, pivots = rref(aug, p)
    n = A.shape[1]
    if any(c >= n for c in pivots):
        return None
    X = np.zeros((n, B.shape[1]), dtype=np.int64)
    for i, c in enumerate(pivots):
        X[c] = R[i, n:]
    return X[:, 0] if vector_rhs else X


def nullspace_basis(A, p: int) -> np.ndarray:
    """Basis of ``{x : A @ x = 0}``, returned as the columns of an (n, k) array."""
    A = asmatrix(A, p)
    R, r, pivots = rref(A, p)
    n = A.shape[1]
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for j, c in enumerate(free):
        basis[c, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = (-R[i, c]) % p
    return basis


def left_nullspace_rows(A, p: int) -> np.ndarray:
    """Rows spanning ``{v : v @ A = 0}``; shape (k, m)."""
    A = asmatrix(A, p)
    return nullspace_basis(A.T, p).T % p


def row_space(mat, p: int) -> np.ndarray:
    """Canonical (RREF) basis of the row space; shape (rank, n)."""
    R, r, _ = rref(mat, p)
    return R[:r]


def in_row_space(v, rows, p: int) -> bool:
    rows = asmatrix(rows, p)
    v = asmatrix(v, p)
    return rank(rows, p) == rank(np.vstack([rows, v]), p)


def matmul(a, b, p: int) -> np.ndarray:
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def zeros(m: int, n: int) -> np.ndarray:
    return np.zeros((m, n), dtype=np.int64)


def is_invertible(A, p: int) -> bool:
    A = asmatrix(A, p)
    return A.shape[0] == A.shape[1] and rank(A, p) == A.shape[0]


def batch_matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Batched ``a @ b % p`` over a leading batch axis."""
    return np.matmul(a, b) % p


# -- GF(2) subspaces as integer bitmasks (bit i = coordinate i) --------------


def pack_rows_gf2(rows: np.ndarray) -> list:
    """Encode 0/1 rows as integers, bit i = column i."""
    rows = np.asarray(rows, dtype=np.int64) % 2
    if rows.size == 0:
        return []
    weights = 1 << np.arange(rows.shape[1], dtype=np.int64)
    return [int(x) for x in rows @ weights]


def unpack_ints_gf2(ints, width: int) -> np.ndarray:
    out = np.zeros((len(ints), width), dtype=np.int64)
    for i, v in enumerate(ints):
        for j in range(width):
            out[i, j] = (v >> j) & 1
    return out


def echelon_ints_gf2(vecs) -> tuple:
    """Canonical reduced basis of the GF(2) span of integer-coded vectors.

    Returns a tuple of ints sorted by descending leading bit; two spans
    are equal iff their tuples are equal.
    """
    lead = {}
    for v in vecs:
        cur = v
        while cur:
            h = cur.bit_length() - 1
            if h in lead:
                cur ^= lead[h]
            else:
                lead[h] = cur
                break
    # back-substitute so each pivot bit occurs in exactly one vector
    for h in sorted(lead, reverse=True):
        v = lead[h]
        for h2 in lead:
            if h2 != h and (lead[h2] >> h) & 1:
                lead[h2] ^= v
    return tuple(lead[h] for h in sorted(lead, reverse=True))


def merge_echelon_gf2(basis: tuple, extra) -> tuple:
    """Canonical basis of span(basis) + span(extra)."""
    return echelon_ints_gf2(list(basis) + list(extra))


def batch_rref(mats: np.ndarray, p: int):
    """Vectorized RREF over a batch of equal-shape matrices.

    ``mats`` has shape (B, m, n).  Returns ``(R, ranks)`` with ``R`` the
    per-matrix RREFs and ``ranks`` an int array of shape (B,).  Entries
    of int64 stay well below overflow for p <= 5.
    """
    check_prime(p)
    R = (np.asarray(mats, dtype=np.int64) % p).copy()
    B, m, n = R.shape
    inv = np.array(_INVERSES[p], dtype=np.int64)
    rows = np.zeros(B, dtype=np.int64)  # current pivot row per matrix
    bidx = np.arange(B)
    for col in range(n):
        active = rows < m
        if not active.any():
            break
        # first nonzero entry at or below the current pivot row, per matrix
        colvals = R[:, :, col]
        below = (np.arange(m)[None, :] >= rows[:, None]) & (colvals != 0) & active[:, None]
        has = below.any(axis=1)
        piv = np.where(has, below.argmax(axis=1), 0)
        sel = has
        if not sel.any():
            continue
        # swap pivot row up
        bsel = bidx[sel]
        r0 = rows[sel]
        pr = piv[sel]
        tmp = R[bsel, r0].copy()
        R[bsel, r0] = R[bsel, pr]
        R[bsel, pr] = tmp
        # normalize pivot row
        pivval = R[bsel, r0, col]
        R[bsel, r0] = (R[bsel, r0] * inv[pivval][:, None]) % p
        # eliminate the column everywhere else
        factors = R[bsel, :, col].copy()
        factors[np.arange(len(bsel)), r0] = 0
        R[bsel] = (R[bsel] - factors[:, :, None] * R[bsel, r0][:, None, :]) % p
        rows[sel] += 1
    return R, rows


def batch_rank(mats: np.ndarray, p: int) -> np.ndarray:
    return batch_rref(mats, p)[1]
