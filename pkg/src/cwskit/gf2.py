"""Dense GF(2) linear algebra on numpy uint8 arrays.

Vectors are 1-D uint8 arrays with entries in {0, 1}; position 0 is the
leftmost symbol of the string form "0110..." (qubit 1 in operator
notation).  Matrices are 2-D.  Lexicographic comparisons treat vectors as
big-endian integers with position 0 most significant; ``to_int`` realizes
exactly that order.  All functions are pure and never mutate their inputs.
"""

from __future__ import annotations

import numpy as np


def as_vector(v) -> np.ndarray:
    """Coerce to a 1-D uint8 array with entries reduced mod 2."""
    arr = np.asarray(v)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got shape {arr.shape}")
    return (arr.astype(np.uint8)) & 1


def as_matrix(m) -> np.ndarray:
    """Coerce to a 2-D uint8 array with entries reduced mod 2."""
    arr = np.asarray(m)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {arr.shape}")
    return (arr.astype(np.uint8)) & 1


def parse_vector(s: str) -> np.ndarray:
    """Parse an ASCII 0/1 string such as "0001110011"."""
    if not s or any(c not in "01" for c in s):
        raise ValueError(f"not a binary string: {s!r}")
    return np.frombuffer(s.encode("ascii"), dtype=np.uint8) - ord("0")


def format_vector(v) -> str:
    return "".join("1" if b else "0" for b in as_vector(v))


def parse_matrix(rows) -> np.ndarray:
    """Parse newline-separated rows or an iterable of 0/1 row strings."""
    if isinstance(rows, str):
        rows = rows.splitlines()
    parsed = [parse_vector(r) for r in rows]
    if not parsed:
        raise ValueError("matrix needs at least one row")
    widths = {len(r) for r in parsed}
    if len(widths) != 1:
        raise ValueError("rows have unequal lengths")
    return np.array(parsed, dtype=np.uint8)


def format_matrix(m) -> str:
    return "\n".join(format_vector(row) for row in as_matrix(m))


def to_int(v) -> int:
    """Big-endian integer value of a vector (position 0 most significant)."""
    out = 0
    for b in as_vector(v):
        out = (out << 1) | int(b)
    return out


def from_int(value: int, n: int) -> np.ndarray:
    if value < 0 or value >= (1 << n):
        raise ValueError(f"{value} does not fit in {n} bits")
    return np.array([(value >> (n - 1 - i)) & 1 for i in range(n)], dtype=np.uint8)


def dot(u, v) -> int:
    """Inner product mod 2."""
    u = as_vector(u)
    v = as_vector(v)
    if u.shape != v.shape:
        raise ValueError(f"length mismatch: {u.shape[0]} vs {v.shape[0]}")
    return int(np.bitwise_and(u, v).sum() & 1)


def matvec(m, v) -> np.ndarray:
    m = as_matrix(m)
    v = as_vector(v)
    if m.shape[1] != v.shape[0]:
        raise ValueError(f"matrix has {m.shape[1]} columns, vector has {v.shape[0]}")
    return (m @ v).astype(np.uint8) & 1


def rref(m) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(2).

    Returns (R, pivot_cols) where pivot_cols lists the pivot column
    indices in ascending order.  The row space is preserved and the
    transform is idempotent: rref(rref(m)) == rref(m).
    """
    r_mat = as_matrix(m).copy()
    rows, cols = r_mat.shape
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        hits = np.nonzero(r_mat[row:, col])[0]
        if hits.size == 0:
            continue
        pivot = row + int(hits[0])
        if pivot != row:
            r_mat[[row, pivot]] = r_mat[[pivot, row]]
        others = np.nonzero(r_mat[:, col])[0]
        others = others[others != row]
        if others.size:
            r_mat[others] ^= r_mat[row]
        pivots.append(col)
        row += 1
    return r_mat, pivots


def rank(m) -> int:
    return len(rref(m)[1])


def kernel_basis(m) -> list[np.ndarray]:
    """Canonical basis of the right kernel.

    One basis vector per free column of the reduced echelon form, in
    ascending free-column order; the free coordinate is set to 1 and the
    pivot coordinates are back-substituted.
    """
    r_mat, pivots = rref(m)
    cols = r_mat.shape[1]
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = np.zeros(cols, dtype=np.uint8)
        v[free] = 1
        for row, pc in enumerate(pivots):
            if r_mat[row, free]:
                v[pc] = 1
        basis.append(v)
    return basis


def solve(m, rhs) -> tuple[np.ndarray, list[np.ndarray]] | None:
    """Solve m x = rhs over GF(2).

    Returns (particular, kernel) or None when the system is inconsistent.
    The particular solution is the canonical one with all free variables
    set to 0 under the reduced echelon form; the full solution set is
    particular + span(kernel).
    """
    mat = as_matrix(m)
    b = as_vector(rhs)
    if b.shape[0] != mat.shape[0]:
        raise ValueError(f"matrix has {mat.shape[0]} rows, rhs has {b.shape[0]}")
    cols = mat.shape[1]
    aug, pivots = rref(np.concatenate([mat, b[:, None]], axis=1))
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.uint8)
    for row, pc in enumerate(pivots):
        x[pc] = aug[row, cols]
    return x, kernel_basis(mat)


def minimal_solution(particular, kernel: list[np.ndarray]) -> np.ndarray:
    """Smallest element of particular + span(kernel) in big-endian order.

    Reducing the particular solution to zero on every pivot column of the
    kernel's echelon form yields the unique coset element whose leading
    difference against any other member is a 0, hence the minimum.
    """
    x = as_vector(particular).copy()
    if not kernel:
        return x
    r_mat, pivots = rref(np.array(kernel, dtype=np.uint8))
    for row, pc in enumerate(pivots):
        if x[pc]:
            x ^= r_mat[row]
    return x


def in_rowspace(m, v) -> bool:
    m = as_matrix(m)
    v = as_vector(v)
    if m.shape[1] != v.shape[0]:
        raise ValueError("width mismatch")
    return rank(np.vstack([m, v])) == rank(m)


def enumerate_span(basis: list[np.ndarray], n: int) -> list[np.ndarray]:
    """All vectors in the span of ``basis``, ascending as big-endian integers."""
    span = [np.zeros(n, dtype=np.uint8)]
    for b in basis:
        b = as_vector(b)
        span.extend(v ^ b for v in list(span))
    span.sort(key=to_int)
    return span
