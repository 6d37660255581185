"""Dense linear algebra over GF(p): elimination, kernels, solving.

Vectors are int tuples, matrices are tuples of row tuples.  Pivoting scans
columns left to right, which for field-element coordinate vectors (stored
highest degree first) means highest-degree coordinates are eliminated first.
"""

from __future__ import annotations

from itertools import product
from typing import Iterator, Optional, Sequence

Vec = tuple[int, ...]
Mat = tuple[Vec, ...]


def rref(rows: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] % p), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [v * inv % p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(v - f * w) % p for v, w in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def row_space_basis(rows: Sequence[Sequence[int]], p: int) -> list[Vec]:
    reduced, _ = rref(rows, p)
    return [tuple(r) for r in reduced]


def kernel(mat: Sequence[Sequence[int]], p: int) -> tuple[list[Vec], list[int]]:
    """RREF basis of {v : mat . v = 0} plus its pivot columns."""
    reduced, pivots = rref(mat, p)
    ncols = len(mat[0]) if mat else 0
    free = [c for c in range(ncols) if c not in pivots]
    vecs = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[fc] % p
        vecs.append(v)
    basis, kpivots = rref(vecs, p)
    return [tuple(r) for r in basis], kpivots


def solve(mat: Sequence[Sequence[int]], rhs: Sequence[int], p: int) -> Optional[Vec]:
    """One solution of mat . v = rhs with free coordinates zero, else None."""
    aug = [list(row) + [b] for row, b in zip(mat, rhs)]
    reduced, pivots = rref(aug, p)
    ncols = len(mat[0]) if mat else 0
    v = [0] * ncols
    for row, pc in zip(reduced, pivots):
        if pc == ncols:
            return None  # pivot in the augmented column: inconsistent
        v[pc] = row[ncols]
    return tuple(v)


def matvec(mat: Sequence[Sequence[int]], v: Sequence[int], p: int) -> Vec:
    return tuple(sum(a * b for a, b in zip(row, v)) % p for row in mat)


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], p: int) -> Mat:
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt) for row in a)


def mat_pow(mat: Sequence[Sequence[int]], e: int, p: int) -> Mat:
    n = len(mat)
    result: Mat = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    base: Mat = tuple(tuple(r) for r in mat)
    while e:
        if e & 1:
            result = matmul(result, base, p)
        base = matmul(base, base, p)
        e >>= 1
    return result


def span_elements(basis: Sequence[Sequence[int]], p: int, n: int) -> Iterator[Vec]:
    """Every GF(p)-combination of the basis vectors (includes zero)."""
    if not basis:
        yield (0,) * n
        return
    for coeffs in product(range(p), repeat=len(basis)):
        yield tuple(sum(c * row[i] for c, row in zip(coeffs, basis)) % p for i in range(n))
