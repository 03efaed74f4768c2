"""Gaussian elimination over GF(q) on int64 encoding matrices.

Pivoting is deterministic (first nonzero entry in column order) so echelon
forms, ranks and null spaces are bit-reproducible.  The inner loops are
numpy table gathers, which keeps the 2000 x 2000 eliminations used by the
LCP verification inside the time budget.
"""

from __future__ import annotations

import numpy as np

from .field import Field


def as_matrix(data, rows: int | None = None) -> np.ndarray:
    arr = np.asarray(data, dtype=np.int64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if rows is None else arr.reshape(rows, -1)
    return arr


def row_echelon_rank(field: Field, M: np.ndarray) -> int:
    """Rank by forward elimination; M is destroyed."""
    rows, cols = M.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        p0 = r + int(nz[0])
        if p0 != r:
            M[[r, p0]] = M[[p0, r]]
        pivot = int(M[r, c])
        if pivot != 1:
            M[r, c:] = field.vmul(M[r, c:], field.inv(pivot))
        sel = np.nonzero(M[r + 1:, c])[0]
        if sel.size:
            rowsel = sel + r + 1
            factors = M[rowsel, c]
            prod = field.vmul(factors[:, None], M[r, c:][None, :])
            M[rowsel, c:] = field.vsub(M[rowsel, c:], prod)
        r += 1
    return r


def rank(field: Field, M: np.ndarray) -> int:
    return row_echelon_rank(field, np.array(M, dtype=np.int64, copy=True))


def rref(field: Field, M: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form (copy) and the pivot column indices."""
    R = np.array(M, dtype=np.int64, copy=True)
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        p0 = r + int(nz[0])
        if p0 != r:
            R[[r, p0]] = R[[p0, r]]
        pivot = int(R[r, c])
        if pivot != 1:
            R[r, c:] = field.vmul(R[r, c:], field.inv(pivot))
        sel = np.nonzero(R[:, c])[0]
        sel = sel[sel != r]
        if sel.size:
            factors = R[sel, c]
            prod = field.vmul(factors[:, None], R[r, c:][None, :])
            R[sel, c:] = field.vsub(R[sel, c:], prod)
        pivots.append(c)
        r += 1
    return R, pivots


def null_space(field: Field, M: np.ndarray) -> np.ndarray:
    """Basis (rows) of {v : M v = 0}, one row per free column, deterministic."""
    M = as_matrix(M)
    rows, cols = M.shape
    R, pivots = rref(field, M)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for bi, fc in enumerate(free):
        basis[bi, fc] = 1
        for ri, pc in enumerate(pivots):
            basis[bi, pc] = field.neg(int(R[ri, fc]))
    return basis


def row_space_basis(field: Field, M: np.ndarray) -> np.ndarray:
    R, pivots = rref(field, M)
    return R[: len(pivots)]
