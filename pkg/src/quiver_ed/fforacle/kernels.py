"""Batch endomorphism-dimension kernels over prime fields.

Representations of a fixed dimension vector are indexed by an integer:
its base-p digits fill the arrow matrices in arrow order, row-major.
end_dims_range computes the endomorphism dimension for a contiguous
index range, either with a numba-compiled per-representation loop or
with a vectorized numpy batch that eliminates thousands of matrices in
lockstep.  The QUIVER_ED_NUMBA environment variable picks the backend:
"1" forces numba, "0" forces numpy, unset tries numba and falls back.

Both backends share the same precomputed coefficient plan and must
return identical arrays; a property test pins that down.
"""

from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

from ..quiver import Quiver, Vector

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False


def backend_name() -> str:
    """Resolve the active backend from the environment."""
    flag = os.environ.get("QUIVER_ED_NUMBA", "")
    if flag == "1":
        if not HAS_NUMBA:
            raise RuntimeError("QUIVER_ED_NUMBA=1 but numba is not importable")
        return "numba"
    if flag == "0":
        return "numpy"
    return "numba" if HAS_NUMBA else "numpy"


@lru_cache(maxsize=None)
def _plan(quiver: Quiver, alpha: Vector):
    """Sparse coefficient layout of the intertwiner system.

    The unknowns are the entries of one square block f_v per vertex
    (row-major, blocks concatenated in vertex order); each arrow
    a: i -> j with matrix entries F[k][c] contributes the equations
    sum_k f_j[r,k] F[k,c] - sum_k F[r,k] f_i[k,c] = 0.  Every term
    multiplies exactly one unknown by (plus or minus) one digit, so the
    plan is four parallel arrays: equation row, unknown column, digit
    index, sign.
    """
    n = quiver.vertex_count
    col_offset = [0] * n
    acc = 0
    for v in range(n):
        col_offset[v] = acc
        acc += alpha[v] * alpha[v]
    total_cols = acc

    rows: list[int] = []
    cols: list[int] = []
    digs: list[int] = []
    sgns: list[int] = []
    row_base = 0
    dig_base = 0
    for s, t in quiver.arrows:
        ai = alpha[s - 1]
        aj = alpha[t - 1]
        for r in range(aj):
            for c in range(ai):
                row = row_base + r * ai + c
                for k in range(aj):
                    rows.append(row)
                    cols.append(col_offset[t - 1] + r * aj + k)
                    digs.append(dig_base + k * ai + c)
                    sgns.append(1)
                for k in range(ai):
                    rows.append(row)
                    cols.append(col_offset[s - 1] + k * ai + c)
                    digs.append(dig_base + r * ai + k)
                    sgns.append(-1)
        row_base += aj * ai
        dig_base += aj * ai
    return (
        dig_base,  # digits per representation
        row_base,  # equation count
        total_cols,
        np.asarray(rows, dtype=np.int64),
        np.asarray(cols, dtype=np.int64),
        np.asarray(digs, dtype=np.int64),
        np.asarray(sgns, dtype=np.int64),
    )


def rep_space_exponent(quiver: Quiver, alpha: Vector) -> int:
    """Number of base-p digits needed to index a representation."""
    return _plan(quiver, tuple(alpha))[0]


def _digit_matrix(start: int, stop: int, p: int, width: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, width), dtype=np.int64)
    for e in range(width):
        out[:, e] = idx % p
        idx = idx // p
    return out


def _end_dims_numpy(p: int, plan, start: int, stop: int) -> np.ndarray:
    n_digits, n_rows, n_cols, t_row, t_col, t_dig, t_sgn = plan
    result = np.empty(stop - start, dtype=np.int64)
    if n_cols == 0:
        result[:] = 0
        return result
    chunk = max(1, min(8192, (1 << 22) // max(1, n_rows * n_cols)))
    inv_table = np.array(
        [0] + [pow(x, p - 2, p) for x in range(1, p)], dtype=np.int64
    )
    pos = start
    while pos < stop:
        hi = min(pos + chunk, stop)
        B = hi - pos
        digits = _digit_matrix(pos, hi, p, n_digits)
        mats = np.zeros((B, n_rows, n_cols), dtype=np.int64)
        if t_row.size:
            np.add.at(
                mats,
                (np.arange(B)[:, None], t_row[None, :], t_col[None, :]),
                t_sgn[None, :] * digits[:, t_dig],
            )
        mats %= p
        ranks = _batch_rank(mats, p, inv_table)
        result[pos - start : hi - start] = n_cols - ranks
        pos = hi
    return result


def _batch_rank(mats: np.ndarray, p: int, inv_table: np.ndarray) -> np.ndarray:
    """Row-echelon rank of every matrix in the batch, mod p.

    All matrices advance through the same column loop; each keeps its
    own running rank, so a batch mixes matrices of different ranks
    without divergence.
    """
    B, R, C = mats.shape
    rank = np.zeros(B, dtype=np.int64)
    rows = np.arange(R, dtype=np.int64)
    for col in range(C):
        if R == 0:
            break
        avail = (rows[None, :] >= rank[:, None]) & (mats[:, :, col] != 0)
        has = avail.any(axis=1)
        if not has.any():
            continue
        b_idx = np.nonzero(has)[0]
        piv = np.argmax(avail[b_idx], axis=1)
        r0 = rank[b_idx]
        swap_a = mats[b_idx, r0].copy()
        mats[b_idx, r0] = mats[b_idx, piv]
        mats[b_idx, piv] = swap_a
        pivot_vals = mats[b_idx, r0, col]
        pivot_rows = mats[b_idx, r0] * inv_table[pivot_vals][:, None] % p
        mats[b_idx, r0] = pivot_rows
        below = rows[None, :] > r0[:, None]
        factors = np.where(below, mats[b_idx][:, :, col], 0)
        mats[b_idx] = (mats[b_idx] - factors[:, :, None] * pivot_rows[:, None, :]) % p
        rank[b_idx] += 1
    return rank


_NUMBA_KERNEL = None


def _get_numba_kernel():
    global _NUMBA_KERNEL
    if _NUMBA_KERNEL is not None:
        return _NUMBA_KERNEL

    @njit(cache=False)
    def kernel(p, n_digits, n_rows, n_cols, t_row, t_col, t_dig, t_sgn, start, stop, out):
        digits = np.zeros(n_digits, dtype=np.int64)
        mat = np.zeros((n_rows, n_cols), dtype=np.int64)
        for b in range(stop - start):
            index = start + b
            for e in range(n_digits):
                digits[e] = index % p
                index //= p
            for r in range(n_rows):
                for c in range(n_cols):
                    mat[r, c] = 0
            for t in range(t_row.shape[0]):
                mat[t_row[t], t_col[t]] += t_sgn[t] * digits[t_dig[t]]
            rank = 0
            for col in range(n_cols):
                pivot = -1
                for r in range(rank, n_rows):
                    if mat[r, col] % p != 0:
                        pivot = r
                        break
                if pivot == -1:
                    continue
                if pivot != rank:
                    for c2 in range(n_cols):
                        tmp = mat[rank, c2]
                        mat[rank, c2] = mat[pivot, c2]
                        mat[pivot, c2] = tmp
                pv = mat[rank, col] % p
                inv = 1
                base = pv
                exp = p - 2
                while exp > 0:
                    if exp & 1:
                        inv = (inv * base) % p
                    base = (base * base) % p
                    exp >>= 1
                for c2 in range(col, n_cols):
                    mat[rank, c2] = (mat[rank, c2] % p) * inv % p
                for r2 in range(rank + 1, n_rows):
                    f = mat[r2, col] % p
                    if f != 0:
                        for c2 in range(col, n_cols):
                            mat[r2, c2] = (mat[r2, c2] - f * mat[rank, c2]) % p
                rank += 1
            out[b] = n_cols - rank
        return out

    _NUMBA_KERNEL = kernel
    return kernel


def end_dims_range(
    quiver: Quiver,
    alpha: Vector,
    p: int,
    start: int,
    stop: int,
    backend: str | None = None,
) -> np.ndarray:
    """Endomorphism dimensions of the representations with indices in
    [start, stop), as an int64 array."""
    plan = _plan(quiver, tuple(alpha))
    if backend is None:
        backend = backend_name()
    if stop <= start:
        return np.empty(0, dtype=np.int64)
    if backend == "numba":
        out = np.empty(stop - start, dtype=np.int64)
        kernel = _get_numba_kernel()
        return kernel(
            p, plan[0], plan[1], plan[2], plan[3], plan[4], plan[5], plan[6],
            start, stop, out,
        )
    return _end_dims_numpy(p, plan, start, stop)
