"""Accelerated exact kernels for large structure-constant checks.

Associativity and algebra-map verification are cubic/quartic in the basis
size; above a small dimension the pure dict loops dominate the whole suite.
These kernels run the same contractions as int64 scipy.sparse matrix
products, which is still exact arithmetic: rational inputs are scaled by the
lcm of their denominators (both sides of each identity scale identically),
prime-field inputs are reduced mod p afterwards, and a rigorous a-priori
bound on every intermediate guarantees no int64 overflow. Whenever the bound
cannot be certified (or scipy is unavailable) the kernel returns None and the
caller falls back to the pure implementation.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np

try:
    import scipy.sparse as sp
except ImportError:  # pragma: no cover
    sp = None

from .fields import FieldSpec, Fp
from .linalg import Matrix, Tensor3

_INT64_SAFE = 2**62
_KRON_NNZ_LIMIT = 50_000_000


def available() -> bool:
    return sp is not None


def _int_values(values: list, field: FieldSpec) -> tuple[list[int], int] | None:
    """Exact integer lift of scalars: (ints, scale) with ints = scale * values.

    For GF(p) the residues are returned with scale 1. Returns None when the
    scaled integers cannot be certified to fit the int64 work arrays.
    """
    if field.p is not None:
        return [v.v for v in values], 1
    denoms = [v.denominator for v in values]
    scale = lcm(*denoms) if denoms else 1
    ints = [int(v * scale) for v in values]
    if ints and max(abs(x) for x in ints) >= _INT64_SAFE:
        return None
    return ints, scale


def _csr(shape, rows, cols, vals):
    m = sp.coo_matrix((np.asarray(vals, dtype=np.int64),
                       (np.asarray(rows, dtype=np.int64),
                        np.asarray(cols, dtype=np.int64))),
                      shape=shape).tocsr()
    m.sum_duplicates()
    return m


def _max_row_nnz(m) -> int:
    if m.shape[0] == 0 or m.nnz == 0:
        return 0
    return int(np.diff(m.indptr).max())


def _max_abs(m) -> int:
    return int(np.abs(m.data).max()) if m.nnz else 0


def _product_bound_ok(a, b) -> bool:
    return _max_row_nnz(a) * _max_abs(a) * _max_abs(b) < _INT64_SAFE


def _coo_diff_keys(lhs_keys, lhs_vals, rhs_keys, rhs_vals, p: int | None):
    """Keys where the two exact sparse value maps differ."""
    keys = np.concatenate([lhs_keys, rhs_keys])
    vals = np.concatenate([lhs_vals, -rhs_vals])
    if keys.size == 0:
        return np.empty(0, dtype=np.int64)
    uniq, inverse = np.unique(keys, return_inverse=True)
    sums = np.zeros(len(uniq), dtype=np.int64)
    np.add.at(sums, inverse, vals)
    if p is not None:
        sums %= p
    return uniq[sums != 0]


def assoc_witnesses(mult: Tensor3) -> list[tuple[int, int, int, int]] | None:
    """All (i, j, k, l) where sum_m t[i,j,m] t[m,k,l] != sum_m t[j,k,m] t[i,m,l].

    Returns None when the accelerated path is unavailable; the result is
    otherwise identical to the pure expansion.
    """
    if sp is None:
        return None
    d = mult.d0
    if d != mult.d1 or d != mult.d2 or d**4 >= 2**63:
        return None
    coords = []
    raw = []
    for i, j, k, v in mult.entries():
        coords.append((i, j, k))
        raw.append(v)
    lifted = _int_values(raw, mult.field)
    if lifted is None:
        return None
    vals, _scale = lifted
    p = mult.field.p
    if p is not None:
        vals = [v % p for v in vals]
    ii = np.asarray([c[0] for c in coords], dtype=np.int64)
    jj = np.asarray([c[1] for c in coords], dtype=np.int64)
    kk = np.asarray([c[2] for c in coords], dtype=np.int64)
    vv = np.asarray(vals, dtype=np.int64)

    pair_rows = _csr((d * d, d), ii * d + jj, kk, vv)      # (i,j) x m
    last_cols = _csr((d, d * d), ii, jj * d + kk, vv)      # m x (k,l)
    mid_cols = _csr((d, d * d), jj, ii * d + kk, vv)       # m x (i,l)

    if not (_product_bound_ok(pair_rows, last_cols) and _product_bound_ok(pair_rows, mid_cols)):
        return None

    lhs = (pair_rows @ last_cols).tocoo()   # ((i,j),(k,l)) -> sum_m t[ijm] t[mkl]
    rhs = (pair_rows @ mid_cols).tocoo()    # ((j,k),(i,l)) -> sum_m t[jkm] t[iml]
    if p is not None:
        lhs.data %= p
        rhs.data %= p

    lhs_keys = lhs.row.astype(np.int64) * (d * d) + lhs.col.astype(np.int64)
    r_j, r_k = np.divmod(rhs.row.astype(np.int64), d)
    r_i, r_l = np.divmod(rhs.col.astype(np.int64), d)
    rhs_keys = ((r_i * d + r_j) * d + r_k) * d + r_l

    bad = _coo_diff_keys(lhs_keys, lhs.data, rhs_keys, rhs.data, p)
    out = []
    for key in bad.tolist():
        key, l = divmod(key, d)
        key, k = divmod(key, d)
        i, j = divmod(key, d)
        out.append((i, j, k, l))
    return sorted(out)


def algebra_map_witnesses(f: Matrix, src_mult: Tensor3, dst_mult: Tensor3) -> list[tuple[int, int]] | None:
    """Basis pairs (i, j) where f(e_i e_j) != f(e_i) f(e_j), or None if unavailable.

    f is given in column convention: column i holds the coordinates of the
    image of source basis vector i.
    """
    if sp is None:
        return None
    ds = src_mult.d0
    dt = dst_mult.d0

    def tensor_pair_matrix(t: Tensor3):
        coords, raw = [], []
        for i, j, k, v in t.entries():
            coords.append((i, j, k))
            raw.append(v)
        lifted = _int_values(raw, t.field)
        if lifted is None:
            return None
        vals, scale = lifted
        pp = t.field.p
        if pp is not None:
            vals = [v % pp for v in vals]
        rows = np.asarray([c[0] * t.d1 + c[1] for c in coords], dtype=np.int64)
        cols = np.asarray([c[2] for c in coords], dtype=np.int64)
        return _csr((t.d0 * t.d1, t.d2), rows, cols, vals), scale

    src = tensor_pair_matrix(src_mult)
    dst = tensor_pair_matrix(dst_mult)
    if src is None or dst is None:
        return None
    src_m, src_scale = src
    dst_m, dst_scale = dst

    fraw = []
    fcoords = []
    for i, j, v in f.entries():
        fcoords.append((i, j))
        fraw.append(v)
    lifted = _int_values(fraw, f.field)
    if lifted is None:
        return None
    fvals, f_scale = lifted
    p = f.field.p
    if p is not None:
        fvals = [v % p for v in fvals]
    fm = _csr((dt, ds),
              [c[0] for c in fcoords], [c[1] for c in fcoords], fvals)
    if fm.nnz * fm.nnz > _KRON_NNZ_LIMIT or _max_abs(fm) ** 2 >= _INT64_SAFE:
        return None

    ft = fm.T.tocsr()                  # (ds, dt): ft[i, m] = F[m, i]
    kron_t = sp.kron(ft, ft).tocsr()   # (ds^2, dt^2): ((i,j),(m,n)) -> F[m,i] F[n,j]
    if not (_product_bound_ok(src_m, ft) and _product_bound_ok(kron_t, dst_m)):
        return None

    lhs = (src_m @ ft).tocoo()           # scale src_scale * f_scale
    rhs = (kron_t @ dst_m).tocoo()       # scale f_scale^2 * dst_scale
    if p is not None:
        lhs.data %= p
        rhs.data %= p
        lhs_data = lhs.data.astype(np.int64)
        rhs_data = rhs.data.astype(np.int64)
    else:
        # Cross-multiply to a common scale using exact Python ints.
        lhs_data = lhs.data.astype(object) * (f_scale * dst_scale)
        rhs_data = rhs.data.astype(object) * src_scale

    lhs_keys = lhs.row.astype(np.int64) * dt + lhs.col.astype(np.int64)
    rhs_keys = rhs.row.astype(np.int64) * dt + rhs.col.astype(np.int64)

    keys = np.concatenate([lhs_keys, rhs_keys])
    vals = np.concatenate([lhs_data, rhs_data * (-1)])
    if keys.size == 0:
        return []
    uniq, inverse = np.unique(keys, return_inverse=True)
    sums = np.zeros(len(uniq), dtype=object)
    np.add.at(sums, inverse, vals)
    if p is not None:
        sums = sums % p
    bad = uniq[sums != 0]
    pairs = sorted({tuple(int(x) for x in divmod(int(key) // dt, ds)) for key in bad.tolist()})
    return pairs
