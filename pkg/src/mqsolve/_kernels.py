"""Numba kernels for GF(2^e) vector arithmetic and black-box matrix applies.

All table-based kernels take the exp/log tables of the field: exp[i] = x^i for
0 <= i < 2^e - 1, log[exp[i]] = i and log[0] = -1.  Vectors are uint32 arrays
(table fields have e <= 24).  The kernels are the only hot loops in the
package; everything else stays plain numpy/Python.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def build_exp_table(modulus, e):
    order = (1 << e) - 1
    exp = np.zeros(1 << e, dtype=np.uint32)
    x = np.uint64(1)
    mod = np.uint64(modulus)
    one = np.uint64(1)
    ee = np.uint64(e)
    for i in range(order):
        exp[i] = x
        x <<= one
        if x >> ee:
            x ^= mod
    return exp


@njit(cache=True)
def build_log_table(exp, e):
    order = (1 << e) - 1
    log = np.full(1 << e, -1, dtype=np.int64)
    for i in range(order):
        log[exp[i]] = i
    return log


@njit(cache=True)
def vec_mul(a, b, log, exp, order):
    n = a.shape[0]
    out = np.zeros(n, dtype=np.uint32)
    for i in range(n):
        la = log[a[i]]
        lb = log[b[i]]
        if la >= 0 and lb >= 0:
            s = la + lb
            if s >= order:
                s -= order
            out[i] = exp[s]
    return out


@njit(cache=True)
def vec_scale(v, s, log, exp, order):
    n = v.shape[0]
    out = np.zeros(n, dtype=np.uint32)
    ls = log[s]
    if ls < 0:
        return out
    for i in range(n):
        lv = log[v[i]]
        if lv >= 0:
            t = lv + ls
            if t >= order:
                t -= order
            out[i] = exp[t]
    return out


@njit(cache=True)
def vec_axpy(acc, v, s, log, exp, order):
    """acc ^= s * v, in place."""
    ls = log[s]
    if ls < 0:
        return
    for i in range(v.shape[0]):
        lv = log[v[i]]
        if lv >= 0:
            t = lv + ls
            if t >= order:
                t -= order
            acc[i] ^= exp[t]


@njit(cache=True)
def vec_dot(a, b, log, exp, order):
    acc = np.uint32(0)
    for i in range(a.shape[0]):
        la = log[a[i]]
        lb = log[b[i]]
        if la >= 0 and lb >= 0:
            s = la + lb
            if s >= order:
                s -= order
            acc ^= exp[s]
    return acc


@njit(cache=True)
def toeplitz_upper_apply(symbol, v, log, exp, order):
    """y[i] = sum_{j >= i} symbol[j-i] * v[j] for a unit upper triangular Toeplitz."""
    n = v.shape[0]
    y = np.zeros(n, dtype=np.uint32)
    lsym = np.empty(n, dtype=np.int64)
    lv = np.empty(n, dtype=np.int64)
    for i in range(n):
        lsym[i] = log[symbol[i]]
        lv[i] = log[v[i]]
    for i in range(n):
        acc = np.uint32(0)
        for j in range(i, n):
            ls = lsym[j - i]
            lw = lv[j]
            if ls >= 0 and lw >= 0:
                s = ls + lw
                if s >= order:
                    s -= order
                acc ^= exp[s]
        y[i] = acc
    return y


@njit(cache=True)
def toeplitz_lower_apply(symbol, v, log, exp, order):
    """y[i] = sum_{j <= i} symbol[i-j] * v[j] for a unit lower triangular Toeplitz."""
    n = v.shape[0]
    y = np.zeros(n, dtype=np.uint32)
    lsym = np.empty(n, dtype=np.int64)
    lv = np.empty(n, dtype=np.int64)
    for i in range(n):
        lsym[i] = log[symbol[i]]
        lv[i] = log[v[i]]
    for i in range(n):
        acc = np.uint32(0)
        for j in range(i + 1):
            ls = lsym[i - j]
            lw = lv[j]
            if ls >= 0 and lw >= 0:
                s = ls + lw
                if s >= order:
                    s -= order
                acc ^= exp[s]
        y[i] = acc
    return y


@njit(cache=True)
def csr_apply_f2(indptr, indices, v):
    """Matrix-vector product for a 0/1 matrix: per-row XOR gather."""
    nrow = indptr.shape[0] - 1
    y = np.zeros(nrow, dtype=np.uint32)
    for r in range(nrow):
        acc = np.uint32(0)
        for p in range(indptr[r], indptr[r + 1]):
            acc ^= v[indices[p]]
        y[r] = acc
    return y


@njit(cache=True)
def csr_apply_gf(indptr, indices, data, v, log, exp, order):
    nrow = indptr.shape[0] - 1
    y = np.zeros(nrow, dtype=np.uint32)
    for r in range(nrow):
        acc = np.uint32(0)
        for p in range(indptr[r], indptr[r + 1]):
            ld = log[data[p]]
            lv = log[v[indices[p]]]
            if ld >= 0 and lv >= 0:
                s = ld + lv
                if s >= order:
                    s -= order
                acc ^= exp[s]
        y[r] = acc
    return y


@njit(cache=True)
def berlekamp_massey_tables(seq, log, exp, order):
    """Minimal monic annihilator of a GF(2^e) sequence, low-degree-first coefficients.

    Standard discrepancy iteration on the connection polynomial C; the returned
    polynomial is the reversal z^L * C(1/z), which annihilates every window of
    the input: sum_j f[j] * seq[i+j] = 0 for all valid i.
    """
    t_len = seq.shape[0]
    c_poly = np.zeros(t_len + 1, dtype=np.uint32)
    b_poly = np.zeros(t_len + 1, dtype=np.uint32)
    c_poly[0] = 1
    b_poly[0] = 1
    big_l = 0
    m = 1
    b_disc = np.uint32(1)
    for t in range(t_len):
        # discrepancy d = seq[t] + sum_{i=1..L} C[i] * seq[t-i]
        d = seq[t]
        for i in range(1, big_l + 1):
            lc = log[c_poly[i]]
            ls = log[seq[t - i]]
            if lc >= 0 and ls >= 0:
                s = lc + ls
                if s >= order:
                    s -= order
                d ^= exp[s]
        if d == 0:
            m += 1
            continue
        # coef = d / b_disc
        lcoef = log[d] - log[b_disc]
        if lcoef < 0:
            lcoef += order
        if 2 * big_l <= t:
            tmp = c_poly.copy()
            for i in range(t_len + 1 - m):
                lb = log[b_poly[i]]
                if lb >= 0:
                    s = lb + lcoef
                    if s >= order:
                        s -= order
                    c_poly[i + m] ^= exp[s]
            big_l = t + 1 - big_l
            b_poly = tmp
            b_disc = d
            m = 1
        else:
            for i in range(t_len + 1 - m):
                lb = log[b_poly[i]]
                if lb >= 0:
                    s = lb + lcoef
                    if s >= order:
                        s -= order
                    c_poly[i + m] ^= exp[s]
            m += 1
    out = np.zeros(big_l + 1, dtype=np.uint32)
    for j in range(big_l + 1):
        out[j] = c_poly[big_l - j]
    return out
