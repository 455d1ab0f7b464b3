# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``fallback.py`` (same signatures)."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef double complex cplx


cdef inline long floordiv(long a, long b) nogil:
    # python semantics for b > 0
    cdef long q = a / b
    if (a % b != 0) and (a < 0):
        q -= 1
    return q


def correlation_block(const cplx[::1] h, long h_off, const cplx[::1] g, long g_off,
                      long M, long N, js, long kmin, long kmax):
    cdef const long long[::1] jv = np.ascontiguousarray(js, dtype=np.int64)
    cdef long nj = jv.shape[0]
    cdef long nk = kmax - kmin + 1
    out_arr = np.zeros((nj, max(nk, 0)), dtype=np.complex128)
    if h.shape[0] == 0 or g.shape[0] == 0 or nk <= 0:
        return out_arr
    cdef cplx[:, ::1] out = out_arr
    cdef long h_hi = h_off + h.shape[0] - 1
    cdef long glen = g.shape[0]
    cdef long a, ki, k, n, n_lo, n_hi, x, y, j
    cdef cplx acc, gv
    with nogil:
        for a in range(nj):
            j = jv[a]
            # j - nN in [h_off, h_hi]
            n_lo = -floordiv(h_hi - j, N)
            n_hi = floordiv(j - h_off, N)
            for ki in range(nk):
                k = kmin + ki
                acc = 0
                for n in range(n_lo, n_hi + 1):
                    x = j - n * N
                    y = x + k * M - g_off
                    if y < 0 or y >= glen:
                        continue
                    gv = g[y]
                    acc = acc + h[x - h_off] * (gv.real - 1j * gv.imag)
                out[a, ki] = acc
    return out_arr


def analysis_block(const cplx[::1] f, long f_off, const cplx[::1] g, long g_off,
                   long M, long N, const cplx[::1] roots):
    if f.shape[0] == 0 or g.shape[0] == 0:
        return 0, np.zeros((0, M), dtype=np.complex128)
    cdef long f_hi = f_off + f.shape[0] - 1
    cdef long g_hi = g_off + g.shape[0] - 1
    cdef long glen = g.shape[0]
    cdef long n_lo = -floordiv(g_hi - f_off, N)
    cdef long n_hi = floordiv(f_hi - g_off, N)
    cdef long count = n_hi - n_lo + 1
    if count < 0:
        count = 0
    coefs_arr = np.zeros((count, M), dtype=np.complex128)
    folded_arr = np.zeros(M, dtype=np.complex128)
    cdef cplx[:, ::1] coefs = coefs_arr
    cdef cplx[::1] folded = folded_arr
    cdef long i, jj, y, r, m, lo, hi, shift
    cdef cplx gv, acc
    with nogil:
        for i in range(count):
            shift = (n_lo + i) * N
            for r in range(M):
                folded[r] = 0
            lo = f_off
            if g_off + shift > lo:
                lo = g_off + shift
            hi = f_hi
            if g_hi + shift < hi:
                hi = g_hi + shift
            for jj in range(lo, hi + 1):
                y = jj - shift - g_off
                gv = g[y]
                r = jj % M
                if r < 0:
                    r += M
                folded[r] = folded[r] + f[jj - f_off] * (gv.real - 1j * gv.imag)
            for m in range(M):
                acc = 0
                for r in range(M):
                    acc = acc + folded[r] * roots[(m * r) % M]
                coefs[i, m] = acc
    return n_lo, coefs_arr


def walnut_apply(const cplx[:, ::1] G, const long long[::1] row_of, long kmin,
                 long M, long N, const cplx[::1] f, long f_off):
    cdef long nk = G.shape[1]
    if f.shape[0] == 0 or nk == 0:
        return 0, np.zeros(0, dtype=np.complex128)
    cdef long kmax = kmin + nk - 1
    cdef long out_off = f_off - kmax * M
    cdef long out_len = f.shape[0] + (kmax - kmin) * M
    cdef long flen = f.shape[0]
    out_arr = np.zeros(out_len, dtype=np.complex128)
    cdef cplx[::1] out = out_arr
    cdef long idx, j, r, row, ki, src
    cdef cplx acc
    with nogil:
        for idx in range(out_len):
            j = out_off + idx
            r = j % N
            if r < 0:
                r += N
            row = row_of[r]
            if row < 0:
                continue
            acc = 0
            for ki in range(nk):
                src = j + (kmin + ki) * M - f_off
                if src < 0 or src >= flen:
                    continue
                acc = acc + G[row, ki] * f[src]
            out[idx] = M * acc
    return out_off, out_arr
