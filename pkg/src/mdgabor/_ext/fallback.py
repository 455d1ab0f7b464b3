"""Pure numpy implementations of the hot kernels.

Signatures mirror ``_core.pyx`` exactly.  Inputs are contiguous complex128
value arrays with an integer offset (index of the first sample).
"""
import numpy as np


def correlation_block(h, h_off, g, g_off, M, N, js, kmin, kmax):
    """Entries ``sum_n h(j - nN) * conj(g(j + kM - nN))`` for j in ``js``, k in [kmin, kmax].

    Returns a complex array of shape ``(len(js), kmax - kmin + 1)``.
    """
    nk = kmax - kmin + 1
    out = np.zeros((len(js), nk), dtype=np.complex128)
    if len(h) == 0 or len(g) == 0 or nk <= 0:
        return out
    h_hi = h_off + len(h) - 1
    x = np.arange(h_off, h_hi + 1)
    gc = np.conj(g)
    for ki, k in enumerate(range(kmin, kmax + 1)):
        # lagged product p(x) = h(x) conj(g(x + kM)), then periodize mod N
        y = x + k * M - g_off
        ok = (y >= 0) & (y < len(g))
        if not ok.any():
            continue
        prod = h[ok] * gc[y[ok]]
        folded = np.zeros(N, dtype=np.complex128)
        np.add.at(folded, x[ok] % N, prod)
        out[:, ki] = folded[np.asarray(js) % N]
    return out


def analysis_block(f, f_off, g, g_off, M, N, roots):
    """Coefficients ``<f, E_{m/M} T_{nN} g>`` for every overlapping n and every m.

    ``roots[r]`` must hold ``exp(-2 pi i r / M)``.  Returns ``(n_lo, coefs)``
    with ``coefs[i, m]`` the coefficient for ``n = n_lo + i``.
    """
    if len(f) == 0 or len(g) == 0:
        return 0, np.zeros((0, M), dtype=np.complex128)
    f_hi = f_off + len(f) - 1
    g_hi = g_off + len(g) - 1
    n_lo = -((g_hi - f_off) // N)  # ceil((f_lo - g_hi) / N)
    n_hi = (f_hi - g_off) // N
    count = max(n_hi - n_lo + 1, 0)
    coefs = np.zeros((count, M), dtype=np.complex128)
    jj = np.arange(f_off, f_hi + 1)
    r = jj % M
    # DFT matrix over residues: dft[r, m] = exp(-2 pi i m r / M)
    dft = roots[(np.arange(M)[:, None] * np.arange(M)[None, :]) % M]
    gc = np.conj(g)
    for i in range(count):
        shift = (n_lo + i) * N
        y = jj - shift - g_off
        ok = (y >= 0) & (y < len(g))
        if not ok.any():
            continue
        folded = np.bincount(r[ok], weights=(f[ok] * gc[y[ok]]).real, minlength=M) + 1j * np.bincount(
            r[ok], weights=(f[ok] * gc[y[ok]]).imag, minlength=M
        )
        coefs[i] = folded @ dft
    return n_lo, coefs


def walnut_apply(G, row_of, kmin, M, N, f, f_off):
    """Banded application ``(Sf)(j) = M sum_k G_k(j) f(j + kM)``.

    ``G`` has shape ``(rows, nk)``; ``row_of[j mod N]`` gives the row of
    residue j, or -1 when j is outside the index set.  Returns
    ``(out_off, out_values)``.
    """
    nk = G.shape[1]
    kmax = kmin + nk - 1
    if len(f) == 0 or nk == 0:
        return 0, np.zeros(0, dtype=np.complex128)
    out_off = f_off - kmax * M
    out_len = len(f) + (kmax - kmin) * M
    out = np.zeros(out_len, dtype=np.complex128)
    j = np.arange(out_off, out_off + out_len)
    rows = row_of[j % N]
    member = rows >= 0
    for ki in range(nk):
        k = kmin + ki
        src = j + k * M - f_off
        ok = member & (src >= 0) & (src < len(f))
        out[ok] += G[rows[ok], ki] * f[src[ok]]
    return out_off, M * out
