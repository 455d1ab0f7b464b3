"""Independent brute-force references.

Plain Python loops with cmath and dicts; nothing here calls the package's
kernels, tables or FFTs.  Windows are passed as ``{j: value}`` dicts.
"""
import cmath
import math


def as_dict(w):
    return {int(w.offset + i): complex(v) for i, v in enumerate(w.values) if v != 0}


def atom_dict(g, m, n, M, N):
    return {j + n * N: v * cmath.exp(2j * math.pi * m * (j + n * N) / M) for j, v in g.items()}


def inner(a, b):
    return sum(v * b.get(j, 0).conjugate() for j, v in a.items())


def n_range(f, g, N):
    """Every n for which T_{nN} g can overlap f (generously padded)."""
    if not f or not g:
        return range(0)
    lo = (min(f) - max(g)) // N - 1
    hi = (max(f) - min(g)) // N + 1
    return range(lo, hi + 1)


def coefficients(windows, M, N, f):
    out = {}
    for l, g in enumerate(windows):
        for n in n_range(f, g, N):
            for m in range(M):
                c = inner(f, atom_dict(g, m, n, M, N))
                if abs(c) > 0:
                    out[(l, m, n)] = c
    return out


def energy(windows, M, N, f):
    return sum(abs(c) ** 2 for c in coefficients(windows, M, N, f).values())


def synthesize(windows, M, N, coefs):
    out = {}
    for (l, m, n), c in coefs.items():
        for j, v in atom_dict(windows[l], m, n, M, N).items():
            out[j] = out.get(j, 0) + c * v
    return out


def mixed_operator(g_windows, h_windows, M, N, f):
    """sum <f, g-atom> h-atom."""
    return synthesize(h_windows, M, N, coefficients(g_windows, M, N, f))


def correlation(g_windows, h_windows, M, N, j, k):
    total = 0j
    for g, h in zip(g_windows, h_windows):
        if not g or not h:
            continue
        for n in range(-200, 201):
            total += h.get(j - n * N, 0) * g.get(j + k * M - n * N, 0).conjugate()
    return total


def zak(f, M, j, theta):
    return sum(v * cmath.exp(2j * math.pi * ((i - j) // M) * theta) for i, v in f.items() if (i - j) % M == 0)


def close(a, b, tol):
    keys = set(a) | set(b)
    return all(abs(a.get(k, 0) - b.get(k, 0)) <= tol for k in keys)
