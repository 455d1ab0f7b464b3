"""Discrete Zak transform ``z(j, theta) = sum_k f(j + kM) exp(2 pi i k theta)`` and
the frame tests it supports when ``N = M`` or ``N = LM``."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .errors import GridTooCoarse, ShapeViolation, UnsupportedSet
from .signal import GaborSystem, Window

DEFAULT_TOL = 1e-10


def zak_point(f: Window, M: int, j: int, theta: float) -> complex:
    """Finite sum ``sum_k f(j + kM) exp(2 pi i k theta)``."""
    if f.is_zero:
        return 0j
    lo, hi = f.support
    k = np.arange(-((j - lo) // M), (hi - j) // M + 1)
    if k.size == 0:
        return 0j
    return complex(np.sum(f(j + k * M) * np.exp(2j * np.pi * k * theta)))


def _coefficients(f: Window, M: int):
    """``(kmin, C)`` with ``C[i, j] = f(j + (kmin + i) M)`` for ``j`` in ``0..M-1``."""
    if f.is_zero:
        return 0, np.zeros((0, M), dtype=np.complex128)
    lo, hi = f.support
    kmin, kmax = lo // M, hi // M
    dense = f.on(kmin * M, (kmax + 1) * M)
    return kmin, dense.reshape(kmax - kmin + 1, M)


def k_span(f: Window, M: int) -> int:
    """Largest spread ``kmax - kmin`` of stored coefficients over the residues."""
    if f.is_zero:
        return 0
    kmin, C = _coefficients(f, M)
    span = 0
    for j in range(M):
        nz = np.flatnonzero(C[:, j])
        if nz.size:
            span = max(span, int(nz[-1] - nz[0]))
    return span


@dataclass(frozen=True, eq=False)
class ZakGrid:
    """Samples ``samples[j, t] = z(j, t/T)`` for ``j < M``, ``t < T``."""

    M: int
    T: int
    samples: np.ndarray

    @property
    def thetas(self) -> np.ndarray:
        return np.arange(self.T) / self.T


def zak_grid(f: Window, M: int, T: int) -> ZakGrid:
    """Zak transform on the grid ``theta = t / T`` via one FFT per residue."""
    if T < 1 or M < 1:
        raise ValueError("M and T must be positive")
    kmin, C = _coefficients(f, M)
    wrapped = np.zeros((T, M), dtype=np.complex128)
    if C.shape[0]:
        np.add.at(wrapped, (kmin + np.arange(C.shape[0])) % T, C)
    # ifft carries exp(+2 pi i k t / T) / T
    samples = (T * np.fft.ifft(wrapped, axis=0)).T
    return ZakGrid(M, T, samples)


def default_grid(sys: GaborSystem) -> int:
    span = max(k_span(w, sys.M) for w in sys.windows)
    return max(64, 4 * span + 1)


def zak_energy(sys: GaborSystem, T: int) -> np.ndarray:
    """``sum_l |z g_l(j, t/T)|^2`` as an ``(M, T)`` array."""
    acc = np.zeros((sys.M, T))
    for w in sys.windows:
        acc += np.abs(zak_grid(w, sys.M, T).samples) ** 2
    return acc


def _require_full(sys: GaborSystem):
    if not sys.set.is_full:
        raise UnsupportedSet("Zak-domain tests are stated on all of Z")


class ZakFrameCheck(NamedTuple):
    A_est: float
    B_est: float
    is_frame: bool
    grid: int


def frame_check_NM(sys: GaborSystem, T: Optional[int] = None, tol: float = DEFAULT_TOL) -> ZakFrameCheck:
    """Frame bounds for ``N = M`` from the extremes of ``M sum_l |z g_l|^2`` on the grid."""
    if sys.N != sys.M:
        raise ShapeViolation(f"needs N == M, got N={sys.N}, M={sys.M}")
    _require_full(sys)
    T = T or default_grid(sys)
    e = sys.M * zak_energy(sys, T)
    A, B = float(e.min()), float(e.max())
    return ZakFrameCheck(A, B, A > tol, T)


def completeness_check_NM(sys: GaborSystem) -> bool:
    """Every residue class mod M meets the support of some window."""
    if sys.N != sys.M:
        raise ShapeViolation(f"needs N == M, got N={sys.N}, M={sys.M}")
    _require_full(sys)
    covered = np.zeros(sys.M, dtype=bool)
    for w in sys.windows:
        covered[w.nonzero_indices() % sys.M] = True
    return bool(covered.all())


def common_zero_check(sys: GaborSystem, T: Optional[int] = None, tol: float = DEFAULT_TOL) -> bool:
    """True when no common zero of the Zak transforms shows up at resolution T or 2T."""
    if sys.N != sys.M:
        raise ShapeViolation(f"needs N == M, got N={sys.N}, M={sys.M}")
    T = T or default_grid(sys)
    return bool(zak_energy(sys, T).min() > tol and zak_energy(sys, 2 * T).min() > tol)


def necessary_check_NLM(sys: GaborSystem, A: float, B: float, T: Optional[int] = None, tol: float = DEFAULT_TOL) -> bool:
    """For ``N = LM``: ``LA/M <= sum_l |z g_l|^2 <= LB/M`` on the grid.

    False refutes the claim that the system is a Riesz basis with bounds ``(A, B)``.
    """
    if sys.N != sys.L * sys.M:
        raise ShapeViolation(f"needs N == LM, got N={sys.N}, LM={sys.L * sys.M}")
    _require_full(sys)
    T = T or default_grid(sys)
    e = zak_energy(sys, T)
    L, M = sys.L, sys.M
    return bool(e.min() >= L * A / M - tol and e.max() <= L * B / M + tol)


def symmetry_zeros(f: Window, M: int, tol: float = 0.0, verify: float = 1e-12) -> list:
    """Zak zeros forced by odd or even symmetry of ``f`` about 0.

    Odd: ``(0, 0)``, ``(0, 1/2)`` and, for even M, ``(M/2, 0)``.
    Even with M even: ``(M/2, 1/2)``.
    """
    if f.is_zero:
        idx = np.zeros(1, dtype=np.int64)
    else:
        lo, hi = f.support
        r = max(abs(lo), abs(hi))
        idx = np.arange(-r, r + 1)
    v, vr = f(idx), f(-idx)
    odd = bool(np.all(np.abs(vr + v) <= tol))
    even = bool(np.all(np.abs(vr - v) <= tol))
    out = []
    if odd:
        out += [(0, 0.0), (0, 0.5)]
        if M % 2 == 0:
            out.append((M // 2, 0.0))
    if even and M % 2 == 0:
        out.append((M // 2, 0.5))
    for j, th in out:
        if abs(zak_point(f, M, j, th)) > verify:
            raise AssertionError(f"forced zero at ({j}, {th}) did not verify")
    return out


def zak_unitarity_residual(f: Window, M: int, T: int) -> float:
    """``|sum_j mean_t |z(j, t/T)|^2 - ||f||^2|``; the quadrature is exact once T is fine enough."""
    need = 2 * k_span(f, M) + 1
    if T < need:
        raise GridTooCoarse(f"grid {T} is below the exactness threshold {need}")
    z = zak_grid(f, M, T).samples
    return float(abs((np.abs(z) ** 2).mean(axis=1).sum() - f.norm2()))


def truncated_gaussian(rate: float = 1.0, tail: float = 1e-14) -> Window:
    """``exp(-rate k^2)`` cut at the smallest radius whose discarded energy is below ``tail * ||g||^2``."""
    r = 0
    while True:
        k = np.arange(r + 1, r + 200)
        dropped = 2 * np.sum(np.exp(-2 * rate * k.astype(float) ** 2))
        if dropped < tail:  # norm^2 >= 1 since g(0) = 1
            break
        r += 1
    k = np.arange(-r, r + 1)
    return Window(-r, np.exp(-rate * k.astype(float) ** 2))


def zak_csv(sys: GaborSystem, T: int) -> str:
    """Rows ``(l, j, theta, re, im, energy)`` with ``energy = sum_l |z|^2`` at ``(j, theta)``."""
    grids = [zak_grid(w, sys.M, T).samples for w in sys.windows]
    e = sum(np.abs(g) ** 2 for g in grids)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["l", "j", "theta", "re", "im", "energy"])
    for l, g in enumerate(grids):
        for j in range(sys.M):
            for t in range(T):
                z = g[j, t]
                w.writerow([l, j, repr(t / T), repr(float(z.real)), repr(float(z.imag)), repr(float(e[j, t]))])
    return buf.getvalue()
