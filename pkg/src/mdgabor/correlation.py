"""Banded cross-correlation tables of two Gabor systems.

For systems ``g`` (analysis) and ``h`` (synthesis) on the same lattice the
table holds

    G_k(j) = sum_l sum_n h_l(j - nN) conj(g_l(j + kM - nN))

for ``j`` in one period of the index set and ``k`` in a finite band.  The
mixed frame operator ``f -> sum <f, g-atom> h-atom`` acts as
``(Sf)(j) = M sum_k G_k(j) f(j + kM)`` on the index set.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from . import _ext
from .errors import ImaginaryResidue, ParameterMismatch
from .exact import ZERO, ExactComplex
from .periodic_set import PeriodicSet
from .signal import GaborSystem, Window


@dataclass(frozen=True, eq=False)
class CorrelationTable:
    """``entries[i, k + band_radius] = G_k(js[i])`` where ``js`` lists the set residues mod N."""

    M: int
    N: int
    L: int
    set: PeriodicSet
    band_radius: int
    entries: np.ndarray
    exact_entries: Optional[tuple] = field(default=None, repr=False)
    autocorrelation: bool = False

    @property
    def js(self) -> np.ndarray:
        return np.asarray(self.set.residues, dtype=np.int64)

    @property
    def ks(self) -> np.ndarray:
        return np.arange(-self.band_radius, self.band_radius + 1)

    @cached_property
    def row_of(self) -> np.ndarray:
        """``row_of[r]`` is the table row of residue r, or -1 outside the set."""
        out = np.full(self.N, -1, dtype=np.int64)
        out[self.js] = np.arange(len(self.js))
        return out

    @property
    def is_exact(self) -> bool:
        return self.exact_entries is not None

    def G(self, k: int, j: int) -> complex:
        """Entry ``G_k(j)`` for any integer ``j``; zero off the set or outside the band."""
        if abs(k) > self.band_radius:
            return 0j
        row = self.row_of[j % self.N]
        if row < 0:
            return 0j
        return complex(self.entries[row, k + self.band_radius])

    def G_exact(self, k: int, j: int) -> ExactComplex:
        if self.exact_entries is None:
            raise ValueError("table was not built in exact mode")
        if abs(k) > self.band_radius:
            return ZERO
        row = self.row_of[j % self.N]
        if row < 0:
            return ZERO
        return self.exact_entries[row][k + self.band_radius]

    def diagonal(self) -> np.ndarray:
        """``G_0`` on the residues."""
        return self.entries[:, self.band_radius]

    def off_diagonal(self) -> np.ndarray:
        """Entries with ``k != 0`` as a ``(rows, 2R)`` array."""
        R = self.band_radius
        return np.delete(self.entries, R, axis=1)

    def apply(self, f: Window) -> Window:
        """``(Sf)(j) = M sum_k G_k(j) f(j + kM)`` for j in the set."""
        if f.is_zero:
            return Window.zero()
        G = np.ascontiguousarray(self.entries)
        off, vals = _ext.walnut_apply(G, self.row_of, -self.band_radius, self.M, self.N, f.values, f.offset)
        return Window(off, vals)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["j", "k", "re", "im"])
        for i, j in enumerate(self.js):
            for c, k in enumerate(self.ks):
                z = self.entries[i, c]
                w.writerow([int(j), int(k), repr(float(z.real)), repr(float(z.imag))])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "M": self.M,
            "N": self.N,
            "L": self.L,
            "set": self.set.to_dict(),
            "band_radius": self.band_radius,
            "entries": [
                {"j": int(j), "k": int(k), "value": [float(z.real), float(z.imag)]}
                for i, j in enumerate(self.js)
                for k, z in zip(self.ks, self.entries[i])
            ],
        }


def band_limits(sys_g: GaborSystem, sys_h: GaborSystem) -> tuple[int, int]:
    """Smallest and largest k for which ``G_k`` can be nonzero (``(0, -1)`` when none can)."""
    M = sys_g.M
    lo, hi = None, None
    for g, h in zip(sys_g.windows, sys_h.windows):
        if g.is_zero or h.is_zero:
            continue
        (g0, g1), (h0, h1) = g.support, h.support
        a = -((h1 - g0) // M)  # ceil((g0 - h1) / M)
        b = (g1 - h0) // M
        lo = a if lo is None else min(lo, a)
        hi = b if hi is None else max(hi, b)
    if lo is None:
        return 0, -1
    return lo, hi


def _exact_entries(sys_g, sys_h, js, R):
    M, N = sys_g.M, sys_g.N
    rows = []
    for j in js:
        row = []
        for k in range(-R, R + 1):
            acc = ZERO
            for g, h in zip(sys_g.windows, sys_h.windows):
                if g.is_zero or h.is_zero:
                    continue
                h0, h1 = h.support
                for n in range(-((h1 - j) // N), (j - h0) // N + 1):
                    x = j - n * N
                    y = x + k * M - g.offset
                    if 0 <= y < len(g):
                        acc = acc + h.exact[x - h.offset] * g.exact[y].conjugate()
            row.append(acc)
        rows.append(tuple(row))
    return tuple(rows)


def cross_correlation_table(sys_g: GaborSystem, sys_h: GaborSystem, exact: bool = False) -> CorrelationTable:
    """Table of ``sum_l sum_n h_l(j - nN) conj(g_l(j + kM - nN))``.

    With ``exact=True`` the entries are also computed in exact arithmetic,
    provided every window carries exact samples.
    """
    if not sys_g.same_lattice(sys_h):
        raise ParameterMismatch(
            f"systems differ: (L,M,N)=({sys_g.L},{sys_g.M},{sys_g.N}) vs ({sys_h.L},{sys_h.M},{sys_h.N})"
            " or different index sets"
        )
    M, N = sys_g.M, sys_g.N
    kmin, kmax = band_limits(sys_g, sys_h)
    R = max(abs(kmin), abs(kmax), 0) if kmax >= kmin else 0
    js = np.asarray(sys_g.set.residues, dtype=np.int64)
    entries = np.zeros((len(js), 2 * R + 1), dtype=np.complex128)
    for g, h in zip(sys_g.windows, sys_h.windows):
        if g.is_zero or h.is_zero:
            continue
        entries += _ext.correlation_block(h.values, h.offset, g.values, g.offset, M, N, js, -R, R)
    entries.setflags(write=False)
    ex = None
    if exact and all(w.exact is not None for w in sys_g.windows + sys_h.windows):
        ex = _exact_entries(sys_g, sys_h, js, R)
    return CorrelationTable(M, N, sys_g.L, sys_g.set, R, entries, ex, sys_g is sys_h)


def autocorrelation_table(sys: GaborSystem, exact: bool = False) -> CorrelationTable:
    return cross_correlation_table(sys, sys, exact=exact)


def energy_via_table(t: CorrelationTable, f: Window, rtol: float = 1e-12) -> float:
    """``sum |<f, atom>|^2`` computed from an autocorrelation table.

    Evaluates ``M sum_j G_0(j)|f(j)|^2 + M sum_{k != 0} sum_j G_k(j) f(j + kM) conj(f(j))``
    over the index set.  Raises :class:`ImaginaryResidue` if the imaginary
    part is not negligible.
    """
    if f.is_zero:
        return 0.0
    rows = t.row_of[f.indices() % t.N]
    keep = np.flatnonzero(rows >= 0)
    if keep.size == 0:
        return 0.0
    R, M = t.band_radius, t.M
    # f padded so every shift j + kM inside the band stays in range
    pad = R * M
    fp = np.concatenate([np.zeros(pad, complex), f.values, np.zeros(pad, complex)])
    shifted = fp[(keep + pad)[:, None] + M * np.arange(-R, R + 1)[None, :]]
    terms = M * t.entries[rows[keep]] * shifted * np.conj(f.values[keep])[:, None]
    total = terms.sum()
    scale = np.abs(terms).sum()
    if abs(total.imag) > rtol * max(1.0, scale):
        raise ImaginaryResidue(f"energy has imaginary part {total.imag:.3e}")
    return float(total.real)
