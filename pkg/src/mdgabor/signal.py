"""Finitely supported sequences on Z and multi-window Gabor systems built from them."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

import numpy as np

from . import _ext
from .errors import InvalidAtom, InvalidSystem, SchemaError
from .exact import ExactComplex
from .periodic_set import PeriodicSet, full_line, lift_to_period

# exact values for the quarter turns; everything else goes through exp()
_QUARTER = {0: 1.0 + 0j, 1: 1j, 2: -1.0 + 0j, 3: -1j}


@lru_cache(maxsize=64)
def unit_roots(M: int, sign: int = 1) -> np.ndarray:
    """``exp(sign * 2 pi i r / M)`` for ``r = 0..M-1``, exact at multiples of a quarter turn."""
    r = np.arange(M)
    out = np.exp(sign * 2j * np.pi * r / M)
    for k in range(M):
        if (4 * k) % M == 0:
            q = (4 * k // M) % 4
            out[k] = _QUARTER[q] if sign > 0 else np.conj(_QUARTER[q])
    out.setflags(write=False)
    return out


def _exact_quarter(q: int) -> ExactComplex:
    return [ExactComplex(1), ExactComplex(0, 1), ExactComplex(-1), ExactComplex(0, -1)][q % 4]


@dataclass(frozen=True, eq=False)
class Window:
    """A finitely supported complex sequence ``w(j)``.

    ``values[i]`` is the amplitude at ``j = offset + i``.  Exact-zero samples
    at either edge are trimmed on construction, so a nonempty window always
    starts and ends on a nonzero sample.  The zero sequence has no samples.

    ``exact`` optionally carries the same samples in exact arithmetic; it is
    kept through translation, conjugation, negation and quarter-turn
    modulation, and dropped by anything else.
    """

    offset: int
    values: np.ndarray
    exact: Optional[tuple] = field(default=None, repr=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=np.complex128).ravel()
        ex = self.exact
        if ex is not None and len(ex) != len(v):
            raise ValueError("exact samples do not match values")
        nz = np.flatnonzero(v)
        if nz.size == 0:
            off, v, ex = 0, v[:0], (() if ex is not None else None)
        else:
            lo, hi = int(nz[0]), int(nz[-1]) + 1
            off, v = int(self.offset) + lo, v[lo:hi]
            if ex is not None:
                ex = tuple(ex[lo:hi])
        v.setflags(write=False)
        object.__setattr__(self, "offset", off)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "exact", ex)

    # construction helpers
    @classmethod
    def from_values(cls, offset: int, values: Sequence[complex], threshold: float = 0.0) -> "Window":
        """Build a window, trimming edge samples with ``|v| <= threshold``."""
        v = np.array(values, dtype=np.complex128).ravel()
        if threshold > 0:
            big = np.flatnonzero(np.abs(v) > threshold)
            if big.size == 0:
                return cls.zero()
            offset, v = offset + int(big[0]), v[big[0] : big[-1] + 1]
        return cls(offset, v)

    @classmethod
    def from_exact(cls, offset: int, values: Sequence[ExactComplex]) -> "Window":
        values = tuple(values)
        return cls(offset, np.array([complex(x) for x in values], dtype=np.complex128), values)

    @classmethod
    def zero(cls) -> "Window":
        return cls(0, np.zeros(0, dtype=np.complex128), ())

    @classmethod
    def delta(cls, j: int, amplitude: complex = 1.0) -> "Window":
        return cls(j, np.array([amplitude], dtype=np.complex128))

    # support
    def __len__(self) -> int:
        return len(self.values)

    @property
    def is_zero(self) -> bool:
        return len(self.values) == 0

    @property
    def support(self) -> Optional[tuple[int, int]]:
        """``(first, last)`` nonzero index, inclusive; ``None`` for the zero window."""
        if self.is_zero:
            return None
        return self.offset, self.offset + len(self.values) - 1

    @property
    def width(self) -> int:
        """``last - first`` of the support (0 for a single sample or the zero window)."""
        return max(len(self.values) - 1, 0)

    def indices(self) -> np.ndarray:
        return np.arange(self.offset, self.offset + len(self.values))

    def nonzero_indices(self) -> np.ndarray:
        return self.offset + np.flatnonzero(self.values)

    def __call__(self, j):
        """Sample at integer ``j`` (or an integer array)."""
        if np.ndim(j) == 0:
            i = int(j) - self.offset
            return complex(self.values[i]) if 0 <= i < len(self.values) else 0j
        i = np.asarray(j) - self.offset
        ok = (i >= 0) & (i < len(self.values))
        out = np.zeros(i.shape, dtype=np.complex128)
        out[ok] = self.values[i[ok]]
        return out

    def on(self, lo: int, hi: int) -> np.ndarray:
        """Dense samples on ``lo, ..., hi - 1``."""
        out = np.zeros(max(hi - lo, 0), dtype=np.complex128)
        if self.is_zero or hi <= lo:
            return out
        a, b = max(lo, self.offset), min(hi, self.offset + len(self.values))
        if a < b:
            out[a - lo : b - lo] = self.values[a - self.offset : b - self.offset]
        return out

    # norms and arithmetic
    def norm2(self) -> float:
        return float(np.vdot(self.values, self.values).real)

    def norm(self) -> float:
        return float(np.sqrt(self.norm2()))

    def _aligned(self, other: "Window"):
        if self.is_zero and other.is_zero:
            return 0, np.zeros(0, np.complex128), np.zeros(0, np.complex128)
        spans = [w.support for w in (self, other) if not w.is_zero]
        lo = min(s[0] for s in spans)
        hi = max(s[1] for s in spans) + 1
        return lo, self.on(lo, hi), other.on(lo, hi)

    def __add__(self, other: "Window") -> "Window":
        lo, a, b = self._aligned(other)
        return Window(lo, a + b)

    def __sub__(self, other: "Window") -> "Window":
        lo, a, b = self._aligned(other)
        return Window(lo, a - b)

    def __neg__(self) -> "Window":
        ex = tuple(-x for x in self.exact) if self.exact is not None else None
        return Window(self.offset, -self.values, ex)

    def __mul__(self, c: complex) -> "Window":
        return Window(self.offset, self.values * complex(c))

    __rmul__ = __mul__

    def conj(self) -> "Window":
        ex = tuple(x.conjugate() for x in self.exact) if self.exact is not None else None
        return Window(self.offset, np.conj(self.values), ex)

    def allclose(self, other: "Window", atol: float = 1e-12) -> bool:
        _, a, b = self._aligned(other)
        return bool(np.all(np.abs(a - b) <= atol))

    def __repr__(self) -> str:
        return f"Window(offset={self.offset}, values={np.array2string(self.values, precision=6)})"

    # serialization
    def to_dict(self) -> dict:
        return {"offset": self.offset, "values": [[float(z.real), float(z.imag)] for z in self.values]}

    @classmethod
    def from_dict(cls, data: Mapping, threshold: float = 0.0) -> "Window":
        try:
            offset = int(data["offset"])
            raw = data["values"]
            vals = []
            for item in raw:
                if isinstance(item, (list, tuple)):
                    re, im = item
                    vals.append(complex(float(re), float(im)))
                else:
                    vals.append(complex(float(item), 0.0))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad window: {exc}") from exc
        if not all(np.isfinite(v.real) and np.isfinite(v.imag) for v in vals):
            raise SchemaError("window values must be finite")
        return cls.from_values(offset, vals, threshold)


def modulate(w: Window, m: int, M: int) -> Window:
    """``j -> exp(2 pi i m j / M) w(j)``."""
    if M < 1:
        raise ValueError("M must be >= 1")
    if w.is_zero:
        return w
    r = (m * w.indices()) % M
    phase = unit_roots(M, 1)[r]
    ex = None
    if w.exact is not None and all((4 * int(x)) % M == 0 for x in r):
        ex = tuple(v * _exact_quarter(4 * int(x) // M) for v, x in zip(w.exact, r))
    return Window(w.offset, w.values * phase, ex)


def translate(w: Window, shift: int) -> Window:
    """``j -> w(j - shift)``."""
    return Window(w.offset + int(shift), w.values, w.exact)


def inner_product(a: Window, b: Window) -> complex:
    """``sum_j a(j) conj(b(j))`` over the common support."""
    if a.is_zero or b.is_zero:
        return 0j
    lo = max(a.offset, b.offset)
    hi = min(a.offset + len(a), b.offset + len(b))
    if lo >= hi:
        return 0j
    return complex(np.vdot(b.values[lo - b.offset : hi - b.offset], a.values[lo - a.offset : hi - a.offset]))


class AtomIndex(NamedTuple):
    l: int
    m: int
    n: int


@dataclass(frozen=True, eq=False)
class GaborSystem:
    """Windows ``g_0..g_{L-1}`` with modulation order ``M`` and translation step ``N``
    on an ``N``-periodic index set.  The set is re-expressed with period ``N``."""

    M: int
    N: int
    windows: tuple
    set: PeriodicSet = field(default_factory=full_line)

    def __post_init__(self):
        if not isinstance(self.M, (int, np.integer)) or self.M < 1:
            raise InvalidSystem(f"M must be a positive integer, got {self.M!r}")
        if not isinstance(self.N, (int, np.integer)) or self.N < 1:
            raise InvalidSystem(f"N must be a positive integer, got {self.N!r}")
        wins = tuple(self.windows)
        if not wins:
            raise InvalidSystem("a system needs at least one window")
        if not all(isinstance(w, Window) for w in wins):
            raise InvalidSystem("windows must be Window instances")
        try:
            s = lift_to_period(self.set, int(self.N))
        except Exception as exc:
            raise InvalidSystem(str(exc)) from exc
        for l, w in enumerate(wins):
            idx = w.nonzero_indices()
            if idx.size and not s.mask(0, s.period)[idx % s.period].all():
                raise InvalidSystem(f"window {l} is supported outside the index set")
        object.__setattr__(self, "M", int(self.M))
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "windows", wins)
        object.__setattr__(self, "set", s)

    @property
    def L(self) -> int:
        return len(self.windows)

    @property
    def cardinality(self) -> int:
        """card of the set inside one period ``{0..N-1}``."""
        return len(self.set.residues)

    def replace_windows(self, windows: Iterable[Window]) -> "GaborSystem":
        return GaborSystem(self.M, self.N, tuple(windows), self.set)

    def same_lattice(self, other: "GaborSystem") -> bool:
        return (self.L, self.M, self.N, self.set) == (other.L, other.M, other.N, other.set)

    def to_dict(self) -> dict:
        return {
            "L": self.L,
            "M": self.M,
            "N": self.N,
            "set": self.set.to_dict(),
            "windows": [w.to_dict() for w in self.windows],
        }

    @classmethod
    def from_dict(cls, data: Mapping, threshold: float = 0.0) -> "GaborSystem":
        if not isinstance(data, Mapping):
            raise SchemaError("system must be a JSON object")
        try:
            M, N = data["M"], data["N"]
            raw = data["windows"]
        except KeyError as exc:
            raise SchemaError(f"missing field {exc}") from exc
        if not isinstance(M, int) or not isinstance(N, int) or isinstance(M, bool) or isinstance(N, bool):
            raise SchemaError("M and N must be integers")
        if not isinstance(raw, list):
            raise SchemaError("windows must be a list")
        windows = tuple(Window.from_dict(w, threshold) for w in raw)
        if "L" in data and data["L"] != len(windows):
            raise SchemaError(f"L={data['L']} but {len(windows)} windows given")
        s = PeriodicSet.from_dict(data["set"]) if data.get("set") is not None else full_line()
        return cls(M, N, windows, s)


def make_system(M: int, N: int, windows: Iterable, set: Optional[PeriodicSet] = None) -> GaborSystem:
    """Build a system; plain sequences are read as windows starting at 0."""
    wins = tuple(w if isinstance(w, Window) else Window(0, np.asarray(w, dtype=np.complex128)) for w in windows)
    return GaborSystem(M, N, wins, set if set is not None else full_line())


def atom(sys: GaborSystem, idx) -> Window:
    """``E_{m/M} T_{nN} g_l`` for ``idx = (l, m, n)``."""
    l, m, n = idx
    if not 0 <= l < sys.L or not 0 <= m < sys.M:
        raise InvalidAtom(f"atom index {tuple(idx)} out of range for L={sys.L}, M={sys.M}")
    return modulate(translate(sys.windows[l], n * sys.N), m, sys.M)


def analysis_coefficients(sys: GaborSystem, f: Window) -> dict:
    """All nonzero ``<f, atom(l, m, n)>``, enumerated over the finitely many overlapping n."""
    out = {}
    if f.is_zero:
        return out
    roots = unit_roots(sys.M, -1)
    for l, g in enumerate(sys.windows):
        if g.is_zero:
            continue
        n_lo, block = _ext.analysis_block(f.values, f.offset, g.values, g.offset, sys.M, sys.N, np.asarray(roots))
        for i, m in zip(*np.nonzero(block)):
            out[AtomIndex(l, int(m), n_lo + int(i))] = complex(block[i, m])
    return out


def analysis_energy(sys: GaborSystem, f: Window) -> float:
    """``sum |<f, atom>|^2`` by direct enumeration of the coefficients."""
    if f.is_zero:
        return 0.0
    roots = np.asarray(unit_roots(sys.M, -1))
    total = 0.0
    for g in sys.windows:
        if not g.is_zero:
            _, block = _ext.analysis_block(f.values, f.offset, g.values, g.offset, sys.M, sys.N, roots)
            total += float(np.vdot(block, block).real)
    return total


def synthesis(sys: GaborSystem, coefs: Mapping) -> Window:
    """``sum c[idx] * atom(idx)``."""
    if not coefs:
        return Window.zero()
    M, N = sys.M, sys.N
    roots = unit_roots(M, 1)
    grouped: dict = {}
    for idx, c in coefs.items():
        l, m, n = idx
        if not 0 <= l < sys.L or not 0 <= m < M:
            raise InvalidAtom(f"atom index {tuple(idx)} out of range")
        grouped.setdefault((l, n), np.zeros(M, dtype=np.complex128))[m] += c
    spans = []
    for (l, n) in grouped:
        g = sys.windows[l]
        if not g.is_zero:
            spans.append((g.offset + n * N, g.offset + len(g) + n * N))
    if not spans:
        return Window.zero()
    lo, hi = min(s[0] for s in spans), max(s[1] for s in spans)
    acc = np.zeros(hi - lo, dtype=np.complex128)
    # sum_m c_m exp(2 pi i m r / M) for every residue r
    mr = (np.arange(M)[:, None] * np.arange(M)[None, :]) % M
    synth = np.asarray(roots)[mr]
    for (l, n), c in grouped.items():
        g = sys.windows[l]
        if g.is_zero:
            continue
        start = g.offset + n * N
        j = np.arange(start, start + len(g))
        acc[start - lo : start - lo + len(g)] += g.values * (c @ synth)[j % M]
    return Window(lo, acc)
