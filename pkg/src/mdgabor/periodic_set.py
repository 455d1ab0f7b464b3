"""N-periodic subsets of the integers."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable

import numpy as np

from .errors import InvalidSet, SchemaError


@dataclass(frozen=True)
class PeriodicSet:
    """A subset of Z invariant under translation by ``period``.

    Stored in normal form: ``residues`` is the sorted tuple of distinct
    representatives in ``[0, period)``.  Use :func:`make_periodic_set` to
    build one from arbitrary integers.
    """

    period: int
    residues: tuple[int, ...]

    def __post_init__(self):
        if self.period < 1:
            raise InvalidSet(f"period must be >= 1, got {self.period}")
        if not self.residues:
            raise InvalidSet("residue list is empty")
        r = self.residues
        if any(not 0 <= x < self.period for x in r) or any(a >= b for a, b in zip(r, r[1:])):
            raise InvalidSet("residues must be strictly increasing and lie in [0, period)")

    def __contains__(self, j: int) -> bool:
        return contains(self, j)

    def __len__(self) -> int:
        return len(self.residues)

    @property
    def is_full(self) -> bool:
        """True when the set is all of Z."""
        return len(self.residues) == self.period

    def mask(self, lo: int, hi: int) -> np.ndarray:
        """Boolean membership mask for the integers ``lo, ..., hi - 1``."""
        member = np.zeros(self.period, dtype=bool)
        member[list(self.residues)] = True
        return member[np.arange(lo, hi) % self.period]

    def points(self, lo: int, hi: int) -> np.ndarray:
        """Members of the set in ``[lo, hi)``, ascending."""
        idx = np.arange(lo, hi)
        return idx[self.mask(lo, hi)]

    def with_period(self, period: int) -> "PeriodicSet":
        """Re-express the same subset of Z with a multiple of the current period."""
        if period % self.period:
            raise InvalidSet(f"{period} is not a multiple of the set period {self.period}")
        reps = [r + q * self.period for q in range(period // self.period) for r in self.residues]
        return PeriodicSet(period, tuple(sorted(reps)))

    def reduced(self) -> "PeriodicSet":
        """The same subset written with its minimal period."""
        members = set(self.residues)
        for p in _divisors(self.period):
            if all((r + p) % self.period in members for r in self.residues):
                return PeriodicSet(p, tuple(r for r in self.residues if r < p))
        return self

    def to_dict(self) -> dict:
        return {"period": self.period, "residues": list(self.residues)}

    @classmethod
    def from_dict(cls, data: dict) -> "PeriodicSet":
        try:
            period = int(data["period"])
            residues = [int(r) for r in data["residues"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad periodic set: {exc}") from exc
        if period < 1:
            raise SchemaError("period must be a positive integer")
        return make_periodic_set(period, residues)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def make_periodic_set(period: int, residues: Iterable[int]) -> PeriodicSet:
    """Normalize ``residues`` modulo ``period`` into a :class:`PeriodicSet`."""
    residues = list(residues)
    if not residues:
        raise InvalidSet("residue list is empty")
    if period < 1:
        raise InvalidSet(f"period must be >= 1, got {period}")
    return PeriodicSet(int(period), tuple(sorted({int(r) % period for r in residues})))


def full_line() -> PeriodicSet:
    """Z itself."""
    return PeriodicSet(1, (0,))


def contains(s: PeriodicSet, j: int) -> bool:
    # residues is short; a tuple scan beats building a set
    return (j % s.period) in s.residues


def truncation_cardinality(s: PeriodicSet, K: int) -> int:
    """card(S ∩ {0, ..., K-1})."""
    if K < 1:
        raise ValueError("K must be >= 1")
    full, rest = divmod(K, s.period)
    return full * len(s.residues) + sum(1 for r in s.residues if r < rest)


def lift_to_period(s: PeriodicSet, N: int) -> PeriodicSet:
    """Express ``s`` as an ``N``-periodic set.

    Works when the set period divides ``N``; a set whose minimal period does
    not divide ``N`` is not invariant under translation by ``N``.
    """
    if s.period == N:
        return s
    if N % s.period == 0:
        return s.with_period(N)
    m = s.reduced()
    if N % m.period == 0:
        return m.with_period(N)
    raise InvalidSet(
        f"set with period {s.period} is not invariant under translation by {N}"
        f" (gcd {gcd(s.period, N)})"
    )
