"""Periodized finite model of a Gabor system on Z_P.

All operators become dense matrices: the synthesis matrix ``U`` has one
column per atom, the frame operator is ``U U^H``.  Verdicts computed here
hold for the model with the stated ``P``; they are witnesses for the
infinite-dimensional statements, not proofs of them.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import lcm
from typing import NamedTuple, Optional

import numpy as np

from .errors import DimensionMismatch, RangeViolation
from .signal import AtomIndex, GaborSystem, unit_roots

DEFAULT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class FiniteModel:
    """Synthesis matrix of the periodized atoms, columns ordered (l, n, m)."""

    P: int
    M: int
    N: int
    L: int
    member: np.ndarray  # boolean mask of the index set on Z_P
    synthesis: np.ndarray

    @property
    def atom_count(self) -> int:
        return self.synthesis.shape[1]

    @property
    def atom_indices(self) -> list:
        return [AtomIndex(l, m, n) for l in range(self.L) for n in range(self.P // self.N) for m in range(self.M)]

    def frame_operator(self) -> np.ndarray:
        U = self.synthesis
        return U @ U.conj().T

    def analysis(self, x: np.ndarray) -> np.ndarray:
        return self.synthesis.conj().T @ x


def periodize(values: np.ndarray, offset: int, P: int) -> np.ndarray:
    """``v(j) = sum_r w(j + rP)`` on ``0..P-1``."""
    out = np.zeros(P, dtype=np.complex128)
    if len(values):
        np.add.at(out, (offset + np.arange(len(values))) % P, values)
    return out


def build_model(sys: GaborSystem, periods: int = 1) -> FiniteModel:
    """Finite model on ``Z_P`` with ``P = periods * lcm(M, N)``."""
    if periods < 1:
        raise ValueError("periods must be >= 1")
    M, N = sys.M, sys.N
    P = periods * lcm(M, N, sys.set.period)
    if any(w.width >= P for w in sys.windows):
        warnings.warn(f"a window is wider than the model period P={P}; periodization wraps it", stacklevel=2)
    j = np.arange(P)
    phases = np.asarray(unit_roots(M, 1))[(np.arange(M)[:, None] * j[None, :]) % M]  # (M, P)
    cols = []
    for w in sys.windows:
        for n in range(P // N):
            base = periodize(w.values, w.offset + n * N, P)
            cols.append(phases * base[None, :])
    U = np.concatenate(cols, axis=0).T if cols else np.zeros((P, 0), dtype=np.complex128)
    return FiniteModel(P, M, N, sys.L, sys.set.mask(0, P), np.ascontiguousarray(U))


def _check_square(model: FiniteModel, K: np.ndarray):
    K = np.asarray(K, dtype=np.complex128)
    if K.shape != (model.P, model.P):
        raise DimensionMismatch(f"operator has shape {K.shape}, model needs ({model.P}, {model.P})")
    return K


def spectral_frame_bounds(model: FiniteModel):
    """Extreme eigenvalues of the frame operator on the index set."""
    S = model.frame_operator()[np.ix_(model.member, model.member)]
    ev = np.linalg.eigvalsh(S)
    return float(ev[0]), float(ev[-1])


def range_projector(U: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthogonal projector onto the column space of ``U`` (numerical rank ``tol * s_max``)."""
    if U.size == 0:
        return np.zeros((U.shape[0], U.shape[0]), dtype=np.complex128)
    Q, s, _ = np.linalg.svd(U, full_matrices=False)
    rank = int(np.sum(s > tol * s[0])) if s.size and s[0] > 0 else 0
    Q = Q[:, :rank]
    return Q @ Q.conj().T


def douglas_range_check(model: FiniteModel, K: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """Whether every column of ``K`` lies in the range of the synthesis matrix."""
    K = _check_square(model, K)
    Pi = range_projector(model.synthesis, tol)
    resid = np.linalg.norm(K - Pi @ K, 2)
    return bool(resid <= tol * max(1.0, np.linalg.norm(K, 2)))


class KFrameVerdict(NamedTuple):
    is_kframe: bool
    A_opt: Optional[float]
    B: float
    zero_operator: bool = False


def kframe_verdict(model: FiniteModel, K: np.ndarray, tol: float = DEFAULT_TOL) -> KFrameVerdict:
    """K-frame test with the optimal lower bound ``1 / lambda_max(K^H S^+ K)``.

    For ``K = 0`` every lower bound works; the verdict is positive with
    ``A_opt = None`` and ``zero_operator`` set.
    """
    K = _check_square(model, K)
    S = model.frame_operator()
    ev, V = np.linalg.eigh(S)
    B = float(ev[-1])
    if not np.any(K):
        return KFrameVerdict(True, None, B, True)
    if not douglas_range_check(model, K, tol):
        return KFrameVerdict(False, None, B)
    keep = ev > tol * max(ev[-1], 0.0)
    S_pinv = (V[:, keep] / ev[keep]) @ V[:, keep].conj().T
    top = np.linalg.eigvalsh(K.conj().T @ S_pinv @ K)[-1]
    return KFrameVerdict(True, float(1.0 / top), B)


def s_hg_matrix(model_g: FiniteModel, model_h: FiniteModel) -> np.ndarray:
    """``U_g U_h^H``: analyze with the h-atoms, synthesize with the g-atoms."""
    if model_g.synthesis.shape != model_h.synthesis.shape or model_g.P != model_h.P:
        raise DimensionMismatch("models differ in P or atom indexing")
    return model_g.synthesis @ model_h.synthesis.conj().T


def _reconstructs(U, L, K, tol, rng, trials=20):
    scale = max(1.0, np.linalg.norm(K, 2))
    for _ in range(trials):
        x = rng.standard_normal(K.shape[0]) + 1j * rng.standard_normal(K.shape[0])
        if np.linalg.norm(U @ (L @ x) - K @ x) > tol * scale * np.linalg.norm(x):
            return False
    return True


def k_dual_minimal_norm(model: FiniteModel, K: np.ndarray, tol: float = DEFAULT_TOL, seed: int = 0) -> np.ndarray:
    """Minimal-norm K-dual family: row ``i`` is the dual vector of atom ``i``.

    Factor ``K = U F^*`` with ``F^* = U^+ K``; then ``Kx = sum_i <x, f_i> u_i``.
    """
    K = _check_square(model, K)
    if not douglas_range_check(model, K, tol):
        raise RangeViolation("range of K is not inside the range of the synthesis matrix")
    U = model.synthesis
    L = np.linalg.pinv(U, rcond=tol) @ K
    if np.linalg.norm(U @ L - K, 2) > tol * max(1.0, np.linalg.norm(K, 2)):
        raise RangeViolation("factorization residual above tolerance")
    if not _reconstructs(U, L, K, tol, np.random.default_rng(seed)):
        raise RangeViolation("K-dual reconstruction failed")
    return L.conj()


def k_minimality_check(model: FiniteModel, tol: float = DEFAULT_TOL) -> bool:
    """Full column rank of the synthesis matrix (unique K-dual)."""
    U = model.synthesis
    if U.shape[1] == 0 or U.shape[1] > U.shape[0]:
        return False
    s = np.linalg.svd(U, compute_uv=False)
    return bool(s[0] > 0 and s[-1] > tol * s[0])


def km_composition_check(model: FiniteModel, K: np.ndarray, Mop: np.ndarray, kduals: np.ndarray,
                         tol: float = DEFAULT_TOL, seed: int = 0) -> bool:
    """Whether ``{Mop^H a_i}`` is a ``K Mop``-dual family when ``{a_i}`` is a K-dual family."""
    K = _check_square(model, K)
    Mop = _check_square(model, Mop)
    KM = K @ Mop
    if not douglas_range_check(model, KM, tol):
        raise RangeViolation("K Mop fails the range check although K passed it")
    composed = kduals @ Mop.conj()  # row i is (Mop^H a_i)^T
    return _reconstructs(model.synthesis, composed.conj(), KM, tol, np.random.default_rng(seed))


def modulation_matrix(P: int, m: int, M: int) -> np.ndarray:
    """``diag(exp(2 pi i m j / M))`` on ``Z_P``."""
    if P % M:
        raise DimensionMismatch("M must divide P")
    return np.diag(np.asarray(unit_roots(M, 1))[(m * np.arange(P)) % M])


def translation_matrix(P: int, shift: int) -> np.ndarray:
    """``(Tx)(j) = x(j - shift mod P)``."""
    return np.roll(np.eye(P, dtype=np.complex128), shift, axis=0)
