"""Explicit Parseval frames, orthonormal bases, and dual completion on Z."""
from __future__ import annotations

from fractions import Fraction

from .errors import DensityViolation, ParameterMismatch, ShapeViolation, UnsupportedSet
from .exact import ExactComplex, Surd
from .periodic_set import full_line
from .signal import GaborSystem, Window, analysis_coefficients, synthesis


def _block(start: int, length: int, M: int) -> Window:
    amp = ExactComplex(Surd.sqrt(Fraction(1, M)))
    return Window.from_exact(start, [amp] * length)


def block_windows(L: int, M: int, N: int) -> list:
    """``(1/sqrt M)`` indicators of consecutive blocks tiling ``{0..N-1}``.

    ``N // M`` full blocks of length ``M``, then the remainder block if
    nonempty, then zero windows up to ``L``.
    """
    full, rest = divmod(N, M)
    wins = [_block(b * M, M, M) for b in range(full)]
    if rest:
        wins.append(_block(full * M, rest, M))
    wins += [Window.zero()] * (L - len(wins))
    return wins


def construct_parseval(L: int, M: int, N: int) -> GaborSystem:
    """A Parseval frame for l^2(Z) with L windows; requires ``N <= LM``."""
    if min(L, M, N) < 1:
        raise DensityViolation("L, M, N must be positive")
    if N > L * M:
        raise DensityViolation(f"N={N} exceeds LM={L * M}: no Parseval frame of this shape")
    return GaborSystem(M, N, tuple(block_windows(L, M, N)), full_line())


def construct_orthonormal(L: int, M: int, N: int) -> GaborSystem:
    """An orthonormal basis for l^2(Z); requires ``N == LM``."""
    if min(L, M, N) < 1 or N != L * M:
        raise ShapeViolation(f"an orthonormal basis needs N == LM, got N={N}, LM={L * M}")
    return GaborSystem(M, N, tuple(block_windows(L, M, N)), full_line())


def dual_completion(sys_g: GaborSystem, sys_h: GaborSystem):
    """Extend two Bessel systems on Z to a dual pair.

    Appends ``K = ceil(N / M)`` windows to each: the analysis side gets a
    block Parseval system ``p``, the synthesis side gets
    ``p_l - (U_h U_g^*) p_l`` where ``U_h U_g^* f = sum <f, g-atom> h-atom``.
    """
    if not sys_g.same_lattice(sys_h):
        raise ParameterMismatch("systems must share L, M, N and the index set")
    if not sys_g.set.is_full:
        raise UnsupportedSet("dual completion is only available on all of Z")
    M, N = sys_g.M, sys_g.N
    K = -(-N // M)
    aux = construct_parseval(K, M, N).windows
    extra_h = [p - synthesis(sys_h, analysis_coefficients(sys_g, p)) for p in aux]
    new_g = GaborSystem(M, N, sys_g.windows + tuple(aux), sys_g.set)
    new_h = GaborSystem(M, N, sys_h.windows + tuple(extra_h), sys_h.set)
    return new_g, new_h
