"""Frame verdicts and bounds read off correlation tables, plus a randomized oracle."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .correlation import CorrelationTable, autocorrelation_table, cross_correlation_table
from .errors import FormDisagreement, ParameterMismatch, RangeViolation, SingularDiagonal, SupportTooWide
from .exact import ExactComplex
from .signal import GaborSystem, Window, analysis_energy

DEFAULT_TOL = 1e-10


@dataclass
class FrameReport:
    """Summary of everything the correlation table says about one system.

    ``verdict`` is ``"frame"`` when a sufficient test succeeded,
    ``"not_frame"`` when a necessary condition failed, and
    ``"inconclusive"`` otherwise.
    """

    bessel_bound: Optional[float]
    lower_bound: Optional[float]
    is_bessel: bool
    is_frame_sufficient: bool
    is_parseval: bool
    is_riesz: bool
    is_orthonormal: bool
    density_ok: bool
    card_SN: int
    LM: int
    narrow_support: bool = False
    verdict: str = "inconclusive"

    def to_dict(self) -> dict:
        return asdict(self)


def sufficient_bounds(t: CorrelationTable):
    """``(A, B, is_bessel, is_frame)`` from row sums of the table.

    ``B = M max_j sum_k |G_k(j)|`` is always a Bessel bound.  When
    ``A = M min_j (G_0(j) - sum_{k != 0} |G_k(j)|)`` is positive the pair is a
    valid frame-bound pair; ``A <= 0`` means the test says nothing.
    """
    if t.entries.size == 0:
        return 0.0, 0.0, True, False
    mag = np.abs(t.entries)
    B = t.M * float(mag.sum(axis=1).max())
    diag = t.diagonal().real
    off = mag.sum(axis=1) - mag[:, t.band_radius]
    A = t.M * float((diag - off).min())
    return A, B, True, A > 0


def necessary_diagonal_check(t: CorrelationTable, A: float, B: float, tol: float = 0.0) -> bool:
    """False when ``A/M <= G_0(j) <= B/M`` fails somewhere, so ``(A, B)`` cannot be frame bounds."""
    d = t.diagonal().real
    return bool(np.all(d >= A / t.M - tol) and np.all(d <= B / t.M + tol))


def _exact_unit_table(t: CorrelationTable) -> bool:
    target = ExactComplex(Fraction(1, t.M))
    R = t.band_radius
    for row in t.exact_entries:
        for c, z in enumerate(row):
            if not (z == target if c == R else z.is_zero()):
                return False
    return True


def _unit_table(t: CorrelationTable, tol: float) -> bool:
    if tol == 0 and t.is_exact:
        return _exact_unit_table(t)
    R = t.band_radius
    diag_ok = np.all(np.abs(t.entries[:, R] - 1.0 / t.M) <= tol)
    off_ok = np.all(np.abs(t.off_diagonal()) <= tol)
    return bool(diag_ok and off_ok)


def parseval_check(t: CorrelationTable, tol: float = DEFAULT_TOL) -> bool:
    """Diagonal equal to ``1/M`` and every off-diagonal entry zero, to within ``tol``.

    With ``tol == 0`` on a table built in exact mode the comparison is exact.
    """
    return _unit_table(t, tol)


def dual_check(tc: CorrelationTable, tol: float = DEFAULT_TOL) -> bool:
    """Same test on a cross table: the two systems reconstruct each other."""
    return _unit_table(tc, tol)


def density_and_riesz(sys: GaborSystem, is_frame: bool):
    """``(card(S_N) <= LM, is_frame and card(S_N) == LM)``."""
    card, LM = sys.cardinality, sys.L * sys.M
    return card <= LM, bool(is_frame) and card == LM


def orthonormal_check(sys: GaborSystem, t: CorrelationTable, tol: float = DEFAULT_TOL) -> bool:
    """Parseval plus ``card(S_N) == LM``, cross-checked against Parseval plus unit-norm windows."""
    if not parseval_check(t, tol):
        return False
    by_count = sys.cardinality == sys.L * sys.M
    if tol == 0 and all(w.exact is not None for w in sys.windows):
        one = ExactComplex(1)
        by_norm = True
        for w in sys.windows:
            acc = ExactComplex()
            for z in w.exact:
                acc = acc + z * z.conjugate()
            by_norm = by_norm and acc == one
    else:
        ntol = max(tol, 1e-12) * max(1, sys.cardinality)
        by_norm = all(abs(w.norm2() - 1.0) <= ntol for w in sys.windows)
    if by_count != by_norm:
        raise FormDisagreement(
            f"unit-norm form says {by_norm} but cardinality form says {by_count}"
        )
    return by_count


def is_narrow(sys: GaborSystem) -> bool:
    """Every window's support width is below ``M``."""
    return all(w.width < sys.M for w in sys.windows)


def narrow_support_frame(t: CorrelationTable, sys: Optional[GaborSystem] = None):
    """``(A, B, is_frame)`` with ``A, B`` the extreme values of ``M G_0``.

    Valid only when every window has width below ``M``; then the frame
    operator is the multiplication by ``M G_0`` and these bounds are optimal.
    """
    if sys is not None and not is_narrow(sys):
        raise SupportTooWide(f"some window is at least M={sys.M} wide")
    if t.band_radius != 0 and np.any(t.off_diagonal() != 0):
        raise SupportTooWide("table has off-diagonal entries")
    d = t.M * t.diagonal().real
    A, B = float(d.min()), float(d.max())
    return A, B, A > 0


def apply_frame_operator(tc: CorrelationTable, f: Window) -> Window:
    """``(Sf)(j) = M sum_k G_k(j) f(j + kM)``."""
    return tc.apply(f)


def apply_inverse_frame_operator_narrow(t: CorrelationTable, f: Window) -> Window:
    """Inverse frame operator for narrow windows: pointwise division by ``M G_0``."""
    if t.band_radius != 0 and np.any(t.off_diagonal() != 0):
        raise SupportTooWide("inverse by division needs a diagonal frame operator")
    d = t.diagonal().real
    if np.any(d <= 0):
        bad = int(t.js[np.argmax(d <= 0)])
        raise SingularDiagonal(f"G_0 vanishes at residue {bad}")
    if f.is_zero:
        return f
    rows = t.row_of[f.indices() % t.N]
    out = np.zeros(len(f), dtype=np.complex128)
    ok = rows >= 0
    out[ok] = f.values[ok] / (t.M * d[rows[ok]])
    return Window(f.offset, out)


def perturbation_bound(sys_g: GaborSystem, sys_h: GaborSystem, A: float, B: float, rtol: float = 1e-12):
    """Frame bounds for ``sys_h`` from bounds ``(A, B)`` of ``sys_g``.

    ``R = M max_j sum_k |G_k(j)|`` for the difference system ``g - h``.  If
    ``R < A`` returns ``(A (1 - sqrt(R/A))^2, B (1 + sqrt(R/B))^2, R)``,
    otherwise ``None``.  ``R`` within ``rtol`` of ``A`` counts as not below it,
    so rounding never turns a borderline case into a claim.
    """
    if not sys_g.same_lattice(sys_h):
        raise ParameterMismatch("perturbed system must share L, M, N and the index set")
    diff = sys_g.replace_windows(g - h for g, h in zip(sys_g.windows, sys_h.windows))
    t = autocorrelation_table(diff)
    R = t.M * float(np.abs(t.entries).sum(axis=1).max()) if t.entries.size else 0.0
    if not R < A * (1 - rtol):
        return None
    return float(A * (1 - np.sqrt(R / A)) ** 2), float(B * (1 + np.sqrt(R / B)) ** 2), R


def random_signal(sys: GaborSystem, rng: np.random.Generator, support_radius: int) -> Window:
    """Random complex-normal signal on a random subset of ``S ∩ [-r, r]``."""
    pts = sys.set.points(-support_radius, support_radius + 1)
    if pts.size == 0:
        raise RangeViolation(f"no point of the index set lies in [-{support_radius}, {support_radius}]")
    count = int(rng.integers(1, pts.size + 1))
    chosen = np.sort(rng.choice(pts, size=count, replace=False))
    vals = np.zeros(support_radius * 2 + 1, dtype=np.complex128)
    vals[chosen + support_radius] = rng.standard_normal(count) + 1j * rng.standard_normal(count)
    return Window(-support_radius, vals)


def randomized_rayleigh_bounds(sys: GaborSystem, trials: int = 200, support_radius: int = 16, seed: int = 0):
    """Extreme ratios ``sum |<f, atom>|^2 / ||f||^2`` over random finitely supported ``f``."""
    if trials < 1:
        raise RangeViolation("trials must be >= 1")
    rng = np.random.default_rng(seed)
    ratios = []
    for _ in range(trials):
        f = random_signal(sys, rng, support_radius)
        ratios.append(analysis_energy(sys, f) / f.norm2())
    return float(min(ratios)), float(max(ratios))


def analyze(sys: GaborSystem, tol: float = DEFAULT_TOL) -> FrameReport:
    """Run every table-based test on ``sys``."""
    exact = tol == 0
    t = autocorrelation_table(sys, exact=exact)
    A, B, is_bessel, is_frame = sufficient_bounds(t)
    narrow = is_narrow(sys)
    density_ok, is_riesz = density_and_riesz(sys, is_frame)
    parseval = parseval_check(t, tol)
    onb = orthonormal_check(sys, t, tol)
    if is_frame:
        verdict = "frame"
    elif not density_ok or np.any(t.diagonal().real <= 0) or narrow:
        # a vanishing diagonal entry gives a signal with zero energy;
        # for narrow windows the diagonal test is exact
        verdict = "not_frame"
    else:
        verdict = "inconclusive"
    return FrameReport(
        bessel_bound=B,
        lower_bound=A if is_frame else None,
        is_bessel=is_bessel,
        is_frame_sufficient=is_frame,
        is_parseval=parseval,
        is_riesz=is_riesz,
        is_orthonormal=onb,
        density_ok=density_ok,
        card_SN=sys.cardinality,
        LM=sys.L * sys.M,
        narrow_support=narrow,
        verdict=verdict,
    )


def dual_report(sys_g: GaborSystem, sys_h: GaborSystem, tol: float = DEFAULT_TOL) -> bool:
    """Cross-table dual test for two systems on the same lattice."""
    return dual_check(cross_correlation_table(sys_g, sys_h, exact=tol == 0), tol)
