import math

import numpy as np
import pytest

import oracles
from conftest import S2, example_a_windows, random_signal, random_system
from mdgabor.correlation import autocorrelation_table, cross_correlation_table
from mdgabor.errors import FormDisagreement, ParameterMismatch, SingularDiagonal, SupportTooWide
from mdgabor.frame_analysis import (
    analyze,
    apply_frame_operator,
    apply_inverse_frame_operator_narrow,
    density_and_riesz,
    dual_check,
    necessary_diagonal_check,
    narrow_support_frame,
    orthonormal_check,
    parseval_check,
    perturbation_bound,
    randomized_rayleigh_bounds,
    sufficient_bounds,
)
from mdgabor.signal import Window, make_system, modulate, translate


def scaled_a(c):
    g0, g1 = example_a_windows()
    return make_system(2, 3, [c * g0, g1])


def test_sufficient_bounds_examples(example_a):
    A, B, bessel, frame = sufficient_bounds(autocorrelation_table(example_a))
    assert (A, B) == pytest.approx((1, 1)) and bessel and frame
    A, B, _, frame = sufficient_bounds(autocorrelation_table(make_system(1, 1, [Window.delta(0)])))
    assert (A, B, frame) == (1, 1, True)
    comb = make_system(2, 2, [Window(0, [1, 0, 1])])
    A, B, bessel, frame = sufficient_bounds(autocorrelation_table(comb))
    assert (A, B, bessel, frame) == (0, 8, True, False)


def test_necessary_diagonal(example_a):
    t = autocorrelation_table(example_a)
    assert necessary_diagonal_check(t, 1, 1, 1e-12)
    assert not necessary_diagonal_check(t, 1.5, 2)
    assert necessary_diagonal_check(autocorrelation_table(make_system(1, 1, [Window.delta(0)])), 1, 1)


def test_parseval_examples(example_a, example_b):
    assert parseval_check(autocorrelation_table(example_a))
    assert parseval_check(autocorrelation_table(example_b))
    g0, g1 = example_a_windows()
    assert not parseval_check(autocorrelation_table(make_system(2, 3, [g0, 2 * g1])))


def test_dual_examples(example_a):
    assert dual_check(cross_correlation_table(example_a, example_a))
    unit = make_system(1, 1, [Window.delta(0)])
    assert dual_check(cross_correlation_table(unit, unit))
    double = example_a.replace_windows(2 * w for w in example_a.windows)
    assert not dual_check(cross_correlation_table(example_a, double))


def test_density_and_riesz(example_a, example_b):
    assert density_and_riesz(example_a, True) == (True, False)
    assert density_and_riesz(example_b, True) == (True, True)
    assert density_and_riesz(make_system(2, 3, [Window.delta(0)]), False)[0] is False
    # never claims Riesz without a frame verdict
    assert density_and_riesz(example_b, False) == (True, False)


def test_orthonormal_examples(example_a, example_b):
    assert orthonormal_check(example_b, autocorrelation_table(example_b))
    assert not orthonormal_check(example_a, autocorrelation_table(example_a))
    unit = make_system(1, 1, [Window.delta(0)])
    assert orthonormal_check(unit, autocorrelation_table(unit))


def test_orthonormal_form_disagreement(example_b):
    # a table that claims Parseval for a system whose windows are not unit norm
    bad = example_b.replace_windows([w * 0.5 for w in example_b.windows])
    with pytest.raises(FormDisagreement):
        orthonormal_check(bad, autocorrelation_table(example_b))


def test_narrow_support(example_a):
    assert narrow_support_frame(autocorrelation_table(example_a), example_a) == pytest.approx((1, 1, True))
    for c in (0.5, 2.0, 0.0):
        A, B, ok = narrow_support_frame(autocorrelation_table(scaled_a(c)))
        assert (A, B) == pytest.approx((min(c * c, 1), max(c * c, 1)))
        assert ok == (c != 0)
    A, B, ok = narrow_support_frame(autocorrelation_table(make_system(2, 2, [Window.delta(0)])))
    assert A == 0 and not ok
    wide = make_system(2, 2, [Window(0, [1, 1, 1])])
    with pytest.raises(SupportTooWide):
        narrow_support_frame(autocorrelation_table(wide), wide)


def test_apply_examples(example_a):
    t = autocorrelation_table(example_a)
    f = Window(-4, [1, 2j, 3, -1, 0.5])
    assert apply_frame_operator(t, f).allclose(f, 1e-15)
    zero = autocorrelation_table(make_system(2, 3, [Window.zero()]))
    assert apply_frame_operator(zero, f).is_zero
    comb = make_system(2, 2, [Window(0, [1, 0, 1])])
    out = apply_frame_operator(autocorrelation_table(comb), Window.delta(0))
    # frozen from oracles.mixed_operator
    assert out.allclose(Window(-2, [2, 0, 4, 0, 2]), 1e-15)


def test_inverse_narrow(example_a):
    t = autocorrelation_table(example_a)
    f = Window(0, [1, 2, 3])
    assert apply_inverse_frame_operator_narrow(t, f).allclose(f, 1e-15)
    t2 = autocorrelation_table(scaled_a(2.0))
    assert apply_inverse_frame_operator_narrow(t2, Window.delta(0)).allclose(Window.delta(0, 0.25), 1e-15)
    g = Window(-5, np.arange(1, 12) * (1 + 0.5j))
    assert apply_frame_operator(t2, apply_inverse_frame_operator_narrow(t2, g)).allclose(g, 1e-12)
    with pytest.raises(SingularDiagonal):
        apply_inverse_frame_operator_narrow(autocorrelation_table(make_system(2, 2, [Window.delta(0)])), g)


def test_perturbation_examples(example_a):
    assert perturbation_bound(example_a, example_a, 1, 1) == (1, 1, 0)
    A2, B2, R = perturbation_bound(example_a, example_a.replace_windows(0.9 * w for w in example_a.windows), 1, 1)
    assert (A2, B2, R) == pytest.approx((0.81, 1.21, 0.01), abs=1e-15)
    zero = example_a.replace_windows(Window.zero() for _ in example_a.windows)
    assert perturbation_bound(example_a, zero, 1, 1) is None
    with pytest.raises(ParameterMismatch):
        perturbation_bound(example_a, make_system(2, 4, example_a.windows), 1, 1)


def test_rayleigh_examples(example_a):
    lo, hi = randomized_rayleigh_bounds(example_a, 50, 8, 1)
    assert abs(lo - 1) <= 1e-10 and abs(hi - 1) <= 1e-10
    assert randomized_rayleigh_bounds(make_system(1, 1, [Window.delta(0)]), 10, 4, 0) == pytest.approx((1, 1))
    lo, _ = randomized_rayleigh_bounds(make_system(2, 2, [Window.delta(0)]), 200, 1, 0)
    assert lo == 0  # a draw of f = c delta_1 has no energy
    assert randomized_rayleigh_bounds(example_a, 20, 8, 5) == randomized_rayleigh_bounds(example_a, 20, 8, 5)


def test_walnut_matches_enumeration(backend):
    rng = np.random.default_rng(31)
    for _ in range(30):
        g = random_system(rng, proper_set=bool(rng.integers(2)))
        # same supports, independent values
        h = g.replace_windows(
            Window(w.offset, w.values * (rng.standard_normal(len(w)) + 1j * rng.standard_normal(len(w))))
            for w in g.windows
        )
        f = random_signal(rng, g, 6)
        got = apply_frame_operator(cross_correlation_table(g, h), f)
        ref = oracles.mixed_operator(
            [oracles.as_dict(w) for w in g.windows], [oracles.as_dict(w) for w in h.windows], g.M, g.N, oracles.as_dict(f)
        )
        assert oracles.close(oracles.as_dict(got), ref, 1e-10)


def test_commutation():
    rng = np.random.default_rng(32)
    for _ in range(20):
        g = random_system(rng)
        t = autocorrelation_table(g)
        f = random_signal(rng, g, 5)
        m, n = int(rng.integers(g.M)), int(rng.integers(-3, 4))
        shift = lambda w: modulate(translate(w, n * g.N), m, g.M)
        assert apply_frame_operator(t, shift(f)).allclose(shift(apply_frame_operator(t, f)), 1e-10)


def test_bounds_contain_rayleigh_quotients():
    rng = np.random.default_rng(33)
    hits = 0
    for _ in range(40):
        sys = random_system(rng, complex_vals=False)
        A, B, _, frame = sufficient_bounds(autocorrelation_table(sys))
        lo, hi = randomized_rayleigh_bounds(sys, 40, 10, int(rng.integers(1 << 30)))
        assert hi <= B + 1e-9
        if frame:
            hits += 1
            assert lo >= A - 1e-9
    assert hits > 0


def test_analyze_reports(example_a, example_b):
    ra = analyze(example_a)
    assert ra.is_parseval and not ra.is_riesz and not ra.is_orthonormal and ra.verdict == "frame"
    rb = analyze(example_b, tol=0)
    assert rb.is_orthonormal and rb.is_riesz and rb.card_SN == rb.LM == 12
    rz = analyze(make_system(2, 2, [Window.delta(0)]))
    assert rz.verdict == "not_frame" and rz.lower_bound is None
    assert analyze(make_system(2, 3, [Window(0, [1, 1])])).verdict == "not_frame"  # density fails
    d = ra.to_dict()
    assert d["card_SN"] == 3 and d["LM"] == 4 and math.isclose(d["bessel_bound"], 1)
