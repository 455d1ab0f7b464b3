import math

import numpy as np
import pytest

import oracles
from conftest import S2, random_signal, random_system
from mdgabor.errors import InvalidAtom, InvalidSystem, SchemaError
from mdgabor.periodic_set import make_periodic_set
from mdgabor.signal import (
    AtomIndex,
    GaborSystem,
    Window,
    analysis_coefficients,
    analysis_energy,
    atom,
    inner_product,
    make_system,
    modulate,
    synthesis,
    translate,
)


def test_window_trims_zero_edges():
    w = Window(-2, [0, 0, 1, 2, 0])
    assert w.offset == 0 and list(w.values) == [1, 2]
    assert w.support == (0, 1)
    assert Window(3, [0, 0]).is_zero
    assert Window.from_values(0, [1e-20, 1, 1e-20], threshold=1e-15).support == (1, 1)


def test_window_sampling():
    w = Window(1, [1, 2, 3])
    assert w(2) == 2 and w(0) == 0 and w(10) == 0
    assert list(w(np.array([0, 1, 3, 4]))) == [0, 1, 3, 0]
    assert list(w.on(0, 5)) == [0, 1, 2, 3, 0]


def test_window_arithmetic():
    a, b = Window(0, [1, 1]), Window(1, [1, -1])
    assert (a + b).allclose(Window(0, [1, 2, -1]))
    assert (a - a).is_zero
    assert (2 * a).allclose(Window(0, [2, 2]))
    assert (-a).allclose(Window(0, [-1, -1]))


def test_window_json_roundtrip():
    w = Window(-3, [1 + 2j, 0, -0.5])
    back = Window.from_dict(w.to_dict())
    assert back.offset == -3 and np.array_equal(back.values, w.values)
    with pytest.raises(SchemaError):
        Window.from_dict({"values": [[1, 0]]})
    with pytest.raises(SchemaError):
        Window.from_dict({"offset": 0, "values": [["x", 0]]})


def test_modulate_examples():
    assert modulate(Window.delta(0), 3, 4).allclose(Window.delta(0), 0)
    assert modulate(Window.delta(1), 1, 2).allclose(Window.delta(1, -1), 0)
    # phases exp(i pi / 2), exp(i pi)
    assert modulate(Window(1, [1, 1]), 1, 4).allclose(Window(1, [1j, -1]), 0)


def test_translate_examples():
    d0 = Window.delta(0)
    assert translate(d0, 0).allclose(d0, 0)
    assert translate(d0, 5).allclose(Window.delta(5), 0)
    assert translate(Window(0, [1, 1]), -2).allclose(Window(-2, [1, 1]), 0)


def test_atom_examples(example_a):
    assert atom(example_a, (1, 0, 1)).allclose(Window.delta(5, S2), 0)
    assert atom(example_a, (0, 0, 0)).allclose(example_a.windows[0], 0)
    sys1 = make_system(2, 3, [Window.delta(1)])
    assert atom(sys1, AtomIndex(0, 1, 0)).allclose(Window.delta(1, -1), 0)
    with pytest.raises(InvalidAtom):
        atom(example_a, (2, 0, 0))
    with pytest.raises(InvalidAtom):
        atom(example_a, (0, 2, 0))


def test_inner_product_examples():
    d0, d1 = Window.delta(0), Window.delta(1)
    assert inner_product(d0, d0) == 1
    assert inner_product(d0, d1) == 0
    assert inner_product(Window(0, [S2, S2]), d1) == pytest.approx(S2)
    assert inner_product(Window(0, [1j]), Window(0, [1])) == 1j


def test_analysis_examples(example_a):
    c = analysis_coefficients(example_a, Window.delta(0))
    assert set(c) == {(0, 0, 0), (0, 1, 0)}
    # frozen from oracles.coefficients: |<delta_0, atom>|^2 = 1/2 each, summing to ||f||^2 = 1
    for z in c.values():
        assert abs(z) ** 2 == pytest.approx(0.5, abs=1e-15)
    assert analysis_coefficients(example_a, Window.zero()) == {}
    unit = make_system(1, 1, [Window.delta(0)])
    assert analysis_coefficients(unit, Window.delta(3)) == {(0, 0, 3): pytest.approx(1)}


def test_system_validation():
    with pytest.raises(InvalidSystem):
        make_system(0, 3, [Window.delta(0)])
    with pytest.raises(InvalidSystem):
        make_system(2, 3, [])
    evens = make_periodic_set(2, [0])
    with pytest.raises(InvalidSystem):
        GaborSystem(2, 4, (Window.delta(1),), evens)
    s = GaborSystem(2, 4, (Window.delta(2),), evens)
    assert s.set.period == 4 and s.set.residues == (0, 2)
    with pytest.raises(InvalidSystem):
        GaborSystem(2, 3, (Window.delta(0),), evens)


def test_system_json_roundtrip(example_a):
    back = GaborSystem.from_dict(example_a.to_dict())
    assert back.same_lattice(example_a)
    assert all(a.allclose(b, 0) for a, b in zip(back.windows, example_a.windows))
    bad = example_a.to_dict()
    bad["L"] = 5
    with pytest.raises(SchemaError):
        GaborSystem.from_dict(bad)


def test_coefficients_match_oracle(backend):
    rng = np.random.default_rng(11)
    for _ in range(30):
        sys = random_system(rng, proper_set=bool(rng.integers(2)))
        f = random_signal(rng, sys, radius=6)
        got = analysis_coefficients(sys, f)
        ref = oracles.coefficients([oracles.as_dict(w) for w in sys.windows], sys.M, sys.N, oracles.as_dict(f))
        assert oracles.close(got, ref, 1e-10)


def test_synthesis_matches_oracle(backend):
    rng = np.random.default_rng(12)
    for _ in range(20):
        sys = random_system(rng)
        coefs = {
            AtomIndex(int(rng.integers(sys.L)), int(rng.integers(sys.M)), int(rng.integers(-3, 4))): complex(
                rng.standard_normal(), rng.standard_normal()
            )
            for _ in range(6)
        }
        got = synthesis(sys, coefs)
        ref = oracles.synthesize([oracles.as_dict(w) for w in sys.windows], sys.M, sys.N, coefs)
        assert oracles.close(oracles.as_dict(got), ref, 1e-10)


def test_atoms_stay_in_set():
    s = make_periodic_set(3, [0, 2])
    sys = GaborSystem(2, 3, (Window(-1, [1, 0, 0, 1j]),), s)
    for n in range(-2, 3):
        for m in range(2):
            a = atom(sys, (0, m, n))
            assert all(j in s for j in a.nonzero_indices())


def test_energy_equals_norm_for_parseval(example_a):
    f = Window(-3, [1, 2j, -1, 0.5, 3])
    assert analysis_energy(example_a, f) == pytest.approx(f.norm2(), rel=1e-12)
    assert math.isclose(Window(0, [3, 4]).norm(), 5)
