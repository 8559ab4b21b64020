import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import dense_logder_dim, random_derivation, random_nonconstant, random_poly
from tangentials.derivations import DerModule, Derivation, euler_derivation, partial
from tangentials.groebner import Ideal
from tangentials.idealizer import (PrecondError, cokernel_hilbert_check, cokernel_hilbert_table,
                                   compare_powers, derivation_module, idealizer_mod, logder,
                                   preserves, tangential_idealizer, verify_primary_decomposition)
from tangentials.polyring import GF, PolyRing


def test_logder_normal_crossing(R3):
    x, y, z = R3.gens
    T = logder(x*y*z)
    expected = DerModule(R3, [Derivation(R3, [x, 0, 0]), Derivation(R3, [0, y, 0]),
                              Derivation(R3, [0, 0, z])])
    assert T.module.same_module(expected)
    assert T.mu == 3
    assert T.degrees == [0, 0, 0]


def test_logder_cusp_cone(R3):
    x, y, z = R3.gens
    f = x**2*y - z**3
    T = logder(f)
    assert T.contains(euler_derivation(R3))
    assert T.contains(Derivation(R3, [x, -2*y, 0]))
    assert not T.contains(partial(R3, 0))
    for d in T.generators:
        assert Ideal(R3, [f]).contains(d(f))


def test_idealizer_contains_a_times_der(twisted):
    R, gens = twisted
    a = Ideal(R, gens)
    T = tangential_idealizer(a)
    for g in gens:
        for j in range(4):
            assert T.contains(g * partial(R, j))
    assert T.contains(euler_derivation(R))
    for d in T.generators:
        assert preserves(d, a)


def test_relative_idealizer_requires_inclusion(R3):
    x, y, z = R3.gens
    with pytest.raises(PrecondError):
        tangential_idealizer(Ideal(R3, [x]), Ideal(R3, [y]))


def test_relative_idealizer(R3):
    x, y, z = R3.gens
    a, b = Ideal(R3, [x**2]), Ideal(R3, [x])
    T = tangential_idealizer(a, b)
    # D(x^2) = 2x D(x) lies in (x) for every D
    assert T.module.same_module(DerModule.free(R3))
    assert tangential_idealizer(Ideal(R3, [x**2])).module.same_module(
        tangential_idealizer(Ideal(R3, [x])).module)


def test_idealizer_mod(twisted):
    R, gens = twisted
    x, y, z, w = R.gens
    c = Ideal(R, gens)
    T = idealizer_mod(c, Ideal(R, [x, y]))
    for d in T.generators:
        assert Ideal(R, list(gens) + [x, y]).contains(d(x))
        for g in gens:
            assert c.contains(d(g))


def test_derivation_module():
    R = PolyRing("x,y")
    D = derivation_module(R)
    assert D.mu == 2


def test_cokernel_table_values(R3):
    x, y, z = R3.gens
    rows = cokernel_hilbert_table(x**2*y - z**3, 2)
    assert all(l == r for _, l, r in rows)
    assert rows[0][0] == -1
    with pytest.raises(PrecondError):
        cokernel_hilbert_table(x + y**2, 2)


def test_compare_powers_examples(R3):
    x, y, z = R3.gens
    rep = compare_powers(Ideal(R3, [x, y]), 2)
    assert rep.forward and rep.backward
    P = PolyRing("x,y", GF(3))
    with pytest.raises(PrecondError):
        compare_powers(Ideal(P, [P.gens[0]]), 3)
    with pytest.raises(PrecondError):
        compare_powers(Ideal(R3, [x]), 0)


def test_decomposition_equal(R3):
    x, y, z = R3.gens
    rep = verify_primary_decomposition(Ideal(R3, [x*z, y*z]),
                                       [Ideal(R3, [z]), Ideal(R3, [x, y])])
    assert rep.equal
    with pytest.raises(PrecondError):
        verify_primary_decomposition(Ideal(R3, [x*z]), [Ideal(R3, [x])])


def test_decomposition_embedded(R3):
    x, y, z = R3.gens
    a = Ideal(R3, [x*z, y*z, x**2, y**2])
    rep = verify_primary_decomposition(a, [Ideal(R3, [x, y]), Ideal(R3, [x**2, y**2, z])])
    assert rep.meet_in_T
    assert not rep.T_in_meet
    assert rep.witness
    d = Derivation(R3, [0, 0, x*y])
    assert preserves(d, a)
    assert not preserves(d, Ideal(R3, [x**2, y**2, z]))


def test_decomposition_no_embedded(R3):
    x, y, z = R3.gens
    rep = verify_primary_decomposition(Ideal(R3, [x**2, x*y]),
                                       [Ideal(R3, [x]), Ideal(R3, [x**2, x*y, y**2])])
    assert rep.equal


@settings(max_examples=60, derandomize=True, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([0, 5]))
def test_logder_hilbert_matches_dense(seed, p):
    rng = random.Random(seed)
    R = PolyRing("x,y,z", GF(p)) if p else PolyRing("x,y,z")
    f = random_poly(rng, R, homogeneous=rng.randint(1, 3), max_terms=4)
    if not f:
        return
    T = logder(f)
    for s in range(-1, 2):
        assert T.module.hilbert_function(s) == dense_logder_dim(f, s)


@settings(max_examples=60, derandomize=True, deadline=None)
@given(st.integers(0, 10**6))
def test_idealizer_soundness(seed):
    rng = random.Random(seed)
    R = PolyRing("x,y,z")
    a = Ideal(R, [random_nonconstant(rng, R, max_terms=2) for _ in range(rng.randint(1, 2))])
    T = tangential_idealizer(a)
    for d in T.generators:
        assert preserves(d, a)
    for g in a.gens:
        assert T.contains(g * partial(R, rng.randrange(3)))
    d = random_derivation(rng, R)
    assert T.contains(d) == preserves(d, a)


@settings(max_examples=60, derandomize=True, deadline=None)
@given(st.integers(0, 10**6))
def test_bracket_closure(seed):
    rng = random.Random(seed)
    R = PolyRing("x,y,z")
    f = random_nonconstant(rng, R, homogeneous=rng.randint(1, 3))
    T = logder(f)
    gens = T.generators
    d, e = rng.choice(gens), rng.choice(gens)
    assert T.contains(d.bracket(e))


@settings(max_examples=60, derandomize=True, deadline=None)
@given(st.integers(0, 10**6))
def test_cokernel_check_random(seed):
    rng = random.Random(seed)
    R = PolyRing("x,y,z")
    f = random_nonconstant(rng, R, homogeneous=rng.randint(1, 3))
    assert cokernel_hilbert_check(f, 1)
