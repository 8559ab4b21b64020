import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_nonconstant, random_poly
from tangentials.derivations import Derivation, euler_derivation
from tangentials.freeness import (FREE, NOT_FREE, UNDETERMINED, determinant, factor_gcd,
                                  free_family, free_resolution, is_free_divisor, is_free_ideal,
                                  jacobian_resolution_shape, reduced_equation, saito_certificate)
from tangentials.groebner import Ideal
from tangentials.idealizer import PrecondError, logder, tangential_idealizer
from tangentials.polyring import GF, PolyRing


def test_determinant(R3):
    x, y, z = R3.gens
    assert determinant([[x, 0, 0], [0, y, 0], [0, 0, z]]) == x*y*z
    assert determinant([[x, y], [y, x]]) == x**2 - y**2
    assert determinant([[x, y], [2*x, 2*y]]) == R3.zero


def test_saito_examples(R3):
    x, y, z = R3.gens
    f = x*y*z
    eps = euler_derivation(R3)
    c1 = Derivation(R3, [x, 0, -z])
    c2 = Derivation(R3, [0, y, -z])
    assert saito_certificate(f, [eps, c1, c2])
    assert not saito_certificate(f, [eps, eps, eps])
    with pytest.raises(PrecondError):
        saito_certificate(f, [eps, c1])


def test_saito_quartic():
    R = PolyRing("x,y,z", weights=(2, 3, 4))
    x, y, z = R.gens
    f = 256*z**3 - 128*x**2*z**2 + 16*x**4*z + 144*x*y**2*z - 4*x**3*y**2 - 27*y**4
    chi1 = Derivation(R, [6*y, 8*z - 2*x**2, -x*y])
    chi2 = Derivation(R, [4*x**2 - 48*z, 12*x*y, 9*y**2 - 16*x*z])
    chi3 = Derivation(R, [2*x, 3*y, 4*z])
    assert saito_certificate(f, [chi1, chi2, chi3])
    v = is_free_divisor(f)
    assert v.status == FREE and v.mu == 3
    assert sorted(Derivation.degree(d) for d in v.basis) == [0, 1, 2]


def test_cusp_cone_not_free(R3):
    x, y, z = R3.gens
    f = x**2*y - z**3
    chis = [Derivation(R3, [x, -2*y, 0]), Derivation(R3, [0, 3*z**2, x**2]),
            Derivation(R3, [3*z**2, 0, 2*x*y])]
    assert not saito_certificate(f, chis)
    v = is_free_divisor(f)
    assert v.status == NOT_FREE and v.mu == 4


def test_reduced_equation(R3):
    x, y, z = R3.gens
    assert reduced_equation(x*y*z**2) == x*y*z
    assert reduced_equation(x**2*y - z**3) == x**2*y - z**3
    v = is_free_divisor(x*y*z**2)
    assert v.status == FREE and v.note


def test_free_divisor_errors(R3):
    x, y, z = R3.gens
    with pytest.raises(PrecondError):
        is_free_divisor(R3.one)
    assert is_free_divisor(x + y**2).status == UNDETERMINED


def test_resolution_shapes(R3):
    x, y, z = R3.gens
    rep = jacobian_resolution_shape(x**2*y - z**3)
    assert rep.betti == [3, 3, 1]
    assert not rep.hilbert_burch
    rep = jacobian_resolution_shape(x*y*z)
    assert rep.betti == [3, 2] and rep.minors_ok
    rep = free_resolution([x*y, x*z, y*z])
    assert rep.betti == [3, 2] and rep.hilbert_burch and rep.minors_ok
    assert rep.shape == "0 -> S^2 -> S^3 -> I -> 0"


def test_char3_resolution():
    R = PolyRing("x,y,z", GF(3))
    x, y, z = R.gens
    f = x**2*y + x*y*z + z**3
    rep = jacobian_resolution_shape(f)
    assert rep.betti == [4, 4, 1]
    assert rep.gradient is not None
    assert rep.gradient.betti == [3, 2] and rep.gradient.minors_ok
    v = is_free_divisor(f)
    assert v.status == NOT_FREE and v.mu == 4


def test_factor_gcd(R3):
    x, y, z = R3.gens
    f = x*y*z
    g, a1 = factor_gcd(Ideal(R3, [f*x*z, f*y*z]))
    assert g == x*y*z**2
    assert a1.equals(Ideal(R3, [x, y]))
    g, a1 = factor_gcd(Ideal(R3, [x, y]))
    assert g == R3.one


def test_is_free_ideal(R3):
    x, y, z = R3.gens
    f = x*y*z
    assert is_free_ideal(Ideal(R3, [f*x, f*y])).status == FREE
    assert is_free_ideal(Ideal(R3, [f*y*z, f*x*z, f*x*y, f**2])).status == FREE
    v = is_free_ideal(Ideal(R3, [x, y]))
    assert v.status == NOT_FREE and v.witness
    assert is_free_ideal(Ideal(R3, [])).status == FREE
    assert is_free_ideal(Ideal(R3, [x**2*y - z**3])).status == NOT_FREE
    P = PolyRing("x,y", GF(5))
    with pytest.raises(PrecondError):
        is_free_ideal(Ideal(P, [P.gens[0], P.gens[1]]))


def test_free_family(R3):
    x, y, z = R3.gens
    a = free_family(x*y*z)
    assert a.contains(x*y*z * y*z)
    with pytest.raises(PrecondError):
        free_family(x**2*y - z**3)


@settings(max_examples=50, derandomize=True, deadline=None)
@given(st.integers(0, 10**6))
def test_free_verdict_certificate(seed):
    rng = random.Random(seed)
    R = PolyRing("x,y,z")
    f = random_nonconstant(rng, R, homogeneous=rng.randint(1, 3), max_terms=3)
    v = is_free_divisor(f)
    T = logder(f)
    assert (v.status == FREE) == (T.mu == 3)
    if v.status == FREE:
        fr = reduced_equation(f)
        assert saito_certificate(fr, v.basis)
        assert determinant([list(d.coeffs) for d in v.basis]) == fr * v.c


@settings(max_examples=50, derandomize=True, deadline=None)
@given(st.integers(0, 10**6))
def test_tangent_determinant_in_ideal(seed):
    rng = random.Random(seed)
    R = PolyRing("x,y,z")
    f = random_nonconstant(rng, R, homogeneous=rng.randint(1, 3), max_terms=3)
    gens = logder(f).generators
    cand = [rng.choice(gens) for _ in range(3)]
    det = determinant([list(d.coeffs) for d in cand])
    assert Ideal(R, [reduced_equation(f)]).contains(det)


@settings(max_examples=40, derandomize=True, deadline=None)
@given(st.integers(0, 10**6))
def test_resolution_is_complex(seed):
    rng = random.Random(seed)
    R = PolyRing("x,y,z")
    gens = [random_poly(rng, R, homogeneous=2, max_terms=2) for _ in range(rng.randint(1, 4))]
    gens = [g for g in gens if g]
    if not gens:
        return
    rep = free_resolution(gens)
    assert sum((-1) ** i * b for i, b in enumerate(rep.betti)) == 1
    assert len(rep.betti) <= 3
    prev = [(g,) for g in rep.ideal]
    for mat in rep.matrices:
        for col in mat:
            for comp in range(len(prev[0])):
                assert sum((c * v[comp] for c, v in zip(col, prev)), R.zero) == R.zero
        prev = mat


@settings(max_examples=30, derandomize=True, deadline=None)
@given(st.integers(0, 10**6))
def test_free_ideal_matches_idealizer(seed):
    rng = random.Random(seed)
    R = PolyRing("x,y,z")
    x, y, z = R.gens
    f = rng.choice([x*y*z, x*y, x*(x + y)*y])
    a1 = Ideal(R, [random_nonconstant(rng, R, homogeneous=rng.randint(1, 2), max_terms=2)
                    for _ in range(2)])
    a = Ideal(R, [f * g for g in a1.gens])
    v = is_free_ideal(a)
    T = tangential_idealizer(a)
    assert v.status in (FREE, NOT_FREE)
    assert (v.status == FREE) == (T.mu == 3)
    if v.status == FREE:
        assert all(T.contains(b) for b in v.basis)


def test_char3_hilbert_rules_out_free():
    from conftest import dense_logder_dim
    R = PolyRing("x,y,z", GF(3))
    x, y, z = R.gens
    f = x**2*y + x*y*z + z**3
    h = [dense_logder_dim(f, s) for s in range(-1, 4)]
    assert h == [0, 2, 7, 16, 28]

    def free_hilbert(degs, s):
        return sum((s - d + 2) * (s - d + 1) // 2 for d in degs if s >= d)

    candidates = [(a, b, c) for a in range(4) for b in range(a, 4) for c in range(b, 4)]
    assert not any(all(free_hilbert(dg, s) == h[s + 1] for s in range(-1, 4)) for dg in candidates)
