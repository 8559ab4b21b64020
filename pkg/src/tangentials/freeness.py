"""Free divisors and tangentially free ideals.

A homogeneous ``f`` is a free divisor when ``T(f)`` is a free module; in the
graded setting this is ``μ(T(f)) = n`` (a graded torsion-free module of rank
``n`` on ``n`` generators has no relations).  Freeness is certified by Saito's
determinant: ``det(h_ij) = c·f`` with ``c`` a nonzero constant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import groebner as gb
from .derivations import Derivation, DerModule, abstract_jacobian, gradient_ideal
from .idealizer import (PrecondError, derivation_module, logder, preserves,
                        tangential_idealizer)
from .polyring import Poly, PolyRing

__all__ = [
    "FreenessVerdict",
    "determinant",
    "reduced_equation",
    "saito_constant",
    "saito_certificate",
    "is_free_divisor",
    "ResolutionReport",
    "free_resolution",
    "jacobian_resolution_shape",
    "factor_gcd",
    "is_free_ideal",
    "free_family",
]

FREE = "free"
NOT_FREE = "not-free"
UNDETERMINED = "undetermined"


@dataclass
class FreenessVerdict:
    """Outcome of a freeness decision.

    ``basis`` and ``c`` are set when free (over a polynomial ring ``c`` is the
    Saito constant), ``witness`` explains a negative answer.
    """

    status: str
    mu: int | None = None
    basis: list[Derivation] = field(default_factory=list)
    c: object = None
    witness: str | None = None
    note: str | None = None

    @property
    def is_free(self) -> bool:
        return self.status == FREE

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "mu": self.mu,
            "basis": [str(d) for d in self.basis],
            "c": None if self.c is None else str(self.c),
            "witness": self.witness,
            "note": self.note,
        }


def determinant(rows: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant of a square matrix of polynomials (expansion along rows, memoised)."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    ring = rows[0][0].ring
    memo: dict = {}

    def minor(i: int, cols: tuple) -> Poly:
        # determinant of rows i.. restricted to cols
        if i == n:
            return ring.one
        key = (i, cols)
        if key in memo:
            return memo[key]
        total = ring.zero
        for k, j in enumerate(cols):
            a = rows[i][j]
            if not a:
                continue
            sub = minor(i + 1, cols[:k] + cols[k + 1:])
            term = a * sub
            total = total - term if k % 2 else total + term
        memo[key] = total
        return total

    return minor(0, tuple(range(n)))


def reduced_equation(f: Poly) -> Poly:
    """Squarefree part ``f / gcd(f, df/dx_1, ..., df/dx_n)`` in characteristic zero.

    ``T(f)`` only depends on this part, and Saito's determinant equals a
    constant times it.  In positive characteristic ``f`` is returned unchanged.
    """
    ring = f.ring.cover
    f = Poly(ring, f._t)
    if ring.characteristic or f.is_constant():
        return f
    g = f
    for j in range(ring.nvars):
        d = f.diff(j)
        if d:
            g = gb.gcd_poly(g, d)
        if g.is_constant():
            return f
    return f.exact_div(g)


def saito_constant(f: Poly, cand: Sequence[Derivation]):
    """``c`` with ``det = c·f`` for a nonzero constant ``c``, else ``None``."""
    ring = f.ring.cover
    f = Poly(ring, f._t)
    det = determinant([[Poly(ring, h._t) for h in d.coeffs] for d in cand])
    if not det or not f:
        return None
    q, r = det.divmod(f)
    if r or not q.is_constant():
        return None
    return q.constant_value()


def saito_certificate(f: Poly, cand: Sequence[Derivation]) -> bool:
    """Every candidate is tangent to ``f`` and ``det(cand) = c·f`` with ``c ≠ 0`` constant."""
    n = f.ring.nvars
    cand = list(cand)
    if len(cand) != n:
        raise PrecondError(f"Saito's criterion needs exactly {n} derivations, got {len(cand)}")
    fi = gb.Ideal(f.ring.cover, [f])
    if not all(fi.contains(d.apply(f)) for d in cand):
        return False
    return saito_constant(f, cand) is not None


def is_free_divisor(f: Poly, ring: PolyRing | None = None) -> FreenessVerdict:
    """Decide freeness of ``T(f)`` for homogeneous ``f``.

    Over ``S`` the test is ``μ = n`` followed by a determinant check.  Over a
    graded quotient ``S/c`` (assumed a domain) the rank is ``dim S/c`` and the
    test is ``μ = dim S/c``.
    """
    ring = ring or f.ring
    if not f or f.is_constant():
        raise PrecondError("is_free_divisor needs a non-constant polynomial")
    if not f.is_homogeneous():
        return FreenessVerdict(UNDETERMINED,
                               note="f is not homogeneous; supply a basis to saito_certificate")
    T = logder(f, ring)
    if not T.graded:
        return FreenessVerdict(UNDETERMINED, note="the ring is not graded")
    mu = T.mu
    basis = T.generators
    if ring.is_quotient:
        rank = gb.krull_dimension(gb.Ideal(ring.cover, list(ring.modulus)))
        if mu == rank:
            return FreenessVerdict(FREE, mu, basis,
                                   note=f"mu(T(f)) = dim R = {rank}; R assumed a domain")
        return FreenessVerdict(NOT_FREE, mu, witness=f"mu(T(f)) = {mu} > dim R = {rank}")
    n = ring.nvars
    if mu != n:
        return FreenessVerdict(NOT_FREE, mu, witness=f"mu(T(f)) = {mu} > n = {n}")
    fr = reduced_equation(f)
    c = saito_constant(fr, basis)
    if c is None:
        raise ArithmeticError("n generators of T(f) failed the determinant check")
    note = None if fr == f else f"det = c*({fr}), the reduced equation"
    return FreenessVerdict(FREE, mu, basis, c=c, note=note)


# ---------------------------------------------------------------------------
# resolutions
# ---------------------------------------------------------------------------

@dataclass
class ResolutionReport:
    """Betti numbers of a minimal graded resolution of an ideal."""

    ideal: list[Poly]
    betti: list[int]
    matrices: list[list[tuple[Poly, ...]]]
    hilbert_burch: bool
    minors_ok: bool | None
    gradient: "ResolutionReport | None" = None

    @property
    def shape(self) -> str:
        parts = ["0"] + [f"S^{b}" for b in reversed(self.betti)] + ["I", "0"]
        return " -> ".join(parts)

    def to_dict(self) -> dict:
        out = {
            "ideal": [str(g) for g in self.ideal],
            "betti": self.betti,
            "shape": self.shape,
            "hilbert_burch": self.hilbert_burch,
            "minors_ok": self.minors_ok,
        }
        if self.gradient is not None:
            out["gradient"] = self.gradient.to_dict()
        return out


def free_resolution(gens: Sequence[Poly]) -> ResolutionReport:
    """Minimal graded free resolution of a homogeneous ideal by iterated syzygies."""
    ring = gens[0].ring.cover
    gens = [Poly(ring, g._t) for g in gens if g]
    if not gens or not all(g.is_homogeneous() for g in gens):
        raise PrecondError("free_resolution needs nonzero homogeneous generators")
    M = gb.Submodule(ring, [(g,) for g in gens], rank=1)
    mins = [v[0] for v in gb.minimal_generators(M)]
    betti = [len(mins)]
    matrices = []
    current = [(g,) for g in mins]
    shifts = [0]
    while True:
        src = [gb._vec_degree(ring, gb._to_vec(v), shifts) for v in current]
        K = gb.syzygies(current, ring=ring, shifts=shifts, source_shifts=src)
        if K.is_zero():
            break
        mk = gb.minimal_generators(K)
        if not mk:
            break
        matrices.append(mk)
        betti.append(len(mk))
        current, shifts = mk, src
    hb = len(betti) == 2 and betti[1] == betti[0] - 1
    minors_ok = None
    if hb:
        minors_ok = _minors_generate(mins, matrices[0])
    return ResolutionReport(mins, betti, matrices, hb, minors_ok)


def _minors_generate(gens: list[Poly], syz: list[tuple[Poly, ...]]) -> bool:
    """Maximal minors of the ``(m+1) x m`` syzygy matrix generate ``(gens)`` (Hilbert-Burch)."""
    ring = gens[0].ring
    m = len(syz)
    cols = syz  # column k is the k-th syzygy, rows index the generators
    minors = []
    for drop in range(m + 1):
        rows = [[cols[k][i] for k in range(m)] for i in range(m + 1) if i != drop]
        minors.append(determinant(rows) if m else ring.one)
    return gb.Ideal(ring, minors).equals(gb.Ideal(ring, gens))


def jacobian_resolution_shape(f: Poly) -> ResolutionReport:
    """Resolve ``J_f = (f_x1, ..., f_xn, f)``.

    When ``f`` is not in the gradient ideal (possible in positive
    characteristic) the resolution of the gradient ideal is attached as well.
    """
    ring = f.ring
    if ring.is_quotient:
        raise PrecondError("resolutions are implemented over polynomial rings")
    if not f or not f.is_homogeneous():
        raise PrecondError("jacobian_resolution_shape needs a nonzero homogeneous f")
    J = abstract_jacobian(f)
    rep = free_resolution(J)
    G = gradient_ideal(f)
    if not G.contains(f) and G.nonzero_gens:
        rep.gradient = free_resolution(G.nonzero_gens)
    return rep


# ---------------------------------------------------------------------------
# tangentially free ideals
# ---------------------------------------------------------------------------

def factor_gcd(a: gb.Ideal) -> tuple[Poly, gb.Ideal]:
    """Write ``a = x·a'`` with ``x`` the monic gcd of the (lifted) generators."""
    gens = a.nonzero_gens
    if not gens:
        raise PrecondError("factor_gcd of the zero ideal")
    x = gens[0].monic()
    for g in gens[1:]:
        if x.is_constant():
            break
        x = gb.gcd_poly(x, g)
    if x.is_constant():
        x = a.ring.cover.one
        return x, gb.Ideal(a.ring, gens)
    return x, gb.Ideal(a.ring, [g.exact_div(x) for g in gens])


def is_free_ideal(a: gb.Ideal) -> FreenessVerdict:
    """Decide whether ``T(a)`` is free, via ``a = x·a'``.

    ``a`` is tangentially free iff ``x`` is a free divisor whose logarithmic
    derivations preserve ``a'``; a proper ideal with constant gcd would have to
    be preserved by every derivation, which no nonzero proper polynomial ideal is.
    """
    ring = a.ring
    if a.is_zero() or a.is_unit():
        D = derivation_module(ring)
        if ring.is_quotient:
            return FreenessVerdict(UNDETERMINED, D.mu, note="T(a) = Der(R); freeness of Der(R) not decided")
        return FreenessVerdict(FREE, ring.nvars, D.generators, c=None,
                               note="T(a) = Der(S)")
    x, a1 = factor_gcd(a)
    principal = a1.is_unit()
    if ring.characteristic and not principal:
        raise PrecondError("is_free_ideal needs characteristic zero for non-principal ideals")
    if ring.is_quotient and not ring.factorial:
        return FreenessVerdict(UNDETERMINED, note="quotient ring not flagged factorial")
    if x.is_constant():
        if ring.is_quotient:
            return FreenessVerdict(UNDETERMINED, note="gcd is 1 in a quotient ring")
        return FreenessVerdict(NOT_FREE, witness="gcd of the generators is 1: a would be "
                               "differential, but a nonzero proper polynomial ideal never is")
    v = is_free_divisor(x, ring)
    if v.status != FREE:
        v.witness = v.witness and f"gcd x = {x}: {v.witness}"
        return v
    for d in v.basis:
        for g in a1.gens:
            if g and not a1.contains(d.apply(g)):
                return FreenessVerdict(NOT_FREE, v.mu,
                                       witness=f"{d} does not preserve a' (fails on {g})")
    return FreenessVerdict(FREE, v.mu, v.basis, c=v.c, note=f"a = ({x})*a'")


def free_family(f: Poly, ring: PolyRing | None = None,
                der_gens: Sequence[Derivation] | None = None, check: bool = True) -> gb.Ideal:
    """The tangentially free ideal ``f·J_f`` of a free divisor ``f``.

    Over a quotient ring ``J_f`` is built from generators of ``Der(R)``.
    """
    ring = ring or f.ring
    v = is_free_divisor(f, ring)
    if v.status != FREE:
        raise PrecondError(f"{f} is not certified free ({v.status})")
    if ring.is_quotient and der_gens is None:
        der_gens = derivation_module(ring).generators
    fc = Poly(ring.cover, f._t)
    a = gb.Ideal(ring, [fc * g for g in abstract_jacobian(f, der_gens, ring)])
    if check:
        w = is_free_ideal(a)
        if w.status != FREE:
            raise ArithmeticError(f"f·J_f was not recognised as free ({w.status})")
        Ta = tangential_idealizer(a)
        if not Ta.module.same_module(DerModule(ring, v.basis)):
            raise ArithmeticError("T(f·J_f) differs from T(f)")
    return a
