"""Tangential idealizers ``T(a, b) = {D : D(a) ⊆ b}`` and logarithmic derivations.

Everything reduces to one kernel computation in the polynomial cover ``S``:
a derivation ``D = sum h_j d/dx_j`` maps the generator ``g_i`` into the target
``b_i`` iff ``sum_j h_j dg_i/dx_j ≡ 0 (mod b_i)``.  Stacking the rows gives the
jacobian columns in ``S^m`` and the relations ``b_i e_i``; the kernel of the
columns modulo the relations is the idealizer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import groebner as gb
from .derivations import (Derivation, DerModule, abstract_jacobian, module_shifts,
                          partial)
from .polyring import Poly, PolyRing

__all__ = [
    "IdealizerResult",
    "PrecondError",
    "tangential_idealizer",
    "idealizer_mod",
    "derivation_module",
    "derivation_module_of_quotient",
    "logder",
    "preserves",
    "cokernel_hilbert_table",
    "cokernel_hilbert_check",
    "compare_powers",
    "PowersReport",
    "verify_primary_decomposition",
    "DecompositionReport",
]


class PrecondError(ValueError):
    """An operation was called outside its domain."""


@dataclass
class IdealizerResult:
    """Generators of a module of derivations together with grading data."""

    ring: PolyRing
    module: DerModule
    graded: bool
    a: gb.Ideal | None = None
    b: gb.Ideal | None = None

    @property
    def generators(self) -> list[Derivation]:
        """Minimal generators when graded, otherwise the raw nonzero generators."""
        if self.graded:
            return self.module.minimal_generators()
        return [d for d in self.module.gens if d]

    @property
    def mu(self) -> int | None:
        return self.module.mu if self.graded else None

    @property
    def degrees(self) -> list[int] | None:
        return self.module.degrees() if self.graded else None

    def contains(self, d) -> bool:
        return self.module.contains(d)

    __contains__ = contains

    def same_module(self, other) -> bool:
        if isinstance(other, IdealizerResult):
            other = other.module
        return self.module.same_module(other)

    def to_dict(self) -> dict:
        gens = self.generators
        return {
            "graded": self.graded,
            "mu": self.mu,
            "degrees": self.degrees,
            "generators": [[str(h) for h in d.coeffs] for d in gens],
            "derivations": [str(d) for d in gens],
        }


def _lift(ring: PolyRing, polys) -> list[Poly]:
    return [Poly(ring.cover, p._t) for p in polys if p]


def _conductor(ring: PolyRing, conditions) -> tuple[list[Derivation], bool]:
    """Derivations mapping every generator of each condition into its target.

    ``conditions`` is a list of ``(gens, targets)`` pairs of cover polynomials.
    Returns the kernel generators and whether the computation was graded.
    """
    n = ring.nvars
    rows = [(g, [t for t in targets if t]) for gens, targets in conditions for g in gens if g]
    if not rows:
        return [partial(ring, j) for j in range(n)], True
    graded = all(g.is_homogeneous() for g, _ in rows) and all(
        t.is_homogeneous() for _, ts in rows for t in ts)
    m = len(rows)
    if graded:
        shifts = [-g.weighted_degree() for g, _ in rows]
        source = list(module_shifts(ring))
    else:
        shifts = [0] * m
        source = [0] * n
    zero = ring.cover.zero
    columns = [tuple(g.diff(j) for g, _ in rows) for j in range(n)]
    rels = []
    for i, (_, targets) in enumerate(rows):
        for t in targets:
            rels.append(tuple(t if k == i else zero for k in range(m)))
    K = gb.kernel_modulo(ring.cover, columns, rels, shifts=shifts, source_shifts=source)
    return [Derivation(ring, v) for v in K.gens], graded


def preserves(d: Derivation, a: gb.Ideal, b: gb.Ideal | None = None) -> bool:
    """``D(g) ∈ b`` for every generator ``g`` of ``a`` (``b`` defaults to ``a``)."""
    b = a if b is None else b
    return all(b.contains(d.apply(g)) for g in a.gens if g)


def tangential_idealizer(a: gb.Ideal, b: gb.Ideal | None = None) -> IdealizerResult:
    """``T(a, b)``: derivations of the ring of ``a`` sending ``a`` into ``b``.

    Requires ``a ⊆ b``, which makes checking generators of ``a`` sufficient.
    Over a quotient ring ``S/c`` this is :func:`idealizer_mod`.
    """
    b = a if b is None else b
    ring = a.ring
    if b.ring.cover != ring.cover or (b.ring.modulus or ()) != (ring.modulus or ()):
        raise PrecondError("ideals live in different rings")
    if not a.issubset(b):
        raise PrecondError("the idealizer T(a, b) needs a ⊆ b")
    if ring.is_quotient:
        return idealizer_mod(None, a, b)
    gens, graded = _conductor(ring, [(_lift(ring, a.gens), _lift(ring, b.gens))])
    return IdealizerResult(ring, DerModule(ring, gens), graded, a, b)


def idealizer_mod(c: gb.Ideal | None, a: gb.Ideal, b: gb.Ideal | None = None) -> IdealizerResult:
    """``{D ∈ Der(S) : D(c) ⊆ c, D(a) ⊆ b + c}`` modulo ``c Der(S)``.

    ``c`` may be omitted when ``a`` already lives in the quotient ring ``S/c``.
    """
    b = a if b is None else b
    ring = a.ring
    if c is None:
        if not ring.is_quotient:
            raise PrecondError("idealizer_mod needs a modulus")
        cgens = list(ring.modulus)
    else:
        cgens = _lift(c.ring, c.gens)
        ring = ring.cover.quotient(cgens, factorial=ring.factorial)
        a = gb.Ideal(ring, a.gens)
        b = gb.Ideal(ring, b.gens)
    if not a.issubset(b):
        raise PrecondError("idealizer_mod needs a + c ⊆ b + c")
    conditions = [(cgens, cgens), (_lift(ring, a.gens), _lift(ring, b.gens) + cgens)]
    gens, graded = _conductor(ring, conditions)
    return IdealizerResult(ring, DerModule(ring, gens), graded, a, b)


def derivation_module(ring: PolyRing) -> IdealizerResult:
    """``Der_k(R)`` as lifts: free on the partials for ``S``, ``T(c)/c Der(S)`` for ``S/c``."""
    if not ring.is_quotient:
        return IdealizerResult(ring, DerModule.free(ring), True)
    gens, graded = _conductor(ring, [(list(ring.modulus), list(ring.modulus))])
    return IdealizerResult(ring, DerModule(ring, gens), graded)


def derivation_module_of_quotient(c: gb.Ideal) -> IdealizerResult:
    ring = c.ring.cover.quotient(_lift(c.ring, c.gens))
    return derivation_module(ring)


def logder(f: Poly, ring: PolyRing | None = None,
           der_gens: Sequence[Derivation] | None = None) -> IdealizerResult:
    """``T(f)`` from the syzygies of ``(d_1(f), ..., d_m(f), f)``.

    Each syzygy ``(h_1, ..., h_m, h_0)`` gives ``sum h_i d_i`` with
    ``(sum h_i d_i)(f) = -h_0 f``; the last coordinate is dropped.  Over ``S`` the
    ``d_i`` are the partials; over a quotient they default to minimal generators
    of ``Der(R)`` and the syzygies are taken modulo ``c``.
    """
    ring = ring or f.ring
    f = Poly(ring.cover, f._t)
    if not f or f.is_constant():
        res = derivation_module(ring)
        res.a = res.b = gb.Ideal(ring, [f])
        return res
    if der_gens is None:
        if ring.is_quotient:
            der_gens = derivation_module(ring).generators
        else:
            der_gens = [partial(ring, j) for j in range(ring.nvars)]
    der_gens = list(der_gens)
    values = [d.apply(f) for d in der_gens] + [f]
    graded = f.is_homogeneous() and all(d.is_homogeneous() for d in der_gens) and (
        not ring.modulus or all(g.is_homogeneous() for g in ring.modulus))
    if graded:
        fd = f.weighted_degree()
        source = [fd + (d.degree() or 0) for d in der_gens] + [fd]
    else:
        source = [0] * len(values)
    rels = [(g,) for g in (ring.modulus or ())]
    K = gb.kernel_modulo(ring.cover, [(v,) for v in values], rels, shifts=[0],
                         source_shifts=source)
    gens = []
    for vec in K.gens:
        d = Derivation(ring, [ring.cover.zero] * ring.nvars)
        for h, base in zip(vec[:-1], der_gens):
            if h:
                d = d + h * base
        gens.append(d)
    res = IdealizerResult(ring, DerModule(ring, gens), graded)
    res.a = res.b = gb.Ideal(ring, [f])
    return res


# ---------------------------------------------------------------------------
# graded check of the cokernel
# ---------------------------------------------------------------------------

def cokernel_hilbert_table(f: Poly, D: int) -> list[tuple[int, int, int]]:
    """Rows ``(s, dim (Der/T(f))_s, dim (J_f/(f))_{s + deg f})`` for ``s`` up to ``D``.

    The left column counts standard monomials of a Groebner basis of ``T(f)``
    inside ``S^n``; the right one counts them for ``J_f``, minus ``dim S_s``.
    """
    ring = f.ring
    if ring.is_quotient:
        raise PrecondError("cokernel check is implemented over polynomial rings")
    if not f or not f.is_homogeneous():
        raise PrecondError("cokernel check needs a nonzero homogeneous polynomial")
    fd = f.weighted_degree()
    T = logder(f).module
    J = gb.Ideal(ring, abstract_jacobian(f))
    rows = []
    for s in range(-max(ring.weights), D + 1):
        lhs = T.module.hilbert_function(s)
        t = s + fd
        jdim = len(ring.monomials_of_degree(t)) - J.hilbert_function(t)
        rhs = jdim - len(ring.monomials_of_degree(s))
        rows.append((s, lhs, rhs))
    return rows


def cokernel_hilbert_check(f: Poly, D: int) -> bool:
    return all(lhs == rhs for _, lhs, rhs in cokernel_hilbert_table(f, D))


# ---------------------------------------------------------------------------
# comparisons
# ---------------------------------------------------------------------------

@dataclass
class PowersReport:
    r: int
    forward: bool
    backward: bool
    witness: str | None = None

    def to_dict(self) -> dict:
        return {"r": self.r, "T(a) in T(a^r)": self.forward,
                "T(a^r) in T(a)": self.backward, "witness": self.witness}


def compare_powers(a: gb.Ideal, r: int) -> PowersReport:
    """Test ``T(a) ⊆ T(a^r)`` and ``T(a^r) ⊆ T(a)`` by applying generators."""
    if r < 1:
        raise PrecondError("compare_powers needs r >= 1")
    p = a.ring.characteristic
    if p and r >= p:
        raise PrecondError(f"compare_powers refuses r >= {p} in characteristic {p}")
    if r == 1:
        return PowersReport(1, True, True)
    ar = a ** r
    Ta = tangential_idealizer(a)
    Tr = tangential_idealizer(ar)
    witness = None
    forward = True
    for d in Ta.generators:
        if not preserves(d, ar):
            forward = False
            witness = f"{d} preserves a but not a^{r}"
            break
    backward = True
    for d in Tr.generators:
        if not preserves(d, a):
            backward = False
            witness = witness or f"{d} preserves a^{r} but not a"
            break
    return PowersReport(r, forward, backward, witness)


@dataclass
class DecompositionReport:
    intersection_ok: bool
    meet_in_T: bool
    T_in_meet: bool
    witness: str | None = None
    components: list = field(default_factory=list)

    @property
    def equal(self) -> bool:
        return self.meet_in_T and self.T_in_meet

    def to_dict(self) -> dict:
        return {"intersection_ok": self.intersection_ok,
                "meet_in_T": self.meet_in_T, "T_in_meet": self.T_in_meet,
                "equal": self.equal, "witness": self.witness}


def verify_primary_decomposition(a: gb.Ideal, components: Sequence[gb.Ideal]) -> DecompositionReport:
    """Compare ``T(a)`` with ``∩ T(q_i)`` for a decomposition ``a = ∩ q_i``.

    The first inclusion always holds; the second may fail in the presence of
    embedded components, so both are reported.
    """
    if not components:
        raise PrecondError("at least one component is required")
    ring = a.ring
    meet = components[0]
    for q in components[1:]:
        meet = gb.intersect_ideals(meet, q)
    if not meet.equals(a):
        raise PrecondError("the components do not intersect to a")
    Ta = tangential_idealizer(a)
    Tq = [tangential_idealizer(q) for q in components]
    M = Tq[0].module.module
    for t in Tq[1:]:
        M = gb.intersect(M, t.module.module)
    meet_gens = [Derivation(ring, v) for v in M.gens]
    witness = None
    meet_in_T = True
    for d in meet_gens:
        if not preserves(d, a):
            meet_in_T = False
            witness = f"{d} lies in every T(q_i) but not in T(a)"
            break
    T_in_meet = True
    for d in Ta.generators:
        for i, q in enumerate(components):
            if not preserves(d, q):
                T_in_meet = False
                witness = witness or f"{d} lies in T(a) but not in T(q_{i + 1})"
                break
        if not T_in_meet:
            break
    return DecompositionReport(True, meet_in_T, T_in_meet, witness, list(components))
