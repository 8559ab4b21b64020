"""Groebner bases for ideals and submodules of free modules ``S^r``.

Module elements are tuples of :class:`~tangentials.polyring.Poly`; internally
they are dicts ``{(exponent, component): coeff}``.  The module order is the
ring order extended term-over-position (degrees include the per-component
shift, equal monomials are broken in favour of the lowest component index).

Syzygies come from the Buchberger trace: every basis element carries its
cofactor vector with respect to the input generators, so an S-pair reducing to
zero hands back a syzygy directly (Schreyer's construction, read off in terms
of the original generators).
"""

from __future__ import annotations

import heapq
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from typing import Iterable, Sequence

from .polyring import Poly, PolyRing, RingMismatchError

__all__ = [
    "Limits",
    "ComputationLimitExceeded",
    "computation_limits",
    "Submodule",
    "Ideal",
    "groebner_basis",
    "normal_form",
    "membership",
    "syzygies",
    "kernel_modulo",
    "intersect",
    "intersect_ideals",
    "quotient",
    "minimal_generators",
    "gcd_poly",
    "radical_membership",
    "krull_dimension",
]


class ComputationLimitExceeded(RuntimeError):
    """A configured degree or basis-size cap was hit."""


@dataclass(frozen=True)
class Limits:
    max_degree: int | None = None
    max_basis: int | None = None


_LIMITS: ContextVar[Limits] = ContextVar("tangentials_limits", default=Limits())


@contextmanager
def computation_limits(max_degree: int | None = None, max_basis: int | None = None):
    """Cap S-pair degrees and basis sizes for computations in this context."""
    token = _LIMITS.set(Limits(max_degree, max_basis))
    try:
        yield
    finally:
        _LIMITS.reset(token)


# ---------------------------------------------------------------------------
# internal vector arithmetic
# ---------------------------------------------------------------------------

class _TermKey(dict):
    """Memoised sort key of module terms ``(exp, comp)``."""

    def __init__(self, ring: PolyRing, shifts: Sequence[int]):
        super().__init__()
        self.shifts = tuple(shifts)
        self.weights = ring.weights
        self.lex = ring.order == "lex"

    def __missing__(self, term):
        exp, comp = term
        if self.lex:
            k = (exp, -comp)
        else:
            d = self.shifts[comp]
            for w, e in zip(self.weights, exp):
                d += w * e
            k = (d, tuple(-e for e in reversed(exp)), -comp)
        self[term] = k
        return k


def _axpy(target: dict, coef, mult: tuple, src: dict, norm) -> None:
    """target -= coef * x^mult * src, in place."""
    for (e, comp), c in src.items():
        k = (tuple(a + b for a, b in zip(e, mult)), comp)
        v = norm(target.get(k, 0) - coef * c)
        if v:
            target[k] = v
        else:
            target.pop(k, None)


def _scaled(src: dict, coef, mult: tuple | None, norm) -> dict:
    if mult is None:
        return {k: v for k, c in src.items() if (v := norm(c * coef))}
    return {(tuple(a + b for a, b in zip(e, mult)), comp): v
            for (e, comp), c in src.items() if (v := norm(c * coef))}


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


class _Elem:
    __slots__ = ("vec", "cof", "lm", "exp", "comp")

    def __init__(self, vec, cof, lm):
        self.vec = vec
        self.cof = cof
        self.lm = lm
        self.exp, self.comp = lm


class _Buchberger:
    """Incremental Buchberger over ``S^rank`` with optional cofactor tracking."""

    def __init__(self, ring: PolyRing, rank: int, shifts: Sequence[int], track: bool = False):
        self.ring = ring
        self.F = ring.field
        self.norm = ring.field.norm
        self.rank = rank
        self.key = _TermKey(ring, shifts)
        self.track = track
        self.elems: list[_Elem] = []
        self.active: dict[int, list[int]] = {}
        self.by_comp: dict[int, list[int]] = {}
        self.heap: list = []
        self.pending: set = set()
        self.syz: list[dict] = []
        self.limits = _LIMITS.get()
        self._count = 0

    # -- reduction ------------------------------------------------------------
    def _divisor(self, exp, comp):
        for idx in self.active.get(comp, ()):
            g = self.elems[idx]
            if _divides(g.exp, exp):
                return g
        return None

    def reduce(self, vec: dict, cof: dict | None):
        """Full reduction; returns the remainder and the updated cofactor."""
        vec = dict(vec)
        cof = dict(cof) if cof is not None else None
        key = self.key.__getitem__
        norm = self.norm
        rem = {}
        while vec:
            lt = max(vec, key=key)
            c = vec[lt]
            exp, comp = lt
            g = self._divisor(exp, comp)
            if g is None:
                rem[lt] = vec.pop(lt)
                continue
            mult = tuple(a - b for a, b in zip(exp, g.exp))
            _axpy(vec, c, mult, g.vec, norm)
            if cof is not None and g.cof:
                _axpy(cof, c, mult, g.cof, norm)
        return rem, cof

    # -- basis growth -----------------------------------------------------------
    def add(self, vec: dict, cof: dict | None = None) -> bool:
        """Insert a generator.  Returns False if it reduced to zero."""
        if self.track and cof is None:
            cof = {}
        rem, cof = self.reduce(vec, cof)
        if not rem:
            if self.track and cof:
                self.syz.append(cof)
            return False
        self._append(rem, cof)
        return True

    def _append(self, vec: dict, cof: dict | None):
        lm = max(vec, key=self.key.__getitem__)
        inv = self.F.inv(vec[lm])
        if vec[lm] != 1:
            vec = _scaled(vec, inv, None, self.norm)
            if cof:
                cof = _scaled(cof, inv, None, self.norm)
        k = len(self.elems)
        lim = self.limits
        if lim.max_basis is not None and k >= lim.max_basis:
            raise ComputationLimitExceeded(f"basis size exceeded --max-basis {lim.max_basis}")
        new = _Elem(vec, cof, lm)
        self.elems.append(new)
        exp, comp = lm
        act = self.active.setdefault(comp, [])
        act[:] = [i for i in act if not _divides(exp, self.elems[i].exp)]
        act.append(k)
        same = self.by_comp.setdefault(comp, [])
        for i in same:
            g = self.elems[i]
            lcm = tuple(max(a, b) for a, b in zip(g.exp, exp))
            if self.rank == 1 and all(a == 0 or b == 0 for a, b in zip(g.exp, exp)):
                # coprime leading monomials: the Koszul relation is the lifted syzygy
                if self.track:
                    s = self._koszul(g, new)
                    if s:
                        self.syz.append(s)
                continue
            self._count += 1
            heapq.heappush(self.heap, (self.key[(lcm, comp)], self._count, i, k))
            self.pending.add((i, k))
        same.append(k)

    def _koszul(self, g: _Elem, h: _Elem) -> dict:
        # h.vec * cof(g) - g.vec * cof(h), rank-one vectors act as scalars
        out: dict = {}
        norm = self.norm
        for gvec, cof, sign in ((h.vec, g.cof, 1), (g.vec, h.cof, -1)):
            if not cof:
                continue
            for (e1, _), c1 in gvec.items():
                for (e2, comp2), c2 in cof.items():
                    kk = (tuple(a + b for a, b in zip(e1, e2)), comp2)
                    v = norm(out.get(kk, 0) + sign * c1 * c2)
                    if v:
                        out[kk] = v
                    else:
                        out.pop(kk, None)
        return out

    def _chain_criterion(self, i: int, k: int, lcm: tuple, comp: int) -> bool:
        pending = self.pending
        for j in self.by_comp[comp]:
            if j == i or j == k:
                continue
            if not _divides(self.elems[j].exp, lcm):
                continue
            p1 = (i, j) if i < j else (j, i)
            p2 = (k, j) if k < j else (j, k)
            if p1 not in pending and p2 not in pending:
                return True
        return False

    def run(self):
        lim = self.limits
        norm = self.norm
        while self.heap:
            _, _, i, k = heapq.heappop(self.heap)
            self.pending.discard((i, k))
            gi, gk = self.elems[i], self.elems[k]
            comp = gi.comp
            lcm = tuple(max(a, b) for a, b in zip(gi.exp, gk.exp))
            if lim.max_degree is not None and sum(lcm) > lim.max_degree:
                raise ComputationLimitExceeded(
                    f"S-pair of degree {sum(lcm)} exceeds --max-degree {lim.max_degree}")
            if self._chain_criterion(i, k, lcm, comp):
                continue
            mi = tuple(a - b for a, b in zip(lcm, gi.exp))
            mk = tuple(a - b for a, b in zip(lcm, gk.exp))
            vec = _scaled(gi.vec, 1, mi, norm)
            _axpy(vec, 1, mk, gk.vec, norm)
            cof = None
            if self.track:
                cof = _scaled(gi.cof, 1, mi, norm) if gi.cof else {}
                if gk.cof:
                    _axpy(cof, 1, mk, gk.cof, norm)
            self.add(vec, cof)
        return self

    # -- outputs ----------------------------------------------------------------
    def active_elems(self) -> list[_Elem]:
        idx = sorted(i for lst in self.active.values() for i in lst)
        return [self.elems[i] for i in idx]

    def reduced_basis(self) -> list[dict]:
        """Minimal, tail-reduced, monic basis sorted by increasing leading term."""
        act = self.active_elems()
        out = []
        for g in act:
            lm = g.lm
            c = g.vec[lm]
            tail = {t: v for t, v in g.vec.items() if t != lm}
            rem, _ = self.reduce(tail, None)
            rem[lm] = c
            out.append(rem)
        out.sort(key=lambda v: self.key[max(v, key=self.key.__getitem__)])
        return out

    def normal_form(self, vec: dict) -> dict:
        return self.reduce(vec, None)[0]


# ---------------------------------------------------------------------------
# conversions
# ---------------------------------------------------------------------------

def _as_tuple(v) -> tuple:
    if isinstance(v, Poly):
        return (v,)
    return tuple(v)


def _to_vec(v: Sequence[Poly]) -> dict:
    out = {}
    for comp, p in enumerate(v):
        for e, c in p._t.items():
            out[(e, comp)] = c
    return out


def _from_vec(ring: PolyRing, d: dict, rank: int) -> tuple[Poly, ...]:
    parts: list[dict] = [{} for _ in range(rank)]
    for (e, comp), c in d.items():
        parts[comp][e] = c
    return tuple(Poly(ring, t) for t in parts)


def _vec_degree(ring: PolyRing, d: dict, shifts: Sequence[int]):
    """Common shifted degree of a module vector, or None if inhomogeneous."""
    degs = {ring.wdeg(e) + shifts[comp] for (e, comp) in d}
    if len(degs) == 1:
        return degs.pop()
    return None


# ---------------------------------------------------------------------------
# public types
# ---------------------------------------------------------------------------

class Submodule:
    """Finitely generated submodule of ``S^rank`` with per-component degree shifts.

    Generators are tuples of polynomials over ``ring.cover``.  The Groebner basis
    is computed lazily on first use and cached.
    """

    def __init__(self, ring: PolyRing, gens: Iterable, rank: int | None = None,
                 shifts: Sequence[int] | None = None):
        ring = ring.cover
        gens = [_as_tuple(g) for g in gens]
        if rank is None:
            if not gens:
                raise ValueError("rank is required for a module without generators")
            rank = len(gens[0])
        for g in gens:
            if len(g) != rank:
                raise ValueError(f"generator of length {len(g)} in a rank-{rank} module")
            for p in g:
                if p.ring.names != ring.names or p.ring.field != ring.field:
                    raise RingMismatchError(f"{p} does not live in {ring}")
        self.ring = ring
        self.rank = rank
        self.shifts = tuple(shifts) if shifts is not None else (0,) * rank
        if len(self.shifts) != rank:
            raise ValueError("one shift per component is required")
        self._vecs = [v for v in (_to_vec(g) for g in gens) if v]
        self._engine: _Buchberger | None = None
        self._gb: list[dict] | None = None

    # -- construction helpers ------------------------------------------------------
    @classmethod
    def _from_vecs(cls, ring, vecs, rank, shifts) -> "Submodule":
        m = cls(ring, [], rank=rank, shifts=shifts)
        m._vecs = [v for v in vecs if v]
        return m

    @classmethod
    def free(cls, ring: PolyRing, rank: int, shifts=None) -> "Submodule":
        one = ring.cover.one
        zero = ring.cover.zero
        gens = [tuple(one if j == i else zero for j in range(rank)) for i in range(rank)]
        return cls(ring, gens, rank=rank, shifts=shifts)

    @property
    def gens(self) -> list[tuple[Poly, ...]]:
        return [_from_vec(self.ring, v, self.rank) for v in self._vecs]

    def __len__(self):
        return len(self._vecs)

    def __repr__(self):
        return f"Submodule(rank={self.rank}, ngens={len(self._vecs)})"

    def _check(self, other: "Submodule"):
        if other.rank != self.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")
        if other.ring.names != self.ring.names or other.ring.field != self.ring.field:
            raise RingMismatchError("modules over different rings")

    # -- Groebner machinery -----------------------------------------------------------
    def _engine_(self) -> _Buchberger:
        if self._engine is None:
            eng = _Buchberger(self.ring, self.rank, self.shifts)
            for v in self._vecs:
                eng.add(v)
            eng.run()
            self._engine = eng
        return self._engine

    def _basis(self) -> list[dict]:
        if self._gb is None:
            self._gb = self._engine_().reduced_basis()
        return self._gb

    def groebner_basis(self) -> "Submodule":
        """The reduced Groebner basis, as a new module with the same shifts."""
        gb = Submodule._from_vecs(self.ring, self._basis(), self.rank, self.shifts)
        gb._gb = gb._vecs
        gb._engine = self._engine
        return gb

    def leading_terms(self) -> list[tuple[tuple[int, ...], int]]:
        key = self._engine_().key.__getitem__
        return [max(v, key=key) for v in self._basis()]

    def normal_form(self, v) -> tuple[Poly, ...]:
        v = _as_tuple(v)
        if len(v) != self.rank:
            raise ValueError(f"rank mismatch: vector of length {len(v)} vs rank {self.rank}")
        return _from_vec(self.ring, self._engine_().normal_form(_to_vec(v)), self.rank)

    def contains(self, v) -> bool:
        v = _as_tuple(v)
        if len(v) != self.rank:
            raise ValueError(f"rank mismatch: vector of length {len(v)} vs rank {self.rank}")
        return not self._engine_().normal_form(_to_vec(v))

    __contains__ = contains

    def issubset(self, other: "Submodule") -> bool:
        self._check(other)
        eng = other._engine_()
        return all(not eng.normal_form(v) for v in self._vecs)

    def equals(self, other: "Submodule") -> bool:
        """Module equality by two-sided membership."""
        return self.issubset(other) and other.issubset(self)

    def __add__(self, other: "Submodule") -> "Submodule":
        self._check(other)
        return Submodule._from_vecs(self.ring, self._vecs + other._vecs, self.rank, self.shifts)

    def is_zero(self) -> bool:
        return not self._vecs

    # -- grading -------------------------------------------------------------------
    def degree_of(self, v) -> int | None:
        d = _to_vec(_as_tuple(v))
        if not d:
            return None
        return _vec_degree(self.ring, d, self.shifts)

    def is_homogeneous(self) -> bool:
        return all(_vec_degree(self.ring, v, self.shifts) is not None for v in self._vecs)

    def hilbert_function(self, d: int) -> int:
        """``dim_k (S^r / M)_d`` counted via standard monomials of the basis."""
        lts = self.leading_terms()
        count = 0
        for comp in range(self.rank):
            for e in self.ring.monomials_of_degree(d - self.shifts[comp]):
                if not any(c == comp and all(a <= b for a, b in zip(le, e)) for le, c in lts):
                    count += 1
        return count


class Ideal:
    """Ideal of a polynomial ring, or of a quotient ring given by lifts.

    For a quotient ring ``R = S/c`` membership is decided in ``S`` against the
    generators together with ``c``.
    """

    def __init__(self, ring: PolyRing, gens: Iterable):
        self.ring = ring
        gs = []
        for g in gens:
            g = ring(g) if not isinstance(g, Poly) else g
            if g.ring.names != ring.names or g.ring.field != ring.field:
                raise RingMismatchError(f"{g} does not live in {ring}")
            gs.append(Poly(ring.cover, g._t))
        self.gens: list[Poly] = gs
        lifted = [g for g in gs if g]
        if ring.modulus:
            lifted += list(ring.modulus)
        self.module = Submodule(ring.cover, [(g,) for g in lifted], rank=1)

    def __repr__(self):
        return "(" + ", ".join(map(str, self.gens)) + ")"

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    @property
    def nonzero_gens(self) -> list[Poly]:
        return [g for g in self.gens if g]

    def contains(self, f) -> bool:
        if not isinstance(f, Poly):
            f = self.ring(f)
        return self.module.contains((Poly(self.ring.cover, f._t),))

    __contains__ = contains

    def reduce(self, f: Poly) -> Poly:
        return self.module.normal_form((Poly(self.ring.cover, f._t),))[0]

    def issubset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def equals(self, other: "Ideal") -> bool:
        return self.issubset(other) and other.issubset(self)

    def is_zero(self) -> bool:
        return self.module.is_zero()

    def is_unit(self) -> bool:
        return self.contains(self.ring.one)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def groebner_basis(self) -> list[Poly]:
        return [v[0] for v in self.module.groebner_basis().gens]

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other):
        if isinstance(other, Ideal):
            return Ideal(self.ring, [f * g for f in self.nonzero_gens for g in other.nonzero_gens])
        if isinstance(other, Poly):
            return Ideal(self.ring, [g * other for g in self.gens])
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, r: int) -> "Ideal":
        if r < 1:
            raise ValueError("ideal powers need r >= 1")
        out = self
        for _ in range(r - 1):
            out = out * self
        return out

    def hilbert_function(self, d: int) -> int:
        """``dim_k (S/I)_d`` for the lifted ideal."""
        return self.module.hilbert_function(d)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def groebner_basis(M: Submodule) -> Submodule:
    return M.groebner_basis()


def normal_form(v, M: Submodule) -> tuple[Poly, ...]:
    return M.normal_form(v)


def membership(v, M) -> bool:
    return M.contains(v)


def _gen_shifts(ring, vecs, shifts):
    out = []
    for v in vecs:
        d = _vec_degree(ring, v, shifts) if v else None
        out.append(0 if d is None else d)
    return out


def kernel_modulo(ring: PolyRing, gens: Sequence, relations: Sequence = (),
                  shifts: Sequence[int] | None = None,
                  source_shifts: Sequence[int] | None = None) -> Submodule:
    """Generators of ``{q in S^s : sum q_j gens_j in span(relations)}``.

    ``gens`` and ``relations`` are vectors of a common free module ``S^r``.
    Source shifts default to the degrees of the generators, so homogeneous input
    produces homogeneous output.
    """
    ring = ring.cover
    gens = [_as_tuple(g) for g in gens]
    rels = [_as_tuple(g) for g in relations]
    s = len(gens)
    if s == 0:
        raise ValueError("kernel of an empty generator list")
    rank = len(gens[0])
    shifts = tuple(shifts) if shifts is not None else (0,) * rank
    gvecs = [_to_vec(g) for g in gens]
    if source_shifts is None:
        source_shifts = _gen_shifts(ring, gvecs, shifts)
    eng = _Buchberger(ring, rank, shifts, track=True)
    for r in rels:
        rv = _to_vec(r)
        if rv:
            eng.add(rv, {})
    eng.run()
    zero = (0,) * ring.nvars
    for j, v in enumerate(gvecs):
        eng.add(v, {(zero, j): 1})
    eng.run()
    out = _normalize_vecs(ring, eng.syz, source_shifts)
    return Submodule._from_vecs(ring, out, s, source_shifts)


def _normalize_vecs(ring: PolyRing, vecs: Iterable[dict], shifts) -> list[dict]:
    """Monic, de-duplicated, sorted by degree then leading term."""
    key = _TermKey(ring, shifts)
    seen = set()
    out = []
    for v in vecs:
        if not v:
            continue
        lm = max(v, key=key.__getitem__)
        inv = ring.field.inv(v[lm])
        v = _scaled(v, inv, None, ring.field.norm)
        sig = frozenset(v.items())
        if sig in seen:
            continue
        seen.add(sig)
        out.append(v)
    out.sort(key=lambda v: (key[max(v, key=key.__getitem__)], len(v)))
    return out


def syzygies(gens: Sequence, ring: PolyRing | None = None, shifts=None,
             source_shifts=None) -> Submodule:
    """Syzygy module of ``gens`` (vectors of ``S^r``, or polynomials for ``r = 1``)."""
    gens = [_as_tuple(g) for g in gens]
    if not gens:
        raise ValueError("syzygies of an empty generator list")
    ring = ring or gens[0][0].ring
    return kernel_modulo(ring, gens, (), shifts=shifts, source_shifts=source_shifts)


def intersect(M: Submodule, N: Submodule) -> Submodule:
    """``M ∩ N`` as the image under ``M``'s generators of the kernel modulo ``N``."""
    M._check(N)
    if M.shifts != N.shifts:
        raise ValueError("intersection needs equal shifts")
    if M.is_zero() or N.is_zero():
        return Submodule._from_vecs(M.ring, [], M.rank, M.shifts)
    K = kernel_modulo(M.ring, M.gens, N.gens, shifts=M.shifts)
    norm = M.ring.field.norm
    images = []
    for q in K._vecs:
        img: dict = {}
        for (e, j), c in q.items():
            _axpy(img, -c, e, M._vecs[j], norm)
        images.append(img)
    out = _normalize_vecs(M.ring, images, M.shifts)
    return Submodule._from_vecs(M.ring, out, M.rank, M.shifts)


def intersect_ideals(a: Ideal, b: Ideal) -> Ideal:
    if a.ring.modulus or b.ring.modulus:
        raise ValueError("ideal intersection is implemented for polynomial rings")
    m = intersect(a.module, b.module)
    return Ideal(a.ring, [g[0] for g in m.gens])


def quotient(a: Ideal, b: Ideal) -> Ideal:
    """The colon ideal ``a : b = {x : x b ⊆ a}``."""
    ring = a.ring
    bg = [Poly(ring.cover, g._t) for g in b.nonzero_gens]
    if not bg:
        return Ideal(ring, [ring.one])
    k = len(bg)
    zero = ring.cover.zero
    ag = [v[0] for v in a.module.gens]
    rels = []
    for g in ag:
        for l in range(k):
            rels.append(tuple(g if i == l else zero for i in range(k)))
    shifts = [0] * k
    if all(g.is_homogeneous() for g in bg) and all(g.is_homogeneous() for g in ag):
        shifts = [-g.weighted_degree() for g in bg]
    K = kernel_modulo(ring, [tuple(bg)], rels, shifts=shifts, source_shifts=[0])
    return Ideal(ring, [v[0] for v in K.gens])


def minimal_generators(M: Submodule, relations: Submodule | None = None,
                       gens: Sequence | None = None) -> list[tuple[Poly, ...]]:
    """Minimal homogeneous generating set (graded Nakayama), greedy by ascending degree.

    With ``relations`` the count is taken for the image in ``S^r / relations``:
    a generator is dropped when it lies in the span of the kept ones plus the
    relations.
    """
    ring = M.ring
    vecs = M._vecs if gens is None else [v for v in (_to_vec(_as_tuple(g)) for g in gens) if v]
    degs = []
    for v in vecs:
        d = _vec_degree(ring, v, M.shifts)
        if d is None:
            raise ValueError("minimal_generators needs homogeneous generators")
        degs.append(d)
    key = _TermKey(ring, M.shifts)
    order = sorted(range(len(vecs)),
                   key=lambda i: (degs[i], len(vecs[i]), key[max(vecs[i], key=key.__getitem__)]))
    eng = _Buchberger(ring, M.rank, M.shifts)
    if relations is not None:
        for v in relations._vecs:
            eng.add(v)
    eng.run()
    kept = []
    for i in order:
        if eng.normal_form(vecs[i]):
            kept.append(vecs[i])
            eng.add(vecs[i])
            eng.run()
    return [_from_vec(ring, v, M.rank) for v in kept]


def gcd_poly(f: Poly, g: Poly) -> Poly:
    """Monic gcd computed as ``f*g / lcm`` with ``(lcm) = (f) ∩ (g)``."""
    if not f or not g:
        raise ValueError("gcd of the zero polynomial")
    ring = f.ring.cover
    f = Poly(ring, f._t)
    g = Poly(ring, g._t)
    if f.is_constant() or g.is_constant():
        return ring.one
    m = intersect(Submodule(ring, [(f,)]), Submodule(ring, [(g,)]))
    basis = [v[0] for v in m.groebner_basis().gens]
    if len(basis) != 1:
        raise ArithmeticError("intersection of principal ideals is not principal")
    return (f * g).exact_div(basis[0]).monic()


def radical_membership(f: Poly, a: Ideal) -> bool:
    """``f ∈ √a`` iff ``1 ∈ (a, 1 - t f)`` in ``S[t]``."""
    ring = a.ring.cover
    name = "t_"
    while name in ring.names:
        name += "_"
    big = ring.extend(name)

    def up(p: Poly) -> Poly:
        return Poly(big, {e + (0,): c for e, c in p._t.items()})

    t = big.var(big.nvars - 1)
    gens = [up(v[0]) for v in a.module.gens]
    gens.append(big.one - t * up(Poly(ring, f._t)))
    return Ideal(big, gens).is_unit()


def krull_dimension(a: Ideal) -> int:
    """``dim S/a`` from the leading-monomial ideal (maximal independent sets)."""
    ring = a.ring.cover
    if a.is_unit():
        return -1
    lts = [e for e, _ in a.module.leading_terms()]
    n = ring.nvars
    supports = [frozenset(i for i, k in enumerate(e) if k) for e in lts]
    best = 0
    for mask in range(1 << n):
        u = frozenset(i for i in range(n) if mask >> i & 1)
        if len(u) > best and not any(s <= u for s in supports):
            best = len(u)
    return best
