"""Derivations ``sum h_j d/dx_j`` and modules of them.

A derivation of ``S = k[x_1..x_n]`` is stored as its coefficient vector
``(h_1, ..., h_n)``.  Over a quotient ``R = S/c`` the coefficients are lifts to
``S`` and two derivations are identified modulo ``c S^n``.

Grading: ``x_j`` has weight ``w_j`` so ``d/dx_j`` has degree ``-w_j``; the
derivation is homogeneous of degree ``s`` when each ``h_j`` has degree ``s + w_j``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from . import groebner as gb
from .polyring import ExprParser, ParseError, Poly, PolyRing, RingMismatchError

__all__ = [
    "Derivation",
    "DerModule",
    "euler_derivation",
    "partial",
    "gradient_ideal",
    "jacobian_ideal",
    "abstract_jacobian",
    "parse_derivation",
    "module_shifts",
]


def module_shifts(ring: PolyRing) -> tuple[int, ...]:
    """Component shifts making ``Der(S) = S^n`` graded: ``d/dx_j`` sits in degree ``-w_j``."""
    return tuple(-w for w in ring.weights)


class Derivation:
    """A ``k``-linear derivation ``sum_j h_j d/dx_j``.

    >>> R = PolyRing("x,y")
    >>> x, y = R.gens
    >>> d = Derivation(R, [y, -x])
    >>> str(d(x**2 + y**2))
    '0'
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: PolyRing, coeffs: Sequence):
        coeffs = list(coeffs)
        if len(coeffs) != ring.nvars:
            raise ValueError(f"expected {ring.nvars} coefficients, got {len(coeffs)}")
        cover = ring.cover
        out = []
        for h in coeffs:
            if isinstance(h, Poly):
                if h.ring.cover != cover:
                    raise RingMismatchError(f"{h} does not live in {ring}")
                out.append(Poly(cover, h._t))
            else:
                out.append(cover(h))
        self.ring = ring
        self.coeffs: tuple[Poly, ...] = tuple(out)

    # -- basic protocol ---------------------------------------------------------
    def __call__(self, f: Poly) -> Poly:
        return self.apply(f)

    def apply(self, f: Poly) -> Poly:
        """``D(f) = sum h_j df/dx_j`` (a lift when the ring is a quotient)."""
        if not isinstance(f, Poly):
            f = self.ring.cover(f)
        f = Poly(self.ring.cover, f._t)
        out = self.ring.cover.zero
        for j, h in enumerate(self.coeffs):
            if h:
                out = out + h * f.diff(j)
        return out

    def __eq__(self, other):
        return isinstance(other, Derivation) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __add__(self, other: "Derivation") -> "Derivation":
        if not isinstance(other, Derivation):
            return NotImplemented
        return Derivation(self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "Derivation") -> "Derivation":
        if not isinstance(other, Derivation):
            return NotImplemented
        return Derivation(self.ring, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "Derivation":
        return Derivation(self.ring, [-a for a in self.coeffs])

    def __mul__(self, other) -> "Derivation":
        if isinstance(other, Derivation):
            return NotImplemented
        if not isinstance(other, Poly):
            other = self.ring.cover(other)
        other = Poly(self.ring.cover, other._t)
        return Derivation(self.ring, [other * a for a in self.coeffs])

    __rmul__ = __mul__

    def bracket(self, other: "Derivation") -> "Derivation":
        """Lie bracket ``[D, E] = D∘E - E∘D``, coefficientwise ``D(e_j) - E(d_j)``."""
        return Derivation(self.ring, [self.apply(e) - other.apply(d)
                                      for d, e in zip(self.coeffs, other.coeffs)])

    lie_bracket = bracket

    # -- grading ------------------------------------------------------------------
    @property
    def vector(self) -> tuple[Poly, ...]:
        return self.coeffs

    def degree(self) -> int | None:
        """Degree ``s`` if homogeneous, ``None`` otherwise (zero has no degree)."""
        degs = set()
        for h, w in zip(self.coeffs, self.ring.weights):
            for e in h._t:
                degs.add(self.ring.wdeg(e) - w)
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_homogeneous(self) -> bool:
        return not self or self.degree() is not None

    # -- text -----------------------------------------------------------------------
    def __str__(self):
        parts = []
        for h, nm in zip(self.coeffs, self.ring.names):
            if not h:
                continue
            dv = f"d/d{nm}"
            if len(h) == 1:
                (exp, c), = h._t.items()
                neg = c < 0 if h.ring.characteristic == 0 else False
                body = str(-h if neg else h)
                body = dv if body == "1" else f"{body}*{dv}"
                parts.append((neg, body))
            else:
                parts.append((False, f"({h})*{dv}"))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"Derivation({self})"

    def normalized(self) -> "Derivation":
        """Canonical scalar multiple: primitive integer coefficients over Q with a
        positive leading coefficient in the first nonzero component; monic over GF(p)."""
        if not self:
            return self
        first = next(h for h in self.coeffs if h)
        lead = first.lc
        F = self.ring.field
        if F.p:
            return self * self.ring.cover.const(F.inv(lead))
        from fractions import Fraction
        from math import gcd, lcm
        coeffs = [Fraction(c) for h in self.coeffs for c in h._t.values()]
        den = lcm(*(c.denominator for c in coeffs))
        num = gcd(*(int(c * den) for c in coeffs))
        scale = Fraction(den, num)
        if lead < 0:
            scale = -scale
        return self * self.ring.cover.const(scale)

    def to_tuple_str(self) -> str:
        return "(" + ", ".join(map(str, self.coeffs)) + ")"


def euler_derivation(ring: PolyRing) -> Derivation:
    """``sum w_j x_j d/dx_j``; acts as multiplication by the degree on homogeneous input."""
    return Derivation(ring, [ring.cover.var(j) * w for j, w in enumerate(ring.weights)])


def partial(ring: PolyRing, j: int) -> Derivation:
    cover = ring.cover
    return Derivation(ring, [cover.one if i == j else cover.zero for i in range(ring.nvars)])


def gradient_ideal(f: Poly, der_gens: Sequence[Derivation] | None = None,
                   ring: PolyRing | None = None) -> gb.Ideal:
    """``(d_1(f), ..., d_m(f))`` for generators ``d_i`` of the derivation module.

    The generators default to the partials ``d/dx_j``.
    """
    ring = ring or (der_gens[0].ring if der_gens else f.ring)
    return gb.Ideal(ring, abstract_jacobian(f, der_gens, ring)[:-1])


def jacobian_ideal(f: Poly, der_gens: Sequence[Derivation] | None = None,
                   ring: PolyRing | None = None) -> gb.Ideal:
    """``J_f = (f, df/dx_1, ..., df/dx_n)``.

    In characteristic zero with ``f`` homogeneous, ``f`` already lies in the
    gradient ideal (Euler), but in positive characteristic it may not.
    """
    ring = ring or (der_gens[0].ring if der_gens else f.ring)
    return gb.Ideal(ring, abstract_jacobian(f, der_gens, ring))


def abstract_jacobian(f: Poly, der_gens: Sequence[Derivation] | None = None,
                      ring: PolyRing | None = None) -> list[Poly]:
    """Ordered signed list ``(d_1(f), ..., d_m(f), f)`` generating ``J_f``.

    Entries are lifts to the polynomial cover; the order is kept because
    logarithmic derivations are read off a presentation against this list.
    """
    ring = ring or (der_gens[0].ring if der_gens else f.ring)
    f = Poly(ring.cover, f._t)
    if der_gens is None:
        return [f.diff(j) for j in range(ring.nvars)] + [f]
    return [d.apply(f) for d in der_gens] + [f]


# ---------------------------------------------------------------------------
# modules of derivations
# ---------------------------------------------------------------------------

class DerModule:
    """Submodule of ``Der(S) = S^n`` (graded with ``d/dx_j`` in degree ``-w_j``).

    Over a quotient ring ``S/c`` the module is taken modulo ``c S^n``: the
    relation vectors are appended when testing membership and they are not
    counted among minimal generators.
    """

    def __init__(self, ring: PolyRing, gens: Iterable[Derivation]):
        self.ring = ring
        self.gens: list[Derivation] = [g if isinstance(g, Derivation) else Derivation(ring, g)
                                       for g in gens]
        self._module: gb.Submodule | None = None
        self._mingens: list[Derivation] | None = None

    @classmethod
    def free(cls, ring: PolyRing) -> "DerModule":
        return cls(ring, [partial(ring, j) for j in range(ring.nvars)])

    @property
    def shifts(self) -> tuple[int, ...]:
        return module_shifts(self.ring)

    def relation_vectors(self) -> list[tuple[Poly, ...]]:
        """Generators of ``c S^n`` (empty over a polynomial ring)."""
        ring = self.ring
        if not ring.modulus:
            return []
        zero = ring.cover.zero
        n = ring.nvars
        return [tuple(g if i == j else zero for i in range(n))
                for g in ring.modulus for j in range(n)]

    @property
    def module(self) -> gb.Submodule:
        """The lifted module ``gens + c S^n`` inside ``S^n``."""
        if self._module is None:
            vecs = [d.coeffs for d in self.gens if d] + self.relation_vectors()
            self._module = gb.Submodule(self.ring.cover, vecs, rank=self.ring.nvars,
                                        shifts=self.shifts)
        return self._module

    def __repr__(self):
        return f"DerModule({len(self.gens)} generators over {self.ring})"

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def contains(self, d) -> bool:
        if not isinstance(d, Derivation):
            d = Derivation(self.ring, d)
        return self.module.contains(d.coeffs)

    __contains__ = contains

    def issubset(self, other: "DerModule") -> bool:
        return all(other.contains(d) for d in self.gens)

    def same_module(self, other) -> bool:
        """Equality by double containment (modulo the ring's relations)."""
        if not isinstance(other, DerModule):
            other = DerModule(self.ring, other)
        return self.issubset(other) and other.issubset(self)

    equals = same_module

    def is_homogeneous(self) -> bool:
        return all(d.is_homogeneous() for d in self.gens)

    def minimal_generators(self) -> list[Derivation]:
        """Minimal homogeneous generators of the image in ``Der(S)/c S^n``."""
        if self._mingens is None:
            nonzero = [d for d in self.gens if d]
            if not nonzero:
                self._mingens = []
            else:
                rels = self.relation_vectors()
                rel_mod = gb.Submodule(self.ring.cover, rels, rank=self.ring.nvars,
                                       shifts=self.shifts) if rels else None
                base = gb.Submodule(self.ring.cover, [d.coeffs for d in nonzero],
                                    rank=self.ring.nvars, shifts=self.shifts)
                self._mingens = [Derivation(self.ring, v).normalized()
                                 for v in gb.minimal_generators(base, relations=rel_mod)]
        return list(self._mingens)

    @property
    def mu(self) -> int:
        """Minimal number of generators (graded case)."""
        return len(self.minimal_generators())

    def degrees(self) -> list[int]:
        return [d.degree() for d in self.minimal_generators()]

    def hilbert_function(self, s: int) -> int:
        """``dim_k`` of the degree-``s`` part of the module (polynomial rings only)."""
        if self.ring.modulus:
            raise ValueError("hilbert_function is implemented over polynomial rings")
        free = sum(len(self.ring.monomials_of_degree(s + w)) for w in self.ring.weights)
        return free - self.module.hilbert_function(s)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

class _DerParser(ExprParser):
    """Parses ``h1*d/dx + ...``; ``d/dx`` atoms evaluate to partial derivations."""

    def dvar(self, tok):
        self.i += 1
        try:
            j = self.ring.index(tok[1])
        except KeyError:
            raise ParseError(f"unknown variable in d/d{tok[1]}", tok[2]) from None
        return partial(self.ring, j)


def parse_derivation(ring: PolyRing, text: str, names: dict | None = None) -> Derivation:
    """Parse either ``(h1, ..., hn)`` or an expression in ``d/dx`` symbols."""
    from .polyring import parse_poly

    s = text.strip()
    if s.startswith("(") and _top_level_commas(s):
        inner = s[1:-1] if s.endswith(")") else None
        if inner is None:
            raise ParseError("unbalanced parentheses", len(s))
        parts = _split_top(inner)
        return Derivation(ring, [parse_poly(ring.cover, p, names) for p in parts])
    value = _DerParser(ring.cover, s, names).parse()
    if isinstance(value, Poly):
        if value:
            raise ParseError("expression is a polynomial, not a derivation", 0)
        return Derivation(ring, [ring.cover.zero] * ring.nvars)
    return Derivation(ring, value.coeffs)


def _split_top(s: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _top_level_commas(s: str) -> bool:
    """True when ``s`` is one parenthesised group containing a depth-1 comma."""
    depth = 0
    comma = False
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0 and i != len(s) - 1:
                return False
        elif ch == "," and depth == 1:
            comma = True
    return comma
