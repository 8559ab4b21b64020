"""Exact sparse multivariate polynomials over Q and GF(p) with weighted gradings.

A :class:`PolyRing` fixes the coefficient field, the variable names, a positive
weight vector and the monomial order.  It may also carry a modulus (a list of
polynomials of the cover ring), in which case it stands for the quotient ring
``S/c``; polynomials of such a ring are lifts and all arithmetic happens in the
cover.  Quotient semantics are applied by the ideal/derivation layers.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Field",
    "QQ",
    "GF",
    "PolyRing",
    "Poly",
    "InexactDivisionError",
    "RingMismatchError",
    "jacobian_columns",
]


class InexactDivisionError(ArithmeticError):
    """Raised by :meth:`Poly.exact_div` when the divisor does not divide."""


class RingMismatchError(ValueError):
    """Operands live in different rings."""


class Field:
    """Coefficient field: the rationals (``p == 0``) or a prime field."""

    def __init__(self, p: int = 0):
        if p < 0 or (p and not _is_prime(p)):
            raise ValueError(f"characteristic must be 0 or a prime, got {p}")
        self.p = p

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, value):
        """Convert an int, Fraction or numeric string to a canonical element."""
        if isinstance(value, str):
            value = Fraction(value)
        if self.p:
            if isinstance(value, Fraction):
                num = value.numerator % self.p
                den = value.denominator % self.p
                if den == 0:
                    raise ZeroDivisionError(f"{value} is not defined in GF({self.p})")
                return num * pow(den, -1, self.p) % self.p
            return int(value) % self.p
        if isinstance(value, Fraction):
            return value.numerator if value.denominator == 1 else value
        if isinstance(value, int):
            return value
        raise TypeError(f"cannot convert {value!r} to a field element")

    def norm(self, c):
        # ints stay ints over Q; Fractions with unit denominator collapse to int
        if self.p:
            return c % self.p
        if type(c) is Fraction and c.denominator == 1:
            return c.numerator
        return c

    def inv(self, c):
        if c == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(c, -1, self.p)
        return self.norm(Fraction(1) / c)

    def div(self, a, b):
        if self.p:
            return a * pow(b, -1, self.p) % self.p
        return self.norm(Fraction(a) / b)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"

    __str__ = __repr__

    @property
    def name(self) -> str:
        return "Q" if self.p == 0 else f"GF({self.p})"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


class PolyRing:
    """The ring ``k[x_1..x_n]`` (optionally modulo an ideal) with a weight vector.

    Parameters
    ----------
    names : sequence of str or comma separated str
    field : Field, default QQ
    weights : positive ints, default all 1
    order : ``"grevlex"`` (weighted, degree-compatible) or ``"lex"``
    """

    def __init__(self, names, field: Field = QQ, weights=None, order: str = "grevlex",
                 modulus=None, factorial: bool = False):
        if isinstance(names, str):
            names = [s.strip() for s in names.split(",") if s.strip()]
        names = tuple(names)
        if not names:
            raise ValueError("a polynomial ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for nm in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", nm):
                raise ValueError(f"invalid variable name {nm!r}")
        weights = tuple(int(w) for w in weights) if weights is not None else (1,) * len(names)
        if len(weights) != len(names):
            raise ValueError("one weight per variable is required")
        if any(w <= 0 for w in weights):
            raise ValueError("weights must be strictly positive")
        if order not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {order!r}")
        self.names = names
        self.field = field
        self.weights = weights
        self.order = order
        self.nvars = len(names)
        self.factorial = bool(factorial)
        self._cover = None
        self.modulus: tuple[Poly, ...] | None = None
        if modulus is not None:
            cover = PolyRing(names, field, weights, order)
            self._cover = cover
            self.modulus = tuple(p for p in (cover._coerce_foreign(g) for g in modulus) if p)

    # -- identity -----------------------------------------------------------
    def _ident(self):
        return (self.names, self.field, self.weights, self.order, self.modulus)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._ident() == other._ident()

    def __hash__(self):
        return hash((self.names, self.field, self.weights, self.order))

    def __repr__(self):
        s = f"{self.field.name}[{','.join(self.names)}]"
        if any(w != 1 for w in self.weights):
            s += " weights " + " ".join(map(str, self.weights))
        if self.modulus is not None:
            s += " / (" + ", ".join(map(str, self.modulus)) + ")"
        return s

    # -- structure ------------------------------------------------------------
    @property
    def cover(self) -> "PolyRing":
        """The free polynomial ring over the same variables."""
        return self._cover if self._cover is not None else self

    @property
    def is_quotient(self) -> bool:
        return self.modulus is not None

    @property
    def characteristic(self) -> int:
        return self.field.p

    def quotient(self, gens, factorial: bool = False) -> "PolyRing":
        return PolyRing(self.names, self.field, self.weights, self.order,
                        modulus=list(gens), factorial=factorial)

    def with_order(self, order: str) -> "PolyRing":
        mod = None if self.modulus is None else list(self.modulus)
        ring = PolyRing(self.names, self.field, self.weights, order, modulus=mod,
                        factorial=self.factorial)
        return ring

    def extend(self, name: str, weight: int = 1) -> "PolyRing":
        """Cover ring with one extra (last) variable."""
        return PolyRing(self.names + (name,), self.field, self.weights + (weight,), self.order)

    @property
    def gens(self) -> tuple["Poly", ...]:
        return tuple(self.var(i) for i in range(self.nvars))

    def var(self, i: int) -> "Poly":
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range")
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = self.field(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exp, coeff=1) -> "Poly":
        c = self.field(coeff)
        return Poly(self, {tuple(exp): c} if c else {})

    def __call__(self, value) -> "Poly":
        if isinstance(value, Poly):
            return self._coerce_foreign(value)
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)

    def _coerce_foreign(self, p: "Poly") -> "Poly":
        if p.ring == self:
            return p
        if p.ring.names != self.names or p.ring.field != self.field:
            raise RingMismatchError(f"cannot move {p} from {p.ring} to {self}")
        return Poly(self, p._t)

    # -- grading and order ----------------------------------------------------
    def wdeg(self, exp: Sequence[int]) -> int:
        return sum(w * e for w, e in zip(self.weights, exp))

    def mono_key(self, exp: Sequence[int]):
        """Sort key: larger key means larger monomial under the ring order."""
        if self.order == "lex":
            return tuple(exp)
        return (self.wdeg(exp), tuple(-e for e in reversed(exp)))

    def monomials_of_degree(self, d: int) -> list[tuple[int, ...]]:
        """All exponent vectors of weighted degree ``d``."""
        out: list[tuple[int, ...]] = []
        n = self.nvars
        w = self.weights

        def rec(i, rem, acc):
            if i == n - 1:
                if rem % w[i] == 0:
                    out.append(tuple(acc + [rem // w[i]]))
                return
            for e in range(rem // w[i] + 1):
                rec(i + 1, rem - e * w[i], acc + [e])

        if d >= 0:
            rec(0, d, [])
        return out

    # -- text -------------------------------------------------------------------
    def parse(self, text: str) -> "Poly":
        return parse_poly(self, text)


class Poly:
    """Immutable sparse polynomial: a mapping exponent-tuple -> nonzero coefficient."""

    __slots__ = ("ring", "_t", "_hash")

    def __init__(self, ring: PolyRing, terms: dict | None = None):
        self.ring = ring
        self._t = {} if terms is None else terms
        self._hash = None

    @classmethod
    def from_terms(cls, ring: PolyRing, terms: Iterable) -> "Poly":
        acc: dict = {}
        F = ring.field
        for exp, c in terms:
            exp = tuple(exp)
            if len(exp) != ring.nvars:
                raise ValueError(f"exponent {exp} has wrong length for {ring}")
            v = F.norm(acc.get(exp, 0) + F(c))
            if v:
                acc[exp] = v
            else:
                acc.pop(exp, None)
        return cls(ring, acc)

    # -- basic protocol ------------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._t)

    def __bool__(self):
        return bool(self._t)

    def __len__(self):
        return len(self._t)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring.names == other.ring.names and self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def sorted_terms(self) -> list:
        """Terms in strictly decreasing order under the ring's monomial order."""
        key = self.ring.mono_key
        return sorted(self._t.items(), key=lambda t: key(t[0]), reverse=True)

    @property
    def leading_term(self):
        if not self._t:
            raise ValueError("zero polynomial has no leading term")
        key = self.ring.mono_key
        exp = max(self._t, key=key)
        return exp, self._t[exp]

    @property
    def lc(self):
        return self.leading_term[1]

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._t)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._t.get((0,) * self.ring.nvars, 0)

    def monic(self) -> "Poly":
        if not self._t:
            return self
        return self.scale(self.ring.field.inv(self.lc))

    def total_degree(self) -> int:
        return max((sum(e) for e in self._t), default=-1)

    def weighted_degree(self):
        """Common weighted degree of all terms, or ``None`` if not homogeneous."""
        if not self._t:
            raise ValueError("the zero polynomial has no degree")
        degs = {self.ring.wdeg(e) for e in self._t}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return not self._t or self.weighted_degree() is not None

    def max_weighted_degree(self) -> int:
        return max((self.ring.wdeg(e) for e in self._t), default=-1)

    # -- arithmetic ---------------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring is self.ring or other.ring == self.ring:
                return other
            if other.ring.cover == self.ring.cover:
                # lifts from a quotient and its cover mix freely
                return Poly(self.ring, other._t)
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        norm = self.ring.field.norm
        t = dict(self._t)
        for e, c in other._t.items():
            v = norm(t.get(e, 0) + c)
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Poly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring.field.norm
        return Poly(self.ring, {e: norm(-c) for e, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        norm = self.ring.field.norm
        t: dict = {}
        for e1, c1 in self._t.items():
            for e2, c2 in other._t.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Poly(self.ring, {e: v for e, c in t.items() if (v := norm(c))})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Poly":
        F = self.ring.field
        c = F(c) if not isinstance(c, (int, Fraction)) else c
        return Poly(self.ring, {e: v for e, a in self._t.items() if (v := F.norm(a * c))})

    def mul_monomial(self, exp, c=1) -> "Poly":
        norm = self.ring.field.norm
        return Poly(self.ring, {tuple(a + b for a, b in zip(e, exp)): v
                                for e, a in self._t.items() if (v := norm(a * c))})

    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient ``q`` with ``self == q * other``; raises if inexact."""
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        q, r = self.divmod(other)
        if r:
            raise InexactDivisionError(f"{other} does not divide {self}")
        return q

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Multivariate division by a single polynomial under the ring order."""
        other = self._coerce(other)
        F = self.ring.field
        key = self.ring.mono_key
        lexp, lcoef = other.leading_term
        inv = F.inv(lcoef)
        rem = dict(self._t)
        q: dict = {}
        r: dict = {}
        while rem:
            exp = max(rem, key=key)
            c = rem[exp]
            m = tuple(a - b for a, b in zip(exp, lexp))
            if min(m) < 0:
                r[exp] = rem.pop(exp)
                continue
            f = F.norm(c * inv)
            q[m] = F.norm(q.get(m, 0) + f)
            for e2, c2 in other._t.items():
                e = tuple(a + b for a, b in zip(e2, m))
                v = F.norm(rem.get(e, 0) - f * c2)
                if v:
                    rem[e] = v
                else:
                    rem.pop(e, None)
        return Poly(self.ring, {e: c for e, c in q.items() if c}), Poly(self.ring, r)

    def divides(self, other: "Poly") -> bool:
        if not self:
            return not other
        return not other.divmod(self)[1]

    # -- calculus ---------------------------------------------------------------------
    def diff(self, i: int) -> "Poly":
        """Formal partial derivative with respect to variable ``i``."""
        if not 0 <= i < self.ring.nvars:
            raise IndexError(f"variable index {i} out of range for {self.ring}")
        norm = self.ring.field.norm
        t: dict = {}
        for e, c in self._t.items():
            k = e[i]
            if k:
                v = norm(c * k)
                if v:
                    ne = e[:i] + (k - 1,) + e[i + 1:]
                    t[ne] = v
        return Poly(self.ring, t)

    def gradient(self) -> tuple["Poly", ...]:
        return tuple(self.diff(i) for i in range(self.ring.nvars))

    def evaluate(self, values: Sequence) -> object:
        F = self.ring.field
        total = 0
        for e, c in self._t.items():
            term = c
            for v, k in zip(values, e):
                if k:
                    term = term * v ** k
            total = total + term
        return F.norm(F(total)) if isinstance(total, (int, Fraction)) else total

    def homogeneous_components(self) -> dict[int, "Poly"]:
        parts: dict[int, dict] = {}
        for e, c in self._t.items():
            parts.setdefault(self.ring.wdeg(e), {})[e] = c
        return {d: Poly(self.ring, t) for d, t in sorted(parts.items())}

    # -- printing -----------------------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def jacobian_columns(gens: Sequence[Poly]) -> list[list[Poly]]:
    """Matrix with entry ``[j][i] = d f_i / d x_j`` (n rows, one column per generator)."""
    gens = list(gens)
    if not gens:
        raise ValueError("jacobian of an empty generator list")
    ring = gens[0].ring
    for g in gens:
        g._coerce(ring.zero)
        if g.ring != ring:
            raise RingMismatchError("generators live in different rings")
    grads = [g.gradient() for g in gens]
    return [[grads[i][j] for i in range(len(gens))] for j in range(ring.nvars)]


# ---------------------------------------------------------------------------
# canonical text form
# ---------------------------------------------------------------------------

def _format_coeff(c) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def format_monomial(names: Sequence[str], exp: Sequence[int]) -> str:
    parts = []
    for nm, k in zip(names, exp):
        if k == 1:
            parts.append(nm)
        elif k > 1:
            parts.append(f"{nm}^{k}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    if not p._t:
        return "0"
    out = []
    for idx, (exp, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        mono = format_monomial(p.ring.names, exp)
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if idx == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


class ParseError(ValueError):
    """Syntax error in a polynomial expression; ``pos`` is a 0-based offset."""

    def __init__(self, msg: str, pos: int = 0):
        super().__init__(msg)
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|(d/d[A-Za-z_][A-Za-z0-9_]*)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("num", m.group(1), start))
        elif m.group(2):
            toks.append(("dvar", m.group(2)[3:], start))
        elif m.group(3):
            toks.append(("name", m.group(3), start))
        else:
            op = m.group(4)
            toks.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class ExprParser:
    """Recursive-descent parser for ``+ - * / ^`` expressions.

    ``atom`` is a hook resolving names; by default names must be ring variables.
    Values only need ``+ - *`` and ``**`` with int exponents.
    """

    def __init__(self, ring: PolyRing, text: str, names: dict | None = None):
        self.ring = ring
        self.toks = tokenize(text)
        self.i = 0
        self.names = names or {}

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want!r}, got {got!r}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        v = self.expr()
        self.take("end")
        return v

    def expr(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.i += 1
            v = self.term()
            if tok[1] == "-":
                v = -v
        else:
            v = self.term()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.i += 1
                rhs = self.term()
                v = v + rhs if tok[1] == "+" else v - rhs
            else:
                return v

    def term(self):
        v = self.power()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.i += 1
                v = v * self.power()
            elif tok[0] == "op" and tok[1] == "/":
                self.i += 1
                pos = self.peek()[2]
                d = self.power()
                if not isinstance(d, Poly) or not d.is_constant() or not d:
                    raise ParseError("division is only allowed by nonzero constants", pos)
                v = v * self.ring.const(self.ring.field.inv(d.constant_value()))
            else:
                return v

    def power(self):
        v = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.i += 1
            ntok = self.take("num")
            v = v ** int(ntok[1])
        return v

    def atom(self):
        tok = self.peek()
        if tok[0] == "num":
            self.i += 1
            return self.ring.const(int(tok[1]))
        if tok[0] == "name":
            self.i += 1
            if tok[1] in self.names:
                return self.names[tok[1]]
            if tok[1] in self.ring.names:
                return self.ring.var(self.ring.names.index(tok[1]))
            raise ParseError(f"unknown name {tok[1]!r}", tok[2])
        if tok[0] == "dvar":
            return self.dvar(tok)
        if tok[0] == "op" and tok[1] == "(":
            self.i += 1
            v = self.expr()
            self.take("op", ")")
            return v
        raise ParseError(f"unexpected {tok[1] or 'end of input'!r}", tok[2])

    def dvar(self, tok):
        raise ParseError("derivation symbols are not allowed here", tok[2])


def parse_poly(ring: PolyRing, text: str, names: dict | None = None) -> Poly:
    v = ExprParser(ring, text, names).parse()
    if not isinstance(v, Poly):
        raise ParseError("expression is not a polynomial", 0)
    return v


def all_monomials(nvars: int, max_total_degree: int) -> Iterator[tuple[int, ...]]:
    """Exponent vectors of total degree <= ``max_total_degree`` (small brute-force helper)."""
    for d in range(max_total_degree + 1):
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            yield tuple(e)
