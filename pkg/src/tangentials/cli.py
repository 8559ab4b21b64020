"""Command-line front end.

A session file declares a ring and named objects, one ``;``-terminated
statement each::

    ring Q[x,y,z] weights 15 10 6;
    quotient R = (x^2 + y^3 + z^5) factorial;
    ideal a = (x*z, y^2*z, z^2);
    poly f = z;
    der d1 = (15*x, 10*y, 6*z);

``#`` starts a comment.  Usage::

    tangentials [flags] SESSION COMMAND [ARGS...]

where ``SESSION`` is a path or ``-`` for stdin.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field

from . import groebner as gb
from .derivations import (Derivation, DerModule, abstract_jacobian, parse_derivation)
from .freeness import (FREE, free_family, is_free_divisor, is_free_ideal,
                       jacobian_resolution_shape, saito_certificate, saito_constant)
from .idealizer import (PrecondError, compare_powers, derivation_module, logder,
                        tangential_idealizer, verify_primary_decomposition)
from .polyring import GF, QQ, ParseError, Poly, PolyRing, parse_poly

EXIT_OK, EXIT_FALSE, EXIT_ERROR = 0, 1, 2

_NAME = r"[A-Za-z_][A-Za-z0-9_]*"


class SessionError(ValueError):
    """Problem in a session file, located by 1-based line and column."""

    def __init__(self, msg: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {msg}" if line else msg)
        self.line = line
        self.col = col


class CommandError(ValueError):
    pass


# ---------------------------------------------------------------------------
# session model
# ---------------------------------------------------------------------------

@dataclass
class Session:
    field_name: str
    names: tuple[str, ...]
    weights: tuple[int, ...]
    order: str = "grevlex"
    quotient: tuple[str, list[Poly], bool] | None = None
    decls: list[tuple[str, str, object]] = field(default_factory=list)

    def __post_init__(self):
        self.base = PolyRing(self.names, _field(self.field_name), self.weights, self.order)
        self.ring = self.base

    # lookup ---------------------------------------------------------------------
    def get(self, kind: str, name: str):
        for k, n, v in self.decls:
            if n == name and (kind is None or k == kind):
                return v
        raise CommandError(f"unknown {kind or 'object'} {name!r}")

    def kind_of(self, name: str) -> str | None:
        for k, n, _ in self.decls:
            if n == name:
                return k
        return None

    def poly_names(self) -> dict:
        return {n: v for k, n, v in self.decls if k == "poly"}

    def _key(self):
        quot = None
        if self.quotient is not None:
            quot = (self.quotient[0], tuple(self.quotient[1]), self.quotient[2])
        decls = []
        for kind, name, v in self.decls:
            if kind == "ideal":
                v = tuple(v.gens)
            decls.append((kind, name, v))
        return (self.field_name, self.names, self.weights, quot, tuple(decls))

    def __eq__(self, other):
        if not isinstance(other, Session):
            return NotImplemented
        return self._key() == other._key()


def _field(name: str):
    if name == "Q":
        return QQ
    m = re.fullmatch(r"GF\((\d+)\)", name)
    if not m:
        raise ValueError(f"unknown field {name!r}")
    return GF(int(m.group(1)))


def _split_top(s: str) -> list[tuple[str, int]]:
    """Split on depth-0 commas, returning (piece, offset) pairs."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append((s[start:i], start))
            start = i + 1
    parts.append((s[start:], start))
    return parts


def _statements(text: str):
    """Yield (statement, absolute offset) with comments removed."""
    clean = re.sub(r"#[^\n]*", lambda m: " " * len(m.group(0)), text)
    start = 0
    for i, ch in enumerate(clean):
        if ch == ";":
            stmt = clean[start:i]
            if stmt.strip():
                lead = len(stmt) - len(stmt.lstrip())
                yield stmt.strip(), start + lead
            start = i + 1
    tail = clean[start:]
    if tail.strip():
        lead = len(tail) - len(tail.lstrip())
        yield tail.strip(), start + lead


def _locate(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


_RING = re.compile(r"ring\s+(Q|GF\(\s*\d+\s*\))\s*\[([^\]]*)\]\s*(?:weights\s+([\d\s]+))?$")
_DECL = re.compile(rf"(quotient|ideal|poly|der)\s+({_NAME})\s*=\s*(.*)$", re.S)


def parse_session(text: str, order: str = "grevlex") -> Session:
    """Parse session text; errors carry line and column."""
    sess: Session | None = None
    for stmt, off in _statements(text):
        line, col = _locate(text, off)
        if sess is None:
            m = _RING.match(stmt)
            if not m:
                raise SessionError("a session must start with a ring declaration", line, col)
            fname = re.sub(r"\s+", "", m.group(1))
            names = tuple(s.strip() for s in m.group(2).split(",") if s.strip())
            weights = tuple(int(w) for w in m.group(3).split()) if m.group(3) else (1,) * len(names)
            try:
                sess = Session(fname, names, weights, order)
            except ValueError as exc:
                raise SessionError(str(exc), line, col) from None
            continue
        if stmt.startswith("ring"):
            raise SessionError("only one ring declaration is allowed", line, col)
        m = _DECL.match(stmt)
        if not m:
            raise SessionError(f"cannot parse statement {stmt.split()[0]!r}", line, col)
        kind, name, body = m.group(1), m.group(2), m.group(3).strip()
        body_off = off + m.start(3) + (len(m.group(3)) - len(m.group(3).lstrip()))
        if sess.kind_of(name) is not None or (sess.quotient and sess.quotient[0] == name):
            raise SessionError(f"duplicate name {name!r}", line, col)
        if name in sess.names:
            raise SessionError(f"name {name!r} clashes with a ring variable", line, col)
        try:
            _declare(sess, kind, name, body, text, body_off)
        except SessionError:
            raise
        except (ParseError, ValueError) as exc:
            pos = getattr(exc, "pos", 0)
            raise SessionError(str(exc), *_locate(text, body_off + pos)) from None
    if sess is None:
        raise SessionError("empty session: a ring declaration is required", 1, 1)
    return sess


def _paren_list(body: str, text: str, off: int) -> list[tuple[str, int]]:
    m = re.fullmatch(r"\((.*)\)\s*", body, re.S)
    if not m:
        raise SessionError("expected a parenthesised list", *_locate(text, off))
    inner = m.group(1)
    if not inner.strip():
        return []
    return [(p, off + 1 + o) for p, o in _split_top(inner)]


def _parse_list(sess: Session, ring: PolyRing, items, text) -> list[Poly]:
    out = []
    for piece, o in items:
        try:
            out.append(parse_poly(ring, piece, sess.poly_names()))
        except ParseError as exc:
            raise SessionError(str(exc), *_locate(text, o + exc.pos)) from None
    return out


def _declare(sess: Session, kind: str, name: str, body: str, text: str, off: int):
    if kind == "quotient":
        if sess.quotient is not None:
            raise SessionError("only one quotient declaration is allowed", *_locate(text, off))
        if sess.decls:
            raise SessionError("the quotient must be declared before other objects",
                               *_locate(text, off))
        factorial = False
        m = re.fullmatch(r"(.*\))\s*factorial\s*", body, re.S)
        if m:
            body, factorial = m.group(1), True
        gens = _parse_list(sess, sess.base, _paren_list(body, text, off), text)
        sess.quotient = (name, gens, factorial)
        sess.ring = sess.base.quotient(gens, factorial=factorial)
        return
    ring = sess.ring
    if kind == "ideal":
        gens = _parse_list(sess, ring.cover, _paren_list(body, text, off), text)
        sess.decls.append(("ideal", name, gb.Ideal(ring, gens)))
    elif kind == "poly":
        try:
            p = parse_poly(ring.cover, body, sess.poly_names())
        except ParseError as exc:
            raise SessionError(str(exc), *_locate(text, off + exc.pos)) from None
        sess.decls.append(("poly", name, p))
    else:
        try:
            d = parse_derivation(ring, body, sess.poly_names())
        except ParseError as exc:
            raise SessionError(str(exc), *_locate(text, off + exc.pos)) from None
        except TypeError:
            raise SessionError("malformed derivation expression", *_locate(text, off)) from None
        sess.decls.append(("der", name, d))


def format_session(sess: Session) -> str:
    """Canonical text form; parsing it gives back an equal session."""
    head = f"ring {sess.field_name}[{','.join(sess.names)}]"
    if any(w != 1 for w in sess.weights):
        head += " weights " + " ".join(map(str, sess.weights))
    lines = [head + ";"]
    if sess.quotient is not None:
        name, gens, factorial = sess.quotient
        q = f"quotient {name} = (" + ", ".join(map(str, gens)) + ")"
        lines.append(q + (" factorial;" if factorial else ";"))
    for kind, name, v in sess.decls:
        if kind == "ideal":
            lines.append(f"ideal {name} = (" + ", ".join(map(str, v.gens)) + ");")
        elif kind == "poly":
            lines.append(f"poly {name} = {v};")
        else:
            lines.append(f"der {name} = {v.to_tuple_str()};")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

@dataclass
class Outcome:
    text: str
    data: dict
    truth: bool = True


def _ideal(sess: Session, name: str) -> gb.Ideal:
    kind = sess.kind_of(name)
    if kind == "ideal":
        return sess.get("ideal", name)
    if kind == "poly":
        return gb.Ideal(sess.ring, [sess.get("poly", name)])
    raise CommandError(f"{name!r} is not a declared ideal or polynomial")


def _poly(sess: Session, arg: str) -> Poly:
    if sess.kind_of(arg) == "poly":
        return sess.get("poly", arg)
    try:
        return parse_poly(sess.ring.cover, arg, sess.poly_names())
    except ParseError as exc:
        raise CommandError(f"{arg!r} is neither a declared polynomial nor an expression ({exc})") from None


def _der(sess: Session, name: str) -> Derivation:
    if sess.kind_of(name) != "der":
        raise CommandError(f"{name!r} is not a declared derivation")
    return sess.get("der", name)


def _module_lines(gens) -> list[str]:
    return [f"  {d}" for d in gens]


def _result_outcome(title: str, res) -> Outcome:
    gens = res.generators
    head = f"{title}: {len(gens)} generator(s)"
    if res.mu is not None:
        head += f", mu = {res.mu}, degrees {res.degrees}"
    else:
        head += ", not graded (mu not defined)"
    return Outcome("\n".join([head] + _module_lines(gens)), res.to_dict())


def cmd_idealizer(sess, args):
    if len(args) not in (1, 3) or (len(args) == 3 and args[1] != "into"):
        raise CommandError("usage: idealizer a [into b]")
    a = _ideal(sess, args[0])
    b = _ideal(sess, args[2]) if len(args) == 3 else a
    title = f"T({args[0]})" if len(args) == 1 else f"T({args[0]}, {args[2]})"
    return _result_outcome(title, tangential_idealizer(a, b))


def cmd_logder(sess, args):
    if len(args) != 1:
        raise CommandError("usage: logder f")
    return _result_outcome(f"T({args[0]})", logder(_poly(sess, args[0]), sess.ring))


def cmd_jacobian(sess, args):
    if len(args) != 1:
        raise CommandError("usage: jacobian f")
    f = _poly(sess, args[0])
    der_gens = derivation_module(sess.ring).generators if sess.ring.is_quotient else None
    vals = abstract_jacobian(f, der_gens, sess.ring)
    mins = None
    nonzero = [(v,) for v in vals if v]
    if nonzero and all(v[0].is_homogeneous() for v in nonzero):
        cover = sess.ring.cover
        rels = [(g,) for g in (sess.ring.modulus or ())]
        mins = gb.minimal_generators(gb.Submodule(cover, nonzero, rank=1),
                                     relations=gb.Submodule(cover, rels, rank=1) if rels else None)
    text = f"J({args[0]}) = (" + ", ".join(map(str, vals)) + ")"
    data = {"generators": [str(v) for v in vals]}
    if mins is not None:
        text += "\nminimal: (" + ", ".join(str(v[0]) for v in mins) + ")"
        data["minimal"] = [str(v[0]) for v in mins]
    return Outcome(text, data)


def _verdict_outcome(title: str, v) -> Outcome:
    lines = [f"{title}: {v.status}"]
    if v.mu is not None:
        lines.append(f"mu = {v.mu}")
    if v.basis:
        lines.append("basis:")
        lines += _module_lines(v.basis)
    if v.c is not None:
        lines.append(f"c = {v.c}")
    if v.witness:
        lines.append(f"witness: {v.witness}")
    if v.note:
        lines.append(f"note: {v.note}")
    return Outcome("\n".join(lines), v.to_dict(), v.status == FREE)


def cmd_is_free_divisor(sess, args):
    if len(args) != 1:
        raise CommandError("usage: is-free-divisor f")
    return _verdict_outcome(args[0], is_free_divisor(_poly(sess, args[0]), sess.ring))


def cmd_saito_check(sess, args):
    if len(args) < 2:
        raise CommandError("usage: saito-check f d1 ... dn")
    f = _poly(sess, args[0])
    ds = [_der(sess, n) for n in args[1:]]
    ok = saito_certificate(f, ds)
    c = saito_constant(f, ds) if ok else None
    text = f"saito-check {args[0]}: {'true' if ok else 'false'}"
    if c is not None:
        text += f" (det = {c} * {args[0]})"
    return Outcome(text, {"result": ok, "c": None if c is None else str(c)}, ok)


def cmd_is_free_ideal(sess, args):
    if len(args) != 1:
        raise CommandError("usage: is-free-ideal a")
    return _verdict_outcome(args[0], is_free_ideal(_ideal(sess, args[0])))


def cmd_resolution_jacobian(sess, args):
    if len(args) != 1:
        raise CommandError("usage: resolution-jacobian f")
    rep = jacobian_resolution_shape(_poly(sess, args[0]))
    lines = [f"J({args[0]}) = (" + ", ".join(map(str, rep.ideal)) + ")",
             f"shape: {rep.shape}", f"hilbert-burch: {rep.hilbert_burch}"]
    if rep.minors_ok is not None:
        lines.append(f"maximal minors regenerate: {rep.minors_ok}")
    if rep.gradient is not None:
        g = rep.gradient
        lines.append("gradient ideal (" + ", ".join(map(str, g.ideal)) + ") differs from J:")
        lines.append(f"  shape: {g.shape}, hilbert-burch: {g.hilbert_burch}, minors: {g.minors_ok}")
    return Outcome("\n".join(lines), rep.to_dict(), rep.hilbert_burch)


def cmd_verify_decomposition(sess, args):
    if len(args) < 2:
        raise CommandError("usage: verify-decomposition a q1 q2 ...")
    rep = verify_primary_decomposition(_ideal(sess, args[0]), [_ideal(sess, q) for q in args[1:]])
    lines = [f"intersection of T(q_i) inside T({args[0]}): {rep.meet_in_T}",
             f"T({args[0]}) inside intersection of T(q_i): {rep.T_in_meet}",
             f"equal: {rep.equal}"]
    if rep.witness:
        lines.append(f"witness: {rep.witness}")
    return Outcome("\n".join(lines), rep.to_dict(), rep.equal)


def cmd_compare_powers(sess, args):
    if len(args) != 2 or not args[1].isdigit():
        raise CommandError("usage: compare-powers a r")
    r = int(args[1])
    rep = compare_powers(_ideal(sess, args[0]), r)
    lines = [f"T({args[0]}) inside T({args[0]}^{r}): {rep.forward}",
             f"T({args[0]}^{r}) inside T({args[0]}): {rep.backward}"]
    if rep.witness:
        lines.append(f"witness: {rep.witness}")
    return Outcome("\n".join(lines), rep.to_dict(), rep.forward and rep.backward)


def cmd_der_module(sess, args):
    if args:
        raise CommandError("usage: der-module")
    return _result_outcome("Der", derivation_module(sess.ring))


def cmd_free_family(sess, args):
    if len(args) != 1:
        raise CommandError("usage: free-family f")
    a = free_family(_poly(sess, args[0]), sess.ring)
    gens = [str(g) for g in a.gens]
    return Outcome(f"{args[0]}*J({args[0]}) = (" + ", ".join(gens) + ")", {"generators": gens})


def _operand(sess: Session, token: str) -> DerModule:
    m = re.fullmatch(rf"T\(\s*({_NAME})\s*(?:,\s*({_NAME})\s*)?\)", token)
    if m:
        a = _ideal(sess, m.group(1))
        b = _ideal(sess, m.group(2)) if m.group(2) else a
        return tangential_idealizer(a, b).module
    if token == "Der":
        return derivation_module(sess.ring).module
    names = [t for t in token.split(",") if t]
    return DerModule(sess.ring, [_der(sess, n) for n in names])


def cmd_same_module(sess, args):
    if len(args) != 2:
        raise CommandError("usage: same-module X Y   (X, Y: T(a), Der, or d1,d2,...)")
    ok = _operand(sess, args[0]).same_module(_operand(sess, args[1]))
    return Outcome(f"same-module: {'true' if ok else 'false'}", {"result": ok}, ok)


def cmd_print_session(sess, args):
    text = format_session(sess)
    return Outcome(text.rstrip("\n"), {"session": text})


COMMANDS = {
    "idealizer": cmd_idealizer,
    "logder": cmd_logder,
    "jacobian": cmd_jacobian,
    "is-free-divisor": cmd_is_free_divisor,
    "saito-check": cmd_saito_check,
    "is-free-ideal": cmd_is_free_ideal,
    "resolution-jacobian": cmd_resolution_jacobian,
    "verify-decomposition": cmd_verify_decomposition,
    "compare-powers": cmd_compare_powers,
    "der-module": cmd_der_module,
    "free-family": cmd_free_family,
    "same-module": cmd_same_module,
    "print-session": cmd_print_session,
}


def run_command(sess: Session, command: str, args: list[str]) -> Outcome:
    try:
        fn = COMMANDS[command]
    except KeyError:
        raise CommandError(f"unknown command {command!r}; choose from {', '.join(COMMANDS)}") from None
    return fn(sess, list(args))


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tangentials",
        description="Tangential idealizers, logarithmic derivations and free divisors.")
    p.add_argument("session", help="session file, or - for stdin")
    p.add_argument("command", choices=sorted(COMMANDS), metavar="command",
                   help="one of: " + ", ".join(COMMANDS))
    p.add_argument("args", nargs="*", help="command arguments")
    p.add_argument("--json", action="store_true", help="emit machine-readable JSON")
    p.add_argument("--strict", action="store_true",
                   help="exit with status 1 on false / not-free answers")
    p.add_argument("--max-degree", type=int, default=None, metavar="N",
                   help="abort when an S-pair exceeds total degree N")
    p.add_argument("--max-basis", type=int, default=None, metavar="N",
                   help="abort when a Groebner basis exceeds N elements")
    p.add_argument("--order", choices=["grevlex", "lex"], default="grevlex",
                   help="monomial order (default: grevlex)")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        if ns.session == "-":
            text = sys.stdin.read()
        else:
            with open(ns.session, encoding="utf-8") as fh:
                text = fh.read()
        sess = parse_session(text, order=ns.order)
        with gb.computation_limits(ns.max_degree, ns.max_basis):
            out = run_command(sess, ns.command, ns.args)
    except (OSError, SessionError, CommandError, PrecondError, ParseError,
            gb.ComputationLimitExceeded, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if ns.json:
        payload = {"command": ns.command, "args": ns.args, "result": out.data}
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(out.text)
    if ns.strict and not out.truth:
        return EXIT_FALSE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
