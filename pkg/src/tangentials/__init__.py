"""Tangential idealizers: derivations preserving an ideal, computed with Groebner bases."""

from .polyring import GF, QQ, Field, ParseError, Poly, PolyRing, parse_poly

__version__ = "0.1.0"

__all__ = ["GF", "QQ", "Field", "ParseError", "Poly", "PolyRing", "parse_poly"]
