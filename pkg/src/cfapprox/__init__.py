"""Exact continued-fraction toolkit.

Computes regular continued fraction data (digits, convergents, Gauss-map
orbits, natural-extension coordinates, approximation coefficients) in exact
arithmetic, builds the classical bound catalog (Vahlen, Borel, Tong, Hancl,
digit-cell refinements), and machine-verifies every bound over exhaustively
enumerated and sampled inputs.
"""

from .exactnum import QuadSurd, RatInterval, Rational, rat_canonical, to_decimal

__all__ = [
    "QuadSurd",
    "RatInterval",
    "Rational",
    "rat_canonical",
    "to_decimal",
]

__version__ = "0.1.0"
