"""Shared helpers: sympy-based oracles independent of the library's arithmetic."""

from fractions import Fraction

import sympy

from harmgerm.polyring import Poly, parse_poly

X, Y = sympy.symbols("x y", real=True)


def P(text: str) -> Poly:
    return parse_poly(text)


def to_sympy(p: Poly):
    expr = sympy.Integer(0)
    for (a, b), c in p.terms():
        expr += sympy.Rational(c.numerator, c.denominator) * X**a * Y**b
    return sympy.expand(expr)


def from_sympy(expr) -> Poly:
    expr = sympy.expand(expr)
    poly = sympy.Poly(expr, X, Y)
    terms = {}
    for (a, b), c in poly.terms():
        c = sympy.Rational(c)
        terms[(int(a), int(b))] = Fraction(int(c.p), int(c.q))
    return Poly(terms)


def oracle_harmonic(k: int) -> tuple[Poly, Poly]:
    """Real and imaginary parts of (x + iy)^k via sympy expansion."""
    z = (X + sympy.I * Y) ** k
    z = sympy.expand(z)
    return from_sympy(sympy.re(z)), from_sympy(sympy.im(z))


def oracle_laplacian(p: Poly) -> Poly:
    expr = to_sympy(p)
    return from_sympy(sympy.diff(expr, X, 2) + sympy.diff(expr, Y, 2))


def oracle_compose(h: Poly, px: Poly, py: Poly, bound: int) -> Poly:
    """Substitute and expand with sympy, then truncate at the bound."""
    expr = to_sympy(h).subs({X: to_sympy(px), Y: to_sympy(py)}, simultaneous=True)
    return from_sympy(sympy.expand(expr)).truncate(bound)
