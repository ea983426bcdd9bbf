"""Exact sparse bivariate polynomials over the rationals.

A polynomial is a finite map from exponent pairs (a, b), standing for
x^a*y^b, to nonzero Fraction coefficients. All arithmetic is exact;
nothing in this module (or the rest of the library) touches floating
point. The canonical term order is total degree descending, then
x-exponent descending, which is also the printing order:

    x^5 - 10*x^3*y^2 + 5*x*y^4

The zero polynomial has no terms and infinite order.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from ._kernels import poly_mul

Exponents = tuple[int, int]
Scalar = Union[int, Fraction]

_INF = math.inf


class PolyParseError(ValueError):
    """Malformed polynomial text; `position` is the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.message = message
        self.position = position


def _term_key(exps: Exponents) -> tuple[int, int]:
    a, b = exps
    return (-(a + b), -a)


class Poly:
    """Immutable sparse polynomial in x and y with Fraction coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponents, Scalar] | Iterable[tuple[Exponents, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponents, Fraction] = {}
        for (a, b), c in items:
            a = int(a)
            b = int(b)
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent ({a}, {b})")
            c = Fraction(c)
            key = (a, b)
            acc = clean.get(key)
            c = c if acc is None else acc + c
            if c:
                clean[key] = c
            elif key in clean:
                del clean[key]
        self._terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    @classmethod
    def constant(cls, c: Scalar) -> "Poly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, a: int, b: int, coeff: Scalar = 1) -> "Poly":
        return cls({(a, b): coeff})

    # -- inspection --------------------------------------------------------

    def terms(self) -> tuple[tuple[Exponents, Fraction], ...]:
        """Terms in canonical order (degree descending, then x-exponent)."""
        return tuple(sorted(self._terms.items(), key=lambda item: _term_key(item[0])))

    def coeff(self, a: int, b: int) -> Fraction:
        return self._terms.get((a, b), Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Exponents, Fraction]]:
        return iter(self.terms())

    def degree(self) -> int | float:
        """Maximal total degree of a term; -inf for the zero polynomial."""
        if not self._terms:
            return -_INF
        return max(a + b for a, b in self._terms)

    def order(self) -> int | float:
        """Minimal total degree of a nonzero term; inf for the zero polynomial."""
        if not self._terms:
            return _INF
        return min(a + b for a, b in self._terms)

    def is_homogeneous(self) -> bool:
        """True when all terms share one total degree (vacuously for zero)."""
        degrees = {a + b for a, b in self._terms}
        return len(degrees) <= 1

    def graded_component(self, d: int) -> "Poly":
        """Sum of the terms of total degree exactly d."""
        return Poly({k: c for k, c in self._terms.items() if k[0] + k[1] == d})

    def components(self) -> dict[int, "Poly"]:
        """Split into homogeneous components, keyed by degree (nonzero only)."""
        degrees = sorted({a + b for a, b in self._terms})
        return {d: self.graded_component(d) for d in degrees}

    def truncate(self, max_degree: int) -> "Poly":
        """Drop all terms of total degree above max_degree."""
        return Poly({k: c for k, c in self._terms.items() if k[0] + k[1] <= max_degree})

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        merged = dict(self._terms)
        for key, c in other._terms.items():
            acc = merged.get(key)
            s = c if acc is None else acc + c
            if s:
                merged[key] = s
            elif key in merged:
                del merged[key]
        out = Poly.__new__(Poly)
        out._terms = merged
        out._hash = None
        return out

    def __sub__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "Poly":
        out = Poly.__new__(Poly)
        out._terms = {k: -c for k, c in self._terms.items()}
        out._hash = None
        return out

    def __mul__(self, other: Union["Poly", Scalar]) -> "Poly":
        if isinstance(other, Poly):
            out = Poly.__new__(Poly)
            out._terms = poly_mul(self._terms, other._terms, None)
            out._hash = None
            return out
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other: Scalar) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other: Scalar) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1, 1) / other)
        return NotImplemented

    def scale(self, c: Scalar) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly()
        out = Poly.__new__(Poly)
        out._terms = {k: v * c for k, v in self._terms.items()}
        out._hash = None
        return out

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def mul_truncated(self, other: "Poly", max_degree: int) -> "Poly":
        """Product with all terms above max_degree dropped during the multiply."""
        out = Poly.__new__(Poly)
        out._terms = poly_mul(self._terms, other._terms, max_degree)
        out._hash = None
        return out

    # -- calculus ----------------------------------------------------------

    def diff(self, var: str) -> "Poly":
        """Exact partial derivative with respect to "x" or "y"."""
        if var == "x":
            terms = {(a - 1, b): c * a for (a, b), c in self._terms.items() if a}
        elif var == "y":
            terms = {(a, b - 1): c * b for (a, b), c in self._terms.items() if b}
        else:
            raise ValueError(f"unknown variable {var!r}")
        out = Poly.__new__(Poly)
        out._terms = terms
        out._hash = None
        return out

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.terms())
        return self._hash

    # -- formatting ----------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"


X = Poly.monomial(1, 0)
Y = Poly.monomial(0, 1)
ONE = Poly.constant(1)
R2 = Poly({(2, 0): 1, (0, 2): 1})


def monomial_basis(d: int) -> tuple[Exponents, ...]:
    """Exponent pairs of the degree-d monomials, x-exponent descending."""
    if d < 0:
        return ()
    return tuple((d - j, j) for j in range(d + 1))


def poly_to_vector(p: Poly, d: int) -> tuple[Fraction, ...]:
    """Coordinates of a homogeneous degree-d polynomial in the monomial basis."""
    if p and (not p.is_homogeneous() or p.degree() != d):
        raise ValueError(f"expected a homogeneous polynomial of degree {d}, got {p}")
    return tuple(p.coeff(a, b) for a, b in monomial_basis(d))


def vector_to_poly(vec, d: int) -> Poly:
    return Poly({exps: c for exps, c in zip(monomial_basis(d), vec) if c})


def laplacian(p: Poly) -> Poly:
    """Second x-derivative plus second y-derivative."""
    return p.diff("x").diff("x") + p.diff("y").diff("y")


def laplacian_power(p: Poly, s: int) -> Poly:
    """Apply the Laplacian s times."""
    for _ in range(s):
        if not p:
            break
        p = laplacian(p)
    return p


def _format_monomial(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append("x" if a == 1 else f"x^{a}")
    if b:
        parts.append("y" if b == 1 else f"y^{b}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    """Canonical string form; parse_poly(format_poly(p)) == p."""
    terms = p.terms()
    if not terms:
        return "0"
    pieces = []
    for (a, b), c in terms:
        mono = _format_monomial(a, b)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        pieces.append(("-" if c < 0 else "+", body))
    sign, body = pieces[0]
    out = body if sign == "+" else f"-{body}"
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[xy])|(?P<op>[-+*/^()])|(?P<bad>\S))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group("bad"):
            raise PolyParseError(f"unexpected character {m.group('bad')!r}", m.start("bad"))
        for kind in ("num", "name", "op"):
            if m.group(kind):
                tokens.append((kind, m.group(kind), m.start(kind)))
                break
        pos = m.end()
    return tokens


class _Parser:
    """Recursive descent over tokens.

    Accepts the canonical grammar (signed terms of rational/monomial
    products) plus parenthesised subexpressions, which the CLI needs for
    inputs like "x^2*(x^4 - 6*x^2*y^2 + y^4)".
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self, message: str):
        raise PolyParseError(message, self.peek()[2])

    def parse(self) -> Poly:
        if not self.tokens:
            raise PolyParseError("empty input", 0)
        p = self.expr()
        kind, value, pos = self.peek()
        if kind is not None:
            raise PolyParseError(f"unexpected {value!r}", pos)
        return p

    def expr(self) -> Poly:
        sign = 1
        kind, value, _ = self.peek()
        if kind == "op" and value in "+-":
            self.take()
            sign = -1 if value == "-" else 1
        total = self.product().scale(sign)
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.take()
                term = self.product()
                total = total - term if value == "-" else total + term
            else:
                return total

    def product(self) -> Poly:
        result = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.take()
                result = result * self.factor()
            elif kind in ("num", "name") or (kind == "op" and value == "("):
                # adjacency, e.g. "3x" or "x^2(x+y)"
                result = result * self.factor()
            else:
                return result

    def factor(self) -> Poly:
        kind, value, pos = self.peek()
        if kind == "num":
            self.take()
            num = int(value)
            kind, value, _ = self.peek()
            if kind == "op" and value == "/":
                self.take()
                dkind, dvalue, dpos = self.take()
                if dkind != "num":
                    raise PolyParseError("expected integer denominator", dpos)
                den = int(dvalue)
                if den == 0:
                    raise PolyParseError("zero denominator", dpos)
                return Poly.constant(Fraction(num, den))
            return Poly.constant(num)
        if kind == "name":
            self.take()
            exps = {"x": (1, 0), "y": (0, 1)}[value]
            return Poly.monomial(*exps) ** self.exponent()
        if kind == "op" and value == "(":
            self.take()
            inner = self.expr()
            ckind, cvalue, cpos = self.take()
            if cvalue != ")":
                raise PolyParseError("expected ')'", cpos)
            exponent = self.exponent()
            # exponentiating a sum expands densely; refuse unreasonable blowup
            degree = inner.degree()
            if exponent > 1 and degree > 0 and degree * exponent > self.MAX_GROUP_DEGREE:
                raise PolyParseError(
                    f"expanded degree {degree * exponent} exceeds {self.MAX_GROUP_DEGREE}", cpos
                )
            return inner**exponent
        if kind is None:
            raise PolyParseError("unexpected end of input", pos)
        self.fail(f"unexpected {value!r}")

    # single monomials stay sparse at any exponent; grouped sums do not
    MAX_EXPONENT = 10**6
    MAX_GROUP_DEGREE = 128

    def exponent(self) -> int:
        kind, value, _ = self.peek()
        if not (kind == "op" and value == "^"):
            return 1
        self.take()
        ekind, evalue, epos = self.take()
        if ekind == "op" and evalue == "-":
            raise PolyParseError("negative exponent", epos)
        if ekind != "num":
            raise PolyParseError("expected exponent", epos)
        exponent = int(evalue)
        if exponent > self.MAX_EXPONENT:
            raise PolyParseError(f"exponent exceeds {self.MAX_EXPONENT}", epos)
        return exponent


def parse_poly(text: str) -> Poly:
    """Parse polynomial text like "x^5 - 10*x^3*y^2 + 5*x*y^4" or "3/2*x*y".

    The unicode minus sign is treated as "-", so pasted mathematical text
    parses; printing always uses the ASCII form.
    """
    return _Parser(text.replace("−", "-")).parse()
