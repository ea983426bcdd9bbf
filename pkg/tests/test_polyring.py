import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmgerm.polyring import (
    Poly,
    PolyParseError,
    format_poly,
    laplacian,
    monomial_basis,
    parse_poly,
)

from conftest import oracle_harmonic, oracle_laplacian


coefficients = st.builds(
    Fraction, st.integers(min_value=-40, max_value=40), st.integers(min_value=1, max_value=12)
)
exponents = st.tuples(st.integers(0, 6), st.integers(0, 6))
polys = st.dictionaries(exponents, coefficients, max_size=8).map(Poly)


class TestParse:
    def test_difference_of_squares(self):
        assert parse_poly("x^2 - y^2") == Poly({(2, 0): 1, (0, 2): -1})

    def test_rational_coefficient(self):
        assert parse_poly("3/2*x*y") == Poly({(1, 1): Fraction(3, 2)})

    def test_like_terms_collect(self):
        assert parse_poly("x + x") == Poly({(1, 0): 2})

    def test_monomial_order_free(self):
        assert parse_poly("y^2*x") == parse_poly("x*y^2")

    def test_error_carries_position(self):
        with pytest.raises(PolyParseError) as err:
            parse_poly("x^2 + @")
        assert err.value.position == 6

    def test_negative_exponent_rejected(self):
        with pytest.raises(PolyParseError, match="negative exponent"):
            parse_poly("x^-1")

    def test_empty_rejected(self):
        with pytest.raises(PolyParseError):
            parse_poly("   ")

    def test_parenthesised_products(self):
        assert parse_poly("x^2*(x^4 - 6*x^2*y^2 + y^4)") == parse_poly(
            "x^6 - 6*x^4*y^2 + x^2*y^4"
        )

    @given(st.text(alphabet="xy0123456789+-*/^() ", max_size=40))
    @settings(max_examples=200, deadline=None)
    def test_arbitrary_text_never_crashes(self, text):
        # every input either parses to a Poly or raises the parse error
        try:
            result = parse_poly(text)
        except PolyParseError:
            return
        assert isinstance(result, Poly)


class TestArith:
    def test_difference_of_squares_product(self):
        assert parse_poly("x^2 - y^2") * parse_poly("x^2 + y^2") == parse_poly("x^4 - y^4")

    def test_additive_identity(self):
        p = parse_poly("x^3 - 3*x*y^2")
        assert p + Poly.zero() == p

    def test_cancellation(self):
        p = parse_poly("x + y")
        assert p - p == Poly.zero()
        assert not (p - p)

    def test_scale(self):
        assert parse_poly("x + y") * Fraction(1, 2) == parse_poly("1/2*x + 1/2*y")


class TestCalculus:
    def test_partial_x(self):
        assert parse_poly("x^3 - 3*x*y^2").diff("x") == parse_poly("3*x^2 - 3*y^2")

    def test_partial_y(self):
        assert parse_poly("x^3 - 3*x*y^2").diff("y") == parse_poly("-6*x*y")

    def test_partial_of_constant(self):
        assert Poly.constant(7).diff("x") == Poly.zero()

    def test_laplacian_x4(self):
        assert laplacian(parse_poly("x^4")) == parse_poly("12*x^2")

    def test_laplacian_r2(self):
        assert laplacian(parse_poly("x^2 + y^2")) == Poly.constant(4)

    def test_degree_three_harmonic(self):
        assert laplacian(parse_poly("x^3 - 3*x*y^2")) == Poly.zero()

    @given(polys)
    @settings(max_examples=40, deadline=None)
    def test_laplacian_matches_sympy(self, p):
        assert laplacian(p) == oracle_laplacian(p)


class TestGradingAndOrder:
    def test_graded_component(self):
        p = parse_poly("x^2 + x^3")
        assert p.graded_component(2) == parse_poly("x^2")
        assert p.graded_component(5) == Poly.zero()
        q = parse_poly("x^2*y + x*y^2")
        assert q.graded_component(3) == q

    def test_order(self):
        assert parse_poly("x^3 + y^5").order() == 3
        assert Poly.zero().order() == math.inf

    def test_order_of_expanded_power(self):
        # oracle: expand Re(x+iy)^5 independently
        f5, _ = oracle_harmonic(5)
        assert f5 == parse_poly("x^5 - 10*x^3*y^2 + 5*x*y^4")
        assert f5.order() == 5

    def test_monomial_basis_order(self):
        assert monomial_basis(2) == ((2, 0), (1, 1), (0, 2))
        assert monomial_basis(-1) == ()


class TestProperties:
    @given(polys, polys)
    @settings(max_examples=50, deadline=None)
    def test_commutativity(self, p, q):
        assert p + q == q + p
        assert p * q == q * p

    @given(polys, polys, polys)
    @settings(max_examples=30, deadline=None)
    def test_associativity_distributivity(self, p, q, r):
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r

    @given(polys, coefficients, coefficients)
    @settings(max_examples=40, deadline=None)
    def test_laplacian_linear(self, p, alpha, beta):
        q = Poly({(1, 1): 1, (3, 0): -2})
        lhs = laplacian(p * alpha + q * beta)
        assert lhs == laplacian(p) * alpha + laplacian(q) * beta

    @given(polys)
    @settings(max_examples=60, deadline=None)
    def test_format_parse_roundtrip(self, p):
        assert parse_poly(format_poly(p)) == p

    @given(st.integers(2, 9), st.data())
    @settings(max_examples=30, deadline=None)
    def test_homogeneous_laplacian_drops_degree(self, k, data):
        coeffs = data.draw(
            st.lists(coefficients, min_size=k + 1, max_size=k + 1)
        )
        p = Poly({exps: c for exps, c in zip(monomial_basis(k), coeffs)})
        lp = laplacian(p)
        assert not lp or (lp.is_homogeneous() and lp.degree() == k - 2)

    def test_canonical_string(self):
        f5 = parse_poly("5*x*y^4 - 10*x^3*y^2 + x^5")
        assert str(f5) == "x^5 - 10*x^3*y^2 + 5*x*y^4"
        assert str(Poly.zero()) == "0"
        assert str(parse_poly("-x^2 + y^2")) == "-x^2 + y^2"
