from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmgerm.graded import (
    GradedSubspace,
    full_space,
    kernel_basis,
    laplacian_matrix,
    product_space,
    solve_membership,
    subspace_compare,
)
from harmgerm.harmonic import harmonic_basis, harmonic_pair
from harmgerm.polyring import R2, Poly, monomial_basis

import sympy

from conftest import P


class TestLaplacianMatrix:
    def test_single_laplacian(self):
        m = laplacian_matrix(2, 1)
        assert (m.rows, m.cols) == (1, 3)
        assert m.entries == ((Fraction(2), Fraction(0), Fraction(2)),)

    def test_squared_laplacian_via_sympy(self):
        m = laplacian_matrix(4, 2)
        x, y = sympy.symbols("x y", real=True)
        lap = lambda e: sympy.diff(e, x, 2) + sympy.diff(e, y, 2)
        row = tuple(Fraction(int(lap(lap(x ** (4 - j) * y**j)))) for j in range(5))
        assert m.entries == (row,)
        assert row == (24, 0, 8, 0, 24)

    def test_degree_underflow_is_zero_map(self):
        m = laplacian_matrix(3, 2)
        assert m.rows == 0 and m.cols == 4


class TestKernelBasis:
    def test_harmonics(self):
        space = kernel_basis(4, 1)
        assert space.dim == 2
        pair = harmonic_pair(4)
        assert space.contains(pair.f) and space.contains(pair.g)

    def test_biharmonics(self):
        assert kernel_basis(4, 2).dim == 4
        # rank of the (4,2) matrix is 1, so the kernel has dimension 5 - 1
        from harmgerm.linalg import rref

        rr, _ = rref(laplacian_matrix(4, 2).entries)
        assert len(rr) == 1

    def test_underflow_gives_everything(self):
        space = kernel_basis(3, 2)
        assert space.dim == 4
        assert subspace_compare(space, full_space(3)) == "equal"

    @pytest.mark.parametrize("s", range(1, 9))
    @pytest.mark.parametrize("k", range(1, 17))
    def test_dimension_formula(self, s, k):
        assert kernel_basis(k, s).dim == min(2 * s, k + 1)


class TestProductSpace:
    def test_tiny_degrees_fill_everything(self):
        assert subspace_compare(product_space(1, 1), full_space(2)) == "equal"

    def test_equals_kernel(self):
        assert subspace_compare(product_space(1, 3), kernel_basis(4, 2)) == "equal"

    def test_s_at_least_k_minus_1(self):
        space = product_space(2, 2)
        assert space.dim == 5
        assert subspace_compare(space, full_space(4)) == "equal"

    @pytest.mark.parametrize("s", range(0, 9))
    @pytest.mark.parametrize("k", range(1, 11))
    def test_kernel_characterisation(self, s, k):
        span = product_space(s, k)
        if s < k - 1:
            expected = kernel_basis(s + k, s + 1)
        else:
            expected = full_space(s + k)
        assert subspace_compare(span, expected) == "equal"

    @pytest.mark.parametrize("s", range(1, 7))
    def test_products_inside_kernel(self, s):
        for k in range(2 * s, 13):
            span = product_space(s - 1, k - s + 1)
            kernel = kernel_basis(k, s)
            assert subspace_compare(span, kernel) in ("equal", "a_in_b")

    @pytest.mark.parametrize("d", range(1, 13))
    @pytest.mark.parametrize("s", range(1, 6))
    def test_kernel_layer_decomposition(self, d, s):
        layers = []
        for j in range(s):
            if d - 2 * j < 0:
                break
            for h in harmonic_basis(d - 2 * j):
                layers.append(R2**j * h)
        assert subspace_compare(
            GradedSubspace.from_polys(d, layers), kernel_basis(d, s)
        ) == "equal"


class TestSubspaceCompare:
    def test_equal(self):
        assert subspace_compare(kernel_basis(4, 1), product_space(0, 4)) == "equal"

    def test_containment(self):
        assert subspace_compare(kernel_basis(4, 1), kernel_basis(4, 2)) == "a_in_b"
        assert subspace_compare(kernel_basis(4, 2), kernel_basis(4, 1)) == "b_in_a"

    def test_incomparable(self):
        a = GradedSubspace.from_polys(2, [P("x^2")])
        b = GradedSubspace.from_polys(2, [P("y^2")])
        assert subspace_compare(a, b) == "incomparable"

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            subspace_compare(kernel_basis(4, 1), kernel_basis(5, 1))

    def test_rref_canonical_bases_identical(self):
        # same subspace from different generators yields identical stored bases
        pair = harmonic_pair(4)
        a = GradedSubspace.from_polys(4, [pair.f + pair.g, pair.g * 7])
        b = GradedSubspace.from_polys(4, [pair.f, pair.g - pair.f * 2])
        assert a.basis == b.basis


class TestSolveMembership:
    def test_direct_factor(self):
        f4 = harmonic_pair(4).f
        assert solve_membership(P("x") * f4, 4, 1) == (P("x"), Poly.zero())

    def test_radial_identity(self):
        u, v = solve_membership(P("x") * R2 * R2, 3, 2)
        assert u == harmonic_pair(2).f
        assert v == harmonic_pair(2).g

    def test_degree_mismatch_is_none(self):
        assert solve_membership(P("x^4"), 4, 1) is None

    def test_outside_span_is_none(self):
        # x^6 is not biharmonic, so it cannot be a linear multiple of the
        # degree-5 harmonics
        assert solve_membership(P("x^6"), 5, 1) is None

    @given(st.integers(1, 9), st.integers(0, 4), st.data())
    @settings(max_examples=40, deadline=None)
    def test_reconstruction(self, k, s, data):
        pair = harmonic_pair(k)
        monos = monomial_basis(s)
        cu = data.draw(st.lists(st.integers(-5, 5), min_size=len(monos), max_size=len(monos)))
        cv = data.draw(st.lists(st.integers(-5, 5), min_size=len(monos), max_size=len(monos)))
        u = Poly({e: c for e, c in zip(monos, cu)})
        v = Poly({e: c for e, c in zip(monos, cv)})
        target = u * pair.f + v * pair.g
        solved = solve_membership(target, k, s)
        assert solved is not None
        su, sv = solved
        assert su * pair.f + sv * pair.g == target
