"""Harmonic generators and polyharmonic decompositions.

For each degree k >= 1 the space of homogeneous harmonic polynomials in
two variables is two-dimensional, spanned by the real and imaginary
parts of (x + iy)^k; this module builds that pair by the exact
recurrence

    f_{k+1} = x*f_k - y*g_k,    g_{k+1} = x*g_k + y*f_k

and provides the two decompositions that drive everything else: the
splitting of P_k into harmonics plus (x^2+y^2)*P_{k-2}, and the Almansi
expansion of a polyharmonic homogeneous polynomial into harmonic layers
weighted by powers of x^2+y^2.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from . import linalg
from .polyring import (
    ONE,
    R2,
    Poly,
    laplacian_power,
    monomial_basis,
    poly_to_vector,
)


class PolyharmonicError(ValueError):
    """Input fails the required iterated-Laplacian vanishing."""

    def __init__(self, message: str, witness: Poly):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class HarmonicPair:
    """The harmonic basis pair of P_k: f = Re (x+iy)^k, g = Im (x+iy)^k."""

    k: int
    f: Poly
    g: Poly


@functools.lru_cache(maxsize=None)
def harmonic_pair(k: int) -> HarmonicPair:
    """Harmonic generator pair of degree k >= 1."""
    if k < 1:
        raise ValueError("harmonic pair needs degree k >= 1 (degree 0 is the constants)")
    if k == 1:
        return HarmonicPair(1, Poly.monomial(1, 0), Poly.monomial(0, 1))
    prev = harmonic_pair(k - 1)
    x = Poly.monomial(1, 0)
    y = Poly.monomial(0, 1)
    return HarmonicPair(k, x * prev.f - y * prev.g, x * prev.g + y * prev.f)


def harmonic_basis(d: int) -> tuple[Poly, ...]:
    """Basis of the degree-d harmonics: (1,) at d=0, else the pair (f_d, g_d)."""
    if d < 0:
        return ()
    if d == 0:
        return (ONE,)
    pair = harmonic_pair(d)
    return (pair.f, pair.g)


@dataclass(frozen=True)
class ProductIdentityReport:
    """Outcome of the three radial product identities at offsets (s, k).

    first:            f_s*r^(2(k-s)) == f_k*f_(k-s) + g_k*g_(k-s)
    printed_second:   g_s*r^(2(k-s)) == g_k*f_(k-s) + f_k*g_(k-s)
    corrected_second: g_s*r^(2(k-s)) == g_k*f_(k-s) - f_k*g_(k-s)

    The printed form of the second identity has the wrong sign (it fails
    already at s=1, k=3); the corrected form follows from taking the
    imaginary part of z^k * conj(z)^(k-s) and holds identically.
    """

    s: int
    k: int
    first_ok: bool
    printed_second_ok: bool
    corrected_second_ok: bool


def check_product_identity(s: int, k: int) -> ProductIdentityReport:
    """Exactly expand and compare both sides of the product identities."""
    if not 1 <= s <= k:
        raise ValueError("need 1 <= s <= k")
    fs, gs = harmonic_pair(s).f, harmonic_pair(s).g
    fk, gk = harmonic_pair(k).f, harmonic_pair(k).g
    if k == s:
        fks, gks = ONE, Poly.zero()
    else:
        below = harmonic_pair(k - s)
        fks, gks = below.f, below.g
    radial = R2 ** (k - s)
    first = fs * radial == fk * fks + gk * gks
    lhs2 = gs * radial
    printed = lhs2 == gk * fks + fk * gks
    corrected = lhs2 == gk * fks - fk * gks
    return ProductIdentityReport(s, k, first, printed, corrected)


def harmonic_split(p: Poly) -> tuple[Poly, Poly]:
    """Split homogeneous p of degree k >= 2 as p = h + (x^2+y^2)*q, h harmonic.

    The splitting is the direct sum P_k = H_k + r^2*P_(k-2), so h and q
    are unique; both come from one exact linear solve.
    """
    if not p:
        raise ValueError("cannot split the zero polynomial (degree undefined)")
    if not p.is_homogeneous():
        raise ValueError(f"input is not homogeneous: {p}")
    k = p.degree()
    if k < 2:
        raise ValueError("harmonic split needs degree k >= 2")
    pair = harmonic_pair(k)
    radial_monos = monomial_basis(k - 2)
    columns = [poly_to_vector(pair.f, k), poly_to_vector(pair.g, k)]
    for a, b in radial_monos:
        columns.append(poly_to_vector(R2 * Poly.monomial(a, b), k))
    solution = linalg.solve_canonical(columns, poly_to_vector(p, k))
    if solution is None:
        raise AssertionError("direct sum decomposition failed; this cannot happen")
    h = pair.f * solution[0] + pair.g * solution[1]
    q = Poly({exps: c for exps, c in zip(radial_monos, solution[2:]) if c})
    return h, q


@dataclass(frozen=True)
class AlmansiDecomposition:
    """Almansi layers of an order-s polyharmonic homogeneous polynomial.

    components[j] is harmonic (possibly zero) of degree d - 2j, and
    sum_j r^(2j) * components[j] reconstructs the input exactly.
    """

    s: int
    components: tuple[Poly, ...]

    def reconstruct(self) -> Poly:
        total = Poly.zero()
        for j, h in enumerate(self.components):
            total = total + R2**j * h
        return total


def almansi_decompose(u: Poly, s: int) -> AlmansiDecomposition:
    """Expand u (homogeneous, s-fold Laplacian zero) into harmonic layers.

    Raises PolyharmonicError when the s-fold Laplacian of u is nonzero;
    the exception carries that nonzero iterate.
    """
    if s < 1:
        raise ValueError("polyharmonic order must be at least 1")
    if not u:
        return AlmansiDecomposition(s, (Poly.zero(),) * s)
    if not u.is_homogeneous():
        raise ValueError(f"input is not homogeneous: {u}")
    residual = laplacian_power(u, s)
    if residual:
        raise PolyharmonicError(
            f"input is not polyharmonic of order {s}: Laplacian^{s} = {residual}", residual
        )
    d = u.degree()
    columns = []
    layout: list[tuple[int, Poly]] = []  # (layer index, harmonic generator)
    for j in range(s):
        if d - 2 * j < 0:
            break
        for h in harmonic_basis(d - 2 * j):
            layout.append((j, h))
            columns.append(poly_to_vector(R2**j * h, d))
    solution = linalg.solve_canonical(columns, poly_to_vector(u, d))
    if solution is None:
        raise AssertionError("Almansi solve failed despite vanishing iterated Laplacian")
    layers = [Poly.zero()] * s
    for (j, h), c in zip(layout, solution):
        if c:
            layers[j] = layers[j] + h * c
    return AlmansiDecomposition(s, tuple(layers))
