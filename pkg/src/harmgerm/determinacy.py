"""Finite-determinacy certificates via the Jacobian-ideal criterion.

A germ h is L-determined when every perturbation by terms of order
above L can be removed by a change of coordinates. A sufficient
criterion: the degree-L slice of the maximal ideal is contained in
m * J_h modulo terms of order above L, where J_h is generated by the
partial derivatives of h. Truncating at degree L makes this a finite
exact rank computation: multiplier monomials of degree above
L - order(h) + 1 only produce terms that the truncation kills, so a
finite product set exhibits the span.

A True verdict certifies determinacy; False means the criterion is
inconclusive, never a disproof.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .graded import monomial_basis, solve_membership
from .harmonic import harmonic_pair
from .polyring import Poly


def jacobian_generators(h: Poly) -> tuple[Poly, Poly]:
    """The two generators of the Jacobian ideal: (dh/dx, dh/dy)."""
    return h.diff("x"), h.diff("y")


def _filtered_basis(level: int) -> list[tuple[int, int]]:
    """Monomial exponents of all degrees 1..level, degree then x-descending."""
    out = []
    for d in range(1, level + 1):
        out.extend(monomial_basis(d))
    return out


def _vectorize(p: Poly, index: dict[tuple[int, int], int]) -> tuple[Fraction, ...]:
    vec = [Fraction(0)] * len(index)
    for (a, b), c in p.terms():
        vec[index[(a, b)]] = c
    return tuple(vec)


@dataclass(frozen=True)
class DeterminacyCertificate:
    """Outcome of the criterion at one level.

    `products` is the exhibited spanning set: the nonzero truncations of
    monomial multiples of the two Jacobian generators. verdict True
    means every degree-`level` monomial lies in their span, so the germ
    is `level`-determined. When False, `missing` holds the first
    uncovered monomial.
    """

    germ: Poly
    level: int
    bound: int
    multiplier_degree: int
    products: tuple[Poly, ...]
    verdict: bool
    missing: Poly | None


def check_determinacy(h: Poly, level: int, max_multiplier_degree: int | None = None) -> DeterminacyCertificate:
    """Run the Jacobian criterion for `level`-determinacy of h.

    The span is built from x^a*y^b * dh/dx_i truncated at `level`, for
    multipliers with 1 <= a+b <= max_multiplier_degree (default: every
    degree that can still contribute below the truncation).
    """
    if not h:
        raise ValueError("zero germ is never finitely determined")
    if h.order() > level:
        raise ValueError(f"germ order {h.order()} exceeds the certificate level {level}")
    hx, hy = jacobian_generators(h)
    generator_order = min(p.order() for p in (hx, hy) if p) if (hx or hy) else level + 1
    cap = level - generator_order + 1 if generator_order <= level else 0
    if max_multiplier_degree is not None:
        cap = min(cap, max_multiplier_degree)
        declared = max_multiplier_degree
    else:
        declared = level

    products = []
    for d in range(1, max(cap, 0) + 1):
        for a, b in monomial_basis(d):
            mono = Poly.monomial(a, b)
            for gen in (hx, hy):
                truncated = mono.mul_truncated(gen, level)
                if truncated:
                    products.append(truncated)

    index = {exps: i for i, exps in enumerate(_filtered_basis(level))}
    rows = [_vectorize(p, index) for p in products]
    rr, pivots = linalg.rref(rows)

    missing = None
    verdict = True
    for a, b in monomial_basis(level):
        target = _vectorize(Poly.monomial(a, b), index)
        if not linalg.in_rowspace(rr, pivots, target):
            verdict = False
            missing = Poly.monomial(a, b)
            break
    return DeterminacyCertificate(
        germ=h,
        level=level,
        bound=level,
        multiplier_degree=declared,
        products=tuple(products),
        verdict=verdict,
        missing=missing,
    )


def reverify_certificate(cert: DeterminacyCertificate) -> bool:
    """Independent containment check of a True certificate.

    For each degree-`level` monomial, solve for an explicit combination
    of the exhibited products and confirm it by multiplying back out
    with plain polynomial arithmetic, not by reusing the RREF data.
    """
    if not cert.verdict:
        return False
    index = {exps: i for i, exps in enumerate(_filtered_basis(cert.level))}
    columns = [_vectorize(p, index) for p in cert.products]
    for a, b in monomial_basis(cert.level):
        mono = Poly.monomial(a, b)
        coeffs = linalg.solve_canonical(columns, _vectorize(mono, index))
        if coeffs is None:
            return False
        combo = Poly.zero()
        for c, p in zip(coeffs, cert.products):
            if c:
                combo = combo + p * c
        if combo.truncate(cert.level) != mono:
            return False
    return True


@dataclass(frozen=True)
class TranslationAbsorption:
    """Explicit coordinate translations soaking up one homogeneous slice.

    For each degree-`degree` monomial m, a pair (u, v) of homogeneous
    polynomials with k*(u*f_(k-1) - v*g_(k-1)) == m exactly; composing
    with (x, y) -> (x + u, y + v) therefore shifts a germ with leading
    term f_k by -m in that degree.
    """

    k: int
    degree: int
    entries: tuple[tuple[Poly, Poly, Poly], ...]
    verified: bool


def translation_absorption(k: int) -> TranslationAbsorption:
    """Absorb the full degree-(2k-3) slice by translations, degree k >= 5."""
    degree = 2 * k - 3
    pair = harmonic_pair(k - 1)
    entries = []
    ok = True
    for a, b in monomial_basis(degree):
        mono = Poly.monomial(a, b)
        solved = solve_membership(mono, k - 1, k - 2)
        if solved is None:
            ok = False
            break
        cu, cv = solved
        u = cu / k
        v = -(cv / k)
        entries.append((mono, u, v))
        if (pair.f * u - pair.g * v) * k != mono:
            ok = False
            break
    return TranslationAbsorption(k, degree, tuple(entries), ok)


@dataclass(frozen=True)
class DeterminacyReport:
    """Combined determinacy statement for a germ f_k + R, order(R) > k.

    The criterion certificate establishes (2k-3)-determinacy; the
    translation exhibit absorbs the whole degree-(2k-3) slice, lowering
    the determinacy level to max(k, 2k-4).
    """

    k: int
    criterion: DeterminacyCertificate
    absorption: TranslationAbsorption
    level: int
    ok: bool

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "level": self.level,
            "criterion_level": self.criterion.level,
            "criterion_verdict": self.criterion.verdict,
            "absorbed_degree": self.absorption.degree,
            "absorption_verified": self.absorption.verified,
            "ok": self.ok,
        }


@functools.lru_cache(maxsize=256)
def determined_bound_report(k: int, tail: Poly) -> DeterminacyReport:
    """Certify that f_k + tail is max(k, 2k-4)-determined, for k >= 5.

    `tail` must have order at least k+1. Runs the Jacobian criterion at
    level 2k-3 and constructs the translations that absorb the
    degree-(2k-3) slice. Results are cached; both arguments are
    immutable.
    """
    if k < 5:
        raise ValueError("report requires k >= 5")
    if tail and tail.order() <= k:
        raise ValueError(f"tail order {tail.order()} must exceed k = {k}")
    germ = harmonic_pair(k).f + tail
    criterion = check_determinacy(germ, 2 * k - 3)
    absorption = translation_absorption(k)
    level = max(k, 2 * k - 4)
    return DeterminacyReport(
        k=k,
        criterion=criterion,
        absorption=absorption,
        level=level,
        ok=criterion.verdict and absorption.verified,
    )
