"""Construction and verification of right-equivalence witnesses.

The central operation takes a germ f_k + (perturbations in controlled
iterated-Laplacian kernels) + (tail of order >= 2k-3) and produces an
explicit chain of jet diffeomorphisms composing it down to f_k modulo
m^(2k-3), together with a determinacy report that upgrades the jet
identity to a genuine right equivalence.

Absorption works degree by degree, low degrees last:

* offsets s >= split_offset are cleared by coordinate translations
  (x, y) -> (x + u, y + v), ascending in s since each translation
  perturbs every higher degree, which later steps then re-extract;
* offsets s < split_offset are cleared in one stroke by a radial scale
  map z -> z * rho, using that their sum is u*f_k + v*g_k exactly.

Every witness re-verifies by exact composition; nothing is trusted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import mpmath

from .determinacy import DeterminacyReport, determined_bound_report
from .graded import solve_membership
from .harmonic import harmonic_pair
from .jets import (
    Jet,
    JetMap,
    complex_scale_map,
    identity_map,
    inverse_scale_map,
    jet_compose,
    jet_map,
    jet_truncate,
    jets_equivalent_mod,
)
from .polyring import Poly, format_poly, laplacian_power

X = Poly.monomial(1, 0)
Y = Poly.monomial(0, 1)


class MembershipError(ValueError):
    """A perturbation fails its required iterated-Laplacian kernel."""

    def __init__(self, message: str, degree: int):
        super().__init__(message)
        self.degree = degree


class WitnessFault(RuntimeError):
    """Internal verification failed; indicates a bug, not bad input."""


@dataclass(frozen=True)
class AbsorptionProfile:
    """Per-offset Laplacian powers controlling absorbable perturbations.

    For a leading degree k >= 5 and offsets s = 1..k-4, a degree-(k+s)
    perturbation is absorbable when its exponents[s]-fold Laplacian
    vanishes. The threshold jumps from s+1 to s+2 at s = (k-3)/2
    (compared as exact rationals); split_offset is the smallest offset
    at or above the jump, where translation absorption takes over from
    the radial scale map.
    """

    k: int
    exponents: tuple[tuple[int, int], ...]
    split_offset: int

    def exponent(self, s: int) -> int:
        for offset, power in self.exponents:
            if offset == s:
                return power
        raise KeyError(f"offset {s} outside 1..{self.k - 4}")


def absorption_profile(k: int) -> AbsorptionProfile:
    if k < 5:
        raise ValueError("absorption profile requires k >= 5")
    threshold = Fraction(k - 3, 2)
    exponents = tuple(
        (s, s + 1 if s < threshold else s + 2) for s in range(1, k - 3)
    )
    split = 1
    while split < threshold:
        split += 1
    return AbsorptionProfile(k, exponents, split)


@dataclass(frozen=True)
class WitnessChain:
    """A verified right-equivalence witness.

    Composing `source` with the maps in order agrees with `target` in
    all terms of degree <= bound. When a determinacy report of level
    <= bound is attached, the jet identity promotes to an actual right
    equivalence of germs.
    """

    source: Poly
    target: Poly
    maps: tuple[JetMap, ...]
    bound: int
    certificate: DeterminacyReport | None
    verified: bool

    def composed(self) -> Jet:
        jet_bound = self.maps[0].bound if self.maps else self.bound
        current = jet_truncate(self.source, jet_bound)
        for phi in self.maps:
            current = jet_compose(current, phi)
        return current

    def verify(self) -> bool:
        """Recompute the composition and check the jet identity exactly."""
        composed = self.composed()
        target = jet_truncate(self.target, composed.bound)
        if not jets_equivalent_mod(composed, target, self.bound):
            return False
        if self.certificate is not None:
            if not self.certificate.ok or self.certificate.level > self.bound:
                return False
        return True

    def to_json_dict(self) -> dict:
        return {
            "source": format_poly(self.source),
            "target": format_poly(self.target),
            "bound": self.bound,
            "maps": [
                {"x": format_poly(phi.x.poly), "y": format_poly(phi.y.poly)}
                for phi in self.maps
            ],
            "certificate": self.certificate.to_json_dict() if self.certificate else None,
            "verified": self.verified,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(", ", ": "))


def _verified_chain(source, target, maps, bound, certificate=None) -> WitnessChain:
    chain = WitnessChain(source, target, tuple(maps), bound, certificate, True)
    if not chain.verify():
        raise WitnessFault("constructed witness failed exact re-verification")
    return chain


# -- leading-term normalisation ----------------------------------------------


def _gaussian_pow(re: Fraction, im: Fraction, n: int) -> tuple[Fraction, Fraction]:
    out_re, out_im = Fraction(1), Fraction(0)
    for _ in range(n):
        out_re, out_im = out_re * re - out_im * im, out_re * im + out_im * re
    return out_re, out_im


@dataclass(frozen=True)
class NumericWitness:
    """High-precision numeric substitute when no rational root map exists.

    The linear map (x, y) -> (re*x - im*y, im*x + re*y) composes the
    degree-k generator onto a*f_k + b*g_k up to a residual below the
    stated tolerance (max absolute coefficient of the difference).
    """

    k: int
    a: Fraction
    b: Fraction
    root_re: str
    root_im: str
    residual: str
    tolerance: float
    verified: bool

    def to_json_dict(self) -> dict:
        return {
            "kind": "numeric",
            "k": self.k,
            "a": str(self.a),
            "b": str(self.b),
            "root": {"re": self.root_re, "im": self.root_im},
            "residual": self.residual,
            "tolerance": self.tolerance,
            "verified": self.verified,
        }


def exact_kth_root(re: Fraction, im: Fraction, k: int, max_denominator: int = 10**9):
    """A Gaussian-rational delta with delta^k == re + im*i, or None.

    Candidates come from rationalising the k numeric roots; each one is
    checked by exact arithmetic, so a returned root is exact regardless
    of the numeric precision used to find it.
    """
    with mpmath.workdps(60):
        c = mpmath.mpc(
            mpmath.mpf(re.numerator) / re.denominator,
            mpmath.mpf(im.numerator) / im.denominator,
        )
        base = mpmath.power(c, mpmath.mpf(1) / k)
        for j in range(k):
            cand = base * mpmath.exp(mpmath.mpc(0, 2) * mpmath.pi * j / k)
            try:
                p = Fraction(float(cand.real)).limit_denominator(max_denominator)
                q = Fraction(float(cand.imag)).limit_denominator(max_denominator)
            except (OverflowError, ValueError):
                continue
            if _gaussian_pow(p, q, k) == (re, im):
                return p, q
    return None


def _linear_rotation_map(p: Fraction, q: Fraction, bound: int) -> JetMap:
    """The real form of z -> (p + qi) * z."""
    return jet_map(X * p - Y * q, X * q + Y * p, bound)


def normalize_harmonic(
    a: Fraction | int,
    b: Fraction | int,
    k: int,
    tolerance: float = 1e-30,
) -> WitnessChain | NumericWitness:
    """Witness that a*f_k + b*g_k is right equivalent to f_k.

    With c = a - ib, a linear map z -> delta*z with delta^k = c composes
    f_k exactly onto the target whenever delta exists with rational real
    and imaginary parts. Otherwise the root is computed to high
    precision and a numeric witness with a coefficient residual bound is
    returned.
    """
    a = Fraction(a)
    b = Fraction(b)
    if not a and not b:
        raise ValueError("the zero form has no normalisation")
    if k < 1:
        raise ValueError("k must be at least 1")
    pair = harmonic_pair(k)
    target = pair.f * a + pair.g * b
    root = exact_kth_root(a, -b, k)
    if root is not None:
        phi = _linear_rotation_map(root[0], root[1], k)
        return _verified_chain(pair.f, target, [phi], k)

    digits = max(50, int(-mpmath.log10(tolerance)) * 2 + 10)
    with mpmath.workdps(digits):
        c = mpmath.mpc(
            mpmath.mpf(a.numerator) / a.denominator,
            -mpmath.mpf(b.numerator) / b.denominator,
        )
        delta = mpmath.power(c, mpmath.mpf(1) / k)
        # The map is (x, y) -> (Re(delta)x - Im(delta)y, Im(delta)x + Re(delta)y),
        # so phi1 + i*phi2 carries coefficient delta on x and i*delta on y.
        # Expanding its k-th power by repeated multiplication is the honest
        # composition of f_k with the map.
        w = {(1, 0): delta, (0, 1): delta * mpmath.mpc(0, 1)}
        power = {(0, 0): mpmath.mpc(1)}
        for _ in range(k):
            nxt = {}
            for (a1, b1), c1 in power.items():
                for (a2, b2), c2 in w.items():
                    key = (a1 + a2, b1 + b2)
                    nxt[key] = nxt.get(key, mpmath.mpc(0)) + c1 * c2
            power = nxt
        residual = mpmath.mpf(0)
        for (ea, eb) in {exps for exps, _ in target.terms()} | set(power):
            composed_coeff = power.get((ea, eb), mpmath.mpc(0)).real
            target_coeff = target.coeff(ea, eb)
            diff = abs(composed_coeff - mpmath.mpf(target_coeff.numerator) / target_coeff.denominator)
            residual = max(residual, diff)
        verified = residual < mpmath.mpf(tolerance)
        return NumericWitness(
            k=k,
            a=a,
            b=b,
            root_re=mpmath.nstr(delta.real, 40),
            root_im=mpmath.nstr(delta.imag, 40),
            residual=mpmath.nstr(residual, 10),
            tolerance=tolerance,
            verified=verified,
        )


# -- absorption steps ---------------------------------------------------------


def _scale_solution(rho: Poly, k: int) -> tuple[Poly, Poly]:
    """Write rho (components above degree k) as u*f_k + v*g_k, or raise."""
    u = Poly.zero()
    v = Poly.zero()
    for degree, component in rho.components().items():
        s = degree - k
        solved = solve_membership(component, k, s) if s >= 0 else None
        if solved is None:
            raise MembershipError(
                f"degree-{degree} component is not a harmonic multiple of degree {k}: "
                f"{component}",
                degree,
            )
        if s == 0:
            raise MembershipError(
                f"degree-{degree} component would rescale the leading term", degree
            )
        u = u + solved[0]
        v = v + solved[1]
    return u, v


def root_absorb(k: int, rho: Poly, bound: int) -> WitnessChain:
    """Witness f_k o phi == f_k + rho (mod bound) with one radial scale map.

    Every homogeneous component of rho at degree k+s must lie in the
    span of degree-s multiples of f_k and g_k; violations raise
    MembershipError naming the offending degree.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    pair = harmonic_pair(k)
    if not rho:
        return _verified_chain(pair.f, pair.f, [identity_map(bound)], bound)
    u, v = _scale_solution(rho, k)
    phi = complex_scale_map(Jet(u.truncate(bound), bound), Jet(v.truncate(bound), bound), k)
    return _verified_chain(pair.f, pair.f + rho, [phi], bound)


def translation_absorb(k: int, s: int, rho: Poly, bound: int) -> WitnessChain:
    """Witness f_k o phi == f_k + rho modulo m^(k+s+1) by a translation.

    rho must be homogeneous of degree k+s with vanishing (s+2)-fold
    Laplacian, equivalently a combination of degree-(s+1) multiples of
    f_(k-1) and g_(k-1); phi is (x, y) -> (x + u, y + v) with u, v
    homogeneous of degree s+1.
    """
    if s < 1:
        raise ValueError("offset s must be at least 1")
    if bound < k + s:
        raise ValueError(f"bound {bound} below verification level {k + s}")
    pair = harmonic_pair(k)
    if not rho:
        return _verified_chain(pair.f, pair.f, [identity_map(bound)], k + s)
    if not rho.is_homogeneous() or rho.degree() != k + s:
        raise ValueError(f"perturbation must be homogeneous of degree {k + s}")
    if laplacian_power(rho, s + 2):
        raise MembershipError(
            f"degree-{k + s} perturbation has nonzero {s + 2}-fold Laplacian", k + s
        )
    solved = solve_membership(rho, k - 1, s + 1)
    if solved is None:
        raise MembershipError(
            f"degree-{k + s} perturbation is not a degree-{s + 1} multiple of the "
            f"degree-{k - 1} harmonics",
            k + s,
        )
    cu, cv = solved
    u = cu / k
    v = -(cv / k)
    phi = jet_map(X + u, Y + v, bound)
    chain = WitnessChain(pair.f, pair.f + rho, (phi,), k + s, None, True)
    if not chain.verify():
        raise WitnessFault("translation witness failed exact re-verification")
    return chain


# -- the full reduction -------------------------------------------------------


def _validate_perturbations(
    k: int, rho_by_offset: Mapping[int, Poly], profile: AbsorptionProfile
) -> None:
    for s, rho in rho_by_offset.items():
        if not rho:
            continue
        if not 1 <= s <= k - 4:
            raise ValueError(f"offset {s} outside 1..{k - 4}")
        if not rho.is_homogeneous() or rho.degree() != k + s:
            raise ValueError(f"perturbation at offset {s} must be homogeneous of degree {k + s}")
        power = profile.exponent(s)
        residual = laplacian_power(rho, power)
        if residual:
            raise MembershipError(
                f"perturbation of degree {k + s} has nonzero {power}-fold Laplacian: "
                f"{residual}",
                k + s,
            )


def reduce_germ(
    k: int,
    perturbations: Mapping[int, Poly] | Sequence[Poly],
    tail: Poly = Poly.zero(),
) -> WitnessChain:
    """Chain of jet maps composing f_k + perturbations + tail down to f_k.

    `perturbations` maps each offset s in 1..k-4 to a homogeneous
    degree-(k+s) polynomial whose sigma(s)-fold Laplacian vanishes (a
    sequence is read as offsets 1, 2, ...). `tail` must have order at
    least 2k-3; it is discarded by the attached determinacy report of
    level 2k-4.

    Translations clear offsets >= split_offset in ascending order,
    re-extracting each graded component since earlier translations
    perturb all higher degrees. One radial scale map then clears all
    lower offsets at once. The returned chain re-verifies exactly:
    source composed through the maps equals f_k in every degree <= 2k-4.
    """
    profile = absorption_profile(k)
    if not isinstance(perturbations, Mapping):
        perturbations = {s + 1: rho for s, rho in enumerate(perturbations)}
    _validate_perturbations(k, perturbations, profile)
    if tail and tail.order() < 2 * k - 3:
        raise ValueError(f"tail order {tail.order()} below 2k-3 = {2 * k - 3}")

    bound = 2 * k - 4
    pair = harmonic_pair(k)
    source = pair.f + tail
    for rho in perturbations.values():
        source = source + rho

    current = jet_truncate(source, bound)
    maps: list[JetMap] = []
    for s in range(profile.split_offset, k - 3):
        delta = current.poly.graded_component(k + s)
        if not delta:
            continue
        solved = solve_membership(delta, k - 1, s + 1)
        if solved is None:
            raise WitnessFault(
                f"re-extracted degree-{k + s} component left the translation-absorbable "
                f"span; offending component {delta}"
            )
        cu, cv = solved
        phi = jet_map(X - cu / k, Y + cv / k, bound)
        current = jet_compose(current, phi)
        if current.poly.graded_component(k + s):
            raise WitnessFault(f"translation failed to clear degree {k + s}")
        maps.append(phi)

    low = current.poly - pair.f
    if low and low.degree() >= k + profile.split_offset:
        raise WitnessFault("high-range degrees survived the translation sweep")
    if low:
        u, v = _scale_solution(low, k)
        phi = inverse_scale_map(Jet(u, bound), Jet(v, bound), k)
        current = jet_compose(current, phi)
        maps.append(phi)
    if current.poly != pair.f.truncate(bound):
        raise WitnessFault("reduction did not terminate at the leading form")

    certificate = determined_bound_report(k, Poly.zero())
    return _verified_chain(source, pair.f, maps, bound, certificate)


def verify_biharmonic(k: int, perturbation: Poly, bound: int | None = None) -> WitnessChain:
    """Witness for: f_k + R is right equivalent to f_k when the 2-fold
    Laplacian of R vanishes and order(R) > k.

    Graded components of R below degree 2k-3 feed the reduction as
    perturbations (a vanishing 2-fold Laplacian sits inside every
    required kernel); the rest is tail, discarded by determinacy.
    """
    if k < 5:
        raise ValueError("biharmonic absorption requires k >= 5")
    if bound is not None and bound != 2 * k - 4:
        raise ValueError(f"verification bound is fixed at 2k-4 = {2 * k - 4}")
    if perturbation and perturbation.order() <= k:
        raise ValueError(
            f"perturbation order {perturbation.order()} must exceed k = {k}"
        )
    for degree, component in perturbation.components().items():
        residual = laplacian_power(component, 2)
        if residual:
            raise MembershipError(
                f"2-fold Laplacian is nonzero in degree {degree}: {residual}", degree
            )
    perturbations: dict[int, Poly] = {}
    tail = Poly.zero()
    for degree, component in perturbation.components().items():
        if degree >= 2 * k - 3:
            tail = tail + component
        else:
            perturbations[degree - k] = component
    return reduce_germ(k, perturbations, tail)
