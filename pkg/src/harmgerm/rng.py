"""Deterministic random instance generation.

The generator is xoshiro256** with the state seeded by four successive
outputs of splitmix64 applied to the user seed, the reference seeding
procedure for that family. It is fully specified by integer arithmetic
on 64-bit words, so the same seed yields the same instances on every
platform and backend; statistical quality far exceeds what coefficient
sampling here needs.

Random polynomials draw integer coefficients uniformly from [-3, 3],
either directly on monomials or as combinations of a subspace basis.
"""

from __future__ import annotations

from .polyring import Poly, monomial_basis

_MASK = (1 << 64) - 1


def _splitmix64(state: int):
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return state, z ^ (z >> 31)


def _rotl(x: int, r: int) -> int:
    return ((x << r) | (x >> (64 - r))) & _MASK


class Xoshiro256StarStar:
    """xoshiro256** stream over 64-bit words."""

    def __init__(self, seed: int):
        state = seed & _MASK
        words = []
        for _ in range(4):
            state, word = _splitmix64(state)
            words.append(word)
        self._s = words

    def next_u64(self) -> int:
        s = self._s
        result = (_rotl((s[1] * 5) & _MASK, 7) * 9) & _MASK
        t = (s[1] << 17) & _MASK
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], unbiased via rejection sampling."""
        if hi < lo:
            raise ValueError("empty range")
        span = hi - lo + 1
        threshold = ((1 << 64) // span) * span
        while True:
            word = self.next_u64()
            if word < threshold:
                return lo + word % span


def derive_seed(base: int, *coords: int) -> int:
    """Stable per-instance seed from a base seed and grid coordinates."""
    state = base & _MASK
    for coord in coords:
        state ^= (coord * 0x9E3779B97F4A7C15) & _MASK
        state, _ = _splitmix64(state)
    _, out = _splitmix64(state)
    return out


def random_coefficient(rng: Xoshiro256StarStar) -> int:
    return rng.randint(-3, 3)


def random_homogeneous(rng: Xoshiro256StarStar, degree: int) -> Poly:
    """Random degree-d polynomial with integer coefficients in [-3, 3]."""
    return Poly({exps: random_coefficient(rng) for exps in monomial_basis(degree)})


def random_in_span(rng: Xoshiro256StarStar, basis) -> Poly:
    """Random integer combination of basis polynomials, coefficients in [-3, 3]."""
    total = Poly.zero()
    for p in basis:
        c = random_coefficient(rng)
        if c:
            total = total + p * c
    return total
