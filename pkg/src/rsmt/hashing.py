"""Strongly universal hash family h_{a,b}(x) = low_l_bits(a*x + b) over GF(2^m).

The affine map (a, b) -> (a*x1 + b, a*x2 + b) is a bijection for x1 != x2, so
truncating both outputs to l bits leaves every tag pair with exactly
2^(2m-2l) preimages: the family is exactly 2^(-2l)-pairwise independent,
comfortably inside the 2^(1-2l) budget the protocol bounds assume.
"""

from __future__ import annotations

import random

from .field import FieldSpec


class HashFamilySpec:
    """Family of maps from m-bit inputs to l-bit tags."""

    __slots__ = ("domain_bits", "range_bits", "field")

    def __init__(self, domain_bits: int, range_bits: int):
        if not 1 <= range_bits <= domain_bits:
            raise ValueError(
                f"need 1 <= range_bits <= domain_bits, got l={range_bits}, m={domain_bits}"
            )
        object.__setattr__(self, "domain_bits", domain_bits)
        object.__setattr__(self, "range_bits", range_bits)
        object.__setattr__(self, "field", FieldSpec.binary(domain_bits))

    def __setattr__(self, name, value):
        raise AttributeError("HashFamilySpec is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, HashFamilySpec)
            and self.domain_bits == other.domain_bits
            and self.range_bits == other.range_bits
        )

    def __hash__(self):
        return hash((self.domain_bits, self.range_bits))

    def sample(self, rng: random.Random) -> "HashFunction":
        return HashFunction(self, rng.getrandbits(self.domain_bits), rng.getrandbits(self.domain_bits))

    def family_gamma(self) -> float:
        """Pairwise-independence parameter of this family: 2^(-2l)."""
        return 2.0 ** (-2 * self.range_bits)

    def members(self):
        for a in range(1 << self.domain_bits):
            for b in range(1 << self.domain_bits):
                yield HashFunction(self, a, b)

    def __repr__(self):
        return f"HashFamilySpec(m={self.domain_bits}, l={self.range_bits})"


class HashFunction:
    """A sampled member (a, b) of the family."""

    __slots__ = ("family", "a", "b")

    def __init__(self, family: HashFamilySpec, a: int, b: int):
        size = 1 << family.domain_bits
        if not (0 <= a < size and 0 <= b < size):
            raise ValueError("hash coefficients outside the field")
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("HashFunction is immutable")

    def evaluate(self, x: int) -> int:
        fam = self.family
        if not 0 <= x < (1 << fam.domain_bits):
            raise ValueError(f"input does not fit in {fam.domain_bits} bits")
        full = fam.field.mul_int(self.a, x) ^ self.b
        return full & ((1 << fam.range_bits) - 1)

    def __eq__(self, other):
        return (
            isinstance(other, HashFunction)
            and self.family == other.family
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self):
        return hash((self.family, self.a, self.b))

    def __repr__(self):
        return f"HashFunction(a={self.a:#x}, b={self.b:#x}, {self.family!r})"


def offset_collision_prob_exhaustive(
    spec: HashFamilySpec, x1: int, c1: int, x2: int, c2: int
) -> float:
    """Exact Pr over the family of c1 ^ h(x1) == c2 ^ h(x2).

    Enumerates all 2^(2m) members, so m is capped at 12.
    """
    if (x1, c1) == (x2, c2):
        raise ValueError("pairs must be distinct")
    m = spec.domain_bits
    if m > 12:
        raise ValueError(f"family of 2^{2 * m} members is too large to enumerate")
    mask = (1 << spec.range_bits) - 1
    field = spec.field
    target = (c1 ^ c2) & mask
    count = 0
    # b cancels in h(x1) ^ h(x2), so only a matters; each a stands for 2^m b's.
    for a in range(1 << m):
        if (field.mul_int(a, x1) ^ field.mul_int(a, x2)) & mask == target:
            count += 1
    return count / (1 << m)
