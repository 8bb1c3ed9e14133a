"""Prime-field arithmetic and the seeded randomness used by every sampler.

Internally the package works on plain ``int`` residues in ``[0, p)``; the
:class:`FieldElement` wrapper is the checked public face of those residues.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import CompositeModulus, ConfigError, DivisionByZero, EvenModulus, MixedFields

MAX_MODULUS = 1 << 63

# Deterministic Miller-Rabin witnesses; sufficient for every n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic primality test for 64-bit integers."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class RandomSource:
    """Seedable stream of 64-bit words.

    Same seed gives the same stream. A source is single-owner state; use
    :meth:`spawn` to hand independent streams to parallel workers.
    """

    def __init__(self, seed: int | str | bytes = 0):
        self.seed = seed
        self._rng = random.Random(seed)

    def next_word(self) -> int:
        return self._rng.getrandbits(64)

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` by rejection, with no modulo bias.

        Words below ``2**64 mod n`` are rejected, so the accepted range is a
        whole number of copies of ``[0, n)``. Large words are always accepted.
        """
        if n <= 0:
            raise ValueError("n must be positive")
        threshold = (1 << 64) % n
        while True:
            w = self.next_word()
            if w >= threshold:
                return w % n

    def spawn(self, index: int) -> "RandomSource":
        return RandomSource(f"{self.seed}:{index}")


@dataclass(frozen=True)
class Field:
    """The prime field F_p for an odd prime ``p < 2**63``."""

    p: int

    def __post_init__(self):
        p = self.p
        if not isinstance(p, int) or isinstance(p, bool):
            raise ConfigError(f"modulus must be an integer, got {p!r}")
        if p == 2:
            raise EvenModulus("characteristic 2 is not supported")
        if p >= MAX_MODULUS:
            raise ConfigError(f"modulus {p} exceeds 2^63")
        if not is_prime(p):
            raise CompositeModulus(f"{p} is not prime")

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(value % self.p, self)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    def random(self, rng: RandomSource) -> int:
        return rng.below(self.p)

    def __repr__(self):
        return f"Field(p={self.p})"


def mk_field(p: int) -> Field:
    return Field(p)


@dataclass(frozen=True, slots=True)
class FieldElement:
    value: int
    field: Field

    def __post_init__(self):
        if not 0 <= self.value < self.field.p:
            raise ValueError(f"{self.value} is not a canonical residue mod {self.field.p}")

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise MixedFields(f"cannot combine elements of F_{self.field.p} and F_{other.field.p}")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def _wrap(self, v: int) -> "FieldElement":
        return FieldElement(v % self.field.p, self.field)

    def __add__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.value + b)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.value - b)

    def __rsub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(b - self.value)

    def __mul__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.value * b)

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.value)

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return NotImplemented
        return self * FieldElement(b, self.field).inverse()

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise DivisionByZero(f"0 has no inverse in F_{self.field.p}")
        return FieldElement(pow(self.value, -1, self.field.p), self.field)

    def __pow__(self, e: int) -> "FieldElement":
        if e < 0:
            return self.inverse() ** (-e)
        # pow(0, 0, p) == 1, matching the a**0 == 1 convention
        return FieldElement(pow(self.value, e, self.field.p), self.field)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.field.p})"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def power(a: FieldElement, e: int) -> FieldElement:
    """``a**e`` by square-and-multiply; ``power(0, 0) == 1``."""
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    return a**e


def rand_element(field: Field, rng: RandomSource) -> FieldElement:
    return FieldElement(rng.below(field.p), field)
