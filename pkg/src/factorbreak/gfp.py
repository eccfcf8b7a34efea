"""Arithmetic in the prime field F_p, p < 2**31."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import ModulusMismatch, ZeroInverse

MAX_MODULUS = 2**31


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    for d in (2, 3, 5, 7):
        if p % d == 0:
            return p == d
    d = 11
    while d * d <= p:
        if p % d == 0 or p % (d + 2) == 0:
            return False
        d += 6
    return True


@lru_cache(maxsize=None)
def check_modulus(p: int) -> int:
    """Validate p once; results are cached so repeated checks are free."""
    if not isinstance(p, int) or isinstance(p, bool):
        raise TypeError(f"modulus must be an int, got {type(p).__name__}")
    if not 2 <= p < MAX_MODULUS:
        raise ValueError(f"modulus {p} outside [2, 2**31)")
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    return p


def inv_mod(a: int, p: int) -> int:
    """Inverse of a modulo p by the extended Euclidean algorithm."""
    a %= p
    if a == 0:
        raise ZeroInverse(f"0 has no inverse modulo {p}")
    r0, r1 = p, a
    t0, t1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    return t0 % p


@dataclass(frozen=True, slots=True)
class FieldElement:
    value: int
    p: int

    def __post_init__(self):
        check_modulus(self.p)
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise ModulusMismatch(f"F_{self.p} vs F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.value * inv_mod(o, self.p), self.p)

    def __neg__(self):
        return FieldElement(-self.value, self.p)

    def __pow__(self, e: int):
        return ff_pow(self, e)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FieldElement({self.value}, p={self.p})"

    def inverse(self) -> FieldElement:
        return ff_inv(self)


def ff_inv(a: FieldElement) -> FieldElement:
    return FieldElement(inv_mod(a.value, a.p), a.p)


def ff_pow(a: FieldElement, e: int) -> FieldElement:
    """a**e for any signed e; 0**0 == 1, negative e goes through ff_inv."""
    if e < 0:
        a = ff_inv(a)
        e = -e
    result, base = 1, a.value
    while e:
        if e & 1:
            result = result * base % a.p
        base = base * base % a.p
        e >>= 1
    return FieldElement(result, a.p)
