"""Arithmetic in Z/nZ and in the quadratic extension F_l[sqrt(eps)].

Everything here works at desk scale (moduli up to a few thousand), so
square roots and power tests are plain scans rather than clever
algorithms.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod
from typing import Iterable

from .errors import (
    InvalidModulus,
    MismatchedField,
    NotAUnit,
    NotPrime,
    ZeroInverse,
)

# Degrees of Q-rational cyclic isogenies (Kenku): [1, 19] together with
# the sporadic values.
KENKU_DEGREES: tuple[int, ...] = tuple(range(1, 20)) + (21, 25, 27, 37, 43, 67, 163)

# Primes whose product bounds new isogenies over Q for non-CM curves.
QQ_ORBIT_PRIMES: tuple[int, ...] = (2, 3, 5, 7, 11, 13, 17, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            return False
        p += 2
    return True


def primes_up_to(c: int) -> list[int]:
    return [p for p in range(2, c + 1) if is_prime(p)]


def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def euler_phi(n: int) -> int:
    result = n
    for p in prime_factors(n):
        result = result // p * (p - 1)
    return result


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass(frozen=True)
class Modulus:
    n: int
    is_prime: bool

    @classmethod
    def of(cls, n: int) -> "Modulus":
        if n < 2:
            raise InvalidModulus(f"modulus must be >= 2, got {n}")
        return cls(n, is_prime(n))


def inv_mod(x: int, n: int) -> int:
    """Inverse of ``x`` modulo ``n``; raises NotAUnit if none exists."""
    x %= n
    if gcd(x, n) != 1:
        raise NotAUnit(f"{x} is not a unit mod {n}")
    return pow(x, -1, n)


def units(n: int) -> list[int]:
    return [x for x in range(1, n) if gcd(x, n) == 1] if n > 1 else []


def multiplicative_order(x: int, n: int) -> int:
    x %= n
    if gcd(x, n) != 1:
        raise NotAUnit(f"{x} is not a unit mod {n}")
    k, y = 1, x
    while y != 1 % n:
        y = y * x % n
        k += 1
    return k


@lru_cache(maxsize=None)
def least_generator(ell: int) -> int:
    """Smallest g >= 2 generating the unit group mod the prime ``ell``."""
    if ell < 3 or not is_prime(ell):
        raise InvalidModulus(f"least_generator needs a prime >= 3, got {ell}")
    for g in range(2, ell):
        if multiplicative_order(g, ell) == ell - 1:
            return g
    raise AssertionError("unreachable: F_l^x is cyclic")


def sqrt_mod(x: int, ell: int) -> set[int]:
    x %= ell
    return {y for y in range(ell) if y * y % ell == x}


def is_eth_power(x: int, e: int, ell: int) -> bool:
    """True iff ``x`` is an e-th power mod the prime ``ell`` (Euler criterion)."""
    if x % ell == 0:
        raise NotAUnit(f"{x} is divisible by {ell}")
    if e < 1:
        raise ValueError("e must be positive")
    return pow(x, (ell - 1) // gcd(e, ell - 1), ell) == 1


def minus_one_power_exception(e: int, ell: int) -> bool:
    """The explicit congruence conditions under which -1 fails to be an
    e-th power mod ``ell``, valid for e in {1, 2, 3, 4, 6}."""
    if e in (2, 4, 6) and ell % 4 == 3:
        return True
    return e == 4 and ell % 8 == 5


def product_of_primes(primes: Iterable[int]) -> int:
    ps = list(primes)
    for p in ps:
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
    return prod(set(ps))


def product_of_primes_up_to(c: int) -> int:
    """B = product of all primes p <= c (exact integer)."""
    return product_of_primes(primes_up_to(c))


def large_prime_threshold(degree: int) -> int:
    """Lower bound max(74, 15 d + 2) that c(F) must exceed, for [F:Q] = d."""
    if degree < 1:
        raise ValueError("field degree must be positive")
    return max(74, 15 * degree + 2)


@dataclass(frozen=True, order=True)
class QuadExtElem:
    """a + b*sqrt(eps) in F_l[sqrt(eps)], eps = least_generator(l)."""

    a: int
    b: int
    ell: int
    epsilon: int

    @classmethod
    def make(cls, a: int, b: int, ell: int) -> "QuadExtElem":
        return cls(a % ell, b % ell, ell, least_generator(ell))

    @classmethod
    def base(cls, a: int, ell: int) -> "QuadExtElem":
        return cls.make(a, 0, ell)

    @property
    def in_base_field(self) -> bool:
        return self.b == 0

    def _check(self, other: "QuadExtElem") -> None:
        if (self.ell, self.epsilon) != (other.ell, other.epsilon):
            raise MismatchedField("operands live in different fields")

    def __add__(self, other: "QuadExtElem") -> "QuadExtElem":
        self._check(other)
        return QuadExtElem((self.a + other.a) % self.ell, (self.b + other.b) % self.ell,
                           self.ell, self.epsilon)

    def __sub__(self, other: "QuadExtElem") -> "QuadExtElem":
        self._check(other)
        return QuadExtElem((self.a - other.a) % self.ell, (self.b - other.b) % self.ell,
                           self.ell, self.epsilon)

    def __neg__(self) -> "QuadExtElem":
        return QuadExtElem(-self.a % self.ell, -self.b % self.ell, self.ell, self.epsilon)

    def __mul__(self, other: "QuadExtElem") -> "QuadExtElem":
        self._check(other)
        p, eps = self.ell, self.epsilon
        a = (self.a * other.a + eps * self.b * other.b) % p
        b = (self.a * other.b + self.b * other.a) % p
        return QuadExtElem(a, b, p, eps)

    def scale(self, k: int) -> "QuadExtElem":
        return QuadExtElem(self.a * k % self.ell, self.b * k % self.ell, self.ell, self.epsilon)

    def frobenius(self) -> "QuadExtElem":
        return QuadExtElem(self.a, -self.b % self.ell, self.ell, self.epsilon)

    def norm(self) -> int:
        return (self.a * self.a - self.epsilon * self.b * self.b) % self.ell

    def trace(self) -> int:
        return 2 * self.a % self.ell

    def inverse(self) -> "QuadExtElem":
        nm = self.norm()
        if nm == 0:
            raise ZeroInverse("zero has no inverse")
        return self.frobenius().scale(pow(nm, -1, self.ell))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}*sqrt({self.epsilon})"


def quad_ext_arith(op: str, x: QuadExtElem, y: QuadExtElem | None = None):
    """Dispatch table over mul / inv / frobenius / norm."""
    if op == "mul":
        if y is None:
            raise ValueError("mul needs two operands")
        return x * y
    if op == "inv":
        return x.inverse()
    if op == "frobenius":
        return x.frobenius()
    if op == "norm":
        return x.norm()
    raise ValueError(f"unknown op {op!r}")


@lru_cache(maxsize=None)
def quad_ext_generator(ell: int) -> QuadExtElem:
    """A generator of F_{l^2}^x, least in (b, a) order among a + b*sqrt(eps)."""
    target = ell * ell - 1
    factors = prime_factors(target)
    one = QuadExtElem.base(1, ell)
    for b in range(ell):
        for a in range(ell):
            z = QuadExtElem.make(a, b, ell)
            if z.is_zero():
                continue
            if all(qpow(z, target // q) != one for q in factors):
                return z
    raise AssertionError("unreachable: F_{l^2}^x is cyclic")


def qpow(z: QuadExtElem, k: int) -> QuadExtElem:
    result = QuadExtElem.base(1, z.ell)
    base = z
    while k:
        if k & 1:
            result = result * base
        base = base * base
        k >>= 1
    return result


