"""2x2 matrices over Z/nZ.

``Mat2`` is the user-facing value type. Group code works on integer
codes ``((a*n + b)*n + c)*n + d`` and on numpy arrays of them, which is
what makes closure of groups with 10^5 elements tolerable in Python.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from .errors import InvalidModulus, MismatchedModulus, SingularMatrix, SpecSyntaxError
from .residue import QuadExtElem, is_prime, least_generator, prime_factors, sqrt_mod


@dataclass(frozen=True, order=True)
class Mat2:
    """Row-major [[a, b], [c, d]] with entries reduced mod n."""

    n: int
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        n = self.n
        if n < 2:
            raise InvalidModulus(f"modulus must be >= 2, got {n}")
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % n)

    @classmethod
    def of(cls, rows, n: int) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(n, a, b, c, d)

    @classmethod
    def identity(cls, n: int) -> "Mat2":
        return cls(n, 1, 0, 0, 1)

    @classmethod
    def diag(cls, x: int, y: int, n: int) -> "Mat2":
        return cls(n, x, 0, 0, y)

    @classmethod
    def scalar(cls, x: int, n: int) -> "Mat2":
        return cls(n, x, 0, 0, x)

    @classmethod
    def from_code(cls, code: int, n: int) -> "Mat2":
        code, d = divmod(int(code), n)
        code, c = divmod(code, n)
        a, b = divmod(code, n)
        return cls(n, a, b, c, d)

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def code(self) -> int:
        n = self.n
        return ((self.a * n + self.b) * n + self.c) * n + self.d

    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.n

    def trace(self) -> int:
        return (self.a + self.d) % self.n

    def is_invertible(self) -> bool:
        return gcd(self.det(), self.n) == 1

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return mat_mul(self, other)

    def __pow__(self, k: int) -> "Mat2":
        if k < 0:
            return mat_inv(self) ** (-k)
        result, base = Mat2.identity(self.n), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def apply(self, x: int, y: int) -> tuple[int, int]:
        n = self.n
        return ((self.a * x + self.b * y) % n, (self.c * x + self.d * y) % n)

    def literal(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"

    def __str__(self) -> str:
        return self.literal()


GAMMA_SHEAR = (1, 1, 0, 1)   # [[1,1],[0,1]]
GAMMA_ZERO = (1, 0, 0, -1)   # [[1,0],[0,-1]]
SWAP = (0, 1, 1, 0)


def gamma(n: int) -> Mat2:
    return Mat2(n, *GAMMA_SHEAR)


def gamma0(n: int) -> Mat2:
    return Mat2(n, *GAMMA_ZERO)


def mat_mul(m1: Mat2, m2: Mat2) -> Mat2:
    if m1.n != m2.n:
        raise MismatchedModulus(f"{m1.n} != {m2.n}")
    return Mat2(
        m1.n,
        m1.a * m2.a + m1.b * m2.c,
        m1.a * m2.b + m1.b * m2.d,
        m1.c * m2.a + m1.d * m2.c,
        m1.c * m2.b + m1.d * m2.d,
    )


def mat_inv(m: Mat2) -> Mat2:
    det = m.det()
    if gcd(det, m.n) != 1:
        raise SingularMatrix(f"{m} has non-unit determinant {det}")
    t = pow(det, -1, m.n)
    return Mat2(m.n, m.d * t, -m.b * t, -m.c * t, m.a * t)


@lru_cache(maxsize=None)
def gl2_order(n: int) -> int:
    """|GL_2(Z/nZ)| = n^4 * prod_{p | n} (1 - 1/p)(1 - 1/p^2)."""
    order = n ** 4
    for p in prime_factors(n):
        order = order // p ** 3 * (p - 1) * (p * p - 1)
    return order


def element_order(m: Mat2) -> int:
    if not m.is_invertible():
        raise SingularMatrix(f"{m} is not invertible")
    cap = gl2_order(m.n)
    ident = Mat2.identity(m.n)
    k, x = 1, m
    while x != ident:
        x = x @ m
        k += 1
        if k > cap:
            raise AssertionError(f"order of {m} exceeded |GL_2({m.n})|")
    return k


def eigenvalues(m: Mat2) -> tuple[QuadExtElem, QuadExtElem]:
    """Roots of x^2 - tr x + det in F_{l^2}, in the canonical order:
    base-field roots ascending; a conjugate pair as (a + b sqrt(eps),
    a - b sqrt(eps)) with 0 < b <= (l-1)/2."""
    ell = m.n
    if ell < 3 or not is_prime(ell):
        raise InvalidModulus(f"eigenvalues need an odd prime modulus, got {ell}")
    eps = least_generator(ell)
    t, det = m.trace(), m.det()
    disc = (t * t - 4 * det) % ell
    half = pow(2, -1, ell)
    roots = sqrt_mod(disc, ell)
    if roots:
        s = min(roots)
        r1, r2 = sorted(((t + s) * half % ell, (t - s) * half % ell))
        return QuadExtElem.make(r1, 0, ell), QuadExtElem.make(r2, 0, ell)
    # disc is a non-residue, so disc / eps is a nonzero square y^2
    y = min(sqrt_mod(disc * pow(eps, -1, ell), ell))
    b = y * half % ell
    if b > (ell - 1) // 2:
        b = ell - b
    a = t * half % ell
    return QuadExtElem.make(a, b, ell), QuadExtElem.make(a, -b, ell)


_LITERAL = re.compile(r"\[\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*,\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*\]")


def parse_matrix(text: str, n: int) -> Mat2:
    """Parse the ``[[a,b],[c,d]]`` literal."""
    mt = _LITERAL.fullmatch(text.strip())
    if not mt:
        raise SpecSyntaxError(f"bad matrix literal {text!r}")
    return Mat2(n, *(int(g) for g in mt.groups()))


# --- vectorized helpers over integer codes -------------------------------

def decode(codes: np.ndarray, n: int) -> tuple[np.ndarray, ...]:
    codes = np.asarray(codes, dtype=np.int64)
    d = codes % n
    rest = codes // n
    c = rest % n
    rest //= n
    return rest // n, rest % n, c, d


def encode(a, b, c, d, n: int) -> np.ndarray:
    return ((a * n + b) * n + c) * n + d


def mul_codes(codes: np.ndarray, m: Mat2) -> np.ndarray:
    """codes[i] @ m for every i."""
    n = m.n
    a, b, c, d = decode(codes, n)
    return encode((a * m.a + b * m.c) % n, (a * m.b + b * m.d) % n,
                  (c * m.a + d * m.c) % n, (c * m.b + d * m.d) % n, n)


def left_mul_codes(m: Mat2, codes: np.ndarray) -> np.ndarray:
    """m @ codes[i] for every i."""
    n = m.n
    a, b, c, d = decode(codes, n)
    return encode((m.a * a + m.b * c) % n, (m.a * b + m.b * d) % n,
                  (m.c * a + m.d * c) % n, (m.c * b + m.d * d) % n, n)


def det_codes(codes: np.ndarray, n: int) -> np.ndarray:
    a, b, c, d = decode(codes, n)
    return (a * d - b * c) % n


def all_invertible_codes(n: int) -> np.ndarray:
    """Sorted codes of every element of GL_2(Z/nZ)."""
    codes = np.arange(n ** 4, dtype=np.int64)
    dets = det_codes(codes, n)
    unit = np.array([gcd(x, n) == 1 for x in range(n)])
    return codes[unit[dets]]
