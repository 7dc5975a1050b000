"""Small integer helpers: primality, factorization, p-parts, orders mod m."""

from __future__ import annotations

import math
from dataclasses import dataclass


def is_prime(n: int) -> bool:
    """Trial division; inputs here are group orders and field sizes."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for q in range(3, math.isqrt(n) + 1, 2):
        if n % q == 0:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    q = 2
    while q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += 1 if q == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_divisors(n: int) -> list[int]:
    return sorted(factorize(n))


def divisors(n: int) -> list[int]:
    divs = [1]
    for q, k in factorize(n).items():
        divs = [d * q**i for d in divs for i in range(k + 1)]
    return sorted(divs)


@dataclass(frozen=True)
class PrimePower:
    p: int
    d: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.d < 0:
            raise ValueError("exponent must be nonnegative")

    @property
    def value(self) -> int:
        return self.p**self.d

    def __str__(self):
        return f"{self.p}^{self.d}"


def p_part(m: int, p: int) -> PrimePower:
    """Largest power of ``p`` dividing ``m``."""
    if m < 1:
        raise ValueError("m must be positive")
    d = 0
    while m % p == 0:
        m //= p
        d += 1
    return PrimePower(p, d)


def log_p(value: int, p: int) -> int:
    """Exponent k with p**k == value; raises if value is not a power of p."""
    pp = p_part(value, p)
    if pp.value != value:
        raise ValueError(f"{value} is not a power of {p}")
    return pp.d


def multiplicative_order(a: int, m: int) -> int:
    """Order of a in (Z/m)^*; by convention 1 when m == 1."""
    if m == 1:
        return 1
    if math.gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit mod {m}")
    k, x = 1, a % m
    while x != 1:
        x = x * a % m
        k += 1
    return k
