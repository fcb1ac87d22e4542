"""Admissible prime orders of automorphisms of smooth cubic n-folds.

A prime p is admissible in dimension n when p = 2 or (-2)^l = 1 mod p for
some l in {1, ..., n+2}.  Every admissible prime satisfies p < 2^(n+1), so
the full list for a given n is obtained by sieving up to that bound.
"""

from functools import lru_cache
from math import isqrt

# Witness set making Miller-Rabin deterministic for all inputs below 3.3e24,
# far beyond the < 2^21 primes this package ever touches.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(m: int) -> bool:
    """Deterministic Miller-Rabin primality test."""
    if m < 2:
        return False
    for w in _MR_WITNESSES:
        if m == w:
            return True
        if m % w == 0:
            return False
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for w in _MR_WITNESSES:
        x = pow(w, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def ensure_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"modulus must be prime, got {p!r}")
    return p


def _factor(m: int) -> list[int]:
    """Distinct prime factors by trial division (inputs stay machine-word sized)."""
    out = []
    for d in range(2, isqrt(m) + 1):
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
    if m > 1:
        out.append(m)
    return out


def mult_order(a: int, p: int) -> int:
    """Smallest l >= 1 with a^l = 1 mod p.

    Raises ValueError when a = 0 mod p (no order exists).  Computed by
    starting from p - 1 and stripping prime factors that are not needed.
    """
    ensure_prime(p)
    a %= p
    if a == 0:
        raise ValueError("a = 0 mod p has no multiplicative order")
    order = p - 1
    for f in _factor(p - 1):
        while order % f == 0 and pow(a, order // f, p) == 1:
            order //= f
    return order


def _check_dimension(n: int) -> int:
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {n!r}")
    return n


def is_admissible(p: int, n: int) -> bool:
    """True iff p = 2 or the multiplicative order of -2 mod p is at most n + 2."""
    _check_dimension(n)
    ensure_prime(p)
    if p == 2:
        return True
    return mult_order(-2, p) <= n + 2


@lru_cache(maxsize=None)
def _primes_below(limit: int) -> tuple[int, ...]:
    if limit <= 2:
        return ()
    sieve = bytearray((1,)) * limit
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(limit - 1) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit, i)))
    return tuple(i for i in range(limit) if sieve[i])


@lru_cache(maxsize=None)
def admissible_primes(n: int) -> tuple[int, ...]:
    """All admissible primes for dimension n, increasing.

    Complete because every admissible prime is < 2^(n+1).  An odd prime p
    satisfies the order criterion exactly when p divides some (-2)^l - 1
    with l <= n+2, i.e. when p divides their product; that single bignum
    divisibility test replaces per-prime order computations.
    """
    _check_dimension(n)
    mask = 1
    for ell in range(1, n + 3):
        mask *= abs((-2) ** ell - 1)
    return tuple(
        p for p in _primes_below(2 ** (n + 1)) if p == 2 or mask % p == 0
    )


def max_admissible_prime(n: int) -> int:
    """Largest admissible prime for dimension n."""
    return admissible_primes(n)[-1]
