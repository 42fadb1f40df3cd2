"""Elementary integer arithmetic helpers shared across the toolkit."""

from __future__ import annotations

import math
import random


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with the first 13 prime witnesses.

    Deterministic for n < 3.317e24; a strong probable-prime test beyond.
    """
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def trial_factor(n: int, bound: int = 10**7) -> tuple[dict[int, int], int]:
    """Factor |n| by trial division up to `bound`.

    Returns (factors, cofactor). The cofactor is 1 on complete success.  A
    cofactor below bound**2 is necessarily prime and is absorbed into the
    factorization; a larger cofactor is also absorbed when it passes a
    primality test, so a nontrivial cofactor is genuinely unfactored.
    """
    n = abs(n)
    factors: dict[int, int] = {}
    if n <= 1:
        return factors, 1
    for p in (2, 3, 5):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    # wheel over 6k+-1
    d = 7 if n > 1 else n
    d = 7
    step = 4
    while d <= bound and d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += step
        step = 6 - step
    if n == 1:
        return factors, 1
    if n < bound * bound or is_probable_prime(n):
        factors[n] = factors.get(n, 0) + 1
        return factors, 1
    return factors, n


def primes_up_to(n: int) -> list[int]:
    """Eratosthenes sieve."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, v in enumerate(sieve) if v]


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for odd prime p, via Euler's criterion."""
    if p == 2 or not is_probable_prime(p):
        raise ValueError(f"legendre requires an odd prime, got {p}")
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def ceil_sqrt_ratio(num: int, den: int) -> int:
    """Smallest integer t >= 0 with t*t*den >= num (num, den > 0)."""
    t = math.isqrt(num // den)
    while t * t * den < num:
        t += 1
    return t


def euler_phi(n: int) -> int:
    factors, cof = trial_factor(n, bound=10**6)
    if cof != 1:
        raise ValueError(f"cannot factor {n} for phi")
    result = 1
    for p, e in factors.items():
        result *= (p - 1) * p ** (e - 1)
    return result


def random_with_seed(seed: int) -> random.Random:
    return random.Random(seed)
