"""Exact arithmetic in F_{p^n} for odd p.

Two backends share one field description:

* :class:`FieldCtx` works on little-endian coefficient tuples over F_p.  It is
  slow but transparent and has no size bound; every identity the fast backend
  relies on is testable against it.
* :class:`LogTable` holds dense exp/log/Zech tables indexed by the packed
  base-p representation and drives the point-counting hot loop.  The quadratic
  character of a nonzero element is the parity of its discrete log, so the
  square test costs nothing beyond the log itself.

Elements of extension fields are coefficient vectors in the root of a fixed
monic irreducible modulus.  The default modulus is the lexicographically
smallest irreducible (coefficients compared from degree 0 upward), which pins
down every table bit-for-bit; any other irreducible modulus gives isomorphic
arithmetic and identical point counts, which the counting tests exercise.
"""

from __future__ import annotations

from typing import Iterator, Sequence

import numpy as np

from .arith import is_probable_prime

TABLE_LIMIT = 2**32

Elem = tuple[int, ...]


def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mulmod(a: Sequence[int], b: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    """(a*b) mod (mod) over F_p; mod is monic, result has len(mod)-1 coords."""
    n = len(mod) - 1
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    for i in range(len(res) - 1, n - 1, -1):
        c = res[i]
        if c:
            res[i] = 0
            for j in range(n):
                res[i - n + j] = (res[i - n + j] - c * mod[j]) % p
    res = res[:n]
    return res + [0] * (n - len(res))


def _poly_powmod(a: Sequence[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    n = len(mod) - 1
    result = [1] + [0] * (n - 1)
    base = list(a) + [0] * (n - len(a))
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        # a mod b with b made monic
        inv_lead = pow(b[-1], p - 2, p)
        bm = [(c * inv_lead) % p for c in b]
        r = list(a)
        while len(r) >= len(bm) and _poly_trim(list(r)):
            r = _poly_trim(r)
            if len(r) < len(bm):
                break
            c = r[-1]
            shift = len(r) - len(bm)
            for j, bj in enumerate(bm):
                r[shift + j] = (r[shift + j] - c * bj) % p
            r = _poly_trim(r)
        a, b = b, r
    return a


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Rabin test: x^{p^n} == x (mod f) and gcd(x^{p^{n/r}} - x, f) = 1."""
    f = _poly_trim(list(poly))
    n = len(f) - 1
    if n < 1 or f[-1] % p != 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    xq = _poly_powmod(x, p**n, f, p)
    if _poly_trim([(a - b) % p for a, b in zip(xq, x + [0] * (n - 2))]):
        return False
    factors = set()
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            factors.add(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        factors.add(m)
    for r in factors:
        xr = _poly_powmod(x, p ** (n // r), f, p)
        diff = [(a - b) % p for a, b in zip(xr, x + [0] * (n - 2))]
        if len(_poly_gcd(diff, f, p)) > 1:
            return False
    return True


def find_irreducible(p: int, n: int) -> Elem:
    """Lexicographically smallest monic irreducible of degree n over F_p.

    Coefficients are compared from the constant term upward, so the search
    order is just the packed base-p index of the non-leading coefficients.
    """
    if n == 1:
        return (0, 1)
    for idx in range(p**n):
        lower = []
        t = idx
        for _ in range(n):
            lower.append(t % p)
            t //= p
        cand = lower + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("unreachable: irreducible polynomials of every degree exist")


class FieldCtx:
    """F_{p^n} with explicit polynomial arithmetic on coefficient tuples."""

    def __init__(self, p: int, n: int = 1, modulus: Sequence[int] | None = None):
        if p == 2 or not is_probable_prime(p):
            raise ValueError(f"p must be an odd prime, got {p}")
        if n < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.n = n
        self.q = p**n
        if modulus is None:
            modulus = find_irreducible(p, n)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree n")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.modulus = modulus
        self.zero: Elem = (0,) * n
        self.one: Elem = (1,) + (0,) * (n - 1)

    def __repr__(self):
        return f"FieldCtx(p={self.p}, n={self.n}, modulus={self.modulus})"

    def elem(self, value) -> Elem:
        """Coerce an int (prime-subfield element) or coefficient sequence."""
        if isinstance(value, int):
            return (value % self.p,) + (0,) * (self.n - 1)
        t = tuple(int(c) % self.p for c in value)
        if len(t) != self.n:
            raise ValueError(f"expected {self.n} coefficients")
        return t

    def add(self, a: Elem, b: Elem) -> Elem:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a: Elem, b: Elem) -> Elem:
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a: Elem) -> Elem:
        return tuple((-x) % self.p for x in a)

    def mul(self, a: Elem, b: Elem) -> Elem:
        return tuple(_poly_mulmod(a, b, self.modulus, self.p))

    def pow(self, a: Elem, e: int) -> Elem:
        if e < 0:
            return self.pow(self.inv(a), -e)
        return tuple(_poly_powmod(a, e, self.modulus, self.p))

    def inv(self, a: Elem) -> Elem:
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero in F_q")
        return self.pow(a, self.q - 2)

    def frobenius(self, a: Elem) -> Elem:
        return self.pow(a, self.p)

    def quadratic_character(self, a: Elem) -> int:
        """0 for zero, +1 for nonzero squares, -1 for non-squares."""
        if a == self.zero:
            return 0
        r = self.pow(a, (self.q - 1) // 2)
        return 1 if r == self.one else -1

    def pack(self, a: Elem) -> int:
        s = 0
        for c in reversed(a):
            s = s * self.p + c
        return s

    def unpack(self, idx: int) -> Elem:
        out = []
        for _ in range(self.n):
            out.append(idx % self.p)
            idx //= self.p
        return tuple(out)

    def enumerate_elements(self) -> Iterator[Elem]:
        """All q elements, ordered by packed index (0 first)."""
        for idx in range(self.q):
            yield self.unpack(idx)


class LogTable:
    """Dense exp/log/Zech tables for F_q, q <= 2^32.

    Conventions: nonzero elements carry their discrete log in [0, q-1) with
    respect to a fixed generator; zero is the sentinel index M = q-1.  The
    Zech table satisfies zech[k] = log(1 + g^k) with the out-of-band value 2M
    when g^k = -1, and zech[M] = log(1 + 0) = 0, so field addition is
    log-domain: a + b = g^{la + zech[lb - la]}.
    """

    ZERO_SENTINEL_FACTOR = 2  # zech entry for "sum is zero" is 2*M

    def __init__(self, ctx: FieldCtx):
        if ctx.q > TABLE_LIMIT:
            raise ValueError(f"q={ctx.q} exceeds table-mode limit {TABLE_LIMIT}")
        self.ctx = ctx
        self.q = ctx.q
        self.M = ctx.q - 1
        self._build()

    def _build(self):
        ctx = self.ctx
        p, q, M = ctx.p, self.q, self.M
        g = self._find_generator()
        self.generator = g
        exp = self._exp_table(g)
        if ctx.mul(ctx.unpack(int(exp[M - 1])), g) != ctx.one:
            raise AssertionError("generator order mismatch")
        log = np.zeros(q, dtype=np.int64)
        log[exp[:M]] = np.arange(M, dtype=np.int64)
        log[0] = M
        # packed rep of (element + 1): field addition only touches the
        # constant coefficient, mod p, no carries between coefficients
        low = exp % p
        plus_one = exp - low + (low + 1) % p
        zech = log[plus_one].astype(np.int64)
        zech[plus_one == 0] = 2 * M
        self.exp = exp
        self.log = log
        self.zech = zech

    def _exp_table(self, g: Elem) -> np.ndarray:
        """Packed representations of 1, g, g^2, ..., g^{M-1}, then 0.

        Multiplication by a fixed element is F_p-linear on coefficient
        vectors, so after a short sequential seed block the table advances a
        whole block at a time by one integer matrix product mod p.
        """
        ctx = self.ctx
        p, n, M = ctx.p, ctx.n, self.M
        block = min(M, 1024)
        digits = np.zeros((M, n), dtype=np.int64)
        cur = ctx.one
        for k in range(block):
            digits[k] = cur
            cur = ctx.mul(cur, g)
        if M > block:
            h = ctx.pow(g, block)
            stepper = np.zeros((n, n), dtype=np.int64)
            for i in range(n):
                col = ctx.mul(h, tuple(1 if j == i else 0 for j in range(n)))
                stepper[:, i] = col
            for start in range(block, M, block):
                length = min(block, M - start)
                digits[start : start + length] = (
                    digits[start - block : start - block + length] @ stepper.T
                ) % p
        powers = np.array([p**i for i in range(n)], dtype=np.int64)
        exp = np.zeros(M + 1, dtype=np.int64)
        exp[:M] = digits @ powers
        exp[M] = 0
        return exp

    def _find_generator(self) -> Elem:
        ctx = self.ctx
        M = self.M
        factors = []
        m = M
        d = 2
        while d * d <= m:
            if m % d == 0:
                factors.append(d)
                while m % d == 0:
                    m //= d
            d += 1
        if m > 1:
            factors.append(m)
        for idx in range(1, self.q):
            cand = ctx.unpack(idx)
            if all(ctx.pow(cand, M // r) != ctx.one for r in factors):
                return cand
        raise AssertionError("F_q^x is cyclic; a generator always exists")

    # ---- scalar log-domain helpers (sentinel M encodes zero) ----

    def log_of(self, a: Elem) -> int:
        return int(self.log[self.ctx.pack(a)])

    def elem_of(self, i: int) -> Elem:
        return self.ctx.unpack(int(self.exp[i]))

    def smul(self, i: int, j: int) -> int:
        M = self.M
        if i == M or j == M:
            return M
        t = i + j
        return t - M if t >= M else t

    def sadd(self, i: int, j: int) -> int:
        M = self.M
        if i == M:
            return j
        if j == M:
            return i
        d = j - i
        if d < 0:
            d += M
        z = int(self.zech[d])
        if z == 2 * M:
            return M
        t = i + z
        return t - M if t >= M else t

    def sneg(self, i: int) -> int:
        # -x = x * g^{M/2}; M is even for odd q
        return self.smul(i, self.M // 2)

    def chi(self, i: int) -> int:
        """Quadratic character from the log: even logs are the squares."""
        if i == self.M:
            return 0
        return 1 - 2 * (i & 1)

    def chi_by_packed(self) -> np.ndarray:
        """chi values indexed by packed representation (cross-check table)."""
        out = np.zeros(self.q, dtype=np.int8)
        nz = self.log < self.M
        idx = np.arange(self.q)
        out[idx[nz]] = 1 - 2 * (self.log[nz] & 1).astype(np.int8)
        return out

    def square_table(self) -> np.ndarray:
        """Packed bit table: bit at packed index set iff element is a nonzero square."""
        return np.packbits(self.chi_by_packed() == 1)
