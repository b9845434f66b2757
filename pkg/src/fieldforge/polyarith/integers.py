"""Integer helpers: primality, factorization with an effort budget, squares."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

_SMALL_PRIMES_LIMIT = 10_000


def _sieve(limit):
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return [i for i, v in enumerate(flags) if v]


SMALL_PRIMES = _sieve(_SMALL_PRIMES_LIMIT)

# Deterministic Miller-Rabin bases, valid for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_LIMIT = 3317044064679887385961981


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; exact below 3.3e24, overwhelmingly likely above."""
    if n < 2:
        return False
    for p in SMALL_PRIMES[:50]:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = list(_MR_BASES)
    if n >= _MR_DETERMINISTIC_LIMIT:
        rng = random.Random(n)
        bases += [rng.randrange(2, n - 1) for _ in range(20)]
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    return is_probable_prime(n)


def primes_from(start: int = 2):
    """Yield primes >= start in increasing order, forever."""
    for p in SMALL_PRIMES:
        if p >= start:
            yield p
    n = max(start, SMALL_PRIMES[-1] + 1)
    if n % 2 == 0:
        n += 1
    while True:
        if is_probable_prime(n):
            yield n
        n += 2


def next_prime(n: int) -> int:
    return next(primes_from(n + 1))


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def integer_nth_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _pollard_brent(n: int, rng: random.Random, budget: int):
    """Return (factor or None, iterations used)."""
    if n % 2 == 0:
        return 2, 1
    used = 0
    while used < budget:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1 and used < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            used += r
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g, used
    return None, used


@dataclass
class IntegerFactorization:
    """|N| = prod(p**e) * cofactor; ``sign`` carries the sign of N."""

    sign: int
    primes: dict = field(default_factory=dict)
    cofactor: int = 1
    cofactor_status: str = "one"  # one | probable-prime | composite

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def value(self) -> int:
        v = self.sign * self.cofactor
        for p, e in self.primes.items():
            v *= p**e
        return v

    def __str__(self):
        parts = [] if self.sign > 0 else ["-1"]
        for p in sorted(self.primes):
            e = self.primes[p]
            parts.append(f"{p}^{e}" if e > 1 else str(p))
        if self.cofactor != 1:
            parts.append(f"[{self.cofactor}:{self.cofactor_status}]")
        return " * ".join(parts) or "1"


def factor_integer(N: int, effort: int = 200_000) -> IntegerFactorization:
    """Trial division then Pollard-Brent rho, within ``effort`` rho iterations.

    Anything left over is returned as a cofactor flagged ``probable-prime``
    (beyond the deterministic Miller-Rabin range) or ``composite``.
    """
    if N == 0:
        raise ValueError("cannot factor 0")
    out = IntegerFactorization(sign=1 if N > 0 else -1)
    n = abs(N)
    for p in SMALL_PRIMES:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.primes[p] = e
    if n == 1:
        return out
    rng = random.Random(n)
    stack = [n]
    leftovers = []
    budget = effort
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            if m < _MR_DETERMINISTIC_LIMIT:
                out.primes[m] = out.primes.get(m, 0) + 1
            else:
                leftovers.append((m, "probable-prime"))
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack.extend([r, r])
            continue
        if budget <= 0:
            leftovers.append((m, "composite"))
            continue
        d, used = _pollard_brent(m, rng, budget)
        budget -= used
        if d is None:
            leftovers.append((m, "composite"))
        else:
            stack.extend([d, m // d])
    if leftovers:
        cof = 1
        status = "probable-prime"
        for m, st in leftovers:
            cof *= m
            if st == "composite":
                status = "composite"
        if len(leftovers) > 1 and status == "probable-prime":
            status = "composite"
        out.cofactor = cof
        out.cofactor_status = status
    out.primes = dict(sorted(out.primes.items()))
    return out


def squarefree_part(N: int, effort: int = 200_000) -> int:
    """Signed squarefree kernel: N = squarefree_part(N) * k**2.

    Raises ValueError if the factorization could not be completed.
    """
    if N == 0:
        return 0
    fac = factor_integer(N, effort)
    if fac.cofactor != 1:
        if fac.cofactor_status == "probable-prime":
            base = fac.cofactor
        else:
            raise ValueError(f"could not factor {N} within budget")
    else:
        base = 1
    out = fac.sign * base
    for p, e in fac.primes.items():
        if e % 2:
            out *= p
    return out


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v
