"""Exact integer and rational helpers shared by the rest of the package."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

# All fractional quantities (masses, zeta values, elliptic terms) are Fractions.
Rational = Fraction


class InternalConsistencyError(ArithmeticError):
    """Two independent computations of the same invariant disagree."""


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
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


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer as ``{prime: exponent}``."""
    if n < 1:
        raise ValueError(f"factorize expects a positive integer, got {n}")
    out: dict[int, int] = {}
    for q in (2, 3):
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    q = 5
    while q * q <= n:
        for r in (q, q + 2):
            while n % r == 0:
                out[r] = out.get(r, 0) + 1
                n //= r
        q += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def sigma1(n: int) -> int:
    """Sum of the positive divisors of n."""
    if n < 1:
        raise ValueError(f"sigma1 expects n >= 1, got {n}")
    total = 1
    for q, e in factorize(n).items():
        total *= (q ** (e + 1) - 1) // (q - 1)
    return total


def divisors(n: int) -> list[int]:
    divs = [1]
    for q, e in factorize(n).items():
        divs = [d * q**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n); n = 0 is rejected."""
    if n == 0:
        raise ValueError("kronecker symbol (a/0) is not supported")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a/n) for odd n > 0
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def legendre(a: int, ell: int) -> int:
    return kronecker(a, ell)


def squarefree_part(n: int) -> int:
    """The square-free integer m with n = m * k^2 (sign kept)."""
    if n == 0:
        raise ValueError("squarefree_part(0) is undefined")
    m = -1 if n < 0 else 1
    for q, e in factorize(abs(n)).items():
        if e % 2:
            m *= q
    return m


def quadratic_discriminant(m: int) -> int:
    """Discriminant of Q(sqrt(m)) for a square-free m != 1."""
    return m if m % 4 == 1 else 4 * m


def is_fundamental_discriminant(d: int) -> bool:
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return squarefree_part(d) == d
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and squarefree_part(m) == m
    return False


def valuation(n: int, q: int) -> int:
    """q-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % q == 0:
        n //= q
        v += 1
    return v


def sqrt_mod_prime(a: int, ell: int) -> int:
    """Least nonnegative r with r^2 = a mod ell (Tonelli-Shanks)."""
    a %= ell
    if a == 0 or ell == 2:
        return a
    if pow(a, (ell - 1) // 2, ell) != 1:
        raise ValueError(f"{a} is not a square modulo {ell}")
    q, s = ell - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (ell - 1) // 2, ell) != ell - 1:
        z += 1
    m, c, t, r = s, pow(z, q, ell), pow(a, q, ell), pow(a, (q + 1) // 2, ell)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % ell
            i += 1
        b = pow(c, 1 << (m - i - 1), ell)
        m, c, t, r = i, b * b % ell, t * b * b % ell, r * b % ell
    return min(r, ell - r)


def hensel_sqrt(a: int, r: int, ell: int, k: int) -> int:
    """Lift a root r of x^2 = a mod ell (ell odd, ell not dividing a) to mod ell^k."""
    mod = ell
    for _ in range(k - 1):
        mod *= ell
        # Newton step: r <- r - (r^2 - a) / (2r)
        r = (r - (r * r - a) * pow(2 * r, -1, mod)) % mod
    return r % mod


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b
