"""The real quadratic field F = Q(sqrt(p)) for a prime p."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .arith import (
    InternalConsistencyError,
    hensel_sqrt,
    is_prime,
    kronecker,
    sigma1,
    sqrt_mod_prime,
    valuation,
)


@dataclass(frozen=True, slots=True)
class QuadNumber:
    """The element r + s*sqrt(p) of F, with rational r and s."""

    r: Fraction
    s: Fraction
    p: int

    @classmethod
    def of(cls, r, s, p: int) -> QuadNumber:
        return cls(Fraction(r), Fraction(s), p)

    def _coerce(self, other) -> QuadNumber:
        if isinstance(other, QuadNumber):
            if other.p != self.p:
                raise ValueError("elements of different fields")
            return other
        return QuadNumber(Fraction(other), Fraction(0), self.p)

    def __add__(self, other) -> QuadNumber:
        o = self._coerce(other)
        return QuadNumber(self.r + o.r, self.s + o.s, self.p)

    __radd__ = __add__

    def __sub__(self, other) -> QuadNumber:
        o = self._coerce(other)
        return QuadNumber(self.r - o.r, self.s - o.s, self.p)

    def __rsub__(self, other) -> QuadNumber:
        return self._coerce(other) - self

    def __neg__(self) -> QuadNumber:
        return QuadNumber(-self.r, -self.s, self.p)

    def __mul__(self, other) -> QuadNumber:
        o = self._coerce(other)
        return QuadNumber(
            self.r * o.r + self.p * self.s * o.s, self.r * o.s + self.s * o.r, self.p
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> QuadNumber:
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(p))")
        q = self * o.conj()
        return QuadNumber(q.r / n, q.s / n, self.p)

    def __pow__(self, k: int) -> QuadNumber:
        if k < 0:
            return QuadNumber.of(1, 0, self.p) / self ** (-k)
        result, base = QuadNumber.of(1, 0, self.p), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> QuadNumber:
        return QuadNumber(self.r, -self.s, self.p)

    def norm(self) -> Fraction:
        return self.r * self.r - self.p * self.s * self.s

    def trace(self) -> Fraction:
        return 2 * self.r

    def is_zero(self) -> bool:
        return self.r == 0 and self.s == 0

    def is_integral(self) -> bool:
        """Membership in O_F."""
        if self.p % 4 == 1:
            u, v = 2 * self.r, 2 * self.s
            return u.denominator == 1 and v.denominator == 1 and (u - v) % 2 == 0
        return self.r.denominator == 1 and self.s.denominator == 1

    def in_sqrt_order(self) -> bool:
        """Membership in A = Z[sqrt(p)]."""
        return self.r.denominator == 1 and self.s.denominator == 1

    def __float__(self) -> float:
        return float(self.r) + float(self.s) * self.p**0.5

    def is_positive(self) -> bool:
        """Sign under the embedding sqrt(p) > 0, decided exactly."""
        r, s = self.r, self.s
        if s == 0:
            return r > 0
        if r >= 0 and s >= 0:
            return True
        if r <= 0 and s <= 0:
            return False
        # opposite signs: compare r^2 with p s^2
        if r > 0:
            return r * r > self.p * s * s
        return self.p * s * s > r * r

    def to_quadint(self) -> QuadInt:
        if not self.is_integral():
            raise ValueError(f"{self} is not in O_F")
        if self.p % 4 == 1:
            b = 2 * self.s
            return QuadInt(int(self.r - self.s), int(b), self.p, Basis.HALF)
        return QuadInt(int(self.r), int(self.s), self.p, Basis.SQRT)

    def __str__(self) -> str:
        return _format(self.r, self.s, f"√{self.p}")


def _format(r: Fraction, s: Fraction, root: str) -> str:
    if s == 0:
        return str(r)
    den = r.denominator * s.denominator // _gcd(r.denominator, s.denominator)
    a, b = int(r * den), int(s * den)
    coef = "" if abs(b) == 1 else str(abs(b))
    if a == 0:
        body = ("-" if b < 0 else "") + coef + root
    else:
        body = f"{a}{'-' if b < 0 else '+'}{coef}{root}"
    if den == 1:
        return body
    return f"({body})/{den}"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


class Basis(enum.Enum):
    SQRT = "Sqrt"  # a + b*sqrt(p)
    HALF = "HalfPlusSqrt"  # a + b*(1+sqrt(p))/2


@dataclass(frozen=True, slots=True)
class QuadInt:
    """An element of O_F (or of Z[sqrt(p)]) in a fixed integral basis."""

    a: int
    b: int
    p: int
    basis: Basis = Basis.SQRT

    def __post_init__(self):
        if self.basis is Basis.HALF and self.p % 4 != 1:
            raise ValueError("the (1+sqrt(p))/2 basis needs p = 1 mod 4")

    @property
    def value(self) -> QuadNumber:
        if self.basis is Basis.SQRT:
            return QuadNumber.of(self.a, self.b, self.p)
        return QuadNumber(
            Fraction(self.a) + Fraction(self.b, 2), Fraction(self.b, 2), self.p
        )

    def norm(self) -> int:
        return int(self.value.norm())

    def trace(self) -> int:
        return int(self.value.trace())

    def conj(self) -> QuadInt:
        return self.value.conj().to_quadint()

    def __str__(self) -> str:
        return str(self.value)


class Kind(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


@dataclass(frozen=True, slots=True)
class PrimeIdealF:
    """A prime of O_F above the rational prime ell.

    For odd ell of degree one, ``root`` is the image of sqrt(p) in F_ell.
    Above 2, ``root`` is the image of sqrt(p) when 2 ramifies and the image of
    (1+sqrt(p))/2 when 2 splits.  Inert primes carry no root.
    """

    p: int
    ell: int
    kind: Kind
    root: int | None
    norm: int

    @property
    def dyadic(self) -> bool:
        return self.ell == 2

    @property
    def ramification(self) -> int:
        return 2 if self.kind is Kind.RAMIFIED else 1

    @property
    def residue_degree(self) -> int:
        return 2 if self.kind is Kind.INERT else 1

    def label(self) -> str:
        if self.kind is Kind.SPLIT:
            return f"{self.ell}:{self.root}"
        return str(self.ell)

    def to_json(self) -> dict:
        return {"ell": self.ell, "kind": self.kind.value, "root": self.root}


@dataclass(frozen=True)
class RealQuadField:
    p: int
    d_F: int
    eps: QuadInt
    norm_eps: int
    varpi: int | None
    h_F: int
    zeta_m1: Fraction

    @property
    def omega(self) -> QuadNumber:
        """Second element of the standard Z-basis {1, omega} of O_F."""
        if self.p % 4 == 1:
            return QuadNumber.of(Fraction(1, 2), Fraction(1, 2), self.p)
        return QuadNumber.of(0, 1, self.p)

    @property
    def sqrt_p(self) -> QuadNumber:
        return QuadNumber.of(0, 1, self.p)

    def number(self, r, s=0) -> QuadNumber:
        return QuadNumber.of(r, s, self.p)


def discriminant(p: int) -> int:
    return p if p % 4 == 1 else 4 * p


def fundamental_unit(p: int) -> QuadInt:
    """Fundamental unit > 1 of O_F from the periodic continued fraction.

    Expands sqrt(p) (or (1+sqrt(p))/2 when p = 1 mod 4) with integer state
    (P, Q) meaning (P + sqrt(p))/Q; the product of the complete quotients over
    one period is the fundamental unit of the order Z + Z*xi_0 = O_F.
    """
    s = isqrt(p)
    P, Q = (1, 2) if p % 4 == 1 else (0, 1)
    seen: dict[tuple[int, int], int] = {}
    states: list[tuple[int, int]] = []
    while (P, Q) not in seen:
        seen[(P, Q)] = len(states)
        states.append((P, Q))
        a = (P + s) // Q
        P = a * Q - P
        Q = (p - P * P) // Q
        if Q <= 0:
            raise InternalConsistencyError(f"continued fraction state left reduced range for p={p}")
    start = seen[(P, Q)]
    eps = QuadNumber.of(1, 0, p)
    for P_k, Q_k in states[start:]:
        eps = eps * QuadNumber.of(Fraction(P_k, Q_k), Fraction(1, Q_k), p)
    if not eps.is_positive():
        eps = -eps
    if abs(eps.norm()) != 1 or not eps.is_integral():
        raise InternalConsistencyError(f"period product is not a unit for p={p}")
    if not (eps - 1).is_positive():
        eps = eps.conj() if eps.conj().is_positive() else -eps.conj()
    return eps.to_quadint()


def zeta_minus_one(F: RealQuadField | int) -> Fraction:
    """zeta_F(-1) by Siegel's finite divisor sum."""
    p = F if isinstance(F, int) else F.p
    d = discriminant(p)
    total = 0
    b = d % 2
    while b * b < d:
        term = sigma1((d - b * b) // 4)
        total += term if b == 0 else 2 * term
        b += 2
    return Fraction(total, 60)


def reduced_indefinite_forms(D: int) -> list[tuple[int, int, int]]:
    """All reduced forms (a, b, c) of non-square discriminant D > 0.

    Reduced means 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b.
    """
    forms = []
    s = isqrt(D)
    for b in range(1, s + 1):
        if (b - D) % 2 or b * b >= D:
            continue
        ac = (b * b - D) // 4  # negative
        n = -ac
        for a_abs in range(1, min(n, (s + b) // 2 + 1) + 1):
            if n % a_abs:
                continue
            if (2 * a_abs + b) ** 2 <= D:
                continue
            t = 2 * a_abs - b
            if t > 0 and t * t >= D:
                continue
            c_abs = n // a_abs
            forms.append((a_abs, b, -c_abs))
            forms.append((-a_abs, b, c_abs))
    return forms


def _rho(form: tuple[int, int, int], D: int) -> tuple[int, int, int]:
    a, b, c = form
    s = isqrt(D)
    m = 2 * abs(c)
    b2 = s - (s + b) % m
    return (c, b2, (b2 * b2 - D) // (4 * c))


def form_cycles(D: int) -> list[list[tuple[int, int, int]]]:
    """Partition the reduced forms of discriminant D into rho-cycles."""
    remaining = set(reduced_indefinite_forms(D))
    cycles = []
    while remaining:
        start = min(remaining)
        cycle, f = [], start
        while True:
            if f not in remaining:
                raise InternalConsistencyError(f"rho left the reduced set at {f}")
            remaining.discard(f)
            cycle.append(f)
            f = _rho(f, D)
            if f == start:
                break
        cycles.append(cycle)
    return cycles


def _wide_class_number(p: int, norm_eps: int) -> int:
    narrow = len(form_cycles(discriminant(p)))
    if norm_eps == 1:
        if narrow % 2:
            raise InternalConsistencyError(f"odd narrow class number with N(eps)=+1, p={p}")
        return narrow // 2
    return narrow


@lru_cache(maxsize=None)
def build_field(p: int) -> RealQuadField:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    eps = fundamental_unit(p)
    norm_eps = eps.norm()
    vp = None
    if p % 4 == 1:
        vp = 1 if eps.value.in_sqrt_order() else 3
    return RealQuadField(
        p=p,
        d_F=discriminant(p),
        eps=eps,
        norm_eps=norm_eps,
        varpi=vp,
        h_F=_wide_class_number(p, norm_eps),
        zeta_m1=zeta_minus_one(p),
    )


def varpi(F: RealQuadField) -> int:
    """The unit index [O_F^x : Z[sqrt(p)]^x], defined for p = 1 mod 4."""
    if F.p % 4 != 1:
        raise ValueError(f"varpi is only defined for p = 1 mod 4, got p={F.p}")
    return 1 if F.eps.value.in_sqrt_order() else 3


def sqrt_half_unit(F: RealQuadField) -> QuadNumber:
    """The element x of F with x^2 = eps/2 and x = (1+sqrt(p))/2 mod O_F.

    Writing x = (u + v*sqrt(p))/2 gives u^2 + p v^2 = 2a and u^2 - p v^2 = +-2
    for eps = a + b*sqrt(p).
    """
    p = F.p
    if p % 4 != 3:
        raise ValueError(f"sqrt(eps/2) lies in F only for p = 3 mod 4, got p={p}")
    a, b = F.eps.a, F.eps.b
    for sign in (1, -1):
        u2, pv2 = a + sign, a - sign
        if u2 < 0 or pv2 < 0 or pv2 % p:
            continue
        u, v = isqrt(u2), isqrt(pv2 // p)
        if u * u != u2 or v * v != pv2 // p:
            continue
        if u * v != b:
            v = -v
        x = QuadNumber.of(Fraction(u, 2), Fraction(v, 2), p)
        half_eps = F.eps.value * Fraction(1, 2)
        if x * x == half_eps and (x - QuadNumber.of(Fraction(1, 2), Fraction(1, 2), p)).is_integral():
            return x
    raise InternalConsistencyError(f"no square root of eps/2 found for p={p}")


def class_number_real(F: RealQuadField) -> int:
    """h(F) from reduced-form cycles, cross-checked by the analytic formula."""
    from .oracle import analytic_class_number_real

    h = _wide_class_number(F.p, F.norm_eps)
    analytic = analytic_class_number_real(F)
    if h != analytic:
        raise InternalConsistencyError(
            f"h(F) mismatch for p={F.p}: form cycles give {h}, analytic formula {analytic}"
        )
    return h


def factor_rational_prime(F: RealQuadField, ell: int) -> list[PrimeIdealF]:
    """The primes of O_F above ell, split pairs ordered by root."""
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    p = F.p
    chi = kronecker(F.d_F, ell)
    if chi == 0:
        root = p % 2 if ell == 2 else 0
        return [PrimeIdealF(p, ell, Kind.RAMIFIED, root, ell)]
    if chi == -1:
        return [PrimeIdealF(p, ell, Kind.INERT, None, ell * ell)]
    if ell == 2:
        roots = (0, 1)
    else:
        r = sqrt_mod_prime(p, ell)
        roots = (r, ell - r)
    return [PrimeIdealF(p, ell, Kind.SPLIT, r, ell) for r in roots]


def _integral_coords(P: PrimeIdealF, x: QuadNumber) -> tuple[int, int, int]:
    """Write x = (u + v*sqrt(p))/den with integers u, v and den coprime to ell."""
    den = x.r.denominator * x.s.denominator
    u, v = x.r * den, x.s * den
    if den % P.ell == 0:
        raise ValueError(f"{x} is not integral at the prime above {P.ell}")
    return int(u), int(v), den


def _dyadic_residue(P: PrimeIdealF, x: QuadNumber) -> tuple[int, int]:
    """Image of x in O_F/P for P above 2, as a pair (c0, c1) over F_2.

    For degree one the pair is (value, 0).  For inert 2 the residue field is
    F_2[w]/(w^2+w+1) with w the image of (1+sqrt(p))/2.
    """
    q = x.to_quadint() if x.is_integral() else None
    if q is None:
        raise ValueError(f"{x} is not in O_F")
    if P.kind is Kind.RAMIFIED:
        return ((q.a + q.b * P.root) % 2, 0)
    if P.kind is Kind.SPLIT:
        return ((q.a + q.b * P.root) % 2, 0)
    return (q.a % 2, q.b % 2)


def residue(P: PrimeIdealF, x: QuadNumber):
    """Image of a P-integral x in the residue field O_F/P.

    Degree one: an int mod ell.  Degree two, odd ell: a pair (c0, c1) meaning
    c0 + c1*t in F_ell[t]/(t^2 - p).  Above 2 see ``_dyadic_residue``.
    """
    if P.dyadic:
        res = _dyadic_residue(P, x)
        return res[0] if P.norm == 2 else res
    u, v, den = _integral_coords(P, x)
    inv = pow(den, -1, P.ell)
    if P.kind is Kind.INERT:
        return (u * inv % P.ell, v * inv % P.ell)
    return (u + v * P.root) * inv % P.ell


def _fq_mul(x: tuple[int, int], y: tuple[int, int], ell: int, p: int) -> tuple[int, int]:
    return ((x[0] * y[0] + p * x[1] * y[1]) % ell, (x[0] * y[1] + x[1] * y[0]) % ell)


def _fq_pow(x: tuple[int, int], k: int, ell: int, p: int) -> tuple[int, int]:
    result = (1, 0)
    while k:
        if k & 1:
            result = _fq_mul(result, x, ell, p)
        x = _fq_mul(x, x, ell, p)
        k >>= 1
    return result


def residue_character(P: PrimeIdealF, res) -> int:
    """Quadratic character of a residue-field element as returned by ``residue``."""
    if P.dyadic:
        # every element of a finite field of characteristic 2 is a square
        return 0 if res in (0, (0, 0)) else 1
    ell = P.ell
    if P.kind is Kind.INERT:
        if res == (0, 0):
            return 0
        t = _fq_pow(res, (ell * ell - 1) // 2, ell, P.p % ell)
        if t == (1, 0):
            return 1
        if t == (ell - 1, 0):
            return -1
        raise InternalConsistencyError(f"Euler criterion failed in F_{ell}^2")
    if res == 0:
        return 0
    return 1 if pow(res, (ell - 1) // 2, ell) == 1 else -1


def is_square_in_residue_field(P: PrimeIdealF, x: QuadNumber | QuadInt) -> int:
    """Quadratic character of x mod P: 0, +1 or -1."""
    if isinstance(x, QuadInt):
        x = x.value
    return residue_character(P, residue(P, x))


def prime_valuation(P: PrimeIdealF, x: QuadNumber) -> int:
    """v_P(x) for a nonzero x in O_F and an odd prime P."""
    if P.dyadic:
        raise ValueError("prime_valuation handles odd primes only")
    if x.is_zero():
        raise ValueError("valuation of zero is infinite")
    u, v, _ = _integral_coords(P, x)
    ell = P.ell
    if P.kind is Kind.INERT:
        return min(valuation(u, ell) if u else 10**9, valuation(v, ell) if v else 10**9)
    if P.kind is Kind.RAMIFIED:
        return min(2 * valuation(u, ell) if u else 10**9, 2 * valuation(v, ell) + 1 if v else 10**9)
    k = 0
    while True:
        mod = ell ** (k + 1)
        r = hensel_sqrt(P.p, P.root, ell, k + 1)
        if (u + v * r) % mod:
            return k
        k += 1


def unit_part_residue(P: PrimeIdealF, x: QuadNumber) -> tuple[int, object]:
    """(v_P(x), residue of x / pi^v) for odd P, with pi = ell or sqrt(p)."""
    v = prime_valuation(P, x)
    if v == 0:
        return 0, residue(P, x)
    ell = P.ell
    if P.kind is Kind.INERT:
        return v, residue(P, x * Fraction(1, ell**v))
    if P.kind is Kind.RAMIFIED:
        if v % 2:
            return v, None
        return v, residue(P, x * Fraction(1, ell ** (v // 2)))
    u, w, den = _integral_coords(P, x)
    r = hensel_sqrt(P.p, P.root, ell, v + 1)
    image = (u + w * r) % ell ** (v + 1)
    return v, (image // ell**v) * pow(den, -1, ell) % ell
