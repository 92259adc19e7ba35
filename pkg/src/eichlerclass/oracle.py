"""Slow, independent recomputations used to validate the closed forms.

Nothing here is on the main computational path except the analytic cross-check
of h(F).  Every function is an exhaustive search or a textbook formula that
shares as little code as possible with the routine it checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .arith import InternalConsistencyError, kronecker
from .cmfield import CMFieldDescriptor, Tag, imaginary_subfield_discriminants, ok_lattice
from .lattice import CMElement, Lattice, QuotientRing
from .orders import OVER_A, OrderInvariant, b32_basis
from .quaternion import residue_ring_mod2
from .realquad import (
    Basis,
    Kind,
    PrimeIdealF,
    QuadInt,
    QuadNumber,
    RealQuadField,
    build_field,
    discriminant,
    sqrt_half_unit,
)

__all__ = [
    "SearchBoundExceeded",
    "brute_fundamental_unit",
    "analytic_class_number_real",
    "zeta_minus_one_bernoulli",
    "residue_ring_mod2",
    "unit_index_brute",
    "order_h_via_unit_indices",
    "conductor_lattice_check",
    "b32_residue_images",
    "two_OK_in_B32",
    "DyadicPrime",
    "factor_two_directly",
    "artin_symbol_via_subfields",
    "artin_symbol_via_factorization",
    "verify_prime",
]


class SearchBoundExceeded(RuntimeError):
    pass


def brute_fundamental_unit(p: int, bound: int = 10**7, chunk: int = 1 << 16) -> QuadInt:
    """Smallest unit > 1 of O_F by ascending search over b.

    Solves a^2 - p b^2 = +-4 (p = 1 mod 4, unit (a + b sqrt p)/2) or
    a^2 - p b^2 = +-1 (unit a + b sqrt p), vectorized over blocks of b.
    """
    k = 4 if p % 4 == 1 else 1
    lo = 1
    while lo <= bound:
        b = np.arange(lo, min(lo + chunk, bound + 1), dtype=np.int64)
        pb2 = p * b * b
        best = None
        for target in (pb2 - k, pb2 + k):
            ok = target >= 0
            a = np.rint(np.sqrt(target.astype(np.float64))).astype(np.int64)
            for adj in (-1, 0, 1):
                aa = a + adj
                hit = ok & (aa > 0) & (aa * aa == target)
                if hit.any():
                    i = int(np.argmax(hit))
                    cand = (int(b[i]), int(aa[i]))
                    if best is None or cand < best:
                        best = cand
        if best is not None:
            bb, aa = best
            if k == 4:
                # (aa + bb sqrt p)/2 = (aa - bb)/2 + bb * (1 + sqrt p)/2
                return QuadInt((aa - bb) // 2, bb, p, Basis.HALF)
            return QuadInt(aa, bb, p, Basis.SQRT)
        lo += chunk
    raise SearchBoundExceeded(f"no unit with b <= {bound} for p={p}")


def analytic_class_number_real(F: RealQuadField | int, tol: float = 1e-6) -> int:
    """h(F) = -sum chi(a) log sin(pi a / D) / (2 log eps), rounded."""
    if isinstance(F, int):
        F = build_field(F)
    D = discriminant(F.p)
    with mpmath.workdps(30):
        eps = F.eps.value
        r, s = (mpmath.mpf(c.numerator) / c.denominator for c in (eps.r, eps.s))
        log_eps = mpmath.log(r + s * mpmath.sqrt(F.p))
        total = mpmath.mpf(0)
        for a in range(1, D):
            chi = kronecker(D, a)
            if chi:
                total += chi * mpmath.log(mpmath.sin(mpmath.pi * a / D))
        h = -total / (2 * log_eps)
    n = int(mpmath.nint(h))
    if abs(h - n) > tol:
        raise InternalConsistencyError(f"analytic class number {h} is not near an integer")
    return n


def zeta_minus_one_bernoulli(p: int) -> Fraction:
    """zeta_F(-1) = B_{2,chi}/24 with B_{2,chi} = D sum_a chi(a) B_2(a/D)."""
    D = discriminant(p)
    total = Fraction(0)
    for a in range(1, D + 1):
        chi = kronecker(D, a)
        if chi:
            x = Fraction(a, D)
            total += chi * (x * x - x + Fraction(1, 6))
    return D * total / 24


# unit groups


def _extra_unit(K: CMFieldDescriptor) -> CMElement | None:
    """A unit of O_K outside mu_K O_F^x when Q_{K/F} = 2."""
    if K.Q_KF == 1:
        return None
    if K.tag is Tag.K2:
        return K.sqrt_delta
    x = sqrt_half_unit(build_field(K.p))
    z = K.element(x, x)  # x(1 + i), z^2 = eps * i
    n = z.rel_norm()
    if not z.is_integral() or abs(n.norm()) != 1:
        raise InternalConsistencyError(f"sqrt(eps/2)(1+i) is not a unit in {K.name}")
    return z


def _unit_coset_reps(K: CMFieldDescriptor, over: str) -> list[CMElement]:
    """Representatives of O_K^x / O_F^x (or O_K^x / A^x)."""
    zeta = K.zeta
    reps = [zeta**a for a in range(K.mu_order // 2)]
    z = _extra_unit(K)
    if z is not None:
        reps += [r * z for r in reps]
    if over == OVER_A:
        F = build_field(K.p)
        eps = K.element(F.eps.value)
        reps = [r * eps**m for r in reps for m in range(F.varpi)]
    return reps


def unit_index_brute(B: OrderInvariant) -> int:
    """w(B) counted as the number of unit cosets with a representative in B."""
    L = B.lattice()
    return sum(1 for u in _unit_coset_reps(B.field, B.over) if L.contains(u))


def _modulus(B: OrderInvariant) -> Lattice:
    K = B.field
    OK = ok_lattice(K)
    if B.label == "B13":
        root = K.element(0, QuadNumber.of(0, 1, K.p))  # sqrt(3) * i = sqrt(-3)
        return Lattice.span([b * root for b in OK.basis])
    return OK.scaled(2)


def order_h_via_unit_indices(B: OrderInvariant) -> int:
    """h(B) = h(O_K) [(O_K/a)^x : (B/a)^x] / [O_K^x : B^x] by finite enumeration."""
    K = B.field
    if B.is_maximal:
        return K.h_K
    a = _modulus(B)
    if not B.lattice().contains_lattice(a):
        raise InternalConsistencyError(f"modulus not contained in {B.label}")
    ring = QuotientRing(ok_lattice(K), a)
    ok_units = len(ring.units())
    b_units = ring.unit_count_in(ring.image_of(B.lattice()))
    total = len(_unit_coset_reps(K, B.over))
    index = Fraction(total, unit_index_brute(B))
    h = Fraction(K.h_K * ok_units, b_units) / index
    if h.denominator != 1:
        raise InternalConsistencyError(f"h({B.label}) = {h} from unit indices")
    return int(h)


def _conductor_basis(B: OrderInvariant) -> list[QuadNumber]:
    """Z-basis of the conductor, read from the support and the index."""
    p = B.field.p
    q = lambda r, s: QuadNumber.of(r, s, p)  # noqa: E731
    if B.label == "B13":
        return [q(3, 0), q(0, 1)]
    if B.index_in_OK == 4:
        omega = q(Fraction(1, 2), Fraction(1, 2)) if p % 4 == 1 else q(0, 1)
        return [q(2, 0), omega * 2]
    if p == 2:
        return [q(2, 0), q(0, 1)]
    return [q(2, 0), q(1, 1)]


def conductor_lattice_check(B: OrderInvariant) -> bool:
    """B == O_F + f O_K for O_F-orders; 2 O_K in B for the A-orders."""
    K = B.field
    OK = ok_lattice(K)
    L = B.lattice()
    if B.over == OVER_A:
        # proper: the order must not contain omega = (1 + sqrt p)/2
        omega = K.element(QuadNumber.of(Fraction(1, 2), Fraction(1, 2), K.p))
        return L.contains_lattice(OK.scaled(2)) and not L.contains(omega)
    if B.is_maximal:
        return L == OK
    gens = [K.element(1), K.element(build_field(K.p).omega)]
    gens += [b * f for f in _conductor_basis(B) for b in OK.basis]
    return Lattice.span(gens) == L


def b32_residue_images(K: CMFieldDescriptor, conjugate: bool = False) -> tuple[int, int, int]:
    """(|B/2O_K|, |image in first factor|, |image in second factor|).

    O_K/2O_K = F4 x F4; the first factor is the one where zeta6 = eps.
    """
    F = build_field(K.p)
    ring = residue_ring_mod2(K)
    img = ring.image_of(Lattice(b32_basis(K, conjugate)))
    zeta6 = K.element(Fraction(1, 2), Fraction(1, 2))
    diff = ring.image(zeta6 - K.element(F.eps.value))
    factors = ring.local_factors()
    if len(factors) != 2:
        raise InternalConsistencyError("O_K/2O_K is not a product of two fields")
    factors.sort(key=lambda f: ring.mul(f.idempotent, diff) != ring.zero)
    sizes = [len({ring.mul(f.idempotent, x) for x in img}) for f in factors]
    return len(img), sizes[0], sizes[1]


def two_OK_in_B32(K: CMFieldDescriptor, conjugate: bool = False) -> bool:
    L = Lattice(b32_basis(K, conjugate))
    return all(L.contains(b * 2) for b in ok_lattice(K).basis)


# dyadic primes, found by brute force


@dataclass(frozen=True)
class DyadicPrime:
    """A maximal ideal of O_K/2O_K with its invariants over Q."""

    ideal: frozenset
    residue_degree: int
    ramification: int
    below: tuple[int, ...]  # roots r of the F-primes (2, omega - r) it contains, or () if 2 is not split in F


def _ideal_product(ring: QuotientRing, I, J) -> frozenset:
    return frozenset(ring.additive_span([ring.mul(a, b) for a in I for b in J]))


def factor_two_directly(K: CMFieldDescriptor) -> list[DyadicPrime]:
    """Maximal ideals of O_K/2O_K and their e, f, by enumerating all ideals.

    O_K/2O_K is a principal ideal ring, so the principal ideals are all ideals.
    """
    ring = QuotientRing(ok_lattice(K), ok_lattice(K).scaled(2))
    full = frozenset(ring.elements)
    ideals = {frozenset(ring.mul(a, r) for r in ring.elements) for a in ring.elements}
    proper = [I for I in ideals if I != full]
    maximal = [I for I in proper if not any(I < J for J in proper)]
    p = K.p
    omega = K.element(QuadNumber.of(Fraction(1, 2), Fraction(1, 2), p))
    split = p % 8 == 1
    out = []
    for m in maximal:
        f = (len(full) // len(m)).bit_length() - 1
        power, e = m, 1
        while True:
            nxt = _ideal_product(ring, power, m)
            if nxt == power:
                break
            power, e = nxt, e + 1
        below = tuple(r for r in (0, 1) if ring.image(omega - r) in m) if split else ()
        out.append(DyadicPrime(m, f, e, below))
    if sum(d.residue_degree * d.ramification for d in out) != 4:
        raise InternalConsistencyError(f"sum of e*f over 2 is not 4 in {K.name}")
    return out


def artin_symbol_via_subfields(K: CMFieldDescriptor, P: PrimeIdealF) -> int:
    """(K/P) from the splitting of P.ell in the quadratic subfields of K.

    For Q(zeta_10) the residue degree of ell is its multiplicative order mod 5.
    """
    ell = P.ell
    if K.tag is Tag.ZETA10:
        if ell == 5:
            return 0
        order = next(k for k in range(1, 5) if pow(ell, k, 5) == 1)
        return 1 if order == P.residue_degree else -1
    d_F = discriminant(K.p)
    d_E, d_E2 = imaginary_subfield_discriminants(K.p, K.tag)
    chi_F, chi_E, chi_E2 = (kronecker(d, ell) for d in (d_F, d_E, d_E2))
    if chi_F == 0:
        if chi_E == 0 and chi_E2 == 0:
            return 0
        return chi_E or chi_E2
    if chi_E == 0:
        return 0
    if chi_F == 1:
        return chi_E
    return 1


def artin_symbol_via_factorization(K: CMFieldDescriptor, P: PrimeIdealF) -> int:
    """(K/P) for dyadic P read off ``factor_two_directly``."""
    if not P.dyadic:
        raise ValueError("direct factorization is only implemented above 2")
    primes = factor_two_directly(K)
    if P.kind is Kind.SPLIT:
        primes = [d for d in primes if P.root in d.below]
    e_rel = {d.ramification // P.ramification for d in primes}
    if e_rel == {2}:
        return 0
    return 1 if len(primes) == 2 else -1


def verify_prime(p: int, unit_bound: int = 10**6) -> list[str]:
    """Run every oracle cross-check for one p; returns the failures (empty when clean)."""
    from .cmfield import herglotz
    from .context import field_context
    from .quaternion import EichlerInput, artin_symbol, class_number_eichler
    from .realquad import factor_rational_prime

    ctx = field_context(p)
    F = ctx.F
    bad: list[str] = []
    try:
        if brute_fundamental_unit(p, unit_bound) != F.eps:
            bad.append(f"p={p}: fundamental unit differs from the brute-force search")
    except SearchBoundExceeded:
        if F.eps.b <= unit_bound:
            bad.append(f"p={p}: brute-force search missed eps = {F.eps}")
    if analytic_class_number_real(F) != F.h_F:
        bad.append(f"p={p}: h(F) disagrees with the analytic class number formula")
    for K in ctx.cm_fields:
        if K.tag is not Tag.ZETA10 and not (p == 2 and K.tag is Tag.K1):
            if herglotz(K, F.h_F, swap=True) != herglotz(K, F.h_F):
                bad.append(f"p={p}: Herglotz formula not symmetric in E, E' for {K.name}")
        if K.tag is Tag.K1 and p != 2:
            if len(residue_ring_mod2(K).units()) != 4 * (2 - kronecker(2, p)):
                bad.append(f"p={p}: |(O_K1/2O_K1)^x| is wrong")
        for P in factor_rational_prime(F, 2):
            a = artin_symbol(K, P)
            if a != artin_symbol_via_factorization(K, P) or a != artin_symbol_via_subfields(K, P):
                bad.append(f"p={p}: dyadic Artin symbol mismatch in {K.name}")
    for B in ctx.of_orders + (ctx.a_orders or ()):
        name = f"{B.label}/{B.over} in {B.field.name}"
        if unit_index_brute(B) != B.w_B:
            bad.append(f"p={p}: w({name}) differs from the unit-coset count")
        if order_h_via_unit_indices(B) != B.h_B:
            bad.append(f"p={p}: h({name}) differs from the unit-index formula")
        if not conductor_lattice_check(B):
            bad.append(f"p={p}: conductor of {name} does not match")
    for K in ctx.cm_fields:
        if K.tag is Tag.K3 and F.varpi == 3:
            if b32_residue_images(K) != (8, 4, 2) or b32_residue_images(K, True) != (8, 2, 4):
                bad.append(f"p={p}: B32 residue images are not F4 x F2 and F2 x F4")
            if not (two_OK_in_B32(K) and two_OK_in_B32(K, True)):
                bad.append(f"p={p}: 2 O_K is not inside B32")
    try:
        class_number_eichler(EichlerInput(F))
    except InternalConsistencyError as exc:
        bad.append(f"p={p}: {exc}")
    return bad
