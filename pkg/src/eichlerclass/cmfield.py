"""Totally imaginary quadratic extensions K/F with [O_K^x : O_F^x] > 1."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Callable

from .arith import InternalConsistencyError, quadratic_discriminant, squarefree_part
from .imagquad import class_number_imag
from .lattice import CMElement, Lattice
from .realquad import Basis, QuadInt, QuadNumber, RealQuadField, build_field


class Tag(enum.Enum):
    K1 = "K1"  # Q(sqrt(p), sqrt(-1))
    K2 = "K2"  # Q(sqrt(p), sqrt(-2)) = F(sqrt(-eps)), p = 3 mod 4
    K3 = "K3"  # Q(sqrt(p), sqrt(-3))
    ZETA10 = "Zeta10"  # Q(zeta_10), p = 5 only

    @property
    def j(self) -> int | None:
        return {"K1": 1, "K2": 2, "K3": 3}.get(self.value)


@dataclass(frozen=True, eq=False)
class CMFieldDescriptor:
    """K = F(sqrt(delta)) together with its unit and class group data.

    Two descriptors are equal when they describe the same (p, tag).
    """

    p: int
    tag: Tag
    delta: QuadInt
    mu_order: int
    Q_KF: int
    w_K: int
    h_K: int
    ok_basis: tuple[CMElement, ...] = field(repr=False)
    zeta: CMElement = field(repr=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CMFieldDescriptor):
            return NotImplemented
        return (self.p, self.tag) == (other.p, other.tag)

    def __hash__(self) -> int:
        return hash((self.p, self.tag))

    @property
    def name(self) -> str:
        if self.tag is Tag.ZETA10:
            return "Q(ζ10)"
        return f"Q(√{self.p},√-{self.tag.j})"

    @property
    def delta_value(self) -> QuadNumber:
        return self.delta.value

    def element(self, x, y=0) -> CMElement:
        """x + y*sqrt(delta) for x, y rationals or elements of F."""
        d = self.delta_value
        if not isinstance(x, QuadNumber):
            x = QuadNumber.of(x, 0, self.p)
        if not isinstance(y, QuadNumber):
            y = QuadNumber.of(y, 0, self.p)
        return CMElement(x, y, d)

    @property
    def sqrt_delta(self) -> CMElement:
        return self.element(0, 1)


def cm_tags(p: int) -> list[Tag]:
    if p == 2:
        return [Tag.K1, Tag.K3]
    if p == 3:
        return [Tag.K1, Tag.K2]
    if p == 5:
        return [Tag.K1, Tag.K3, Tag.ZETA10]
    if p % 4 == 1:
        return [Tag.K1, Tag.K3]
    return [Tag.K1, Tag.K2, Tag.K3]


def _delta(F: RealQuadField, tag: Tag) -> QuadInt:
    p = F.p
    if tag is Tag.K1:
        return QuadNumber.of(-1, 0, p).to_quadint()
    if tag is Tag.K3:
        return QuadNumber.of(-3, 0, p).to_quadint()
    if tag is Tag.K2:
        if p % 4 != 3:
            raise ValueError("K2 = F(sqrt(-eps)) is only tabulated for p = 3 mod 4")
        return (-F.eps.value).to_quadint()
    if p != 5:
        raise ValueError("Q(zeta_10) contains Q(sqrt(p)) only for p = 5")
    # (zeta_5 - zeta_5^-1)^2 = (-5 - sqrt(5))/2 = -2 - (1+sqrt(5))/2
    return QuadInt(-2, -1, 5, Basis.HALF)


def _mu_order(p: int, tag: Tag) -> int:
    if tag is Tag.K1:
        return {2: 8, 3: 12}.get(p, 4)
    return {Tag.K2: 2, Tag.K3: 6, Tag.ZETA10: 10}[tag]


def _zeta5(delta: QuadNumber) -> CMElement:
    p = delta.p
    return CMElement(
        QuadNumber.of(Fraction(-1, 4), Fraction(1, 4), p), QuadNumber.of(Fraction(1, 2), 0, p), delta
    )


def _root_of_unity(p: int, tag: Tag, delta: QuadNumber) -> CMElement:
    """A generator of mu_K."""
    half = Fraction(1, 2)
    q = lambda r, s=0: QuadNumber.of(r, s, p)  # noqa: E731
    if tag is Tag.K1:
        if p == 2:
            return CMElement(q(0, half), q(0, half), delta)
        if p == 3:
            return CMElement(q(0, half), q(half), delta)
        return CMElement(q(0), q(1), delta)
    if tag is Tag.K2:
        return CMElement(q(-1), q(0), delta)
    if tag is Tag.K3:
        return CMElement(q(half), q(half), delta)
    return -_zeta5(delta)


def _case_table_Q(p: int, tag: Tag) -> int:
    return 2 if p % 4 == 3 and tag in (Tag.K1, Tag.K2) else 1


def _gcd_criterion_Q(p: int, tag: Tag) -> int | None:
    """Q_{K_j/F} = 1 iff gcd(d_F, d_{E_j}) = 1; stated for odd p only."""
    if p == 2 or tag.j is None:
        return None
    d_F = quadratic_discriminant(p)
    d_E = quadratic_discriminant(-tag.j)
    return 1 if gcd(d_F, d_E) == 1 else 2


def hasse_unit_index(K: CMFieldDescriptor | tuple[int, Tag]) -> int:
    """Q_{K/F} = [O_K^x : mu_K O_F^x] from the case table, checked by the gcd rule."""
    p, tag = (K.p, K.tag) if isinstance(K, CMFieldDescriptor) else K
    q = _case_table_Q(p, tag)
    alt = _gcd_criterion_Q(p, tag)
    if alt is not None and alt != q:
        raise InternalConsistencyError(f"Hasse unit index disagreement for p={p}, {tag.value}")
    return q


def imaginary_subfield_discriminants(p: int, tag: Tag) -> tuple[int, int]:
    """Discriminants of E = Q(sqrt(-j)) and of the other imaginary subfield E'."""
    if tag.j is None:
        raise ValueError("Q(zeta_10) is cyclic, not biquadratic")
    j = tag.j
    return quadratic_discriminant(-j), quadratic_discriminant(squarefree_part(-j * p))


def field_discriminant(p: int, tag: Tag) -> int:
    """d_K as the product of the quadratic subfield discriminants (125 for Q(zeta_5))."""
    if tag is Tag.ZETA10:
        return 125
    d_E, d_E2 = imaginary_subfield_discriminants(p, tag)
    return quadratic_discriminant(p) * d_E * d_E2


def _candidate_basis(p: int, tag: Tag, delta: QuadNumber) -> list[CMElement]:
    half = Fraction(1, 2)
    q = lambda r, s=0: QuadNumber.of(r, s, p)  # noqa: E731
    el = lambda x, y: CMElement(x, y, delta)  # noqa: E731
    one, sqp = el(q(1), q(0)), el(q(0, 1), q(0))
    omega = el(q(half, half), q(0))
    if tag is Tag.ZETA10:
        z = _zeta5(delta)
        return [one, z, z * z, z * z * z]
    if tag is Tag.K1:
        i = el(q(0), q(1))
        if p == 2:
            return [one, i, sqp, el(q(0, half), q(0, half))]
        if p % 4 == 1:
            return [one, omega, i, i * omega]
        return [one, el(q(half), q(0, half)), i, el(q(0, half), q(half))]
    if tag is Tag.K2:
        root = el(q(0), q(1))
        return [one, sqp, root, sqp * root]
    zeta6 = el(q(half), q(half))
    if p % 4 == 1:
        return [one, omega, zeta6, omega * zeta6]
    return [one, sqp, zeta6, sqp * zeta6]


def _refine_to_maximal(L: Lattice, target: int) -> Lattice:
    """Adjoin integral half-lattice points until the discriminant reaches ``target``."""
    while L.discriminant() != target:
        for c in itertools.product((0, 1), repeat=4):
            if not any(c):
                continue
            z = L.element(c) * Fraction(1, 2)
            if z.is_integral():
                powers = [z**k for k in range(4)]
                L = Lattice.span([w * b for w in powers for b in L.basis])
                break
        else:
            raise InternalConsistencyError("no integral half-lattice point; cannot reach O_K")
    return L


def maximal_order_basis(K: CMFieldDescriptor | tuple[int, Tag]) -> tuple[CMElement, ...]:
    """A Z-basis of O_K, verified to be a ring of discriminant d_K."""
    p, tag = (K.p, K.tag) if isinstance(K, CMFieldDescriptor) else K
    delta = _delta(build_field(p), tag).value
    basis = _candidate_basis(p, tag, delta)
    L = Lattice(basis)
    target = field_discriminant(p, tag)
    if L.discriminant() != target:
        L = _refine_to_maximal(L, target)
        basis = list(L.basis)
    if not all(b.is_integral() for b in basis) or not L.is_order():
        raise InternalConsistencyError(f"basis of O_K fails the integrality check (p={p}, {tag.value})")
    return tuple(basis)


def herglotz(K: CMFieldDescriptor, h_F: int, h_imag: Callable[[int], int] = class_number_imag,
             swap: bool = False) -> int:
    """h(K) = Q_{K/F} h(F) h(E) h(E') / 2, for biquadratic K other than Q(sqrt 2, sqrt -1)."""
    if K.tag is Tag.ZETA10 or (K.p == 2 and K.tag is Tag.K1):
        raise ValueError(f"Herglotz's formula does not cover {K.name}")
    d_E, d_E2 = imaginary_subfield_discriminants(K.p, K.tag)
    if swap:
        d_E, d_E2 = d_E2, d_E
    num = K.Q_KF * h_F * h_imag(d_E) * h_imag(d_E2)
    if num % 2:
        raise InternalConsistencyError(f"Herglotz formula gives a non-integer for {K.name}")
    return num // 2


# h(Q(zeta_8)) = h(Q(zeta_10)) = h(Q(zeta_12)) = 1
_CYCLOTOMIC_H = {(2, Tag.K1): 1, (5, Tag.ZETA10): 1, (3, Tag.K1): 1}


def class_number_cm(K: CMFieldDescriptor, h_F: int,
                    h_imag: Callable[[int], int] = class_number_imag) -> int:
    key = (K.p, K.tag)
    if key in ((2, Tag.K1), (5, Tag.ZETA10)):
        return _CYCLOTOMIC_H[key]
    h = herglotz(K, h_F, h_imag)
    if key in _CYCLOTOMIC_H and h != _CYCLOTOMIC_H[key]:
        raise InternalConsistencyError(f"Herglotz disagrees with h({K.name}) = 1")
    return h


def _descriptor(F: RealQuadField, tag: Tag) -> CMFieldDescriptor:
    p = F.p
    delta = _delta(F, tag)
    dv = delta.value
    if not (dv.is_positive() is False and dv.conj().is_positive() is False and not dv.is_zero()):
        raise InternalConsistencyError(f"delta is not totally negative for p={p}, {tag.value}")
    zeta = _root_of_unity(p, tag, dv)
    mu = _mu_order(p, tag)
    if not (zeta**mu).is_one() or not (-(zeta ** (mu // 2))).is_one():
        raise InternalConsistencyError(f"root of unity of wrong order for p={p}, {tag.value}")
    Q = hasse_unit_index((p, tag))
    K = CMFieldDescriptor(
        p=p,
        tag=tag,
        delta=delta,
        mu_order=mu,
        Q_KF=Q,
        w_K=mu // 2 * Q,
        h_K=0,
        ok_basis=(),
        zeta=zeta,
    )
    K = replace(K, ok_basis=maximal_order_basis(K))
    return replace(K, h_K=class_number_cm(K, F.h_F))


def enumerate_cm_fields(F: RealQuadField) -> list[CMFieldDescriptor]:
    """The fields K/F with w_K > 1, in table order."""
    return list(_cm_fields(F.p))


@lru_cache(maxsize=None)
def _cm_fields(p: int) -> tuple[CMFieldDescriptor, ...]:
    F = build_field(p)
    return tuple(_descriptor(F, tag) for tag in cm_tags(p))


@lru_cache(maxsize=None)
def ok_lattice(K: CMFieldDescriptor) -> Lattice:
    return Lattice(K.ok_basis)
