"""Quadratic orders B with w(B) > 1 inside the fields of ``cmfield``.

Two inventories are kept apart:

* O_F-orders B (O_F contained in B), with w(B) = [B^x : O_F^x].  These are
  the orders that enter the elliptic part of Eichler's class number formula.
* proper Z[sqrt(p)]-orders (B meets F in A = Z[sqrt(p)]) for p = 1 mod 4,
  with w(B) = [B^x : A^x].

Class numbers are stored fully evaluated; ``formula`` records which closed
form produced them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .arith import kronecker
from .cmfield import CMFieldDescriptor, Tag, enumerate_cm_fields, ok_lattice
from .lattice import CMElement, Lattice
from .realquad import PrimeIdealF, QuadNumber, RealQuadField, build_field, factor_rational_prime

OVER_OF = "OF"
OVER_A = "A"

LABELS = ("MaximalOrder", "B12", "B14", "B13", "B2sqrt2", "B34", "B32", "B32conj")


@dataclass(frozen=True, eq=False)
class OrderInvariant:
    label: str
    field: CMFieldDescriptor
    over: str
    index_in_OK: int
    conductor_support: tuple[PrimeIdealF, ...]
    w_B: int
    h_B: int
    basis: tuple[CMElement, ...] = field(repr=False)
    formula: str = ""
    provisional: bool = False

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrderInvariant):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    @property
    def key(self) -> tuple:
        return (self.field.p, self.field.tag, self.label, self.over)

    @property
    def is_maximal(self) -> bool:
        return self.label == "MaximalOrder"

    def lattice(self) -> Lattice:
        return Lattice(self.basis)


def _exact(num: int, den: int, what: str) -> int:
    q = Fraction(num, den)
    if q.denominator != 1:
        raise ArithmeticError(f"{what} = {q} is not an integer")
    return int(q)


def _span_basis(gens: list[CMElement]) -> tuple[CMElement, ...]:
    return Lattice.span(gens).basis


def _over_A(gens: list[CMElement]) -> tuple[CMElement, ...]:
    """Z-basis of the A-module generated by ``gens``."""
    sq = CMElement.scalar(QuadNumber.of(0, 1, gens[0].delta.p), gens[0].delta)
    return _span_basis(gens + [g * sq for g in gens])


def _checked(K: CMFieldDescriptor, basis: tuple[CMElement, ...], index: int, label: str):
    B = Lattice(basis)
    OK = ok_lattice(K)
    if not B.is_order() or not OK.contains_lattice(B) or OK.index_of(B) != index:
        raise ArithmeticError(f"{label} in {K.name} is not an order of index {index}")
    return basis


def _i(K: CMFieldDescriptor) -> CMElement:
    return K.element(0, 1)


def _sqrt_p(K: CMFieldDescriptor) -> CMElement:
    return K.element(QuadNumber.of(0, 1, K.p))


def _zeta6(K: CMFieldDescriptor) -> CMElement:
    """A primitive sixth root of unity in K3, or in K1 = Q(zeta_12) for p = 3."""
    if K.tag is Tag.K3:
        return K.element(Fraction(1, 2), Fraction(1, 2))
    if K.p == 3 and K.tag is Tag.K1:
        return K.zeta**2
    raise ValueError(f"{K.name} has no sixth root of unity")


def b14_basis(K: CMFieldDescriptor) -> tuple[CMElement, ...]:
    one, s, i = K.element(1), _sqrt_p(K), _i(K)
    return (one, s, i, s * i)


def b12_basis(K: CMFieldDescriptor) -> tuple[CMElement, ...]:
    one, s, i = K.element(1), _sqrt_p(K), _i(K)
    y = (one + i) * (one + s) * Fraction(1, 2)
    return (one, s, i, y)


def b13_basis(K: CMFieldDescriptor) -> tuple[CMElement, ...]:
    one, s, z = K.element(1), _sqrt_p(K), _zeta6(K)
    return (one, s, z, s * z)


def b2sqrt2_basis(K: CMFieldDescriptor) -> tuple[CMElement, ...]:
    one, s, i = K.element(1), _sqrt_p(K), _i(K)
    return (one, i, s, s * i)


def b34_basis(K: CMFieldDescriptor) -> tuple[CMElement, ...]:
    return b13_basis(K)


def b32_basis(K: CMFieldDescriptor, conjugate: bool = False) -> tuple[CMElement, ...]:
    """A[eps*zeta6] (or A[eps/zeta6]); generated over A by 1, u, u^2."""
    F = build_field(K.p)
    z = _zeta6(K)
    if conjugate:
        z = z.conj()
    u = z * F.eps.value
    return _over_A([K.element(1), u, u * u])


def _dyadic(F: RealQuadField) -> tuple[PrimeIdealF, ...]:
    return tuple(factor_rational_prime(F, 2))


def _maximal(K: CMFieldDescriptor) -> OrderInvariant:
    return OrderInvariant(
        label="MaximalOrder",
        field=K,
        over=OVER_OF,
        index_in_OK=1,
        conductor_support=(),
        w_B=K.w_K,
        h_B=K.h_K,
        basis=K.ok_basis,
        formula="h(K)",
    )


def enumerate_suborders_OF(F: RealQuadField,
                           cmfields: list[CMFieldDescriptor] | None = None) -> list[OrderInvariant]:
    """Every O_F-order B with w(B) > 1, grouped by field, maximal order first."""
    if cmfields is None:
        cmfields = enumerate_cm_fields(F)
    return list(_of_orders(F.p, tuple(cmfields)))


@lru_cache(maxsize=None)
def _of_orders(p: int, cmfields: tuple[CMFieldDescriptor, ...]) -> tuple[OrderInvariant, ...]:
    F = build_field(p)
    out: list[OrderInvariant] = []
    for K in cmfields:
        out.append(_maximal(K))
        if K.tag is not Tag.K1:
            continue
        if p == 2:
            out.append(OrderInvariant(
                "B2sqrt2", K, OVER_OF, 2, _dyadic(F), 2, 1,
                _checked(K, b2sqrt2_basis(K), 2, "Z[sqrt2, i]"), "1",
            ))
        elif p % 4 == 3:
            if p == 3:
                h, formula = K.h_K, "h(K1)"
            else:
                h, formula = (2 - kronecker(2, p)) * K.h_K, "(2-(2/p))h(K1)"
            out.append(OrderInvariant(
                "B12", K, OVER_OF, 2, _dyadic(F), 4, h,
                _checked(K, b12_basis(K), 2, "B12"), formula,
            ))
            out.append(OrderInvariant(
                "B14", K, OVER_OF, 4, _dyadic(F), 2, h,
                _checked(K, b14_basis(K), 4, "B14"), formula,
            ))
            if p == 3:
                out.append(OrderInvariant(
                    "B13", K, OVER_OF, 3, tuple(factor_rational_prime(F, 3)), 3, K.h_K,
                    _checked(K, b13_basis(K), 3, "B13"), "h(K1)",
                ))
    return tuple(out)


def enumerate_proper_A_orders(F: RealQuadField,
                              cmfields: list[CMFieldDescriptor] | None = None) -> list[OrderInvariant]:
    """Proper Z[sqrt(p)]-orders B with w(B) > 1 (p = 1 mod 4 only)."""
    if F.p % 4 != 1:
        raise ValueError(f"proper A-orders are only classified for p = 1 mod 4, got p={F.p}")
    if cmfields is None:
        cmfields = enumerate_cm_fields(F)
    return list(_a_orders(F.p, tuple(cmfields)))


@lru_cache(maxsize=None)
def _a_orders(p: int, cmfields: tuple[CMFieldDescriptor, ...]) -> tuple[OrderInvariant, ...]:
    F = build_field(p)
    vp = F.varpi
    dyadic = _dyadic(F)
    # with two dyadic primes (p = 1 mod 8) the split of the conductor between them is not pinned down
    provisional = len(dyadic) > 1
    out: list[OrderInvariant] = []
    for K in cmfields:
        if K.tag is Tag.K1:
            ff = 2 - kronecker(2, p)
            out.append(OrderInvariant(
                "B12", K, OVER_A, 2, dyadic, 2, _exact(ff * K.h_K, vp, "h(B12)"),
                _checked(K, b12_basis(K), 2, "B12"), "(2-(2/p))h(K1)/varpi", provisional,
            ))
            out.append(OrderInvariant(
                "B14", K, OVER_A, 4, dyadic, 2, _exact(2 * ff * K.h_K, vp, "h(B14)"),
                _checked(K, b14_basis(K), 4, "B14"), "2(2-(2/p))h(K1)/varpi", provisional,
            ))
        elif K.tag is Tag.K3:
            out.append(OrderInvariant(
                "B34", K, OVER_A, 4, dyadic, 3, _exact(3 * K.h_K, vp, "h(B34)"),
                _checked(K, b34_basis(K), 4, "B34"), "3h(K3)/varpi", provisional,
            ))
            if vp == 3:
                for label, conj in (("B32", False), ("B32conj", True)):
                    out.append(OrderInvariant(
                        label, K, OVER_A, 2, dyadic, 3, K.h_K,
                        _checked(K, b32_basis(K, conj), 2, label), "h(K3)",
                    ))
    return tuple(out)
