"""Eichler's class number formula h(O) = Mass(O) + Ell(O) over F = Q(sqrt(p)).

O is an Eichler order of square-free level N in the totally definite
quaternion algebra over F ramified exactly at the finite primes in D.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .arith import InternalConsistencyError, kronecker
from .cmfield import CMFieldDescriptor, Tag, enumerate_cm_fields, ok_lattice
from .lattice import QuotientRing
from .orders import OVER_OF, OrderInvariant, enumerate_suborders_OF
from .realquad import (
    Kind,
    PrimeIdealF,
    QuadNumber,
    RealQuadField,
    factor_rational_prime,
    residue_character,
    unit_part_residue,
)


class InvalidEichlerInput(ValueError):
    pass


class NonIntegralClassNumber(InternalConsistencyError):
    pass


class ClosedFormMismatch(InternalConsistencyError):
    pass


def _ideal_key(P: PrimeIdealF) -> tuple[int, int]:
    return (P.ell, -1 if P.root is None else P.root)


@dataclass(frozen=True)
class EichlerInput:
    """(F, D, N); D and N are stored sorted by (ell, root)."""

    F: RealQuadField
    D: tuple[PrimeIdealF, ...] = ()
    N: tuple[PrimeIdealF, ...] = ()

    def __post_init__(self):
        D = tuple(sorted(self.D, key=_ideal_key))
        N = tuple(sorted(self.N, key=_ideal_key))
        object.__setattr__(self, "D", D)
        object.__setattr__(self, "N", N)
        for P in D + N:
            if P.p != self.F.p:
                raise InvalidEichlerInput(f"prime above {P.ell} belongs to Q(√{P.p}), not Q(√{self.F.p})")
        if len(set(D)) != len(D) or len(set(N)) != len(N):
            raise InvalidEichlerInput("D and N must be square-free")
        if set(D) & set(N):
            raise InvalidEichlerInput("D and N must be coprime")
        if len(D) % 2:
            raise InvalidEichlerInput("a totally definite algebra over F ramifies at an even number of finite primes")


@dataclass(frozen=True)
class Contribution:
    order: OrderInvariant
    E: int
    term: Fraction

    @property
    def label(self) -> str:
        return self.order.label

    @property
    def h_B(self) -> int:
        return self.order.h_B

    @property
    def w_B(self) -> int:
        return self.order.w_B


@dataclass(frozen=True)
class ClassNumberReport:
    input: EichlerInput
    mass: Fraction
    contributions: tuple[Contribution, ...] = field(repr=False)
    elliptic: Fraction
    h_O: int

    def to_json(self) -> dict:
        def q(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"

        return {
            "p": self.input.F.p,
            "D": [P.to_json() for P in self.input.D],
            "N": [P.to_json() for P in self.input.N],
            "mass": q(self.mass),
            "contributions": [
                {
                    "field": c.order.field.tag.value,
                    "order": c.label,
                    "h_B": c.h_B,
                    "w_B": c.w_B,
                    "E": c.E,
                    "term": q(c.term),
                }
                for c in self.contributions
            ],
            "elliptic": q(self.elliptic),
            "h_O": self.h_O,
        }


# Artin symbols


def _odd_artin(K: CMFieldDescriptor, P: PrimeIdealF) -> int:
    v, res = unit_part_residue(P, K.delta_value)
    if v % 2:
        return 0
    return residue_character(P, res)


@lru_cache(maxsize=None)
def residue_ring_mod2(K: CMFieldDescriptor) -> QuotientRing:
    """O_K / 2 O_K as a 16-element ring."""
    OK = ok_lattice(K)
    return QuotientRing(OK, OK.scaled(2))


def _lies_over(ring: QuotientRing, e, K: CMFieldDescriptor, P: PrimeIdealF) -> bool:
    if P.kind is not Kind.SPLIT:
        return True
    F_omega = K.element(QuadNumber.of(Fraction(1, 2), Fraction(1, 2), K.p))
    z = ring.image(F_omega - P.root)
    return ring.is_nilpotent(ring.mul(e, z))


@lru_cache(maxsize=None)
def _dyadic_artin(K: CMFieldDescriptor, P: PrimeIdealF) -> int:
    ring = residue_ring_mod2(K)
    over = [f for f in ring.local_factors() if _lies_over(ring, f.idempotent, K, P)]
    if not over:
        raise InternalConsistencyError(f"no factor of O_K/2O_K lies over the prime {P.label()} in {K.name}")
    e_rel = {f.length // P.ramification for f in over}
    if len(e_rel) != 1 or any(f.length % P.ramification for f in over):
        raise InternalConsistencyError(f"inconsistent dyadic factorization in {K.name}")
    if e_rel == {2}:
        return 0
    if len(over) == 2:
        return 1
    if len(over) == 1:
        return -1
    raise InternalConsistencyError(f"{len(over)} primes above {P.label()} in a quadratic extension")


def artin_symbol(K: CMFieldDescriptor, P: PrimeIdealF) -> int:
    """(K/P): +1 split, -1 inert, 0 ramified."""
    if P.p != K.p:
        raise ValueError("prime and field live over different base fields")
    if P.dyadic:
        return _dyadic_artin(K, P)
    return _odd_artin(K, P)


def eichler_symbol(B: OrderInvariant, P: PrimeIdealF) -> int:
    if B.over != OVER_OF:
        raise ValueError("Eichler symbols are only used for orders containing O_F")
    if P in B.conductor_support:
        return 1
    return artin_symbol(B.field, P)


def embedding_product(B: OrderInvariant | CMFieldDescriptor, inp: EichlerInput) -> int:
    """prod_{P|D} (1 - symbol) * prod_{P|N} (1 + symbol)."""
    sym = (lambda P: artin_symbol(B, P)) if isinstance(B, CMFieldDescriptor) else (lambda P: eichler_symbol(B, P))
    out = 1
    for P in inp.D:
        out *= 1 - sym(P)
        if not out:
            return 0
    for P in inp.N:
        out *= 1 + sym(P)
        if not out:
            return 0
    return out


def mass(inp: EichlerInput) -> Fraction:
    F = inp.F
    m = Fraction(1, 2) * F.zeta_m1 * F.h_F
    for P in inp.D:
        m *= P.norm - 1
    for P in inp.N:
        m *= P.norm + 1
    return m


def _contributions(inp: EichlerInput, inventory: list[OrderInvariant]) -> list[Contribution]:
    out = []
    for B in inventory:
        E = embedding_product(B, inp)
        out.append(Contribution(B, E, Fraction(B.h_B) * (1 - Fraction(1, B.w_B)) * E / 2))
    return out


def elliptic_part(inp: EichlerInput, inventory: list[OrderInvariant] | None = None) -> Fraction:
    if inventory is None:
        inventory = enumerate_suborders_OF(inp.F)
    return sum((c.term for c in _contributions(inp, inventory)), Fraction(0))


def conductor_factor(inp: EichlerInput) -> int:
    """C = 0 if D has a dyadic factor, else 2^(number of dyadic factors of N)."""
    if any(P.dyadic for P in inp.D):
        return 0
    return 2 ** sum(1 for P in inp.N if P.dyadic)


def _odd_part(inp: EichlerInput) -> EichlerInput:
    # the even-size rule does not apply to the restricted sets
    obj = object.__new__(EichlerInput)
    object.__setattr__(obj, "F", inp.F)
    object.__setattr__(obj, "D", tuple(P for P in inp.D if not P.dyadic))
    object.__setattr__(obj, "N", tuple(P for P in inp.N if not P.dyadic))
    return obj


def closed_form(inp: EichlerInput) -> Fraction | None:
    """h(O) from the per-congruence-class closed forms, for p > 5; None otherwise."""
    p = inp.F.p
    if p <= 5:
        return None
    fields = {K.tag: K for K in enumerate_cm_fields(inp.F)}
    M = mass(inp)
    K1, K3 = fields[Tag.K1], fields[Tag.K3]
    E = lambda K: embedding_product(K, inp)  # noqa: E731
    if p % 4 == 1:
        return M + Fraction(1, 4) * K1.h_K * E(K1) + Fraction(1, 3) * K3.h_K * E(K3)
    K2 = fields[Tag.K2]
    C = conductor_factor(inp)
    return (
        M
        + Fraction(5, 8) * (2 - kronecker(2, p)) * K1.h_K * C * embedding_product(K1, _odd_part(inp))
        + Fraction(3, 8) * K1.h_K * E(K1)
        + Fraction(1, 4) * K2.h_K * E(K2)
        + Fraction(1, 3) * K3.h_K * E(K3)
    )


def class_number_eichler(inp: EichlerInput, check_closed_form: bool = True) -> ClassNumberReport:
    contribs = _contributions(inp, enumerate_suborders_OF(inp.F))
    M = mass(inp)
    ell = sum((c.term for c in contribs), Fraction(0))
    total = M + ell
    if total.denominator != 1 or total <= 0:
        raise NonIntegralClassNumber(
            f"Mass + Ell = {total} is not a positive integer for p={inp.F.p}, "
            f"D={[P.label() for P in inp.D]}, N={[P.label() for P in inp.N]}"
        )
    if check_closed_form:
        cf = closed_form(inp)
        if cf is not None and cf != total:
            raise ClosedFormMismatch(f"closed form gives {cf}, generic assembly {total} (p={inp.F.p})")
    return ClassNumberReport(inp, M, tuple(contribs), ell, int(total))


def small_inputs(F: RealQuadField, ells=(2, 3, 5, 7, 11, 13), max_size: int = 2):
    """Eichler inputs with D, N built from primes above ``ells``.

    |D| in {0, 2}, |N| <= max_size, D and N disjoint.
    """
    primes = [P for ell in ells for P in factor_rational_prime(F, ell)]
    for D in [()] + list(combinations(primes, 2)):
        rest = [P for P in primes if P not in D]
        for k in range(max_size + 1):
            for N in combinations(rest, k):
                yield EichlerInput(F, D, N)
