"""Per-prime bundle of everything the Eichler computation needs, built once."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cmfield import CMFieldDescriptor, enumerate_cm_fields
from .orders import OrderInvariant, enumerate_proper_A_orders, enumerate_suborders_OF
from .realquad import PrimeIdealF, RealQuadField, build_field, factor_rational_prime


@dataclass(frozen=True)
class FieldContext:
    F: RealQuadField
    cm_fields: tuple[CMFieldDescriptor, ...]
    of_orders: tuple[OrderInvariant, ...]
    a_orders: tuple[OrderInvariant, ...] | None

    def primes_above(self, ell: int) -> list[PrimeIdealF]:
        return _primes_above(self.F.p, ell)


@lru_cache(maxsize=None)
def _primes_above(p: int, ell: int) -> list[PrimeIdealF]:
    return factor_rational_prime(build_field(p), ell)


@lru_cache(maxsize=None)
def field_context(p: int) -> FieldContext:
    F = build_field(p)
    cms = tuple(enumerate_cm_fields(F))
    return FieldContext(
        F=F,
        cm_fields=cms,
        of_orders=tuple(enumerate_suborders_OF(F, list(cms))),
        a_orders=tuple(enumerate_proper_A_orders(F, list(cms))) if p % 4 == 1 else None,
    )
