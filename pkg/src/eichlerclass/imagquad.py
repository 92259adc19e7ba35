"""Class numbers of imaginary quadratic fields by counting reduced forms."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

from .arith import is_fundamental_discriminant


@dataclass(frozen=True, slots=True)
class ReducedForm:
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c


def reduced_forms(d: int, a_max: int | None = None) -> list[ReducedForm]:
    """Reduced positive definite forms of discriminant d < 0.

    Reduced: |b| <= a <= c, with b >= 0 whenever |b| = a or a = c.  Every
    reduced form has a <= sqrt(|d|/3); ``a_max`` overrides that bound so the
    scan can be repeated with a wider window.
    """
    if d >= 0 or d % 4 not in (0, 1):
        raise ValueError(f"{d} is not a negative discriminant")
    if a_max is None:
        a_max = isqrt(-d // 3)
    forms = []
    for a in range(1, a_max + 1):
        for b in range(-a + 1, a + 1):
            if (b - d) % 2:
                continue
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            forms.append(ReducedForm(a, b, c))
    return forms


@lru_cache(maxsize=None)
def class_number_imag(d: int) -> int:
    """h(d) for a negative fundamental discriminant d."""
    if d >= 0 or not is_fundamental_discriminant(d):
        raise ValueError(f"{d} is not a negative fundamental discriminant")
    return len(reduced_forms(d))
