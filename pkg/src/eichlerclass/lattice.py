"""Elements of K = F(sqrt(delta)), Z-lattices in K and finite quotient rings.

Every element of K is stored as x + y*sqrt(delta) with x, y in F.  Its
rational coordinates in the power basis {1, sqrt(p), sqrt(delta),
sqrt(p)*sqrt(delta)} identify K with Q^4; lattices are kept as Z-bases.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .arith import InternalConsistencyError, lcm
from .realquad import QuadNumber


@dataclass(frozen=True, slots=True)
class CMElement:
    x: QuadNumber
    y: QuadNumber
    delta: QuadNumber

    @classmethod
    def from_coords(cls, c: Sequence, delta: QuadNumber) -> CMElement:
        p = delta.p
        return cls(QuadNumber.of(c[0], c[1], p), QuadNumber.of(c[2], c[3], p), delta)

    @classmethod
    def scalar(cls, a, delta: QuadNumber) -> CMElement:
        if not isinstance(a, QuadNumber):
            a = QuadNumber.of(a, 0, delta.p)
        return cls(a, QuadNumber.of(0, 0, delta.p), delta)

    def _coerce(self, other) -> CMElement:
        if isinstance(other, CMElement):
            return other
        return CMElement.scalar(other, self.delta)

    def __add__(self, other) -> CMElement:
        o = self._coerce(other)
        return CMElement(self.x + o.x, self.y + o.y, self.delta)

    __radd__ = __add__

    def __sub__(self, other) -> CMElement:
        o = self._coerce(other)
        return CMElement(self.x - o.x, self.y - o.y, self.delta)

    def __rsub__(self, other) -> CMElement:
        return self._coerce(other) - self

    def __neg__(self) -> CMElement:
        return CMElement(-self.x, -self.y, self.delta)

    def __mul__(self, other) -> CMElement:
        o = self._coerce(other)
        return CMElement(
            self.x * o.x + self.delta * self.y * o.y,
            self.x * o.y + self.y * o.x,
            self.delta,
        )

    __rmul__ = __mul__

    def __pow__(self, k: int) -> CMElement:
        if k < 0:
            raise ValueError("negative powers are not supported")
        result, base = CMElement.scalar(1, self.delta), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> CMElement:
        """The nontrivial automorphism of K/F."""
        return CMElement(self.x, -self.y, self.delta)

    def rel_trace(self) -> QuadNumber:
        return self.x * 2

    def rel_norm(self) -> QuadNumber:
        return self.x * self.x - self.delta * self.y * self.y

    def abs_trace(self) -> Fraction:
        return 4 * self.x.r

    def is_integral(self) -> bool:
        return self.rel_trace().is_integral() and self.rel_norm().is_integral()

    def is_one(self) -> bool:
        return self.x.r == 1 and self.x.s == 0 and self.y.is_zero()

    def coords(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.x.r, self.x.s, self.y.r, self.y.s)


def hnf(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row Hermite normal form of a full-rank integer matrix (upper triangular)."""
    work = [list(r) for r in rows]
    n = len(work[0])
    out: list[list[int]] = []
    for col in range(n):
        while True:
            nz = [r for r in work if r[col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                q = r[col] // piv[col]
                for k in range(col, n):
                    r[k] -= q * piv[k]
        nz = [r for r in work if r[col] != 0]
        if not nz:
            raise ValueError("generators do not span a full-rank lattice")
        piv = nz[0]
        work = [r for r in work if r is not piv]
        if piv[col] < 0:
            piv = [-v for v in piv]
        out.append(piv)
    for i in range(n):
        for j in range(i):
            q = out[j][i] // out[i][i]
            if q:
                out[j] = [a - q * b for a, b in zip(out[j], out[i])]
    return out


def mat_inverse(m: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def det(m: Sequence[Sequence]) -> Fraction:
    a = [[Fraction(v) for v in row] for row in m]
    n, sign, result = len(a), 1, Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        result *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return sign * result


class Lattice:
    """A full-rank Z-lattice in K given by a Z-basis."""

    def __init__(self, basis: Sequence[CMElement]):
        if len(basis) != 4:
            raise ValueError("a lattice in a quartic field needs 4 basis elements")
        self.basis = tuple(basis)
        self.delta = basis[0].delta
        self._inverse = mat_inverse([b.coords() for b in self.basis])

    @classmethod
    def span(cls, gens: Sequence[CMElement]) -> Lattice:
        """The Z-span of finitely many elements (must have rank 4)."""
        delta = gens[0].delta
        vecs = [g.coords() for g in gens]
        den = 1
        for v in vecs:
            for c in v:
                den = lcm(den, c.denominator)
        rows = hnf([[int(c * den) for c in v] for v in vecs])
        return cls([CMElement.from_coords([Fraction(c, den) for c in row], delta) for row in rows])

    def coords(self, z: CMElement) -> list[Fraction]:
        c = z.coords()
        return [sum(c[i] * self._inverse[i][j] for i in range(4)) for j in range(4)]

    def int_coords(self, z: CMElement) -> tuple[int, ...]:
        c = self.coords(z)
        if any(v.denominator != 1 for v in c):
            raise ValueError("element is not in the lattice")
        return tuple(int(v) for v in c)

    def contains(self, z: CMElement) -> bool:
        return all(v.denominator == 1 for v in self.coords(z))

    def contains_lattice(self, other: Lattice) -> bool:
        return all(self.contains(b) for b in other.basis)

    def index_of(self, sub: Lattice) -> int:
        """[self : sub] for a sublattice."""
        d = det([self.int_coords(b) for b in sub.basis])
        return abs(int(d))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.contains_lattice(other) and other.contains_lattice(self)

    __hash__ = None

    def scaled(self, a) -> Lattice:
        return Lattice([b * a for b in self.basis])

    def discriminant(self) -> Fraction:
        return det([[(bi * bj).abs_trace() for bj in self.basis] for bi in self.basis])

    @cached_property
    def structure_constants(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        """T[i][j] = coordinates of b_i * b_j; requires the lattice to be a ring."""
        return tuple(
            tuple(self.int_coords(bi * bj) for bj in self.basis) for bi in self.basis
        )

    def is_order(self) -> bool:
        one = CMElement.scalar(1, self.delta)
        if not self.contains(one):
            return False
        return all(self.contains(bi * bj) for bi in self.basis for bj in self.basis)

    def element(self, k: Sequence[int]) -> CMElement:
        z = CMElement.scalar(0, self.delta)
        for c, b in zip(k, self.basis):
            if c:
                z = z + b * c
        return z


class QuotientRing:
    """The finite ring O/I for an order O and an ideal I of O contained in it.

    Elements are coordinate tuples reduced against the HNF of I, so the whole
    ring can be enumerated; everything is exhaustive and meant for |O/I| <= 100.
    """

    def __init__(self, order: Lattice, ideal: Lattice):
        self.order = order
        self._T = order.structure_constants
        self._H = hnf([order.int_coords(b) for b in ideal.basis])
        self.moduli = tuple(self._H[i][i] for i in range(4))
        self.elements = [
            self.reduce(v) for v in itertools.product(*(range(m) for m in self.moduli))
        ]
        self._index = {e: i for i, e in enumerate(self.elements)}
        self.zero = self.reduce((0, 0, 0, 0))
        self.one = self.reduce(order.int_coords(CMElement.scalar(1, order.delta)))

    @property
    def size(self) -> int:
        return len(self.elements)

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        v = list(v)
        for i in range(4):
            q = v[i] // self._H[i][i]
            if q:
                v = [a - q * b for a, b in zip(v, self._H[i])]
        return tuple(v)

    def image(self, z: CMElement) -> tuple[int, ...]:
        return self.reduce(self.order.int_coords(z))

    def add(self, a, b) -> tuple[int, ...]:
        return self.reduce([x + y for x, y in zip(a, b)])

    def mul(self, a, b) -> tuple[int, ...]:
        out = [0, 0, 0, 0]
        T = self._T
        for i in range(4):
            if not a[i]:
                continue
            for j in range(4):
                if not b[j]:
                    continue
                c = a[i] * b[j]
                t = T[i][j]
                for k in range(4):
                    out[k] += c * t[k]
        return self.reduce(out)

    @cached_property
    def _mul_table(self) -> list[list[int]]:
        idx = self._index
        return [[idx[self.mul(a, b)] for b in self.elements] for a in self.elements]

    def units(self) -> list[tuple[int, ...]]:
        one = self._index[self.one]
        table = self._mul_table
        return [e for i, e in enumerate(self.elements) if one in table[i]]

    def idempotents(self) -> list[tuple[int, ...]]:
        return [e for e in self.elements if self.mul(e, e) == e]

    def is_nilpotent(self, a) -> bool:
        x = a
        for _ in range(self.size.bit_length() + 1):
            if x == self.zero:
                return True
            x = self.mul(x, a)
        return x == self.zero

    def nilradical(self) -> list[tuple[int, ...]]:
        return [e for e in self.elements if self.is_nilpotent(e)]

    def additive_span(self, gens: Sequence[tuple[int, ...]]) -> set[tuple[int, ...]]:
        span = {self.zero}
        frontier = [self.zero]
        gens = [self.reduce(g) for g in gens]
        while frontier:
            nxt = []
            for s in frontier:
                for g in gens:
                    t = self.add(s, g)
                    if t not in span:
                        span.add(t)
                        nxt.append(t)
            frontier = nxt
        return span

    def image_of(self, sub: Lattice) -> set[tuple[int, ...]]:
        """The image of a lattice between I and O (e.g. B/I for an order B)."""
        return self.additive_span([self.order.int_coords(b) for b in sub.basis])

    def unit_count_in(self, subset: set[tuple[int, ...]]) -> int:
        """Units of the subring ``subset``: invertible elements of O/I lying in it.

        In a finite ring the inverse of an element is one of its powers, so a
        unit of O/I inside a subring is already a unit of that subring.
        """
        units = set(self.units())
        return sum(1 for e in subset if e in units)

    def local_factors(self) -> list[LocalFactor]:
        """Decomposition of O/I along its primitive idempotents."""
        ids = [e for e in self.idempotents() if e != self.zero]
        primitive = [
            e for e in ids
            if all(f == e or self.mul(f, e) != f for f in ids)
        ]
        factors = []
        for e in primitive:
            part = {self.mul(e, x) for x in self.elements}
            nil = sum(1 for z in part if self.is_nilpotent(z))
            factors.append(LocalFactor(e, len(part), len(part) // nil))
        if _prod(f.size for f in factors) != self.size:
            raise InternalConsistencyError("local factors do not multiply up to the ring")
        return factors


@dataclass(frozen=True)
class LocalFactor:
    idempotent: tuple[int, ...]
    size: int
    residue_size: int

    @property
    def length(self) -> int:
        """Composition length: size = residue_size ** length."""
        e, q = 1, self.residue_size
        while q < self.size:
            q *= self.residue_size
            e += 1
        if q != self.size:
            raise InternalConsistencyError("local factor size is not a power of its residue field")
        return e


def _prod(it) -> int:
    out = 1
    for v in it:
        out *= v
    return out
