from fractions import Fraction

import pytest

from eichlerclass.arith import InternalConsistencyError, kronecker
from eichlerclass.cmfield import (
    Tag,
    enumerate_cm_fields,
    field_discriminant,
    hasse_unit_index,
    herglotz,
    class_number_cm,
    maximal_order_basis,
    ok_lattice,
)
from eichlerclass.imagquad import class_number_imag
from eichlerclass.lattice import Lattice
from eichlerclass.quaternion import residue_ring_mod2
from eichlerclass.realquad import QuadNumber, build_field

from conftest import primes_below


def fields(p):
    return {K.tag: K for K in enumerate_cm_fields(build_field(p))}


def rows(p):
    return [(K.tag, K.w_K) for K in enumerate_cm_fields(build_field(p))]


def test_table_rows_examples():
    assert rows(3) == [(Tag.K1, 12), (Tag.K2, 2)]
    assert rows(13) == [(Tag.K1, 2), (Tag.K3, 3)]
    assert rows(7) == [(Tag.K1, 4), (Tag.K2, 2), (Tag.K3, 3)]
    assert rows(2) == [(Tag.K1, 4), (Tag.K3, 3)]
    assert rows(5) == [(Tag.K1, 2), (Tag.K3, 3), (Tag.ZETA10, 5)]


def test_hasse_unit_index_examples():
    assert hasse_unit_index(fields(7)[Tag.K1]) == 2
    assert hasse_unit_index(fields(13)[Tag.K1]) == 1
    assert hasse_unit_index(fields(7)[Tag.K3]) == 1
    assert hasse_unit_index(fields(5)[Tag.ZETA10]) == 1


def test_hasse_index_gcd_rule():
    from math import gcd

    d_E = {Tag.K1: -4, Tag.K2: -8, Tag.K3: -3}
    for p in primes_below(300)[1:]:
        F = build_field(p)
        for K in enumerate_cm_fields(F):
            if K.tag in d_E:
                assert (K.Q_KF == 2) == (gcd(F.d_F, d_E[K.tag]) > 1)


@pytest.mark.parametrize("p", primes_below(200))
def test_descriptor_invariants(p):
    for K in enumerate_cm_fields(build_field(p)):
        assert K.w_K * 2 == K.mu_order * K.Q_KF
        d = K.delta_value
        assert not d.is_positive() and not d.conj().is_positive()
        assert (K.zeta**K.mu_order).is_one()
        assert not (K.zeta ** (K.mu_order // 2)).is_one()
        OK = ok_lattice(K)
        assert OK.is_order()
        assert all(b.is_integral() for b in K.ok_basis)
        assert OK.discriminant() == field_discriminant(p, K.tag)
        assert OK.contains(K.zeta)


def test_zeta10_delta_is_exact():
    K = fields(5)[Tag.ZETA10]
    z5 = K.ok_basis[1]
    assert (z5**5).is_one()
    w = z5 - z5**4  # zeta_5 - zeta_5^{-1}
    assert w * w == K.element(K.delta_value)
    assert K.delta_value == QuadNumber.of(Fraction(-5, 2), Fraction(-1, 2), 5)


def test_small_class_numbers():
    assert fields(2)[Tag.K3].h_K == 1
    assert fields(3)[Tag.K2].h_K == 2
    assert fields(5)[Tag.K1].h_K == 1
    assert fields(5)[Tag.K3].h_K == 1


def test_p13_k1_through_herglotz():
    assert class_number_imag(-52) == 2
    assert fields(13)[Tag.K1].h_K == 1


def test_cyclotomic_class_numbers_hard_coded():
    assert fields(2)[Tag.K1].h_K == 1
    assert fields(5)[Tag.ZETA10].h_K == 1
    # Q(zeta_12) goes through the formula and must land on 1
    assert herglotz(fields(3)[Tag.K1], 1) == 1
    with pytest.raises(ValueError):
        herglotz(fields(2)[Tag.K1], 1)


def test_herglotz_non_integral_is_trapped():
    K = fields(13)[Tag.K3]
    with pytest.raises(InternalConsistencyError):
        herglotz(K, 1, h_imag=lambda d: 1)


@pytest.mark.parametrize("p", primes_below(100))
def test_herglotz_symmetric_in_subfields(p):
    F = build_field(p)
    for K in enumerate_cm_fields(F):
        if K.tag is Tag.ZETA10 or (p == 2 and K.tag is Tag.K1):
            continue
        assert herglotz(K, F.h_F) == herglotz(K, F.h_F, swap=True)
        assert class_number_cm(K, F.h_F) == K.h_K


def test_herglotz_reduces_to_single_field_formula():
    """h(K_j) = h(F) h(Q(sqrt(-jp))) / 2 for p = 1 mod 4 (or that times Q for p = 3 mod 4, j = 1, 2)."""
    for p in primes_below(200):
        if p < 5:
            continue
        F = build_field(p)
        for K in enumerate_cm_fields(F):
            if K.tag is Tag.ZETA10:
                continue
            from eichlerclass.arith import quadratic_discriminant, squarefree_part

            d = quadratic_discriminant(squarefree_part(-K.tag.j * p))
            h_small = class_number_imag(quadratic_discriminant(-K.tag.j))
            assert h_small == 1
            assert 2 * K.h_K == K.Q_KF * F.h_F * class_number_imag(d)


def test_basis_examples():
    K = fields(13)[Tag.K1]
    h = Fraction(1, 2)
    expected = [
        K.element(1),
        K.element(QuadNumber.of(h, h, 13)),
        K.element(0, 1),
        K.element(0, QuadNumber.of(h, h, 13)),  # (i + sqrt(-13))/2
    ]
    assert list(maximal_order_basis(K)) == expected

    K = fields(7)[Tag.K2]
    s = QuadNumber.of(0, 1, 7)
    assert K.delta_value == -build_field(7).eps.value
    assert list(maximal_order_basis(K)) == [K.element(1), K.element(s), K.element(0, 1), K.element(0, s)]
    assert Lattice(maximal_order_basis(K)).discriminant() == 2**8 * 7**2

    K = fields(13)[Tag.K3]
    omega = K.element(QuadNumber.of(h, h, 13))
    zeta6 = K.element(h, h)
    assert list(maximal_order_basis(K)) == [K.element(1), omega, zeta6, omega * zeta6]


def test_k3_basis_for_three_mod_four():
    for p in (7, 11, 19, 23):
        K = fields(p)[Tag.K3]
        assert Lattice(K.ok_basis).discriminant() == 144 * p * p


@pytest.mark.parametrize("p", primes_below(200)[1:])
def test_unit_count_mod_two_in_k1(p):
    ring = residue_ring_mod2(fields(p)[Tag.K1])
    assert ring.size == 16
    n = len(ring.units())
    assert n == 4 * (2 - kronecker(2, p))
    assert n == (4 if kronecker(2, p) == 1 else 12)


def test_residue_ring_factors():
    ring = residue_ring_mod2(fields(13)[Tag.K3])
    factors = ring.local_factors()
    assert sorted((f.size, f.residue_size) for f in factors) == [(4, 4), (4, 4)]
    assert len(residue_ring_mod2(fields(7)[Tag.K1]).units()) == 4
    assert len(residue_ring_mod2(fields(3)[Tag.K1]).units()) == 12
