from fractions import Fraction

import pytest

from eichlerclass.cmfield import Tag, enumerate_cm_fields
from eichlerclass.context import field_context
from eichlerclass.oracle import (
    SearchBoundExceeded,
    analytic_class_number_real,
    artin_symbol_via_factorization,
    brute_fundamental_unit,
    factor_two_directly,
    order_h_via_unit_indices,
    residue_ring_mod2,
    verify_prime,
    zeta_minus_one_bernoulli,
)
from eichlerclass.realquad import QuadNumber, build_field, factor_rational_prime

from conftest import primes_below


def K_of(p, tag):
    return {K.tag: K for K in enumerate_cm_fields(build_field(p))}[tag]


def test_brute_unit_examples():
    assert brute_fundamental_unit(2).value == QuadNumber.of(1, 1, 2)
    assert brute_fundamental_unit(5).value == QuadNumber.of(Fraction(1, 2), Fraction(1, 2), 5)
    assert brute_fundamental_unit(19).value == QuadNumber.of(170, 39, 19)


def test_brute_unit_bound():
    with pytest.raises(SearchBoundExceeded):
        brute_fundamental_unit(19, bound=38)
    assert brute_fundamental_unit(19, bound=39).b == 39


def test_analytic_class_number():
    assert analytic_class_number_real(5) == 1
    assert analytic_class_number_real(79) == 3
    assert analytic_class_number_real(229) == 3


def test_bernoulli_zeta():
    assert zeta_minus_one_bernoulli(5) == Fraction(1, 30)
    assert zeta_minus_one_bernoulli(2) == Fraction(1, 12)


def test_residue_ring_examples():
    ring = residue_ring_mod2(K_of(7, Tag.K1))
    assert len(ring.units()) == 4
    ring = residue_ring_mod2(K_of(13, Tag.K3))
    assert sorted(f.size for f in ring.local_factors()) == [4, 4]
    assert ring.nilradical() == [ring.zero]
    assert len(residue_ring_mod2(K_of(3, Tag.K1)).units()) == 12


def test_b14_image_has_two_units():
    B = next(B for B in field_context(7).of_orders if B.label == "B14")
    K = B.field
    ring = residue_ring_mod2(K)
    img = ring.image_of(B.lattice())
    assert len(img) == 4 and ring.unit_count_in(img) == 2
    # F2[t]/(t+1)^2: one nonzero nilpotent
    assert sum(1 for x in img if ring.is_nilpotent(x)) == 2


def test_order_h_examples():
    b14 = next(B for B in field_context(7).of_orders if B.label == "B14")
    assert order_h_via_unit_indices(b14) == b14.field.h_K
    b34 = next(B for B in field_context(13).a_orders if B.label == "B34")
    assert order_h_via_unit_indices(b34) == 3 * b34.field.h_K // build_field(13).varpi
    b13 = next(B for B in field_context(3).of_orders if B.label == "B13")
    assert order_h_via_unit_indices(b13) == 1


def test_factor_two_examples():
    p13k1 = factor_two_directly(K_of(13, Tag.K1))
    assert [(d.ramification, d.residue_degree) for d in p13k1] == [(2, 2)]
    p13k3 = factor_two_directly(K_of(13, Tag.K3))
    assert sorted((d.ramification, d.residue_degree) for d in p13k3) == [(1, 2), (1, 2)]
    p17k3 = factor_two_directly(K_of(17, Tag.K3))
    assert sorted((d.below, d.residue_degree) for d in p17k3) == [((0,), 2), ((1,), 2)]
    for P in factor_rational_prime(build_field(17), 2):
        assert artin_symbol_via_factorization(K_of(17, Tag.K3), P) == -1


def test_verify_prime_clean():
    for p in (2, 3, 5, 7, 13, 79):
        assert verify_prime(p) == []
