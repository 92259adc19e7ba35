import pytest

from eichlerclass.arith import kronecker
from eichlerclass.cmfield import Tag, enumerate_cm_fields
from eichlerclass.context import field_context
from eichlerclass.oracle import (
    b32_residue_images,
    conductor_lattice_check,
    order_h_via_unit_indices,
    two_OK_in_B32,
    unit_index_brute,
)
from eichlerclass.orders import OVER_A, OVER_OF, enumerate_proper_A_orders, enumerate_suborders_OF
from eichlerclass.realquad import Kind, build_field

from conftest import primes_below


def summary(orders):
    return [(B.field.tag, B.label, B.w_B, B.h_B) for B in orders]


def of_orders(p):
    return enumerate_suborders_OF(build_field(p))


def a_orders(p):
    return enumerate_proper_A_orders(build_field(p))


def test_p13_only_maximal_orders():
    assert summary(of_orders(13)) == [(Tag.K1, "MaximalOrder", 2, 1), (Tag.K3, "MaximalOrder", 3, 2)]


def test_p7_inventory():
    h1 = {K.tag: K.h_K for K in enumerate_cm_fields(build_field(7))}[Tag.K1]
    ff = 2 - kronecker(2, 7)
    assert ff == 1
    assert summary(of_orders(7)) == [
        (Tag.K1, "MaximalOrder", 4, h1),
        (Tag.K1, "B12", 4, ff * h1),
        (Tag.K1, "B14", 2, ff * h1),
        (Tag.K2, "MaximalOrder", 2, 4),
        (Tag.K3, "MaximalOrder", 3, 2),
    ]


def test_p3_inventory():
    assert summary(of_orders(3)) == [
        (Tag.K1, "MaximalOrder", 12, 1),
        (Tag.K1, "B12", 4, 1),
        (Tag.K1, "B14", 2, 1),
        (Tag.K1, "B13", 3, 1),
        (Tag.K2, "MaximalOrder", 2, 2),
    ]
    b13 = [B for B in of_orders(3) if B.label == "B13"][0]
    assert b13.index_in_OK == 3
    assert [P.ell for P in b13.conductor_support] == [3]


def test_p2_inventory():
    assert summary(of_orders(2)) == [
        (Tag.K1, "MaximalOrder", 4, 1),
        (Tag.K1, "B2sqrt2", 2, 1),
        (Tag.K3, "MaximalOrder", 3, 1),
    ]


@pytest.mark.parametrize("p", [p for p in primes_below(200) if p % 4 == 3])
def test_three_mod_four_rows(p):
    orders = of_orders(p)
    if p == 3:
        return
    assert [B.w_B for B in orders] == [4, 4, 2, 2, 3]
    assert [B.index_in_OK for B in orders] == [1, 2, 4, 1, 1]
    for B in orders[1:3]:
        (P,) = B.conductor_support
        assert P.dyadic and P.kind is Kind.RAMIFIED


def test_prime_w_gives_only_maximal_orders():
    for p in primes_below(200):
        for B in of_orders(p):
            if B.field.w_K in (2, 3, 5):
                assert B.is_maximal


def test_a_orders_p13():
    F = build_field(13)
    h = {K.tag: K.h_K for K in enumerate_cm_fields(F)}
    assert F.varpi == 3 and kronecker(2, 13) == -1
    assert summary(a_orders(13)) == [
        (Tag.K1, "B12", 2, h[Tag.K1]),
        (Tag.K1, "B14", 2, 2 * h[Tag.K1]),
        (Tag.K3, "B34", 3, h[Tag.K3]),
        (Tag.K3, "B32", 3, h[Tag.K3]),
        (Tag.K3, "B32conj", 3, h[Tag.K3]),
    ]


def test_a_orders_p17():
    F = build_field(17)
    h = {K.tag: K.h_K for K in enumerate_cm_fields(F)}
    assert summary(a_orders(17)) == [
        (Tag.K1, "B12", 2, h[Tag.K1]),
        (Tag.K1, "B14", 2, 2 * h[Tag.K1]),
        (Tag.K3, "B34", 3, 3 * h[Tag.K3]),
    ]
    assert all(B.provisional for B in a_orders(17))


def test_a_orders_p5_include_b32():
    labels = {B.label: B for B in a_orders(5)}
    assert labels["B32"].w_B == labels["B32conj"].w_B == 3
    assert labels["B32"].index_in_OK == 2


def test_a_orders_reject_three_mod_four():
    with pytest.raises(ValueError):
        a_orders(7)


@pytest.mark.parametrize("p", primes_below(200))
def test_inventory_invariants(p):
    ctx = field_context(p)
    for B in ctx.of_orders + (ctx.a_orders or ()):
        assert B.field.w_K * (build_field(p).varpi if B.over == OVER_A else 1) % B.w_B == 0
        assert B.h_B >= 1
        if B.is_maximal:
            assert B.h_B == B.field.h_K and B.conductor_support == ()
        assert B.over == OVER_OF or p % 4 == 1


@pytest.mark.parametrize("p", primes_below(200))
def test_closed_forms_match_unit_index_oracle(p):
    ctx = field_context(p)
    for B in ctx.of_orders + (ctx.a_orders or ()):
        assert unit_index_brute(B) == B.w_B, B.label
        assert order_h_via_unit_indices(B) == B.h_B, B.label
        assert conductor_lattice_check(B), B.label


def test_b32_residue_images_and_conductor():
    for p in [p for p in primes_below(200) if p % 4 == 1]:
        F = build_field(p)
        if F.varpi != 3:
            continue
        K = {K.tag: K for K in enumerate_cm_fields(F)}[Tag.K3]
        assert b32_residue_images(K) == (8, 4, 2)
        assert b32_residue_images(K, conjugate=True) == (8, 2, 4)
        assert two_OK_in_B32(K) and two_OK_in_B32(K, conjugate=True)
        for B in a_orders(p):
            if B.label.startswith("B32"):
                (P,) = B.conductor_support
                assert P.dyadic and P.kind is Kind.INERT
