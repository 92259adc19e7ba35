import pytest

from eichlerclass.arith import is_fundamental_discriminant
from eichlerclass.imagquad import ReducedForm, class_number_imag, reduced_forms


def test_examples():
    assert class_number_imag(-4) == 1
    assert reduced_forms(-20) == [ReducedForm(1, 0, 5), ReducedForm(2, 2, 3)]
    assert class_number_imag(-15) == 2
    assert {(f.a, f.b, f.c) for f in reduced_forms(-15)} == {(1, 1, 4), (2, 1, 2)}


def test_class_number_one_list():
    ones = [d for d in range(-200, 0) if is_fundamental_discriminant(d) and class_number_imag(d) == 1]
    assert ones == [-163, -67, -43, -19, -11, -8, -7, -4, -3]


@pytest.mark.parametrize("d", [-3, -4, -39, -52, -84, -163, -191, -420])
def test_wider_scan_finds_nothing_new(d):
    from math import isqrt

    base = reduced_forms(d)
    assert reduced_forms(d, isqrt(-d // 3) + 1) == base
    for f in base:
        assert f.discriminant == d
        assert abs(f.b) <= f.a <= f.c


def test_rejects_bad_discriminants():
    for d in (5, -12, -16, -1):
        with pytest.raises(ValueError):
            class_number_imag(d)
