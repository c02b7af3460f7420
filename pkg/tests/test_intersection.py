from fractions import Fraction as Q

import pytest

from gdp.intersection import (
    QDivisor,
    WeilClass,
    exceptional_part,
    k_product,
    local_c1,
    mumford_product,
    product_resolution,
    pullback,
)

C = WeilClass({0: 1})


def test_pullback_of_c_on_sa4(sa4):
    pb = pullback(sa4, C)
    assert [pb[i] for i in range(5)] == [1, Q(2, 5), Q(4, 5), Q(6, 5), Q(3, 5)]
    assert pb.format(sa4) == "1/1 C + 2/5 E1 + 4/5 E2 + 6/5 E3 + 3/5 E4"


def test_pullback_toy_a1(a1_toy):
    assert pullback(a1_toy, C) == QDivisor({0: 1, 1: Q(1, 2)})
    assert exceptional_part(a1_toy, pullback(a1_toy, C)) == QDivisor({1: Q(1, 2)})


def test_zero_divisor(sa4):
    zero = WeilClass({})
    assert pullback(sa4, zero).is_zero()
    assert exceptional_part(sa4, QDivisor({})).is_zero()
    assert local_c1(sa4, sa4.singular_points[0], zero).is_zero()
    assert mumford_product(sa4, zero, C) == 0
    assert k_product(sa4, zero) == 0
    assert product_resolution(sa4, pullback(sa4, C), QDivisor({})) == 0


def test_exceptional_part_sa4(sa4):
    part = exceptional_part(sa4, pullback(sa4, C))
    assert part == QDivisor({1: Q(2, 5), 2: Q(4, 5), 3: Q(6, 5), 4: Q(3, 5)})


def test_local_c1_sa4(sa4):
    (x,) = sa4.singular_points
    c1 = local_c1(sa4, x, C)
    assert c1 == QDivisor({1: Q(-2, 5), 2: Q(-4, 5), 3: Q(-6, 5), 4: Q(-3, 5)})
    assert product_resolution(sa4, c1, c1) == Q(-6, 5)


def test_products_sa4(sa4):
    c = QDivisor({0: 1})
    assert product_resolution(sa4, c, c) == -1
    pb = pullback(sa4, C)
    for e in sa4.minus2_ids:
        assert product_resolution(sa4, pb, QDivisor({e: 1})) == 0
    assert mumford_product(sa4, C, C) == Q(1, 5)
    assert k_product(sa4, C) == -1
    assert k_product(sa4, C * 5) == -5
    # -K = 5 pi_*C numerically, so K^2 = 25 D^2 = degree
    assert mumford_product(sa4, C * 5, C * 5) == sa4.degree


def test_weil_class_guards(sa4):
    with pytest.raises(ValueError):
        pullback(sa4, WeilClass({1: 1}))  # a (-2)-curve pushes forward to zero; not a valid input
    with pytest.raises(ValueError):
        WeilClass.from_tuple(sa4, (1, 2))


def test_qdivisor_algebra():
    a = QDivisor({0: Q(1, 2), 1: 0})
    assert a.coeffs == {0: Q(1, 2)}
    assert (a + a) * Q(1, 2) == a
    assert (a - a).is_zero()
    assert QDivisor({0: Q(-1, 3)}).floor() == QDivisor({0: -1})
