import random
from fractions import Fraction

import pytest

from toricperiods.cyclotomic import Cyc, cyclotomic_polynomial, lcm_orders


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_root_powers_small_orders():
    # zeta_2 = -1
    assert Cyc.root_power(1, 2) == Cyc.rational(-1, 2)
    # zeta_4^2 = -1
    z = Cyc.root_power(1, 4)
    assert z * z == Cyc.rational(-1, 4)
    # zeta_3^3 = 1 and 1 + zeta_3 + zeta_3^2 = 0
    w = Cyc.root_power(1, 3)
    assert w * w * w == Cyc.one(3)
    assert (Cyc.one(3) + w + w * w).is_zero()


def test_root_power_wraps():
    for n in (2, 3, 4, 6, 12):
        for k in range(2 * n):
            assert Cyc.root_power(k, n) == Cyc.root_power(k % n, n)


def test_ring_axioms_random():
    rng = random.Random(3)
    for n in (1, 2, 3, 4, 6):
        deg = Cyc.degree(n)
        rand = lambda: Cyc(n, tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                                    for _ in range(deg)))
        for _ in range(25):
            a, b, c = rand(), rand(), rand()
            assert a + b == b + a
            assert a * b == b * a
            assert a * (b + c) == a * b + a * c
            assert (a * b) * c == a * (b * c)


def test_inverse():
    rng = random.Random(9)
    for n in (1, 2, 3, 4, 12):
        deg = Cyc.degree(n)
        for _ in range(20):
            a = Cyc(n, tuple(Fraction(rng.randint(-3, 3)) for _ in range(deg)))
            if a.is_zero():
                continue
            assert a * a.inverse() == Cyc.one(n)
    with pytest.raises(ZeroDivisionError):
        Cyc.zero(4).inverse()


def test_rational_embedding():
    a = Cyc.rational(Fraction(2, 3), 4)
    b = Cyc.rational(3, 4)
    assert a * b == Cyc.rational(2, 4)
    assert (a - a).is_zero()
    assert Cyc.one(4).is_one()


def test_lcm_orders():
    assert lcm_orders([]) == 1
    assert lcm_orders([2, 3]) == 6
    assert lcm_orders([4, 6]) == 12
