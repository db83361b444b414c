import random
from fractions import Fraction

import pytest

from toricperiods.characters import (
    Character,
    character_from_spec,
    character_monomial,
    extended_character,
    formal_character,
)
from toricperiods.cones import make_cone
from toricperiods.curve import (
    Curve,
    divisor_count_series,
    mobius,
    normalization_prefactors,
    place_counts,
    zeta_series,
)
from toricperiods.cyclotomic import Cyc
from toricperiods.duality import GradedToricDatum, toric_dual
from toricperiods.intlinalg import LatticeMap
from toricperiods.series import Monomial


def test_place_counts_q2():
    curve = Curve(q=2)
    assert place_counts(curve, 4).counts == (3, 1, 2, 3)


def test_place_counts_q3():
    assert place_counts(Curve(q=3), 3).counts == (4, 3, 8)


def test_place_counts_degree_one():
    for q in (2, 3, 4, 5, 7):
        assert place_counts(Curve(q=q), 1).counts == (q + 1,)


def test_place_counts_mobius_consistency():
    # sum over d | n of d * a_d recovers the point counts.
    for q in (2, 3, 4, 5):
        curve = Curve(q=q)
        table = place_counts(curve, 12)
        for n in range(1, 13):
            total = sum(d * table.a(d) for d in range(1, n + 1) if n % d == 0)
            assert total == curve.point_count(n)


def test_zeta_series_small():
    s = zeta_series(Curve(q=2), 3)
    assert s.coefficient(0) == {(): Cyc.one(1)}
    assert s.coefficient(1) == {(): Cyc.rational(3, 1)}
    assert s.coefficient(2) == {(): Cyc.rational(7, 1)}
    assert s.coefficient(3) == {(): Cyc.rational(15, 1)}
    t = zeta_series(Curve(q=3), 2)
    assert t.coefficient(1) == {(): Cyc.rational(4, 1)}
    assert t.coefficient(2) == {(): Cyc.rational(13, 1)}
    assert zeta_series(Curve(q=2), 0).coefficient(0) == {(): Cyc.one(1)}


def test_zeta_matches_rational_function():
    # 1/((1-t)(1-qt)) expanded to order 12.
    for q in (2, 3, 5):
        got = zeta_series(Curve(q=q), 12)
        closed = divisor_count_series(Curve(q=q), 12)
        assert got.first_mismatch(closed) is None


def test_curve_rejects_bad_spin():
    with pytest.raises(ValueError):
        Curve(q=2, spin=((1, 0),))
    # A legal override: two marked places with m = -1 and m = 0 elsewhere...
    Curve(q=2, spin=((1, -2), (1, 1)))


def test_mobius_values():
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


def test_character_monomial_formal():
    chi = formal_character(1)
    assert character_monomial(chi, (2,), 3) == Monomial(0, 0, (6,))


def test_character_monomial_specialized():
    chi = character_from_spec([(1, 0)], order=4)
    m = character_monomial(chi, (1,), 2)
    assert Cyc.root_power(m.zeta, 4) == Cyc.rational(-1, 4)
    chi2 = character_from_spec([(0, -1)], order=1)
    assert character_monomial(chi2, (1,), 1) == Monomial(0, -1, (0,))


def test_character_multiplicative():
    rng = random.Random(2)
    chi = character_from_spec(["formal", (1, -1), (3, 2)], order=4)
    for _ in range(40):
        lam = tuple(rng.randint(-3, 3) for _ in range(3))
        mu = tuple(rng.randint(-3, 3) for _ in range(3))
        d = rng.randint(1, 4)
        both = chi.value(tuple(a + b for a, b in zip(lam, mu)), d)
        prod = chi.value(lam, d) * chi.value(mu, d)
        assert both.u == prod.u and both.z == prod.z
        assert (both.zeta - prod.zeta) % 4 == 0


def test_character_compose_pullback():
    chi = formal_character(1)
    doubling = LatticeMap(1, 1, ((2,),))
    pulled = chi.compose(doubling)
    assert pulled.coords == (Monomial(0, 0, (2,)),)


def test_extended_character():
    chi = formal_character(2)
    psi = extended_character(chi, (1, 3))
    assert psi.value((1, 1)) == Monomial(0, 4, (1, 1))
    assert not psi.is_trivial_on((1, 0))


def test_triviality_detection():
    # z = u^{-1} with eta = 1 makes the combined monomial trivial.
    chi = character_from_spec([(0, -1)], order=1)
    psi = extended_character(chi, (1,))
    assert psi.is_trivial_on((1,))
    assert psi.is_trivial_on((5,))


def test_prefactors_tate():
    datum = GradedToricDatum(cone=make_cone([(1,)]), rho=(1,), eta=(1,))
    pair = toric_dual(datum)
    chi = formal_character(1)
    aut, spec, expo = normalization_prefactors(pair, Curve(q=2), chi)
    assert aut == Monomial(0, 0, (1,))
    assert spec == Monomial(0, 0, (1,))
    assert expo == 0


def test_prefactors_quadric_eta21():
    datum = GradedToricDatum(cone=make_cone([(1, 0), (1, 2)]), rho=(1, 1), eta=(2, 1))
    pair = toric_dual(datum)
    chi = formal_character(2)
    aut, spec, expo = normalization_prefactors(pair, Curve(q=2), chi)
    assert expo == -1
    assert aut == Monomial(0, 0, (1, 1))
    # The spectral prefactor carries Delta^{(eps - r)/4} = u^{3-2} = u.
    assert spec == Monomial(0, 1, (1, 1))


def test_prefactors_matched_weights_exponent_zero():
    datum = GradedToricDatum(cone=make_cone([(1, 0), (1, 2)]), rho=(1, 1), eta=(1, 1))
    pair = toric_dual(datum)
    _, _, expo = normalization_prefactors(pair, Curve(q=3), formal_character(2))
    assert expo == 0
