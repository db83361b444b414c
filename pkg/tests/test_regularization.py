import random

import pytest

from toricperiods.characters import character_from_spec, formal_character
from toricperiods.cones import make_cone
from toricperiods.curve import Curve
from toricperiods.cyclotomic import Cyc
from toricperiods.duality import GradedToricDatum, orbits, toric_dual
from toricperiods.periods import automorphic_period, spectral_period
from toricperiods.regularization import (
    VANISHED_CUSPIDALITY,
    VANISHED_DOMINATED,
    VANISHED_NOT_FIXED,
    VANISHED_TRIVIALITY,
    fixed_orbit_faces,
    is_cuspidal,
    is_generic,
    regularized_automorphic_contribution,
    regularized_spectral_contribution,
    verify_langlands_dual_periods,
)

TATE = GradedToricDatum(cone=make_cone([(1,)]), rho=(1,), eta=(1,))
QUADRIC = GradedToricDatum(cone=make_cone([(1, 0), (1, 2)]), rho=(1, 1), eta=(1, 1))
ORTHANT = GradedToricDatum(cone=make_cone([(1, 0), (0, 1)]), rho=(1, 1), eta=(1, 1))
SQUARE3D = GradedToricDatum(
    cone=make_cone([(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]),
    rho=(1, 1, 2), eta=(1, 0, 1))

Z1_IS_UINV = character_from_spec([(0, -1), "formal"], order=1, nvars=2)


def test_cuspidal_formal_character():
    ok, witness = is_cuspidal(QUADRIC, formal_character(2))
    assert ok and witness is None


def test_cuspidal_fails_with_monomial_cancellation():
    ok, witness = is_cuspidal(QUADRIC, Z1_IS_UINV)
    assert not ok
    assert witness.rays == ((1, 0),)


def test_cuspidal_tate_vacuous():
    # Rank one has no nontrivial proper stabilizers at all.
    chi = character_from_spec([(0, -1)], order=1)
    ok, witness = is_cuspidal(TATE, chi)
    assert ok and witness is None


def test_generic_formal():
    pair = toric_dual(QUADRIC)
    ok, fixed = is_generic(pair.side_xcheck, formal_character(2))
    assert ok
    assert len(fixed) == 1 and fixed[0].dim() == 2


def test_generic_fails_and_names_fixed_orbit():
    pair = toric_dual(QUADRIC)
    ok, fixed = is_generic(pair.side_xcheck, Z1_IS_UINV)
    assert not ok
    rays = sorted(f.rays for f in fixed)
    # The dual of the cuspidality witness ray(1,0) is the face ray(0,1).
    assert rays == [((0, 1),), ((0, 1), (2, -1))]


def test_generic_tate_single_condition():
    pair = toric_dual(TATE)
    good = character_from_spec([(1, 0)], order=4)
    assert is_generic(pair.side_xcheck, good)[0]
    degenerate = character_from_spec([(0, -1)], order=1)
    ok, fixed = is_generic(pair.side_xcheck, degenerate)
    assert not ok and len(fixed) == 2


def test_fixed_faces_form_up_set():
    rng = random.Random(7)
    pair = toric_dual(SQUARE3D)
    from toricperiods.cones import faces
    lattice = faces(pair.side_xcheck.cone)
    for _ in range(60):
        chi = character_from_spec(
            [(rng.randrange(4), rng.randint(-2, 2)) for _ in range(3)],
            order=4, nvars=3)
        fixed = {f.ray_set() for f in fixed_orbit_faces(pair.side_xcheck, chi)}
        for f in lattice.faces:
            for g in lattice.faces:
                if f.ray_set() <= g.ray_set() and f.ray_set() in fixed:
                    assert g.ray_set() in fixed


def test_dense_orbit_recovers_main_period():
    chi = formal_character(2)
    dense = next(o for o in orbits(QUADRIC) if o.is_dense)
    contrib = regularized_automorphic_contribution(
        QUADRIC, dense, Curve(q=2), chi, 6)
    assert contrib.status == "computed"
    full = automorphic_period(QUADRIC, Curve(q=2), chi, 6)
    assert contrib.series.first_mismatch(full) is None


def test_full_face_recovers_spectral_period():
    chi = formal_character(2)
    pair = toric_dual(QUADRIC)
    full_face = next(o for o in orbits(pair.side_xcheck) if o.is_fixed_point)
    contrib = regularized_spectral_contribution(
        pair.side_xcheck, full_face, Curve(q=2), chi, 6)
    assert contrib.status == "computed"
    expected = spectral_period(pair.side_xcheck, Curve(q=2), chi, 6)
    assert contrib.series.first_mismatch(expected) is None


def test_small_orbit_formal_vanishes():
    chi = formal_character(2)
    ray_orbit = next(o for o in orbits(QUADRIC) if o.face.rays == ((1, 0),))
    contrib = regularized_automorphic_contribution(
        QUADRIC, ray_orbit, Curve(q=2), chi, 6)
    assert contrib.vanished and contrib.reason == VANISHED_TRIVIALITY


def test_small_orbit_computed_with_matched_character():
    ray_orbit = next(o for o in orbits(QUADRIC) if o.face.rays == ((1, 0),))
    contrib = regularized_automorphic_contribution(
        QUADRIC, ray_orbit, Curve(q=2), Z1_IS_UINV, 6)
    assert contrib.status == "computed"
    # Prefactor chi(rho) = z1 z2 = u^{-1} z2; local factor sum_k (z2 u)^{dk}.
    assert contrib.series.low == -1
    assert contrib.series.coefficient(-1) == {(0, 1): Cyc.one(1)}
    # Coefficient of u^0: prefactor times (a_1 = 3 places) * (z2 u)^1.
    assert contrib.series.coefficient(0) == {(0, 2): Cyc.rational(3, 1)}


def test_spectral_vanishing_reasons():
    chi = formal_character(2)
    pair = toric_dual(QUADRIC)
    orbs = orbits(pair.side_xcheck)
    dense = next(o for o in orbs if o.is_dense)
    c = regularized_spectral_contribution(pair.side_xcheck, dense, Curve(q=2), chi, 6)
    assert c.vanished and c.reason == VANISHED_NOT_FIXED
    # With the matched degenerate character, the full face is dominated.
    full_face = next(o for o in orbs if o.is_fixed_point)
    c2 = regularized_spectral_contribution(
        pair.side_xcheck, full_face, Curve(q=2), Z1_IS_UINV, 6)
    assert c2.vanished and c2.reason == VANISHED_DOMINATED


def test_orbitwise_duality_quadric_specialized():
    pair = toric_dual(QUADRIC)
    fwd, bwd = verify_langlands_dual_periods(pair, Curve(q=2), Z1_IS_UINV, 8)
    assert fwd.equal
    nonzero = [p for p in fwd.pairs if p.automorphic.status == "computed"]
    assert len(nonzero) == 1
    assert nonzero[0].face_rays == ((1, 0),)
    assert nonzero[0].dual_face_rays == ((0, 1),)
    reasons = {p.face_rays: (p.automorphic.reason, p.spectral.reason)
               for p in fwd.pairs}
    assert reasons[()] == (VANISHED_CUSPIDALITY, VANISHED_DOMINATED)
    assert reasons[((1, 2),)] == (VANISHED_TRIVIALITY, VANISHED_NOT_FIXED)
    # The mirror direction: the non-unitary specialization makes the
    # dense/full pair divergent on both sides, matching statuses.
    assert bwd.equal
    statuses = {p.face_rays: p.automorphic.status for p in bwd.pairs}
    assert statuses[()] == "divergent"


def test_orbitwise_duality_formal_characters():
    for datum in (TATE, QUADRIC, ORTHANT):
        pair = toric_dual(datum)
        chi = formal_character(datum.rank)
        fwd, bwd = verify_langlands_dual_periods(pair, Curve(q=2), chi, 6)
        assert fwd.equal and bwd.equal
        # Only the dense/full pair is nonzero for a generic character.
        assert len(fwd.nonzero_pairs()) == 1
        assert fwd.nonzero_pairs()[0].face_rays == ()


def sample_character(rng, rank, order=4):
    return character_from_spec(
        [(rng.randrange(order), rng.randint(-2, 2)) for _ in range(rank)],
        order=order, nvars=rank)


def degenerate(chi, datum):
    from toricperiods.characters import extended_character
    psi = extended_character(chi, datum.eta)
    basis = [tuple(1 if i == j else 0 for i in range(datum.rank))
             for j in range(datum.rank)]
    return psi.is_trivial_on_all(basis)


def test_cuspidal_iff_generic_random():
    # The identity extended parameter is excluded: the fixed locus is then
    # all of the dual variety and the spectral period is undefined.
    rng = random.Random(20250808)
    for datum in (TATE, QUADRIC, ORTHANT, SQUARE3D):
        pair = toric_dual(datum)
        count = 0
        while count < 200:
            chi = sample_character(rng, datum.rank)
            if degenerate(chi, datum):
                continue
            count += 1
            cusp, _ = is_cuspidal(datum, chi)
            gen, _ = is_generic(pair.side_xcheck, chi)
            assert cusp == gen, (datum, chi)


def test_vanishing_duality_random():
    rng = random.Random(424243)
    pair = toric_dual(QUADRIC)
    for _ in range(40):
        chi = sample_character(rng, 2)
        if degenerate(chi, QUADRIC):
            continue
        fwd, bwd = verify_langlands_dual_periods(pair, Curve(q=2), chi, 3)
        for p in fwd.pairs + bwd.pairs:
            assert p.automorphic.status == p.spectral.status
