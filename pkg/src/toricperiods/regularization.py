"""Per-orbit regularized contributions and the orbitwise duality check.

An orbit on the primal side contributes only when the combined monomial
character is trivial on its stabilizer sublattice and stays nontrivial on
every intermediate stabilizer of the closure (relative cuspidality); the
surviving integral is an Euler product over the image cone in the
quotient lattice.  On the dual side an orbit contributes only when it is
fixed by the extended parameter and no smaller orbit is, and the
surviving trace runs over the image of the character monoid in the
transverse quotient.  Orbit by orbit these are compared through the
inclusion-reversing face bijection.
"""

from __future__ import annotations

from dataclasses import dataclass

from .characters import Character, extended_character
from .cones import Cone, dual_cone, face_dual, faces, image_cone, points_at_level
from .curve import Curve
from .cyclotomic import Cyc
from .duality import (
    GradedDualPair,
    GradedToricDatum,
    OrbitDescriptor,
    orbit_for_face,
    orbits,
)
from .intlinalg import (
    Vector,
    annihilator_basis,
    dot,
    quotient_lattice,
    saturate_sublattice,
)
from .periods import PositivityViolation, euler_product
from .series import Monomial, TruncatedSeries

VANISHED_TRIVIALITY = "triviality-failed"
VANISHED_CUSPIDALITY = "not-relatively-cuspidal"
VANISHED_NOT_FIXED = "not-fixed"
VANISHED_DOMINATED = "dominated-by-larger-fixed-orbit"


@dataclass(frozen=True)
class OrbitContribution:
    """Status is "computed", "vanished", or "divergent".

    Divergent appears only in verifier reports: the contribution survives
    the support conditions but its effective weight is not positive, so
    no truncated series certifies it (a non-unitary specialization artefact;
    the matching orbit on the other side diverges the same way).
    """

    orbit: OrbitDescriptor
    status: str
    reason: str | None
    series: TruncatedSeries | None

    @property
    def vanished(self) -> bool:
        return self.status == "vanished"


def _vanished(orbit, reason):
    return OrbitContribution(orbit=orbit, status="vanished", reason=reason,
                             series=None)


def _proper_stabilizer_faces(cone: Cone):
    """Faces with nontrivial proper stabilizer: nonzero rays, non-spanning."""
    out = []
    rank = cone.ambient_rank
    for f in faces(cone).faces:
        if f.rays and f.dim() < rank:
            out.append(f)
    return out


def is_cuspidal(datum: GradedToricDatum, chi: Character):
    """Nontriviality of the combined character on every intermediate stabilizer.

    Returns (flag, witness_face): the witness is a face whose stabilizer
    sublattice the combined monomial kills.  Stabilizers here are the
    nontrivial proper ones; the trivial stabilizer of the dense orbit
    would make the condition vacuously false and is excluded.
    """
    psi = extended_character(chi, datum.eta)
    for face in _proper_stabilizer_faces(datum.cone):
        stab = orbit_for_face(datum, face).stabilizer_basis
        if psi.is_trivial_on_all(stab):
            return False, face
    return True, None


def fixed_orbit_faces(datum_check: GradedToricDatum, phi: Character):
    """Faces of the dual-side cone whose orbits the extended parameter fixes.

    The acting element evaluates on a character mu as z^mu * u^<rho, mu>;
    the orbit of a face is fixed pointwise when that monomial is trivial
    on the annihilator lattice of the face span (the character lattice of
    the orbit torsor).  The full face is always in the list.
    """
    psi = extended_character(phi, datum_check.rho)
    rank = datum_check.rank
    fixed = []
    for face in faces(datum_check.cone).faces:
        ann = annihilator_basis(face.rays, rank)
        if psi.is_trivial_on_all(ann):
            fixed.append(face)
    return fixed


def is_generic(datum_check: GradedToricDatum, phi: Character):
    """True when the extended parameter fixes only the full-face orbit."""
    fixed = fixed_orbit_faces(datum_check, phi)
    return len(fixed) == 1, fixed


def _descended_euler_product(cone: Cone, psi_bar: Character, curve: Curve,
                             order: int, jobs=None) -> TruncatedSeries:
    """Euler product of level-set sums of the descended character on a cone."""
    weight = tuple(m.u for m in psi_bar.coords)
    for r in cone.rays:
        v = dot(weight, r)
        if v <= 0:
            raise PositivityViolation(r, v)

    def factor(deg: int) -> TruncatedSeries:
        out = {0: {(0,) * psi_bar.nvars: Cyc.one(psi_bar.order)}}
        for level in range(1, order // deg + 1):
            for pt in points_at_level(cone, weight, level):
                mon = psi_bar.value(pt, deg)
                bucket = out.setdefault(mon.u, {})
                add = Cyc.root_power(mon.zeta, psi_bar.order)
                cur = bucket.get(mon.z)
                new = add if cur is None else cur + add
                if new.is_zero():
                    bucket.pop(mon.z, None)
                else:
                    bucket[mon.z] = new
        return TruncatedSeries.from_dict(out, psi_bar.nvars, psi_bar.order, order)

    return euler_product(factor, curve, order, jobs=jobs)


def regularized_automorphic_contribution(
        datum: GradedToricDatum, orbit: OrbitDescriptor, curve: Curve,
        chi: Character, order: int, jobs=None) -> OrbitContribution:
    """Contribution of one orbit to the regularized automorphic period.

    Vanishes unless the combined character is trivial on the stabilizer
    and its descent to the quotient torus is cuspidal relative to the
    orbit closure; otherwise it is the prefactored Euler product over the
    closure cone in the quotient lattice.
    """
    psi = extended_character(chi, datum.eta)
    if orbit.stabilizer_basis and not psi.is_trivial_on_all(orbit.stabilizer_basis):
        return _vanished(orbit, VANISHED_TRIVIALITY)
    assert orbit.quotient.torsion_invariants == (), "stabilizer basis not saturated"
    psi_bar = psi.compose(orbit.quotient.section)
    closure = orbit.closure_cone
    # Relative cuspidality of the descended character on the closure.
    for face in _proper_stabilizer_faces(closure):
        stab = saturate_sublattice(face.rays, closure.ambient_rank)
        if psi_bar.is_trivial_on_all(stab):
            return _vanished(orbit, VANISHED_CUSPIDALITY)
    pref = chi.value(datum.rho)
    series = _descended_euler_product(closure, psi_bar, curve, order, jobs=jobs)
    total = series * TruncatedSeries.from_monomial(pref, chi.nvars, chi.order)
    return OrbitContribution(orbit=orbit, status="computed", reason=None,
                             series=total)


def regularized_spectral_contribution(
        datum_check: GradedToricDatum, orbit: OrbitDescriptor, curve: Curve,
        phi: Character, order: int, jobs=None) -> OrbitContribution:
    """Contribution of one dual-side orbit to the regularized spectral period.

    Not fixed pointwise: zero.  Fixed but dominated by a larger fixed
    orbit: zero.  Otherwise the graded trace over the image of the
    character monoid in the transverse quotient, normalized like the full
    spectral period.
    """
    rank = datum_check.rank
    psi = extended_character(phi, datum_check.rho)
    face = orbit.face
    ann = annihilator_basis(face.rays, rank)
    if not psi.is_trivial_on_all(ann):
        return _vanished(orbit, VANISHED_NOT_FIXED)
    face_rays = face.ray_set()
    for other in faces(datum_check.cone).faces:
        if other.ray_set() < face_rays:
            if psi.is_trivial_on_all(annihilator_basis(other.rays, rank)):
                return _vanished(orbit, VANISHED_DOMINATED)
    quot = quotient_lattice(rank, ann)
    assert quot.torsion_invariants == ()
    monoid_cone = dual_cone(datum_check.cone)
    image = image_cone(monoid_cone, quot.free_projection)
    psi_desc = psi.compose(quot.section)
    epsilon = dot(datum_check.rho, datum_check.eta)
    shift = (1 - curve.genus) * (epsilon - rank)
    z_scalar = phi.value(datum_check.eta)
    pref = Monomial(z_scalar.zeta, z_scalar.u + shift, z_scalar.z)
    series = _descended_euler_product(image, psi_desc, curve, order, jobs=jobs)
    total = series * TruncatedSeries.from_monomial(pref, phi.nvars, phi.order)
    return OrbitContribution(orbit=orbit, status="computed", reason=None,
                             series=total)


@dataclass(frozen=True)
class OrbitPairVerdict:
    face_rays: tuple[Vector, ...]
    dual_face_rays: tuple[Vector, ...]
    automorphic: OrbitContribution
    spectral: OrbitContribution
    equal: bool
    mismatch: tuple | None


@dataclass(frozen=True)
class OrbitDualityReport:
    direction: str
    duality_exponent: int
    pairs: tuple[OrbitPairVerdict, ...]

    @property
    def equal(self) -> bool:
        return all(p.equal for p in self.pairs)

    def nonzero_pairs(self):
        return [p for p in self.pairs if not p.automorphic.vanished]


def _orbit_pair_verdicts(aut_datum, spec_datum, curve, chi, order, expo,
                         jobs=None):
    verdicts = []
    for orbit in orbits(aut_datum):
        dual_face = face_dual(orbit.face, aut_datum.cone)
        dual_orbit_desc = orbit_for_face(spec_datum, dual_face)
        try:
            aut = regularized_automorphic_contribution(
                aut_datum, orbit, curve, chi, order, jobs=jobs)
        except PositivityViolation as err:
            aut = OrbitContribution(orbit, "divergent",
                                    f"weight {err.value} on ray {err.witness}",
                                    None)
        try:
            spec = regularized_spectral_contribution(
                spec_datum, dual_orbit_desc, curve, chi, order, jobs=jobs)
        except PositivityViolation as err:
            spec = OrbitContribution(dual_orbit_desc, "divergent",
                                     f"weight {err.value} on ray {err.witness}",
                                     None)
        if aut.status != spec.status:
            equal, mism = False, ("support", aut.status, spec.status)
        elif aut.status == "computed":
            mism = aut.series.first_mismatch(spec.series.shift_u(expo))
            equal = mism is None
        else:
            equal, mism = True, None
        verdicts.append(OrbitPairVerdict(
            face_rays=orbit.face.rays, dual_face_rays=dual_face.rays,
            automorphic=aut, spectral=spec, equal=equal, mismatch=mism))
    return tuple(verdicts)


def verify_langlands_dual_periods(pair: GradedDualPair, curve: Curve,
                                  chi: Character, order: int,
                                  jobs=None) -> tuple[OrbitDualityReport, ...]:
    """Orbit-by-orbit comparison in both directions.

    For every orbit pair under the face bijection: vanished must match
    vanished, and computed contributions must agree after the discrepancy
    shift u^(r - epsilon).
    """
    expo = pair.discrepancy
    fwd = OrbitDualityReport(
        direction="X-to-X-check", duality_exponent=expo,
        pairs=_orbit_pair_verdicts(pair.side_x, pair.side_xcheck, curve, chi,
                                   order, expo, jobs=jobs))
    bwd = OrbitDualityReport(
        direction="X-check-to-X", duality_exponent=expo,
        pairs=_orbit_pair_verdicts(pair.side_xcheck, pair.side_x, curve, chi,
                                   order, expo, jobs=jobs))
    return fwd, bwd
