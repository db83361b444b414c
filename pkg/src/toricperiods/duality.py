"""Graded toric data, dual pairs, and the orbit dictionary.

A graded datum is a full-dimensional strongly convex cone together with
an interior grading cocharacter rho and a pole-free eigenform character
eta.  Its dual swaps the cone for the dual cone and exchanges the roles
of rho and eta; the weight epsilon = <rho, eta> controls the discrepancy
exponent r - epsilon of the period comparison.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cones import (
    Cone,
    FaceLattice,
    dual_cone,
    face_dual,
    faces,
    image_cone,
    is_conical_grading,
)
from .intlinalg import (
    QuotientData,
    Vector,
    dot,
    quotient_lattice,
    saturate_sublattice,
    vec,
)


class InvalidGrading(ValueError):
    pass


class InvalidEigenform(ValueError):
    pass


@dataclass(frozen=True)
class GradedToricDatum:
    """One side of a pair: cone sigma, grading rho, eigenform eta."""

    cone: Cone
    rho: Vector
    eta: Vector

    @property
    def rank(self) -> int:
        return self.cone.ambient_rank

    def __post_init__(self):
        object.__setattr__(self, "rho", vec(self.rho))
        object.__setattr__(self, "eta", vec(self.eta))
        if len(self.rho) != self.rank or len(self.eta) != self.rank:
            raise ValueError("rho/eta length must match the ambient rank")


@dataclass(frozen=True)
class GradedDualPair:
    side_x: GradedToricDatum
    side_xcheck: GradedToricDatum
    epsilon: int

    @property
    def rank(self) -> int:
        return self.side_x.rank

    @property
    def discrepancy(self) -> int:
        """Exponent a in the comparison P = Delta^(a/4) L."""
        return self.rank - self.epsilon


def grading_witness(cone: Cone, rho: Vector) -> Vector | None:
    """A dual-cone ray pairing nonpositively with rho, if any."""
    for y in dual_cone(cone).rays:
        if dot(rho, y) <= 0:
            return y
    return None


def eigenform_witness(cone: Cone, eta: Vector) -> Vector | None:
    """A ray of the cone on which eta fails the pole-free bound <eta, r> >= 1."""
    for r in cone.rays:
        if dot(eta, r) < 1:
            return r
    return None


def toric_dual(datum: GradedToricDatum) -> GradedDualPair:
    """The graded dual pair built from one side.

    The dual side lives on the dual cone with rho and eta exchanged; both
    sides are validated (interior grading, pole-free eigenform).
    """
    w = grading_witness(datum.cone, datum.rho)
    if w is not None or not is_conical_grading(datum.cone, datum.rho):
        raise InvalidGrading(
            f"rho={datum.rho} is not interior to the cone (witness {w})")
    w = eigenform_witness(datum.cone, datum.eta)
    if w is not None:
        raise InvalidEigenform(
            f"eta={datum.eta} has a pole along ray {w}")
    dual = GradedToricDatum(cone=dual_cone(datum.cone), rho=datum.eta, eta=datum.rho)
    eps = dot(datum.rho, datum.eta)
    if eps <= 0:
        raise InvalidGrading(f"grading weight {eps} is not positive")
    return GradedDualPair(side_x=datum, side_xcheck=dual, epsilon=eps)


def unchecked_dual(datum: GradedToricDatum) -> GradedDualPair:
    """The dual pair without invariant enforcement; pair with validate_pair."""
    dual = GradedToricDatum(cone=dual_cone(datum.cone), rho=datum.eta, eta=datum.rho)
    return GradedDualPair(side_x=datum, side_xcheck=dual,
                          epsilon=dot(datum.rho, datum.eta))


@dataclass(frozen=True)
class OrbitDescriptor:
    """One torus orbit of the affine toric variety, indexed by a face.

    stabilizer_basis spans the saturated cocharacter lattice of the
    stabilizer subtorus; quotient presents the cocharacter lattice of the
    quotient torus acting on the orbit; closure_cone is the cone of the
    orbit closure inside that quotient lattice.
    """

    face: Cone
    stabilizer_basis: tuple[Vector, ...]
    quotient: QuotientData
    closure_cone: Cone

    @property
    def is_dense(self) -> bool:
        return not self.face.rays

    @property
    def is_fixed_point(self) -> bool:
        return self.quotient.free_rank == 0


def orbit_for_face(datum: GradedToricDatum, face: Cone) -> OrbitDescriptor:
    stab = tuple(saturate_sublattice(face.rays, datum.rank))
    quot = quotient_lattice(datum.rank, stab)
    closure = image_cone(datum.cone, quot.free_projection)
    return OrbitDescriptor(face=face, stabilizer_basis=stab,
                           quotient=quot, closure_cone=closure)


def orbits(datum: GradedToricDatum) -> list[OrbitDescriptor]:
    """One descriptor per face: the dense orbit for {0}, the fixed point for sigma."""
    return [orbit_for_face(datum, f) for f in faces(datum.cone).faces]


def dual_orbit(orbit: OrbitDescriptor, pair: GradedDualPair,
               from_side_x: bool = True) -> OrbitDescriptor:
    """Descriptor of the face tau* on the opposite side of the pair."""
    here = pair.side_x if from_side_x else pair.side_xcheck
    there = pair.side_xcheck if from_side_x else pair.side_x
    dual_face = face_dual(orbit.face, here.cone)
    return orbit_for_face(there, dual_face)


@dataclass(frozen=True)
class ValidationEntry:
    side: str
    condition: str
    ok: bool
    witness: Vector | None


@dataclass(frozen=True)
class ValidationReport:
    entries: tuple[ValidationEntry, ...]

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def failures(self) -> list[ValidationEntry]:
        return [e for e in self.entries if not e.ok]


def validate_pair(pair: GradedDualPair) -> ValidationReport:
    """Check the three equivalent grading conditions on both sides.

    For each side: the grading cocharacter is interior (every dual ray
    pairs strictly positively), the level sets of the grading on the dual
    monoid are finite with nonnegative values (same pairing, phrased on
    the opposite description), and the eigenform has no poles (pairs >= 1
    with every ray).  Failures carry a witness vector.
    """
    entries = []
    for label, datum in (("X", pair.side_x), ("X-check", pair.side_xcheck)):
        w = grading_witness(datum.cone, datum.rho)
        entries.append(ValidationEntry(label, "grading-interior", w is None, w))
        finite = datum.cone.full_dimensional and w is None
        entries.append(ValidationEntry(
            label, "level-sets-finite-nonnegative", finite, w))
        w2 = eigenform_witness(datum.cone, datum.eta)
        entries.append(ValidationEntry(label, "eigenform-pole-free", w2 is None, w2))
    entries.append(ValidationEntry(
        "pair", "weight-positive", pair.epsilon > 0, None))
    role_swap = (pair.side_xcheck.rho == pair.side_x.eta
                 and pair.side_xcheck.eta == pair.side_x.rho
                 and pair.side_xcheck.cone == dual_cone(pair.side_x.cone))
    entries.append(ValidationEntry("pair", "roles-swapped", role_swap, None))
    return ValidationReport(entries=tuple(entries))
