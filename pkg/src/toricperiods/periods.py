"""The two period computations and the weak-duality verifier.

The automorphic engine walks the cocharacter lattice and keeps a point
when it pairs nonnegatively with every Hilbert-basis element of the dual
monoid (integrality read off the dual description).  The spectral engine
sums graded slices of the monoid algebra at the fixed point, enumerated
through primal level sets.  The two code paths share nothing but series
arithmetic; their agreement, coefficient by coefficient, is the content
being verified.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .characters import Character, extended_character
from .cones import Cone, dual_cone, hilbert_basis, points_at_level
from .curve import Curve, place_counts
from .duality import GradedDualPair, GradedToricDatum
from .intlinalg import Vector, dot, vec
from .series import Monomial, TruncatedSeries


class PositivityViolation(ValueError):
    """The effective weight functional is not strictly positive on a ray."""

    def __init__(self, witness, value):
        self.witness = witness
        self.value = value
        super().__init__(
            f"effective weight {value} on ray {witness}: truncation undefined")


def effective_weight(chi: Character, eta) -> Vector:
    """Covector of total u-growth: eigenform weight plus specialization slopes."""
    eta = vec(eta)
    return tuple(e + m.u for e, m in zip(eta, chi.coords))


def positivity_certificate(cone: Cone, chi: Character, eta) -> Vector:
    w = effective_weight(chi, eta)
    for r in cone.rays:
        v = dot(w, r)
        if v <= 0:
            raise PositivityViolation(r, v)
    return w


def _weight_box(rays, weights, bound: int, n: int):
    lo = [Fraction(0)] * n
    hi = [Fraction(0)] * n
    for r, wr in zip(rays, weights):
        for j in range(n):
            t = Fraction(bound * r[j], wr)
            if t > 0:
                hi[j] += t
            else:
                lo[j] += t
    return [math.ceil(x) for x in lo], [math.floor(x) for x in hi]


def automorphic_local_factor(datum: GradedToricDatum, chi: Character,
                             place_degree: int, order: int) -> TruncatedSeries:
    """Local integral over the torus against the integral-point indicator.

    Membership of a cocharacter is decided purely through the dual
    description: nonnegative pairing with every Hilbert-basis element of
    the dual monoid.  Candidate points come from a ray-derived box large
    enough for the requested truncation.
    """
    psi = extended_character(chi, datum.eta)
    w = positivity_certificate(datum.cone, chi, datum.eta)
    n = datum.rank
    out = {0: {(0,) * chi.nvars: _one(chi.order)}}
    bound = order // place_degree
    if bound >= 1 and datum.cone.rays:
        dual_basis = hilbert_basis(dual_cone(datum.cone))
        weights = [dot(w, r) for r in datum.cone.rays]
        lo, hi = _weight_box(datum.cone.rays, weights, bound, n)
        for cand in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
            if not any(cand):
                continue
            if any(dot(cand, h) < 0 for h in dual_basis):
                continue
            mon = psi.value(cand, place_degree)
            if 0 < mon.u <= order:
                _accumulate(out, mon, chi.order)
    return TruncatedSeries.from_dict(out, chi.nvars, chi.order, order)


def spectral_local_factor(datum_check: GradedToricDatum, phi: Character,
                          place_degree: int, order: int) -> TruncatedSeries:
    """Graded trace of Frobenius on the monoid algebra at the fixed point.

    Enumerates the character monoid of the dual-side variety by primal
    level sets of the grading cocharacter; independent of the automorphic
    path by construction.
    """
    monoid_cone = dual_cone(datum_check.cone)
    w = positivity_certificate(monoid_cone, phi, datum_check.rho)
    psi = extended_character(phi, datum_check.rho)
    out = {0: {(0,) * phi.nvars: _one(phi.order)}}
    bound = order // place_degree
    if bound >= 1 and monoid_cone.rays:
        # Levels of the grading can exceed the u-bound when specializations
        # carry negative slopes; the level ceiling rescales by the worst ray.
        ratio = max(Fraction(dot(datum_check.rho, r), dot(w, r))
                    for r in monoid_cone.rays)
        level_top = math.floor(bound * max(ratio, Fraction(0)))
        for level in range(1, level_top + 1):
            for pt in points_at_level(monoid_cone, datum_check.rho, level):
                mon = psi.value(pt, place_degree)
                if 0 < mon.u <= order:
                    _accumulate(out, mon, phi.order)
    return TruncatedSeries.from_dict(out, phi.nvars, phi.order, order)


def _one(order):
    from .cyclotomic import Cyc
    return Cyc.one(order)


def _accumulate(data: dict, mon: Monomial, order: int):
    from .cyclotomic import Cyc
    bucket = data.setdefault(mon.u, {})
    add = Cyc.root_power(mon.zeta, order)
    cur = bucket.get(mon.z)
    new = add if cur is None else cur + add
    if new.is_zero():
        bucket.pop(mon.z, None)
    else:
        bucket[mon.z] = new


def euler_product(local_factor, curve: Curve, order: int,
                  jobs: int | None = None,
                  max_degree: int | None = None) -> TruncatedSeries:
    """prod over degrees of local_factor(degree)^(number of places).

    Places of degree above the truncation order cannot contribute, and a
    caller holding a sharper bound on the minimal weight of a nonzero
    point may tighten the cutoff further through max_degree.  Factors for
    distinct degrees may be evaluated concurrently and are multiplied in
    degree order, so the result is schedule-independent.
    """
    top = max(order, 0)
    if max_degree is not None:
        top = min(top, max_degree)
    degrees = list(range(1, top + 1))
    if not degrees:
        return local_factor(1).power(0)
    table = place_counts(curve, len(degrees))
    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            factors = list(pool.map(local_factor, degrees))
    else:
        factors = [local_factor(d) for d in degrees]
    out = None
    for d, f in zip(degrees, factors):
        piece = f.power(table.a(d))
        out = piece if out is None else out * piece
    return out


def monoid_weight_minimum(cone: Cone, weight: Vector) -> int:
    """Minimum of a ray-positive weight over the nonzero monoid points.

    Realised on a Hilbert-basis element: every nonzero point is a sum of
    them with positive weights.  A ray minimum is not enough; interior
    generators can sit strictly below every ray.
    """
    basis = hilbert_basis(cone)
    if not basis:
        return 1
    return min(dot(weight, b) for b in basis)


def automorphic_period(datum: GradedToricDatum, curve: Curve, chi: Character,
                       order: int, jobs: int | None = None) -> TruncatedSeries:
    """Prefactored Euler product of automorphic local factors.

    The global normalization constant Delta^((dim X - dim T)/4) is 1 here
    because the variety and the torus share the same dimension.
    """
    pref = chi.value(datum.rho)
    w = positivity_certificate(datum.cone, chi, datum.eta)
    cutoff = order // monoid_weight_minimum(datum.cone, w)
    series = euler_product(
        lambda d: automorphic_local_factor(datum, chi, d, order),
        curve, order, jobs=jobs, max_degree=cutoff)
    return series * TruncatedSeries.from_monomial(pref, chi.nvars, chi.order)


def spectral_period(datum_check: GradedToricDatum, curve: Curve, phi: Character,
                    order: int, jobs: int | None = None) -> TruncatedSeries:
    """Normalized product of graded Frobenius traces at the unique fixed point.

    The prefactor is the eigenform scalar times the quarter-discriminant
    power u^((1-g)(epsilon - r)).
    """
    epsilon = dot(datum_check.rho, datum_check.eta)
    shift = (1 - curve.genus) * (epsilon - datum_check.rank)
    z_scalar = phi.value(datum_check.eta)
    pref = Monomial(z_scalar.zeta, z_scalar.u + shift, z_scalar.z)
    monoid_cone = dual_cone(datum_check.cone)
    w = positivity_certificate(monoid_cone, phi, datum_check.rho)
    cutoff = order // monoid_weight_minimum(monoid_cone, w)
    series = euler_product(
        lambda d: spectral_local_factor(datum_check, phi, d, order),
        curve, order, jobs=jobs, max_degree=cutoff)
    return series * TruncatedSeries.from_monomial(pref, phi.nvars, phi.order)


@dataclass(frozen=True)
class DirectionVerdict:
    automorphic_side: str
    spectral_side: str
    equal: bool
    mismatch: tuple | None
    automorphic_series: TruncatedSeries
    compared_spectral_series: TruncatedSeries


@dataclass(frozen=True)
class PeriodReport:
    duality_exponent: int
    directions: tuple[DirectionVerdict, ...]
    local_samples: dict

    @property
    def equal(self) -> bool:
        return all(d.equal for d in self.directions)

    def first_failure(self):
        for d in self.directions:
            if not d.equal:
                return d
        return None


def _compare_direction(aut_datum, spec_datum, name_a, name_s, curve, chi,
                       order, exponent, jobs=None) -> DirectionVerdict:
    lhs = automorphic_period(aut_datum, curve, chi, order, jobs=jobs)
    rhs = spectral_period(spec_datum, curve, chi, order, jobs=jobs)
    rhs_scaled = rhs.shift_u(exponent)
    mism = lhs.first_mismatch(rhs_scaled)
    return DirectionVerdict(
        automorphic_side=name_a, spectral_side=name_s,
        equal=mism is None, mismatch=mism,
        automorphic_series=lhs, compared_spectral_series=rhs_scaled)


def verify_weak_duality(pair: GradedDualPair, curve: Curve, chi: Character,
                        order: int, jobs: int | None = None,
                        sample_degrees: int = 3) -> PeriodReport:
    """Check both period identities of the pair at one character.

    Direction one pairs the automorphic engine on the primal side against
    the spectral engine on the dual side (scaled by u^(r - epsilon));
    direction two exchanges the roles.
    """
    expo = pair.discrepancy
    d1 = _compare_direction(pair.side_x, pair.side_xcheck, "X", "X-check",
                            curve, chi, order, expo, jobs=jobs)
    d2 = _compare_direction(pair.side_xcheck, pair.side_x, "X-check", "X",
                            curve, chi, order, expo, jobs=jobs)
    samples = {}
    for deg in range(1, min(sample_degrees, max(order, 1)) + 1):
        samples[deg] = {
            "automorphic": automorphic_local_factor(pair.side_x, chi, deg, order),
            "spectral": spectral_local_factor(pair.side_xcheck, chi, deg, order),
        }
    return PeriodReport(duality_exponent=expo, directions=(d1, d2),
                        local_samples=samples)
