"""The base projective line over F_q: places, zeta series, normalizations.

Only genus zero is supported; the place-count machinery is driven by the
point counts N_n = q^n + 1, inverted to closed-point counts by Mobius
summation.  The half-canonical divisor data (one marked degree-one place
with twist -1) realises the degree constraint 2 * sum(m_v deg v) = -2 and
feeds the normalization prefactors of both period engines.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .characters import Character
from .cyclotomic import Cyc
from .duality import GradedDualPair
from .intlinalg import vec
from .series import Monomial, TruncatedSeries


class BranchAmbiguity(ValueError):
    """A fractional cocharacter forced a fractional power of a formal variable."""


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    if n == 1:
        return 1
    m = 1
    p = 2
    rest = n
    while p * p <= rest:
        if rest % p == 0:
            rest //= p
            if rest % p == 0:
                return 0
            m = -m
        p += 1
    if rest > 1:
        m = -m
    return m


@dataclass(frozen=True)
class Curve:
    """P^1 over F_q with its canonical spin data.

    spin lists (place_degree, m_v) pairs for the marked places; all other
    places carry m_v = 0.  The default is the divisor of dx: a single
    double pole at infinity, so m_infinity = -1 at a degree-one place.
    """

    q: int
    genus: int = 0
    spin: tuple[tuple[int, int], ...] = ((1, -1),)

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("q must be a prime power >= 2")
        if self.genus != 0:
            raise ValueError("only genus zero is supported")
        total = sum(2 * m * d for d, m in self.spin)
        if total != 2 * self.genus - 2:
            raise ValueError(
                f"spin degree sum {total} != 2g-2 = {2 * self.genus - 2}")

    def point_count(self, n: int) -> int:
        return self.q ** n + 1

    def spin_inverse_degree(self) -> int:
        """deg of the idele with local coordinates (-m_v); equals 1 - g."""
        return -sum(m * d for d, m in self.spin)


@dataclass(frozen=True)
class PlaceTable:
    counts: tuple[int, ...]

    def a(self, d: int) -> int:
        return self.counts[d - 1]

    def degrees(self):
        return range(1, len(self.counts) + 1)


def place_counts(curve: Curve, cutoff: int) -> PlaceTable:
    """Closed points of each degree up to cutoff, by Mobius inversion."""
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    counts = []
    for d in range(1, cutoff + 1):
        total = 0
        for e in range(1, d + 1):
            if d % e == 0:
                total += mobius(e) * curve.point_count(d // e)
        assert total % d == 0, "point counts are not Mobius-consistent"
        counts.append(total // d)
    return PlaceTable(counts=tuple(counts))


def zeta_series(curve: Curve, order: int) -> TruncatedSeries:
    """prod over places (1 - t^deg)^(-1), truncated at t^order.

    Returned as a series in a single formal exponent slot (the u-slot
    doubles as the t-slot; there are no character variables).
    """
    out = TruncatedSeries.one(0, 1, order)
    if order < 1:
        return out
    table = place_counts(curve, order)
    one = Cyc.one(1)
    for d in table.degrees():
        geo = TruncatedSeries.from_dict(
            {k: {(): one} for k in range(0, order + 1, d)}, 0, 1, order)
        out = out * geo.power(table.a(d))
    return out


def divisor_count_series(curve: Curve, order: int) -> TruncatedSeries:
    """Closed form: the t^m coefficient is (q^(m+1)-1)/(q-1), genus zero."""
    data = {m: {(): Cyc.rational((curve.q ** (m + 1) - 1) // (curve.q - 1), 1)}
            for m in range(order + 1)}
    return TruncatedSeries.from_dict(data, 0, 1, order)


def aut_prefactor(pair: GradedDualPair, curve: Curve, chi: Character) -> Monomial:
    """chi evaluated at the grading cocharacter pushed through the spin idele.

    The class of rho(spin^{-1/2}) is (1-g) * rho = rho at genus zero, so
    the prefactor is just the character value at rho.
    """
    e = curve.spin_inverse_degree()
    rho = vec(pair.side_x.rho)
    return chi.value(tuple(e * c for c in rho))


def spec_prefactor(pair: GradedDualPair, curve: Curve, chi: Character) -> Monomial:
    """The eigenform scalar times the quarter-discriminant normalization.

    The dual side's eigenform is the primal grading rho, so the scalar is
    the same character value; the discriminant quarter-power contributes
    u^((1-g) * (epsilon - r)).
    """
    base = aut_prefactor(pair, curve, chi)
    shift = (1 - curve.genus) * (pair.epsilon - pair.rank)
    return Monomial(base.zeta, base.u + shift, base.z)


def normalization_prefactors(pair: GradedDualPair, curve: Curve,
                             chi: Character) -> tuple[Monomial, Monomial, int]:
    """(automorphic prefactor, spectral prefactor, duality exponent r - epsilon)."""
    return (aut_prefactor(pair, curve, chi),
            spec_prefactor(pair, curve, chi),
            pair.rank - pair.epsilon)
