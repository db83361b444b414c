"""Piecewise-linear heights on fans and their character transforms.

A height is a fan of maximal cones with one integer slope covector per
cone, agreeing on shared faces.  Its local transform against a character
sums q_v^(-slope value) over the lattice points of the support, which in
u-coordinates doubles the exponent relative to the half-density weight
used by the period engines; with slope equal to half the eigenform the
two local factors coincide on the nose.
"""

from __future__ import annotations

from dataclasses import dataclass

from .characters import Character
from .cones import Cone, dual_description, hilbert_basis, points_at_level
from .curve import Curve
from .cyclotomic import Cyc
from .intlinalg import Vector, dot, vec
from .periods import PositivityViolation, euler_product
from .series import TruncatedSeries


class OutsideSupport(ValueError):
    pass


@dataclass(frozen=True)
class PiecewiseLinearHeight:
    cones: tuple[Cone, ...]
    slopes: tuple[Vector, ...]

    def __post_init__(self):
        if len(self.cones) != len(self.slopes):
            raise ValueError("one slope covector per maximal cone")
        for c, s in zip(self.cones, self.slopes):
            if len(s) != c.ambient_rank:
                raise ValueError("slope has wrong length")
        _check_continuity(self.cones, self.slopes)

    @property
    def ambient_rank(self) -> int:
        return self.cones[0].ambient_rank


def _check_continuity(cones, slopes):
    """Slopes of overlapping cones must agree on the intersection."""
    for i in range(len(cones)):
        for j in range(i + 1, len(cones)):
            constraints = list(cones[i].facets) + list(cones[j].facets)
            lin, rays = dual_description(constraints, cones[i].ambient_rank)
            for v in list(rays) + list(lin):
                if dot(slopes[i], v) != dot(slopes[j], v):
                    raise ValueError(
                        f"slopes disagree at {v} on cones {i} and {j}")


def make_height(cone_rays, slopes, ambient_rank: int) -> PiecewiseLinearHeight:
    from .cones import make_cone
    cones = tuple(make_cone(rs, ambient_rank) for rs in cone_rays)
    return PiecewiseLinearHeight(cones=cones, slopes=tuple(vec(s) for s in slopes))


def height_exponent(h: PiecewiseLinearHeight, lam) -> int:
    """Value of the piecewise-linear function at a lattice point of the support."""
    lam = vec(lam)
    for c, s in zip(h.cones, h.slopes):
        if c.contains(lam):
            return dot(s, lam)
    raise OutsideSupport(f"{lam} is outside the fan support")


def height_fourier_local(h: PiecewiseLinearHeight, chi: Character,
                         place_degree: int, order: int) -> TruncatedSeries:
    """Local transform: sum over support of chi-value times q_v^(-height).

    The height exponent enters as u^(2 * deg * height); there is no
    half-density twist here.  The combined functional 2*slope + character
    slope must be strictly positive on every ray of every cone.
    """
    out = {0: {(0,) * chi.nvars: Cyc.one(chi.order)}}
    seen = {tuple([0] * h.ambient_rank)}
    bound = order // place_degree
    for c, s in zip(h.cones, h.slopes):
        combined = tuple(2 * a + m.u for a, m in zip(s, chi.coords))
        for r in c.rays:
            v = dot(combined, r)
            if v <= 0:
                raise PositivityViolation(r, v)
        for level in range(1, bound + 1):
            for pt in points_at_level(c, combined, level):
                if pt in seen:
                    continue
                seen.add(pt)
                mon = chi.value(pt, place_degree)
                total_u = mon.u + 2 * place_degree * dot(s, pt)
                if total_u > order:
                    continue
                bucket = out.setdefault(total_u, {})
                add = Cyc.root_power(mon.zeta, chi.order)
                cur = bucket.get(mon.z)
                new = add if cur is None else cur + add
                if new.is_zero():
                    bucket.pop(mon.z, None)
                else:
                    bucket[mon.z] = new
    return TruncatedSeries.from_dict(out, chi.nvars, chi.order, order)


def height_fourier_global(h: PiecewiseLinearHeight, curve: Curve,
                          chi: Character, order: int, jobs=None) -> TruncatedSeries:
    """Euler product of local transforms over all place degrees.

    The degree cutoff divides by the minimal combined weight over the
    nonzero monoid points (2 for plain unitary data, so half the order);
    the minimum is realised on a Hilbert-basis element since every point
    is a sum of them, so rays alone would overestimate it.
    """
    w_min = None
    for c, s in zip(h.cones, h.slopes):
        combined = tuple(2 * a + m.u for a, m in zip(s, chi.coords))
        for r in c.rays:
            v = dot(combined, r)
            if v <= 0:
                raise PositivityViolation(r, v)
        for b in hilbert_basis(c):
            v = dot(combined, b)
            if v <= 0:
                raise PositivityViolation(b, v)
            w_min = v if w_min is None else min(w_min, v)
    if w_min is None:
        w_min = max(order, 1)

    def factor(deg: int) -> TruncatedSeries:
        return height_fourier_local(h, chi, deg, order)

    degrees_top = order // w_min

    def guarded(deg: int) -> TruncatedSeries:
        if deg > degrees_top:
            return TruncatedSeries.one(chi.nvars, chi.order, order)
        return factor(deg)

    return euler_product(guarded, curve, order, jobs=jobs)
