"""Rational polyhedral cones: dual descriptions, faces, Hilbert bases.

A cone is stored with both generators (primitive extreme rays) and an
outer description (primitive facet covectors); the two are tied together
by an incremental double-description computation, so equality of cones is
plain value equality of the canonical sorted data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from .intlinalg import (
    Vector,
    dot,
    identity_matrix,
    matrix_rank,
    neg_vec,
    primitive,
    saturate_sublattice,
    scale_vec,
    solve_integer,
    sub_vec,
    vec,
)


class NotStronglyConvex(ValueError):
    """Raised when cone construction meets a full line."""

    def __init__(self, witness: Vector):
        self.witness = witness
        super().__init__(f"cone contains the line through {witness}")


class NotAFace(ValueError):
    pass


class NotPositiveGrading(ValueError):
    """Raised when a grading covector is not strictly positive on a ray."""

    def __init__(self, witness: Vector, value: int):
        self.witness = witness
        self.value = value
        super().__init__(f"grading takes value {value} on ray {witness}")


def dual_description(vectors, n: int) -> tuple[list[Vector], list[Vector]]:
    """Lineality basis and extreme rays of {y : <v, y> >= 0 for all v}.

    Incremental double description.  The running cone is span(lineality)
    + cone(rays); each constraint either splits off a lineality generator
    or recombines adjacent positive/negative ray pairs.  Adjacency uses
    the combinatorial (zero-set inclusion) test, which is exact because
    the stored rays are extreme at every step.
    """
    lineality: list[Vector] = [tuple(row) for row in identity_matrix(n)]
    rays: list[Vector] = []
    zerosets: list[set[int]] = []
    seen: list[Vector] = []
    for a in (vec(v) for v in vectors):
        if not any(a):
            continue
        idx = len(seen)
        seen.append(a)
        pivots = [(l, dot(a, l)) for l in lineality]
        pivot = next(((l, s) for l, s in pivots if s != 0), None)
        if pivot is not None:
            l0, s0 = pivot
            if s0 < 0:
                l0, s0 = neg_vec(l0), -s0
            new_lin = []
            for l in lineality:
                s = dot(a, l)
                if l in (l0, neg_vec(l0)):
                    continue
                new_lin.append(primitive(sub_vec(scale_vec(s0, l), scale_vec(s, l0))))
            new_rays, new_zero = [], []
            for r, z in zip(rays, zerosets):
                s = dot(a, r)
                new_rays.append(primitive(sub_vec(scale_vec(s0, r), scale_vec(s, l0))))
                new_zero.append(z | {idx})
            new_rays.append(l0)
            new_zero.append(set(range(idx)))
            lineality, rays, zerosets = new_lin, new_rays, new_zero
            continue
        pos = [i for i, r in enumerate(rays) if dot(a, r) > 0]
        neg = [i for i, r in enumerate(rays) if dot(a, r) < 0]
        zero = [i for i, r in enumerate(rays) if dot(a, r) == 0]
        if not neg:
            for i in zero:
                zerosets[i].add(idx)
            continue
        combos = []
        for i in pos:
            for j in neg:
                meet = zerosets[i] & zerosets[j]
                adjacent = not any(k for k in range(len(rays))
                                   if k != i and k != j and meet <= zerosets[k])
                if not adjacent:
                    continue
                w = primitive(sub_vec(scale_vec(dot(a, rays[i]), rays[j]),
                                      scale_vec(dot(a, rays[j]), rays[i])))
                if any(w):
                    combos.append((w, meet | {idx}))
        keep_rays = [rays[i] for i in pos + zero]
        keep_zero = [zerosets[i] | ({idx} if i in zero else set()) for i in pos + zero]
        for w, z in combos:
            if w not in keep_rays:
                keep_rays.append(w)
                keep_zero.append(z)
        rays, zerosets = keep_rays, keep_zero
    return lineality, rays


def _canonical(vectors) -> tuple[Vector, ...]:
    return tuple(sorted(set(vectors)))


@dataclass(frozen=True)
class Cone:
    """Rational polyhedral cone with matched inner and outer descriptions.

    rays generate the cone; facets cut it out: cone = {x : <f, x> >= 0 for
    every facet covector f}.  Cones that are not full-dimensional carry
    the +/- pair of each covector vanishing on their span inside facets,
    and non-strongly-convex cones (only ever produced as duals or images)
    carry +/- ray pairs for their lines.
    """

    ambient_rank: int
    rays: tuple[Vector, ...]
    facets: tuple[Vector, ...]
    strongly_convex: bool
    full_dimensional: bool

    def contains(self, v) -> bool:
        v = vec(v)
        return all(dot(f, v) >= 0 for f in self.facets)

    def dim(self) -> int:
        if not self.rays:
            return 0
        return matrix_rank(self.rays)

    def ray_set(self) -> frozenset:
        return frozenset(self.rays)

    def __str__(self):
        return f"Cone(rank={self.ambient_rank}, rays={list(self.rays)})"


def _build_cone(generators, n: int, allow_lines: bool) -> Cone:
    gens = [primitive(vec(g)) for g in generators]
    gens = [g for g in gens if any(g)]
    lin_f, dual_rays = dual_description(gens, n)
    facets = list(dual_rays)
    for l in lin_f:
        facets.extend((l, neg_vec(l)))
    lin_r, rays = dual_description(facets, n)
    if lin_r and not allow_lines:
        raise NotStronglyConvex(lin_r[0])
    all_rays = list(rays)
    for l in lin_r:
        all_rays.extend((l, neg_vec(l)))
    return Cone(
        ambient_rank=n,
        rays=_canonical(all_rays),
        facets=_canonical(facets),
        strongly_convex=not lin_r,
        full_dimensional=not lin_f)


def make_cone(rays, ambient_rank: int | None = None) -> Cone:
    """Cone generated by the given integer vectors; empty list gives {0}.

    Raises NotStronglyConvex (with a witness line) if the generators span
    a line inside the cone.
    """
    rays = [vec(r) for r in rays]
    if ambient_rank is None:
        if not rays:
            raise ValueError("ambient_rank required for the zero cone")
        ambient_rank = len(rays[0])
    for r in rays:
        if len(r) != ambient_rank:
            raise ValueError("ray has wrong length")
    return _build_cone(rays, ambient_rank, allow_lines=False)


def dual_cone(c: Cone) -> Cone:
    """{x : <x, r> >= 0 for all rays r of c}; exact involution on stored data."""
    return Cone(
        ambient_rank=c.ambient_rank,
        rays=c.facets,
        facets=c.rays,
        strongly_convex=c.full_dimensional,
        full_dimensional=c.strongly_convex)


def contains_point(c: Cone, v) -> bool:
    return c.contains(v)


@dataclass(frozen=True)
class FaceLattice:
    faces: tuple[Cone, ...]
    order: frozenset  # pairs (i, j) with faces[i] a subset of faces[j]

    def __len__(self):
        return len(self.faces)

    def index_of(self, face: Cone) -> int:
        target = face.ray_set()
        for i, f in enumerate(self.faces):
            if f.ray_set() == target:
                return i
        raise KeyError("not a face of this lattice")


@lru_cache(maxsize=None)
def faces(c: Cone) -> FaceLattice:
    """All faces of a strongly convex cone, as cones in the same ambient space.

    Every face is the intersection of the facet hyperplanes it saturates,
    so enumerating facet subsets and collecting the rays they annihilate
    finds them all (including {0} and the cone itself).
    """
    if not c.strongly_convex:
        raise ValueError("face lattice requires a strongly convex cone")
    facet_list = [f for f in c.facets]
    ray_subsets = set()
    for k in range(len(facet_list) + 1):
        if k == 0:
            ray_subsets.add(frozenset(c.rays))
            continue
        for sel in combinations(range(len(facet_list)), k):
            rs = frozenset(r for r in c.rays
                           if all(dot(facet_list[i], r) == 0 for i in sel))
            ray_subsets.add(rs)
    built = [_build_cone(sorted(rs), c.ambient_rank, allow_lines=False)
             for rs in ray_subsets]
    built.sort(key=lambda f: (f.dim(), f.rays))
    order = frozenset((i, j) for i, fi in enumerate(built)
                      for j, fj in enumerate(built)
                      if fi.ray_set() <= fj.ray_set())
    return FaceLattice(faces=tuple(built), order=order)


def face_of(c: Cone, ray_subset) -> Cone:
    """The face of c generated by the given subset of its rays."""
    rs = frozenset(vec(r) for r in ray_subset)
    if not rs <= c.ray_set():
        raise NotAFace("vectors are not rays of the cone")
    return _build_cone(sorted(rs), c.ambient_rank, allow_lines=False)


def is_face(tau: Cone, sigma: Cone) -> bool:
    if not tau.ray_set() <= sigma.ray_set():
        return False
    saturated = [f for f in sigma.facets
                 if all(dot(f, r) == 0 for r in tau.rays)]
    cut = frozenset(r for r in sigma.rays
                    if all(dot(f, r) == 0 for f in saturated))
    return cut == tau.ray_set()


def face_dual(tau: Cone, sigma: Cone) -> Cone:
    """The face of the dual cone annihilating tau: {y in dual : <y, tau> = 0}."""
    if not is_face(tau, sigma):
        raise NotAFace(f"{tau} is not a face of {sigma}")
    dual = dual_cone(sigma)
    rays = [g for g in dual.rays if all(dot(g, r) == 0 for r in tau.rays)]
    return _build_cone(rays, sigma.ambient_rank, allow_lines=True)


def _level_box(rays, weights, m: int, n: int):
    """Per-coordinate bounds for {sum a_i r_i : a_i >= 0, sum a_i w_i <= m}."""
    lo = [Fraction(0)] * n
    hi = [Fraction(0)] * n
    for r, w in zip(rays, weights):
        for j in range(n):
            t = Fraction(m * r[j], w)
            if t > 0:
                hi[j] += t
            else:
                lo[j] += t
    return ([math.ceil(x) for x in lo], [math.floor(x) for x in hi])


def _check_grading(c: Cone, w: Vector) -> list[int]:
    values = []
    for r in c.rays:
        v = dot(w, r)
        if v <= 0:
            raise NotPositiveGrading(r, v)
        values.append(v)
    return values


@lru_cache(maxsize=None)
def points_at_level(c: Cone, w: Vector, m: int) -> tuple[Vector, ...]:
    """Lattice points x of the cone with <w, x> == m, without duplicates.

    Requires w strictly positive on every nonzero ray, which bounds the
    level slice; candidates come from a box derived from the rays and are
    kept by the facet test.
    """
    w = vec(w)
    weights = _check_grading(c, w)
    if m < 0:
        return ()
    if m == 0:
        return (tuple([0] * c.ambient_rank),)
    if not c.rays:
        return ()
    lo, hi = _level_box(c.rays, weights, m, c.ambient_rank)
    out = []
    for cand in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if dot(w, cand) == m and c.contains(cand):
            out.append(cand)
    out.sort()
    return tuple(out)


@lru_cache(maxsize=None)
def hilbert_basis(c: Cone) -> tuple[Vector, ...]:
    """Minimal generating set of the monoid (cone intersect Z^n).

    Level-wise saturation: enumerate points up to the level bound given by
    the sum of ray levels (any point reduces modulo a simplicial subcone
    spanned by rays, so generators live below that bound), then keep the
    points that are not a sum of two nonzero monoid points.  The monoid is
    saturated, so membership of a difference is just cone membership.
    """
    if not c.strongly_convex:
        raise ValueError("Hilbert basis requires a strongly convex cone")
    if not c.rays:
        return ()
    n = c.ambient_rank
    if not c.full_dimensional:
        span_basis = saturate_sublattice(c.rays, n)
        coords = []
        for r in c.rays:
            x = solve_integer(span_basis, r)
            assert x is not None, "ray outside the saturated span"
            coords.append(x)
        inner = make_cone(coords, len(span_basis))
        lifted = []
        for h in hilbert_basis(inner):
            v = tuple(sum(h[j] * span_basis[j][i] for j in range(len(span_basis)))
                      for i in range(n))
            lifted.append(v)
        return tuple(sorted(lifted))
    grading = tuple(sum(col) for col in zip(*c.facets))
    levels = _check_grading(c, grading)
    bound = sum(levels)
    pts = []
    for m in range(1, bound + 1):
        pts.extend(points_at_level(c, grading, m))
    pts.sort(key=lambda p: (dot(grading, p), p))
    basis = []
    for h in pts:
        reducible = False
        for p in pts:
            if dot(grading, p) >= dot(grading, h):
                break
            diff = sub_vec(h, p)
            if any(diff) and c.contains(diff):
                reducible = True
                break
        if not reducible:
            basis.append(h)
    return tuple(sorted(basis))


def image_cone(c: Cone, proj) -> Cone:
    """Image of the cone under a lattice projection (a LatticeMap).

    The image of a strongly convex cone can contain lines; the result
    reports that through its flags rather than raising.
    """
    gens = [proj.apply(r) for r in c.rays]
    return _build_cone(gens, proj.target_rank, allow_lines=True)


def is_conical_grading(c: Cone, rho) -> bool:
    """True when rho sits in the relative interior of a full-dimensional c.

    Equivalently every level set of the pairing with rho on the dual cone
    is finite with nonnegative values.
    """
    rho = vec(rho)
    return c.full_dimensional and all(dot(f, rho) > 0 for f in c.facets)
