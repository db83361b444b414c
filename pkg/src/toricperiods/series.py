"""Truncated Laurent series in u with Laurent-polynomial coefficients.

The coefficient ring is Q(zeta_N)[z_1^{±1}, ..., z_s^{±1}] for a fixed
cyclotomic order N and a fixed tuple of formal character variables.  A
series knows the largest u-exponent it is exact up to (`trunc`), so a
product of series each known modulo u^{U+1} correctly tracks how far the
result can be trusted, including through negative-exponent prefactors.

Everything is exact; nothing is ever evaluated numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import Cyc

ZExp = tuple[int, ...]

# A practically-infinite truncation order for exact monomials.
EXACT = 10 ** 9


@dataclass(frozen=True)
class Monomial:
    """zeta_N^zeta * u^u * z^z with z an exponent vector of the formal variables."""

    zeta: int
    u: int
    z: ZExp

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.zeta + other.zeta, self.u + other.u,
                        tuple(a + b for a, b in zip(self.z, other.z)))

    def power(self, k: int) -> "Monomial":
        return Monomial(self.zeta * k, self.u * k, tuple(a * k for a in self.z))

    def is_one(self, order: int) -> bool:
        return self.zeta % order == 0 and self.u == 0 and not any(self.z)

    @staticmethod
    def one(nvars: int) -> "Monomial":
        return Monomial(0, 0, (0,) * nvars)


def _zp_add_term(poly: dict, zexp: ZExp, val: Cyc):
    cur = poly.get(zexp)
    if cur is None:
        if not val.is_zero():
            poly[zexp] = val
        return
    new = cur + val
    if new.is_zero():
        del poly[zexp]
    else:
        poly[zexp] = new


def _zp_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for za, ca in a.items():
        for zb, cb in b.items():
            _zp_add_term(out, tuple(x + y for x, y in zip(za, zb)), ca * cb)
    return out


def _zp_scale(a: dict, c) -> dict:
    out = {}
    for z, v in a.items():
        w = v * c
        if not w.is_zero():
            out[z] = w
    return out


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients by u-exponent, exact for every exponent <= trunc."""

    nvars: int
    order: int
    trunc: int
    coeffs: tuple  # sorted tuple of (u_exp, tuple of (z_exp, Cyc))

    # --- construction -------------------------------------------------

    @staticmethod
    def zero(nvars: int, order: int, trunc: int) -> "TruncatedSeries":
        return TruncatedSeries(nvars, order, trunc, ())

    @staticmethod
    def one(nvars: int, order: int, trunc: int) -> "TruncatedSeries":
        return TruncatedSeries.from_monomial(Monomial.one(nvars), nvars, order, trunc)

    @staticmethod
    def from_monomial(mon: Monomial, nvars: int, order: int,
                      trunc: int = EXACT, scale=1) -> "TruncatedSeries":
        c = Cyc.root_power(mon.zeta, order) * Fraction(scale)
        if c.is_zero():
            return TruncatedSeries.zero(nvars, order, trunc)
        return TruncatedSeries(nvars, order, trunc,
                               ((mon.u, ((mon.z, c),)),))

    @staticmethod
    def from_dict(data: dict, nvars: int, order: int, trunc: int) -> "TruncatedSeries":
        rows = []
        for u in sorted(data):
            poly = data[u]
            terms = tuple(sorted(((z, c) for z, c in poly.items() if not c.is_zero()),
                                 key=lambda t: t[0]))
            if terms and u <= trunc:
                rows.append((u, terms))
        return TruncatedSeries(nvars, order, trunc, tuple(rows))

    # --- views ---------------------------------------------------------

    def as_dict(self) -> dict:
        return {u: dict(terms) for u, terms in self.coeffs}

    def coefficient(self, u: int) -> dict:
        for uu, terms in self.coeffs:
            if uu == u:
                return dict(terms)
        return {}

    @property
    def low(self) -> int | None:
        return self.coeffs[0][0] if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    # --- arithmetic ----------------------------------------------------

    def _require_compatible(self, other: "TruncatedSeries"):
        if self.nvars != other.nvars or self.order != other.order:
            raise ValueError("incompatible series rings")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._require_compatible(other)
        trunc = min(self.trunc, other.trunc)
        data: dict = {}
        for u, terms in self.coeffs:
            if u <= trunc:
                for z, c in terms:
                    _zp_add_term(data.setdefault(u, {}), z, c)
        for u, terms in other.coeffs:
            if u <= trunc:
                for z, c in terms:
                    _zp_add_term(data.setdefault(u, {}), z, c)
        return TruncatedSeries.from_dict(data, self.nvars, self.order, trunc)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + other.scale(-1)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._require_compatible(other)
        if self.is_zero() or other.is_zero():
            return TruncatedSeries.zero(self.nvars, self.order,
                                        min(self.trunc, other.trunc))
        # Exactness of the product: a term at exponent e needs every split
        # e = e1 + e2 with e1 from self known and e2 from other known.
        trunc = min(self.trunc + other.low, other.trunc + self.low, EXACT)
        data: dict = {}
        for u1, t1 in self.coeffs:
            for u2, t2 in other.coeffs:
                u = u1 + u2
                if u > trunc:
                    continue
                bucket = data.setdefault(u, {})
                for z1, c1 in t1:
                    for z2, c2 in t2:
                        _zp_add_term(bucket, tuple(a + b for a, b in zip(z1, z2)),
                                     c1 * c2)
        return TruncatedSeries.from_dict(data, self.nvars, self.order, trunc)

    def scale(self, c) -> "TruncatedSeries":
        if isinstance(c, (int, Fraction)):
            c = Cyc.rational(c, self.order)
        data = {u: _zp_scale(dict(terms), c) for u, terms in self.coeffs}
        return TruncatedSeries.from_dict(data, self.nvars, self.order, self.trunc)

    def power(self, k: int) -> "TruncatedSeries":
        """Binary powering; k must be nonnegative."""
        if k < 0:
            raise ValueError("negative powers only via reciprocal")
        result = TruncatedSeries.one(self.nvars, self.order, self.trunc)
        if k == 0:
            return result
        base = self
        while True:
            if k & 1:
                result = result * base
            k >>= 1
            if not k:
                return result
            base = base * base

    def shift_u(self, e: int) -> "TruncatedSeries":
        rows = tuple((u + e, terms) for u, terms in self.coeffs)
        return TruncatedSeries(self.nvars, self.order,
                               min(self.trunc + e, EXACT), rows)

    def substitute_u_power(self, d: int) -> "TruncatedSeries":
        """u -> u^d and z -> z^d simultaneously (the degree-d substitution)."""
        if d < 1:
            raise ValueError("substitution degree must be >= 1")
        data = {}
        for u, terms in self.coeffs:
            data[u * d] = {tuple(a * d for a in z): c for z, c in terms}
        trunc = self.trunc * d + d - 1 if self.trunc < EXACT else EXACT
        return TruncatedSeries.from_dict(data, self.nvars, self.order,
                                         min(trunc, EXACT))

    def reciprocal(self) -> "TruncatedSeries":
        """Inverse series, exact to the same order; lowest term must be a unit."""
        if self.is_zero():
            raise ZeroDivisionError("reciprocal of the zero series")
        low = self.low
        lead = self.coefficient(low)
        if len(lead) != 1:
            raise ZeroDivisionError("lowest coefficient is not a monomial unit")
        (z0, c0), = lead.items()
        c0_inv = c0.inverse()
        z0_inv = tuple(-a for a in z0)
        # Normalise to 1 + positive-order tail, invert, then shift back.
        depth = self.trunc - low
        tail = {}
        for u, terms in self.coeffs:
            if u == low:
                rest = [(z, c) for z, c in terms if z != z0]
            else:
                rest = list(terms)
            for z, c in rest:
                _zp_add_term(tail.setdefault(u - low, {}),
                             tuple(a + b for a, b in zip(z, z0_inv)), c * c0_inv)
        inv = {0: {(0,) * self.nvars: Cyc.one(self.order)}}
        for n in range(1, depth + 1):
            acc: dict = {}
            for m in range(0, n):
                t = tail.get(n - m)
                if not t or m not in inv:
                    continue
                for z1, c1 in inv[m].items():
                    for z2, c2 in t.items():
                        _zp_add_term(acc, tuple(a + b for a, b in zip(z1, z2)),
                                     c1 * c2)
            if acc:
                inv[n] = _zp_scale(acc, Cyc.rational(-1, self.order))
        data = {}
        for n, poly in inv.items():
            data[n - low] = {tuple(a + b for a, b in zip(z, z0_inv)): c * c0_inv
                             for z, c in poly.items()}
        return TruncatedSeries.from_dict(data, self.nvars, self.order, depth - low)

    # --- comparison and output ------------------------------------------

    def first_mismatch(self, other: "TruncatedSeries"):
        """First (u_exp, mine, theirs) where the series differ, else None.

        Compares every exponent up to the common exactness order.
        """
        self._require_compatible(other)
        top = min(self.trunc, other.trunc)
        exps = sorted({u for u, _ in self.coeffs} | {u for u, _ in other.coeffs})
        for u in exps:
            if u > top:
                break
            a = self.coefficient(u)
            b = other.coefficient(u)
            if a != b:
                return (u, a, b)
        return None

    def serialize(self) -> list:
        """[[u_exp, [[num, den, zeta_exp, z_exps], ...]], ...] with string ints."""
        rows = []
        for u, terms in self.coeffs:
            row_terms = []
            for z, c in terms:
                for k, frac in enumerate(c.coeffs):
                    if frac:
                        row_terms.append([str(frac.numerator), str(frac.denominator),
                                          str(k), [str(e) for e in z]])
            rows.append([str(u), row_terms])
        return rows

    def __str__(self):
        if self.is_zero():
            return f"O(u^{self.trunc + 1})"
        parts = []
        for u, terms in self.coeffs:
            bits = []
            for z, c in terms:
                zs = "".join(f"*z{i + 1}^{e}" for i, e in enumerate(z) if e)
                bits.append(f"({c}){zs}")
            parts.append(f"[{' + '.join(bits)}]*u^{u}")
        return " + ".join(parts) + f" + O(u^{self.trunc + 1})"
