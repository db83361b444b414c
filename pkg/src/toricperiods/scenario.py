"""Scenario files, the built-in catalog, and report assembly.

A scenario bundles a graded cone, a curve, characters, a truncation
order and a list of checks; reports echo the scenario and serialize all
compared series so a failure pinpoints a face/character/coefficient.
Integers are encoded as strings throughout the JSON so arbitrarily large
exact values survive round-trips unchanged.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import __version__
from .characters import Character, character_from_spec
from .cones import NotStronglyConvex, make_cone
from .curve import Curve
from .cyclotomic import lcm_orders
from .duality import (
    GradedDualPair,
    GradedToricDatum,
    unchecked_dual,
    validate_pair,
)
from .heights import (
    PiecewiseLinearHeight,
    height_fourier_global,
    height_fourier_local,
    make_height,
)
from .periods import (
    PositivityViolation,
    automorphic_local_factor,
    verify_weak_duality,
)
from .regularization import verify_langlands_dual_periods
from .stacks import (
    IncompatibleField,
    InducedGradedPair,
    MissingRoots,
    induced_pair,
    make_isogeny,
    verify_stack_duality,
)

KNOWN_CHECKS = ("weak_duality", "orbit_duality", "stack_duality", "height_bridge")


class SchemaError(ValueError):
    """Scenario file problem, reported with the offending field."""

    def __init__(self, pointer: str, message: str):
        self.pointer = pointer
        super().__init__(f"{pointer}: {message}")


@dataclass(frozen=True)
class CharacterSpec:
    name: str
    coords: tuple  # entries: "formal" or (zeta_exp, u_exp)

    def build(self, order: int, nvars: int) -> Character:
        return character_from_spec(self.coords, order=order, nvars=nvars)

    def is_formal(self) -> bool:
        return all(c == "formal" for c in self.coords)


@dataclass(frozen=True)
class Scenario:
    name: str
    rank: int
    rays: tuple
    rho: tuple
    eta: tuple
    curve: Curve
    cyclotomic_order: int
    truncation: int
    characters: tuple[CharacterSpec, ...]
    checks: tuple[str, ...]
    isogeny_matrix: tuple | None = None
    height_cones: tuple | None = None
    height_slopes: tuple | None = None

    def build_pair(self) -> GradedDualPair:
        """Unchecked pair; run_scenario gates on validate_pair first."""
        datum = GradedToricDatum(cone=make_cone(self.rays, self.rank),
                                 rho=self.rho, eta=self.eta)
        return unchecked_dual(datum)

    def build_induced(self) -> InducedGradedPair | None:
        if self.isogeny_matrix is None:
            return None
        return induced_pair(self.build_pair(), make_isogeny(self.isogeny_matrix))

    def build_height(self) -> PiecewiseLinearHeight | None:
        if self.height_cones is None:
            return None
        return make_height(self.height_cones, self.height_slopes, self.rank)


def _expect(data, key, pointer, kind=None, optional=False):
    if key not in data:
        if optional:
            return None
        raise SchemaError(f"{pointer}.{key}", "missing required field")
    value = data[key]
    if kind is not None and not isinstance(value, kind):
        raise SchemaError(f"{pointer}.{key}",
                          f"expected {kind.__name__}, got {type(value).__name__}")
    return value


def _int_of(value, pointer):
    if isinstance(value, bool):
        raise SchemaError(pointer, "expected an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value)
        except ValueError:
            raise SchemaError(pointer, f"not an integer: {value!r}") from None
    raise SchemaError(pointer, f"expected an integer, got {type(value).__name__}")


def _int_vector(value, pointer, length=None):
    if not isinstance(value, list):
        raise SchemaError(pointer, "expected a list of integers")
    out = tuple(_int_of(v, f"{pointer}[{i}]") for i, v in enumerate(value))
    if length is not None and len(out) != length:
        raise SchemaError(pointer, f"expected length {length}, got {len(out)}")
    return out


def _parse_coord(value, pointer):
    if value == "formal":
        return "formal"
    if isinstance(value, dict):
        zeta = _int_of(value.get("zeta", 0), f"{pointer}.zeta")
        u = _int_of(value.get("u", 0), f"{pointer}.u")
        return (zeta, u)
    raise SchemaError(pointer, 'expected "formal" or {"zeta": k, "u": c}')


def parse_scenario(data: dict, pointer: str = "scenario") -> Scenario:
    if not isinstance(data, dict):
        raise SchemaError(pointer, "expected a JSON object")
    name = _expect(data, "name", pointer, str)
    rank = _int_of(_expect(data, "rank", pointer), f"{pointer}.rank")
    if rank < 1:
        raise SchemaError(f"{pointer}.rank", "rank must be >= 1")
    rays_raw = _expect(data, "rays", pointer, list)
    rays = tuple(_int_vector(r, f"{pointer}.rays[{i}]", rank)
                 for i, r in enumerate(rays_raw))
    rho = _int_vector(_expect(data, "rho", pointer), f"{pointer}.rho", rank)
    eta = _int_vector(_expect(data, "eta", pointer), f"{pointer}.eta", rank)
    curve_raw = _expect(data, "curve", pointer, dict)
    q = _int_of(_expect(curve_raw, "q", f"{pointer}.curve"), f"{pointer}.curve.q")
    genus = _int_of(curve_raw.get("genus", 0), f"{pointer}.curve.genus")
    if genus != 0:
        raise SchemaError(f"{pointer}.curve.genus", "only genus 0 is supported")
    spin_raw = curve_raw.get("spin")
    if spin_raw is None:
        spin = ((1, -1),)
    else:
        spin = tuple((_int_of(p[0], f"{pointer}.curve.spin[{i}][0]"),
                      _int_of(p[1], f"{pointer}.curve.spin[{i}][1]"))
                     for i, p in enumerate(spin_raw))
    try:
        curve = Curve(q=q, genus=genus, spin=spin)
    except ValueError as err:
        raise SchemaError(f"{pointer}.curve", str(err)) from None
    order = _int_of(data.get("cyclotomic_order", 1), f"{pointer}.cyclotomic_order")
    if order < 1:
        raise SchemaError(f"{pointer}.cyclotomic_order", "must be >= 1")
    trunc = _int_of(_expect(data, "truncation", pointer), f"{pointer}.truncation")
    if trunc < 0:
        raise SchemaError(f"{pointer}.truncation", "must be >= 0")
    chars_raw = _expect(data, "characters", pointer, list)
    if not chars_raw:
        raise SchemaError(f"{pointer}.characters", "at least one character")
    characters = []
    for i, c in enumerate(chars_raw):
        cp = f"{pointer}.characters[{i}]"
        if not isinstance(c, dict):
            raise SchemaError(cp, "expected an object")
        cname = _expect(c, "name", cp, str)
        coords_raw = _expect(c, "coords", cp, list)
        if len(coords_raw) != rank:
            raise SchemaError(f"{cp}.coords", f"expected {rank} coordinates")
        coords = tuple(_parse_coord(v, f"{cp}.coords[{j}]")
                       for j, v in enumerate(coords_raw))
        characters.append(CharacterSpec(name=cname, coords=coords))
    checks_raw = _expect(data, "checks", pointer, list)
    checks = []
    for i, chk in enumerate(checks_raw):
        if chk not in KNOWN_CHECKS:
            raise SchemaError(f"{pointer}.checks[{i}]",
                              f"unknown check {chk!r}; known: {KNOWN_CHECKS}")
        checks.append(chk)
    iso_matrix = None
    if "isogeny" in data:
        iso_raw = _expect(data, "isogeny", pointer, dict)
        inc = _expect(iso_raw, "inclusion", f"{pointer}.isogeny", list)
        iso_matrix = tuple(_int_vector(r, f"{pointer}.isogeny.inclusion[{i}]", rank)
                           for i, r in enumerate(inc))
        if len(iso_matrix) != rank:
            raise SchemaError(f"{pointer}.isogeny.inclusion",
                              f"expected {rank} rows")
    height_cones = height_slopes = None
    if "height" in data:
        h = _expect(data, "height", pointer, dict)
        cones_raw = _expect(h, "cones", f"{pointer}.height", list)
        slopes_raw = _expect(h, "slopes", f"{pointer}.height", list)
        if len(cones_raw) != len(slopes_raw):
            raise SchemaError(f"{pointer}.height", "one slope per cone")
        height_cones = tuple(
            tuple(_int_vector(r, f"{pointer}.height.cones[{i}][{j}]", rank)
                  for j, r in enumerate(cone))
            for i, cone in enumerate(cones_raw))
        height_slopes = tuple(
            _int_vector(s, f"{pointer}.height.slopes[{i}]", rank)
            for i, s in enumerate(slopes_raw))
    if "stack_duality" in checks and iso_matrix is None:
        raise SchemaError(f"{pointer}.checks", "stack_duality needs an isogeny block")
    if "height_bridge" in checks and height_cones is None:
        raise SchemaError(f"{pointer}.checks", "height_bridge needs a height block")
    return Scenario(name=name, rank=rank, rays=rays, rho=rho, eta=eta,
                    curve=curve, cyclotomic_order=order, truncation=trunc,
                    characters=tuple(characters), checks=tuple(checks),
                    isogeny_matrix=iso_matrix, height_cones=height_cones,
                    height_slopes=height_slopes)


def load_scenario(path) -> Scenario:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as err:
        raise SchemaError(str(path), f"invalid JSON: {err}") from None
    return parse_scenario(data)


# ----------------------------------------------------------------------
# Report assembly.  Every integer is serialized as a string.


def _s(x):
    return str(x)


def _vec_s(v):
    return [str(c) for c in v]


def _series_json(series):
    return series.serialize()


def _scenario_echo(sc: Scenario) -> dict:
    echo = {
        "name": sc.name,
        "rank": _s(sc.rank),
        "rays": [_vec_s(r) for r in sc.rays],
        "rho": _vec_s(sc.rho),
        "eta": _vec_s(sc.eta),
        "curve": {"q": _s(sc.curve.q), "genus": _s(sc.curve.genus),
                  "spin": [[_s(d), _s(m)] for d, m in sc.curve.spin]},
        "cyclotomic_order": _s(sc.cyclotomic_order),
        "truncation": _s(sc.truncation),
        "characters": [{"name": c.name,
                        "coords": [v if v == "formal" else
                                   {"zeta": _s(v[0]), "u": _s(v[1])}
                                   for v in c.coords]}
                       for c in sc.characters],
        "checks": list(sc.checks),
    }
    if sc.isogeny_matrix is not None:
        echo["isogeny"] = {"inclusion": [_vec_s(r) for r in sc.isogeny_matrix]}
    if sc.height_cones is not None:
        echo["height"] = {"cones": [[_vec_s(r) for r in c] for c in sc.height_cones],
                          "slopes": [_vec_s(s) for s in sc.height_slopes]}
    return echo


def _character_order(sc: Scenario) -> int:
    orders = [sc.cyclotomic_order]
    if sc.isogeny_matrix is not None:
        iso = make_isogeny(sc.isogeny_matrix)
        if iso.exponent > 1:
            orders.append(iso.exponent)
    return lcm_orders(orders)


def _run_weak_duality(sc, pair, order, jobs):
    rows = []
    ok = True
    for spec in sc.characters:
        chi = spec.build(order, sc.rank)
        try:
            report = verify_weak_duality(pair, sc.curve, chi, sc.truncation,
                                         jobs=jobs)
        except PositivityViolation as err:
            rows.append({"character": spec.name, "status": "divergent-skip",
                         "witness_ray": _vec_s(err.witness),
                         "weight": _s(err.value)})
            continue
        entry = {
            "character": spec.name,
            "status": "equal" if report.equal else "mismatch",
            "duality_exponent": _s(report.duality_exponent),
            "directions": [],
        }
        for d in report.directions:
            dd = {
                "automorphic_side": d.automorphic_side,
                "spectral_side": d.spectral_side,
                "equal": d.equal,
                "automorphic_series": _series_json(d.automorphic_series),
                "compared_spectral_series": _series_json(d.compared_spectral_series),
            }
            if d.mismatch is not None:
                dd["first_mismatch_exponent"] = _s(d.mismatch[0])
            entry["directions"].append(dd)
        entry["local_samples"] = {
            _s(deg): {side: _series_json(s) for side, s in sample.items()}
            for deg, sample in report.local_samples.items()}
        rows.append(entry)
        ok = ok and report.equal
    return {"status": "pass" if ok else "fail", "per_character": rows}, ok


def _run_orbit_duality(sc, pair, order, jobs):
    rows = []
    ok = True
    for spec in sc.characters:
        chi = spec.build(order, sc.rank)
        fwd, bwd = verify_langlands_dual_periods(pair, sc.curve, chi,
                                                 sc.truncation, jobs=jobs)
        entry = {"character": spec.name, "directions": []}
        all_eq = True
        for rep in (fwd, bwd):
            pairs = []
            for p in rep.pairs:
                row = {
                    "face": [_vec_s(r) for r in p.face_rays],
                    "dual_face": [_vec_s(r) for r in p.dual_face_rays],
                    "automorphic_status": p.automorphic.status,
                    "spectral_status": p.spectral.status,
                    "equal": p.equal,
                }
                if p.automorphic.reason:
                    row["automorphic_reason"] = p.automorphic.reason
                if p.spectral.reason:
                    row["spectral_reason"] = p.spectral.reason
                if p.automorphic.series is not None:
                    row["automorphic_series"] = _series_json(p.automorphic.series)
                if p.spectral.series is not None:
                    row["spectral_series"] = _series_json(p.spectral.series)
                if p.mismatch is not None:
                    row["first_mismatch"] = str(p.mismatch[0])
                pairs.append(row)
            entry["directions"].append({
                "direction": rep.direction,
                "duality_exponent": _s(rep.duality_exponent),
                "equal": rep.equal,
                "pairs": pairs,
            })
            all_eq = all_eq and rep.equal
        entry["status"] = "equal" if all_eq else "mismatch"
        rows.append(entry)
        ok = ok and all_eq
    return {"status": "pass" if ok else "fail", "per_character": rows}, ok


def _run_stack_duality(sc, order, jobs):
    induced = sc.build_induced()
    rows = []
    ok = True
    for spec in sc.characters:
        base_lift = spec.build(order, sc.rank)
        try:
            rep = verify_stack_duality(induced, sc.curve, base_lift,
                                       sc.truncation, jobs=jobs)
        except (IncompatibleField, MissingRoots) as err:
            raise SchemaError("scenario.isogeny", str(err)) from None
        entry = {
            "character": spec.name,
            "index": _s(rep.index),
            "discrepancy": _s(rep.discrepancy),
            "status": "equal" if rep.equal else "mismatch",
            "checks": [{"name": c.name, "equal": c.equal,
                        "lhs": _series_json(c.lhs), "rhs": _series_json(c.rhs)}
                       for c in rep.checks],
            "direct_orbit_model": {
                "agrees_with_liftsum": rep.direct_comparison[0],
                "first_difference_exponent":
                    _s(rep.direct_comparison[1][0])
                    if rep.direct_comparison[1] else None,
            },
        }
        rows.append(entry)
        ok = ok and rep.equal
    return {"status": "pass" if ok else "fail", "per_character": rows}, ok


def _run_height_bridge(sc, pair, order, jobs):
    height = sc.build_height()
    rows = []
    ok = True
    for spec in sc.characters:
        chi = spec.build(order, sc.rank)
        entry = {"character": spec.name, "degrees": []}
        good = True
        for cone, slope in zip(height.cones, height.slopes):
            if cone != pair.side_x.cone:
                continue
            doubled = GradedToricDatum(cone=cone, rho=sc.rho,
                                       eta=tuple(2 * s for s in slope))
            for deg in range(1, min(3, max(sc.truncation, 1)) + 1):
                lhs = height_fourier_local(height, chi, deg, sc.truncation)
                rhs = automorphic_local_factor(doubled, chi, deg, sc.truncation)
                mism = lhs.first_mismatch(rhs)
                entry["degrees"].append({
                    "degree": _s(deg),
                    "equal": mism is None,
                    "transform": _series_json(lhs),
                    "local_factor": _series_json(rhs),
                })
                good = good and mism is None
        global_series = height_fourier_global(height, sc.curve, chi,
                                              sc.truncation, jobs=jobs)
        entry["global_transform"] = _series_json(global_series)
        entry["status"] = "equal" if good else "mismatch"
        rows.append(entry)
        ok = ok and good
    return {"status": "pass" if ok else "fail", "per_character": rows}, ok


def run_scenario(sc: Scenario, jobs: int | None = None) -> tuple[dict, bool]:
    """Execute all requested checks; returns (report dict, all passed)."""
    report = {
        "engine": f"toricperiods {__version__}",
        "seed": "0",
        "scenario": _scenario_echo(sc),
        "checks": {},
    }
    order = _character_order(sc)
    try:
        pair = sc.build_pair()
    except NotStronglyConvex as err:
        raise SchemaError("scenario.rays",
                          f"NotStronglyConvex: {err}") from None
    validation = validate_pair(pair)
    report["pair"] = {
        "epsilon": _s(pair.epsilon),
        "discrepancy": _s(pair.discrepancy),
        "dual_rays": [_vec_s(r) for r in pair.side_xcheck.cone.rays],
        "validation": [
            {"side": e.side, "condition": e.condition, "ok": e.ok,
             **({"witness": _vec_s(e.witness)} if e.witness is not None else {})}
            for e in validation.entries],
        "unitary_note": (
            "characters mixing u-powers into coordinates are not unitary; "
            "small-orbit regularized contributions vanish identically for "
            "purely unitary data"),
    }
    all_ok = validation.ok
    if not validation.ok:
        report["status"] = "fail"
        return report, False
    for check in sc.checks:
        if check == "weak_duality":
            block, ok = _run_weak_duality(sc, pair, order, jobs)
        elif check == "orbit_duality":
            block, ok = _run_orbit_duality(sc, pair, order, jobs)
        elif check == "stack_duality":
            block, ok = _run_stack_duality(sc, order, jobs)
        elif check == "height_bridge":
            block, ok = _run_height_bridge(sc, pair, order, jobs)
        else:  # pragma: no cover - guarded by the parser
            raise AssertionError(check)
        report["checks"][check] = block
        all_ok = all_ok and ok
    report["status"] = "pass" if all_ok else "fail"
    return report, all_ok


def report_to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=1) + "\n"


# ----------------------------------------------------------------------
# Catalog.

def _catalog_entries():
    return {
        "tate": _tate_scenario,
        "orthant_a2": _orthant_scenario,
        "quadric_cone": _quadric_scenario,
        "quadric_cone_eta21": _quadric21_scenario,
        "square_cone_3d": _square_scenario,
        "weight_n_stack": _weight_n_scenario,
        "height_p1": _height_scenario,
    }


def catalog_names() -> list[str]:
    return sorted(_catalog_entries())


def catalog_emit(name: str, q: int | None = None, order: int | None = None,
                 n: int | None = None) -> dict:
    entries = _catalog_entries()
    if name not in entries:
        raise KeyError(f"unknown catalog entry {name!r}; "
                       f"known: {', '.join(catalog_names())}")
    if name == "weight_n_stack":
        return entries[name](q=q, order=order, n=n or 2)
    if n is not None:
        raise KeyError("--n only applies to weight_n_stack")
    return entries[name](q=q, order=order)


def _formal_chars(rank):
    return [{"name": "formal", "coords": ["formal"] * rank}]


def _tate_scenario(q=None, order=None):
    return {
        "name": "tate",
        "rank": 1,
        "rays": [[1]],
        "rho": [1],
        "eta": [1],
        "curve": {"q": q or 2, "genus": 0},
        "cyclotomic_order": 1,
        "truncation": order or 16,
        "characters": _formal_chars(1),
        "checks": ["weak_duality", "orbit_duality"],
    }


def _orthant_scenario(q=None, order=None):
    return {
        "name": "orthant_a2",
        "rank": 2,
        "rays": [[1, 0], [0, 1]],
        "rho": [1, 1],
        "eta": [1, 1],
        "curve": {"q": q or 2, "genus": 0},
        "cyclotomic_order": 1,
        "truncation": order or 10,
        "characters": _formal_chars(2),
        "checks": ["weak_duality", "orbit_duality"],
    }


def _quadric_scenario(q=None, order=None):
    return {
        "name": "quadric_cone",
        "rank": 2,
        "rays": [[1, 0], [1, 2]],
        "rho": [1, 1],
        "eta": [1, 1],
        "curve": {"q": q or 2, "genus": 0},
        "cyclotomic_order": 1,
        "truncation": order or 10,
        "characters": _formal_chars(2) + [
            {"name": "z1-is-u-inverse",
             "coords": [{"zeta": 0, "u": -1}, "formal"]}],
        "checks": ["weak_duality", "orbit_duality"],
    }


def _quadric21_scenario(q=None, order=None):
    return {
        "name": "quadric_cone_eta21",
        "rank": 2,
        "rays": [[1, 0], [1, 2]],
        "rho": [1, 1],
        "eta": [2, 1],
        "curve": {"q": q or 2, "genus": 0},
        "cyclotomic_order": 1,
        "truncation": order or 10,
        "characters": _formal_chars(2),
        "checks": ["weak_duality"],
    }


def _square_scenario(q=None, order=None):
    return {
        "name": "square_cone_3d",
        "rank": 3,
        "rays": [[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]],
        "rho": [1, 1, 2],
        "eta": [1, 0, 1],
        "curve": {"q": q or 2, "genus": 0},
        "cyclotomic_order": 1,
        "truncation": order or 10,
        "characters": _formal_chars(3),
        "checks": ["weak_duality", "orbit_duality"],
    }


def _weight_n_scenario(q=None, order=None, n=2):
    if n < 1:
        raise KeyError("weight must be >= 1")
    default_q = {1: 2, 2: 3, 3: 4}.get(n, n + 1)
    return {
        "name": f"weight_{n}_stack",
        "rank": 1,
        "rays": [[1]],
        "rho": [1],
        "eta": [1],
        "curve": {"q": q or default_q, "genus": 0},
        "cyclotomic_order": n,
        "truncation": order or 10,
        "characters": _formal_chars(1),
        "checks": ["stack_duality"],
        "isogeny": {"inclusion": [[n]]},
    }


def _height_scenario(q=None, order=None):
    return {
        "name": "height_p1",
        "rank": 1,
        "rays": [[1]],
        "rho": [1],
        "eta": [2],
        "curve": {"q": q or 2, "genus": 0},
        "cyclotomic_order": 1,
        "truncation": order or 8,
        "characters": _formal_chars(1),
        "checks": ["height_bridge", "weak_duality"],
        "height": {"cones": [[[1]]], "slopes": [[1]]},
    }
