"""Job configs, result serialization, text rendering and the verification driver."""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import jsonschema

from . import __version__
from . import lattice_geometry as lg
from . import monodromy_engine as me
from . import nondegeneracy as nd
from . import ode_oracle as oo
from . import spectral_algebra as sa

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_MISMATCH = 3

VERIFY_TOL = 1e-6
RESIDUAL_TOL = 1e-8

_complex_obj = {
    "type": "object",
    "properties": {"re": {"type": "number"}, "im": {"type": "number"}},
    "required": ["re", "im"],
    "additionalProperties": False,
}
_rational = {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*\d*[1-9]\d*)?\s*$"}

INPUT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["A", "c"],
    "additionalProperties": False,
    "properties": {
        "A": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "array", "minItems": 1, "items": {"type": "integer"}},
        },
        "c": {"type": "array", "minItems": 1, "items": {"anyOf": [_rational, _complex_obj, {"type": "number"}]}},
        "j0": {
            "anyOf": [
                {"type": "integer", "minimum": 1},
                {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 1}},
                {"const": "all"},
            ]
        },
        "z": {"type": "array", "items": {"anyOf": [_rational, _complex_obj, {"type": "number"}]}},
        "orientation": {"enum": ["ccw", "cw"]},
        "format": {"enum": ["json", "text"]},
        "verify": {
            "anyOf": [
                {"type": "boolean"},
                {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {
                        "catalog": {"enum": list(oo.CATALOG_IDS)},
                        "radius": {"anyOf": [{"type": "number", "exclusiveMinimum": 0}, {"const": "auto"}]},
                        "tol": {"type": "number", "exclusiveMinimum": 0},
                    },
                },
            ]
        },
    },
}


class ConfigError(ValueError):
    def __init__(self, message: str, pointer: str = ""):
        super().__init__(f"{pointer or '/'}: {message}" if pointer is not None else message)
        self.pointer = pointer


@dataclass(frozen=True)
class JobConfig:
    A: me.PointConfiguration
    c: me.ParameterVector
    j0: tuple[int, ...]
    orientation: str = "ccw"
    format: str = "json"
    z: tuple | None = None
    verify: dict | None = None
    raw: dict | None = None


def parse_config(data: dict, *, catalog: str | None = None) -> JobConfig:
    validator = jsonschema.Draft202012Validator(INPUT_SCHEMA)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        pointer = "".join(f"/{p}" for p in err.absolute_path)
        raise ConfigError(err.message, pointer)
    pts = data["A"]
    if len({len(p) for p in pts}) != 1:
        raise ConfigError("all points must have the same dimension", "/A")
    A = me.PointConfiguration(tuple(tuple(p) for p in pts))
    try:
        c = me.ParameterVector(tuple(data["c"]))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(str(exc), "/c") from exc
    if c.n != A.n:
        raise ConfigError(f"expected {A.n} entries, got {c.n}", "/c")
    j0_raw = data.get("j0", "all")
    if j0_raw == "all":
        j0 = tuple(range(1, A.N + 1))
    else:
        j0 = (j0_raw,) if isinstance(j0_raw, int) else tuple(j0_raw)
    for k, j in enumerate(j0):
        if not 1 <= j <= A.N:
            where = "/j0" if isinstance(j0_raw, int) else f"/j0/{k}"
            raise ConfigError(f"j0={j} out of range 1..{A.N}", where)
    z = data.get("z")
    if z is not None and len(z) != A.N:
        raise ConfigError(f"expected {A.N} entries, got {len(z)}", "/z")
    verify = data.get("verify")
    if verify is True:
        verify = {}
    elif verify is False:
        verify = None
    if catalog is not None:
        verify = dict(verify or {}, catalog=catalog)
    return JobConfig(A, c, j0, data.get("orientation", "ccw"), data.get("format", "json"),
                     tuple(z) if z is not None else None, verify, data)


def load_config(path: str, *, catalog: str | None = None) -> JobConfig:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}", "") from exc
    return parse_config(data, catalog=catalog)


@dataclass(frozen=True)
class VerifyReport:
    catalog: str
    j0: int
    radius: float
    tol: float
    expected: tuple[sa.UnitScalar, ...]
    numeric: tuple[complex, ...]
    max_distance: float
    residual: float | None
    passed: bool


@dataclass(frozen=True)
class JobResult:
    version: str
    input: dict
    results: tuple[me.MonodromyReport, ...]
    nondegeneracy: nd.NondegeneracyReport | None = None
    verify: VerifyReport | None = None

    @property
    def exit_code(self) -> int:
        if self.verify is not None and not self.verify.passed:
            return EXIT_MISMATCH
        return EXIT_OK


def _catalog_for(config: JobConfig) -> str | None:
    want = (config.verify or {}).get("catalog")
    if want:
        return want
    for cid, pts in oo.CATALOG_CONFIGS.items():
        if sorted(pts) == sorted(config.A.points):
            return cid
    return None


def run_verification(config: JobConfig) -> VerifyReport:
    cid = _catalog_for(config)
    if cid is None:
        raise ConfigError("no catalog system matches A; pass a catalog id", "/verify")
    cat_pts = oo.CATALOG_CONFIGS[cid]
    if sorted(cat_pts) != sorted(config.A.points):
        raise ConfigError(f"A does not match the {cid} catalog configuration {list(cat_pts)}", "/A")
    special = cat_pts[oo.CATALOG_J0[cid] - 1]
    j0 = config.A.points.index(special) + 1
    frozen = {}
    if config.z is not None:
        zs = [me._parse_scalar(x) for x in config.z]
        for k, pt in enumerate(cat_pts):
            if pt != special:
                frozen[f"z{k + 1}"] = zs[config.A.points.index(pt)]
    cvals = config.c.entries
    params = {"c": cvals[0] if cid != "kummer_square" else tuple(cvals)}
    system = oo.catalog_system(cid, **params, **frozen)

    try:
        residual = oo.catalog_residual(system)
    except ValueError:
        residual = None  # integral representation does not converge for these data

    opts = config.verify or {}
    tol = float(opts.get("tol", VERIFY_TOL))
    radius = opts.get("radius", "auto")
    mono = oo.numeric_monodromy(system, radius=radius, orientation=config.orientation)
    report = me.monodromy_at_infinity(config.A, config.c, j0, config.orientation)
    expected = sa.roots(report.char_poly)
    match = sa.compare_spectra(expected, oo.numeric_spectrum(mono), tol)
    passed = match.passed and (residual is None or residual < RESIDUAL_TOL)
    exp_vals = tuple(mu for mu, m in expected.items for _ in range(m))
    numeric = tuple(complex(v) for v in sorted(oo.numeric_spectrum(mono).values(),
                                                key=lambda v: (round(v.real, 12), round(v.imag, 12))))
    return VerifyReport(cid, j0, mono.radius, tol, exp_vals, numeric, match.max_distance, residual, passed)


def run(config: JobConfig, *, with_reports: bool = True, strict: bool = True) -> JobResult:
    """Evaluate every requested ``j0``.

    With ``strict`` any validation failure raises ``ConfigError``.  Otherwise
    a full-dimensional but non-generating ``A`` is evaluated and flagged in
    each report.
    """
    validation = me.validate_configuration(config.A)
    if not validation.ok and (strict or validation.dim != config.A.n):
        raise ConfigError(validation.message, None)
    results = ()
    if with_reports:
        results = tuple(me.monodromy_at_infinity(config.A, config.c, j, config.orientation) for j in config.j0)
    nondeg = nd.check_nondegeneracy(config.A, config.z) if config.z is not None else None
    verify = run_verification(config) if config.verify is not None else None
    return JobResult(__version__, _echo(config), results, nondeg, verify)


def _echo(config: JobConfig) -> dict:
    out = {
        "A": [list(p) for p in config.A.points],
        "c": [_scalar_to_json(x) for x in config.c.entries],
        "j0": list(config.j0),
        "orientation": config.orientation,
    }
    if config.z is not None:
        out["z"] = [_scalar_to_json(me._parse_scalar(x)) for x in config.z]
    return out


# -- JSON serialization ------------------------------------------------------------


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _scalar_to_json(x) -> Any:
    if isinstance(x, Fraction):
        return _frac(x)
    x = complex(x)
    return {"re": x.real, "im": x.imag}


def _scalar_from_json(d) -> Any:
    return Fraction(d) if isinstance(d, str) else complex(d["re"], d["im"])


def _face_to_json(f: lg.Face) -> dict:
    return {"vertices": [list(p) for p in f.points], "dim": f.dim}


def _face_from_json(d: dict) -> lg.Face:
    face = lg.face_from_points(d["vertices"])
    if face.dim != d["dim"]:
        raise ValueError("face dimension does not match its vertices")
    return face


def report_to_json(r: me.MonodromyReport) -> dict:
    return {
        "j0": r.j0,
        "degree": r.degree,
        "volume": r.volume,
        "orientation": r.orientation,
        "factors": sa.poly_to_list(r.char_poly),
        "t_minus_one_exponent": r.t_minus_one_exponent,
        "contributions": [
            {
                "facet": _face_to_json(cb.facet),
                "delta_hat_volume": cb.delta_hat_volume,
                "subfacets": [
                    {
                        "face": _face_to_json(t.face),
                        "rho": list(t.conormal),
                        "h": t.height,
                        "gamma_hat_volume": t.gamma_hat_volume,
                    }
                    for t in cb.terms
                ],
            }
            for cb in r.contributions
        ],
        "resonance": {
            "status": r.resonance.status,
            "witnesses": [
                {
                    "facet": [list(p) for p in w.facet],
                    "rho": list(w.conormal),
                    "pairing": _scalar_to_json(w.pairing),
                    "distance": w.distance,
                }
                for w in r.resonance.witnesses
            ],
        },
        "lattice_divisors": list(r.lattice_divisors),
        "theorem_hypotheses_met": r.theorem_hypotheses_met,
    }


def report_from_json(d: dict) -> me.MonodromyReport:
    contributions = tuple(
        me.FacetContribution(
            _face_from_json(cb["facet"]),
            tuple(me.SubfacetTerm(_face_from_json(t["face"]), tuple(t["rho"]), t["h"], t["gamma_hat_volume"])
                  for t in cb["subfacets"]),
            cb["delta_hat_volume"],
        )
        for cb in d["contributions"]
    )
    res = d["resonance"]
    resonance = me.ResonanceVerdict(
        res["status"],
        tuple(me.ResonanceWitness(tuple(tuple(p) for p in w["facet"]), tuple(w["rho"]),
                                  _scalar_from_json(w["pairing"]), w["distance"])
              for w in res["witnesses"]),
    )
    report = me.MonodromyReport(
        j0=d["j0"],
        char_poly=sa.poly_from_list(d["factors"]),
        contributions=contributions,
        volume=d["volume"],
        t_minus_one_exponent=d["t_minus_one_exponent"],
        resonance=resonance,
        theorem_hypotheses_met=d["theorem_hypotheses_met"],
        orientation=d["orientation"],
        lattice_divisors=tuple(d["lattice_divisors"]),
    )
    if report.degree != d["degree"]:
        raise ValueError("degree field disagrees with the factors")
    return report


def _nondeg_to_json(r: nd.NondegeneracyReport) -> dict:
    return {
        "verdict": r.verdict,
        "faces": [{"vertices": [list(p) for p in f.face], "dim": f.dim, "verdict": f.verdict, "detail": f.detail}
                  for f in r.faces],
    }


def _nondeg_from_json(d: dict) -> nd.NondegeneracyReport:
    return nd.NondegeneracyReport(
        d["verdict"],
        tuple(nd.FaceVerdict(tuple(tuple(p) for p in f["vertices"]), f["dim"], f["verdict"], f["detail"])
              for f in d["faces"]),
    )


def _verify_to_json(v: VerifyReport) -> dict:
    return {
        "catalog": v.catalog,
        "j0": v.j0,
        "radius": v.radius,
        "tol": v.tol,
        "expected": [sa.unit_to_dict(mu) for mu in v.expected],
        "numeric": [{"re": z.real, "im": z.imag} for z in v.numeric],
        "max_distance": v.max_distance,
        "residual": v.residual,
        "passed": v.passed,
    }


def _verify_from_json(d: dict) -> VerifyReport:
    return VerifyReport(
        d["catalog"], d["j0"], d["radius"], d["tol"],
        tuple(sa.unit_from_dict(x) for x in d["expected"]),
        tuple(complex(x["re"], x["im"]) for x in d["numeric"]),
        d["max_distance"], d["residual"], d["passed"],
    )


def result_to_json(result: JobResult) -> dict:
    out = {
        "version": result.version,
        "input": result.input,
        "results": [report_to_json(r) for r in result.results],
    }
    if result.nondegeneracy is not None:
        out["nondegeneracy"] = _nondeg_to_json(result.nondegeneracy)
    if result.verify is not None:
        out["verify"] = _verify_to_json(result.verify)
    return out


def render_json(result: JobResult) -> str:
    return json.dumps(result_to_json(result), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def parse_result(text: str) -> JobResult:
    d = json.loads(text)
    return JobResult(
        d["version"],
        d["input"],
        tuple(report_from_json(r) for r in d["results"]),
        _nondeg_from_json(d["nondegeneracy"]) if "nondegeneracy" in d else None,
        _verify_from_json(d["verify"]) if "verify" in d else None,
    )


# -- text rendering ------------------------------------------------------------------


def _pt(p) -> str:
    return "(" + ", ".join(str(x) for x in p) + ")"


def _face_str(f: lg.Face) -> str:
    if f.is_empty:
        return "∅"
    return "conv{" + ", ".join(_pt(p) for p in f.points) + "}"


def _scalar_str(x) -> str:
    if isinstance(x, Fraction):
        return _frac(x)
    return f"{x.real:.12g}{'+' if x.imag >= 0 else '-'}{abs(x.imag):.12g}i"


def render_text(result: JobResult) -> str:
    inp = result.input
    lines = [f"ahg {result.version}"]
    A = me.PointConfiguration(tuple(tuple(p) for p in inp["A"]))
    delta = A.delta()
    c_str = ", ".join(_scalar_str(_scalar_from_json(x)) for x in inp["c"])
    lines.append(f"A = {[list(p) for p in A.points]}   c = ({c_str})   orientation = {inp['orientation']}")
    lines.append(f"conv(A ∪ {{0}}): dim {delta.dim}, {len(delta.vertices)} vertices, "
                 f"{len(delta.facets)} facets, Vol_Z = {lg.normalized_volume(delta)}")
    if any(r.resonance.resonant for r in result.results):
        lines.append("WARNING: c is resonant; Theorem hypotheses not met")
    elif any(r.resonance.status == "near-integer-warning" for r in result.results):
        lines.append("WARNING: c is within 1e-6 of a resonance hyperplane")
    for r in result.results:
        lines.append("")
        lines.append(f"j0 = {r.j0}, a(j0) = {_pt(A.points[r.j0 - 1])}")
        if r.contributions:
            header = f"  {'facet':<28} {'subfacet':<22} {'rho':<12} {'h':>3} {'Vol(G^)':>8} {'Vol(D^)':>8}"
            lines.append(header)
            for cb in r.contributions:
                for k, t in enumerate(cb.terms):
                    facet = _face_str(cb.facet) if k == 0 else ""
                    dvol = str(cb.delta_hat_volume) if k == 0 else ""
                    lines.append(f"  {facet:<28} {_face_str(t.face):<22} {_pt(t.conormal):<12} "
                                 f"{t.height:>3} {t.gamma_hat_volume:>8} {dvol:>8}")
        else:
            lines.append("  no facet through a(j0) avoids the origin")
        lines.append(f"  (t − 1) exponent: {r.t_minus_one_exponent}   degree: {r.degree}")
        lines.append(f"  λ(t) = {sa.format_poly(r.char_poly)}")
        status = r.resonance.status
        if r.resonance.witnesses:
            w = r.resonance.witnesses[0]
            status += f" (facet {_face_str(lg.face_from_points(w.facet))}, rho = {_pt(w.conormal)}, " \
                      f"<rho, c> = {_scalar_str(w.pairing)})"
        lines.append(f"  resonance: {status}")
        if any(d != 1 for d in r.lattice_divisors):
            lines.append(f"  note: A does not generate Z^n (divisors {list(r.lattice_divisors)})")
    if result.nondegeneracy is not None:
        lines.append("")
        lines.append(f"non-degeneracy: {result.nondegeneracy.verdict}")
        for f in result.nondegeneracy.faces:
            lines.append(f"  {_face_str(lg.face_from_points(f.face)):<28} dim {f.dim}  {f.verdict}: {f.detail}")
    if result.verify is not None:
        v = result.verify
        lines.append("")
        lines.append(f"verify [{v.catalog}, j0 = {v.j0}, R = {v.radius:g}]: "
                     f"{'PASS' if v.passed else 'FAIL'} (max distance {v.max_distance:.3e}, tol {v.tol:g})")
        if v.residual is not None:
            lines.append(f"  ODE residual against the integral representation: {v.residual:.3e}")
    return "\n".join(lines) + "\n"
