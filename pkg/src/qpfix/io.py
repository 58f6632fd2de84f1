"""JSON file formats.

All rationals travel as canonical strings (``"p/q"`` or an integer); output
uses sorted keys so identical inputs give byte-identical files.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Union

from ._rational import format_rational, parse_rational
from .admissibility import AdmissiblePair, SelfMap
from .certifier import Certificate, Problem
from .picard import Orbit
from .sequences import CauchyVerdict, SeqPrefix
from .space import AxiomReport, QPSpace

PathLike = Union[str, Path]


class SchemaError(ValueError):
    """Input document does not match its schema."""


def _fail(where: str, msg: str):
    raise SchemaError(f"{where}: {msg}")


def read_json(path: PathLike) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"{path}: cannot read file ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})") from exc


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _rat(value, where: str) -> Fraction:
    try:
        return parse_rational(value)
    except ValueError as exc:
        _fail(where, str(exc))


def _matrix(rows, where: str):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        _fail(where, "expected a list of rows")
    return [[_rat(v, f"{where}[{i}][{j}]") for j, v in enumerate(row)] for i, row in enumerate(rows)]


def _require(doc, keys, where):
    if not isinstance(doc, dict):
        _fail(where, "expected a JSON object")
    for k in keys:
        if k not in doc:
            _fail(where, f"missing key {k!r}")


# --- space -----------------------------------------------------------------


def space_from_dict(doc, where: str = "space") -> QPSpace:
    _require(doc, ("points", "K", "D"), where)
    points = doc["points"]
    if not isinstance(points, list) or not all(isinstance(p, str) for p in points):
        _fail(where, "points must be a list of strings")
    asserted = doc.get("asserted", [])
    if not isinstance(asserted, list):
        _fail(where, "asserted must be a list")
    try:
        return QPSpace(
            tuple(points),
            _matrix(doc["D"], f"{where}.D"),
            _rat(doc["K"], f"{where}.K"),
            frozenset(asserted),
        )
    except ValueError as exc:
        if isinstance(exc, SchemaError):
            raise
        _fail(where, str(exc))


def space_to_dict(space: QPSpace) -> dict:
    return {
        "points": list(space.points),
        "K": format_rational(space.coeff_k),
        "D": [[format_rational(v) for v in row] for row in space.dist],
        "asserted": sorted(space.completeness_flags),
    }


def load_space(path: PathLike) -> QPSpace:
    return space_from_dict(read_json(path), str(path))


# --- map / pair ------------------------------------------------------------


def map_from_dict(doc, where: str = "map") -> SelfMap:
    _require(doc, ("f",), where)
    f = doc["f"]
    if not isinstance(f, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in f.items()
    ):
        _fail(where, "f must map point names to point names")
    return SelfMap(f)


def map_to_dict(f: SelfMap) -> dict:
    return {"f": dict(f.mapping)}


def pair_from_dict(doc, where: str = "pair") -> AdmissiblePair:
    _require(doc, ("alpha", "beta", "C_alpha", "C_beta"), where)
    try:
        return AdmissiblePair(
            _matrix(doc["alpha"], f"{where}.alpha"),
            _matrix(doc["beta"], f"{where}.beta"),
            _rat(doc["C_alpha"], f"{where}.C_alpha"),
            _rat(doc["C_beta"], f"{where}.C_beta"),
        )
    except ValueError as exc:
        if isinstance(exc, SchemaError):
            raise
        _fail(where, str(exc))


def pair_to_dict(pair: AdmissiblePair) -> dict:
    m = lambda rows: [[format_rational(v) for v in row] for row in rows]
    return {
        "alpha": m(pair.alpha),
        "beta": m(pair.beta),
        "C_alpha": format_rational(pair.c_alpha),
        "C_beta": format_rational(pair.c_beta),
    }


# --- problem / sequence ----------------------------------------------------


def _component(value, base: Path, loader, where: str):
    """A problem component is either a path (relative to the problem file) or inline."""
    if isinstance(value, str):
        path = base / value
        return loader(read_json(path), str(path))
    return loader(value, where)


def problem_from_dict(doc, base: PathLike = ".", where: str = "problem"):
    """Returns ``(Problem, profile or None)``."""
    _require(doc, ("space", "map", "pair"), where)
    base = Path(base)
    space = _component(doc["space"], base, space_from_dict, f"{where}.space")
    f = _component(doc["map"], base, map_from_dict, f"{where}.map")
    pair = _component(doc["pair"], base, pair_from_dict, f"{where}.pair")
    seed = doc.get("seed")
    if seed is not None and not isinstance(seed, str):
        _fail(where, "seed must be a point name")
    try:
        problem = Problem(space, f, pair, seed)
    except ValueError as exc:
        _fail(where, str(exc))
    return problem, doc.get("profile")


def problem_to_dict(problem: Problem, profile: Optional[str] = None) -> dict:
    doc = {
        "space": space_to_dict(problem.space),
        "map": map_to_dict(problem.f),
        "pair": pair_to_dict(problem.pair),
    }
    if problem.seed is not None:
        doc["seed"] = problem.seed
    if profile is not None:
        doc["profile"] = profile
    return doc


def load_problem(path: PathLike):
    path = Path(path)
    return problem_from_dict(read_json(path), path.parent, str(path))


def load_sequence(path: PathLike) -> SeqPrefix:
    path = Path(path)
    doc = read_json(path)
    _require(doc, ("space", "entries"), str(path))
    space = _component(doc["space"], path.parent, space_from_dict, f"{path}.space")
    entries = doc["entries"]
    if not isinstance(entries, list) or not all(isinstance(e, str) for e in entries):
        _fail(str(path), "entries must be a list of point names")
    try:
        return SeqPrefix(space, tuple(entries))
    except ValueError as exc:
        _fail(str(path), str(exc))


# --- reports ---------------------------------------------------------------


def _chain_dict(chain) -> dict:
    return {
        "nodes": list(chain.nodes),
        "intermediates": list(chain.intermediates),
        "total": format_rational(chain.total),
    }


def axiom_report_to_dict(report: AxiomReport) -> dict:
    w = report.d2_witness
    return {
        "K": format_rational(report.k),
        "d1_holds": report.d1_holds,
        "d2_holds": report.d2_holds,
        "d2_witness": None if w is None else {
            "pair": [w.x, w.y],
            "distance": format_rational(w.distance),
            "chain": _chain_dict(w.chain),
        },
        "t0_holds": report.t0_holds,
        "t0_witness": None if report.t0_witness is None else list(report.t0_witness),
        "hausdorff_finite": report.hausdorff_finite,
        "hausdorff_witness": (
            None if report.hausdorff_witness is None else list(report.hausdorff_witness)
        ),
        "minimal_k": format_rational(report.minimal_k),
    }


def cauchy_to_dict(v: CauchyVerdict) -> dict:
    return {
        "kind": v.kind,
        "epsilon": format_rational(v.epsilon),
        "holds_on_prefix": v.holds_on_prefix,
        "witness_n0": v.witness_n0,
        "violation": None if v.violation is None else {
            "k": v.violation[0], "n": v.violation[1],
            "distance": format_rational(v.violation[2]),
        },
    }


def orbit_to_dict(orbit: Orbit) -> dict:
    t = orbit.termination
    term = {"kind": t.kind}
    for name in ("index", "length", "start"):
        if getattr(t, name) is not None:
            term[name] = getattr(t, name)
    return {
        "seed": orbit.seed,
        "entries": list(orbit.entries),
        "step_dists": [format_rational(s) for s in orbit.step_dists],
        "decay_ratios": [format_rational(r) for r in orbit.decay_ratios],
        "termination": term,
    }


def chain_bounds_to_list(bounds) -> list:
    return [
        {"n": b.n, "lhs": format_rational(b.lhs), "rhs": format_rational(b.rhs),
         "slack": format_rational(b.slack)}
        for b in bounds
    ]


def _jsonable(value):
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (tuple, list)):
        return [_jsonable(v) for v in value]
    return str(value)


def certificate_to_dict(cert: Certificate) -> dict:
    return {
        "profile": cert.profile,
        "hypotheses": [
            {"name": h.name, "verdict": h.verdict, "witness": _jsonable(h.witness)}
            for h in cert.hypotheses
        ],
        "orbit": orbit_to_dict(cert.orbit),
        "fixed_point": cert.fixed_point,
        "lambda": format_rational(cert.lam),
        "bound_residuals": [
            {"bound": r.bound, "n": r.n, "lhs": format_rational(r.lhs),
             "rhs": format_rational(r.rhs), "slack": format_rational(r.slack)}
            for r in cert.bound_residuals
        ],
        "notes": list(cert.notes),
    }
