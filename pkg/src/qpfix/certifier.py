"""Theorem profiles, hypothesis checking, and fixed-point certificates.

A profile lists the hypotheses of one existence result.  :func:`certify`
checks each of them on a concrete finite problem, runs the Picard iteration
the proofs use, and records the outcome.  Hypotheses that cannot be decided
from a matrix (completeness) are read from the space's asserted tags and
reported as ``asserted``; decidable stand-ins for topological hypotheses are
listed in the certificate notes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

from .admissibility import (
    AdmissiblePair,
    SelfMap,
    check_c1_c2,
    check_c3,
    check_contraction,
    is_symmetric_matrix,
    seed_ok,
)
from .picard import Orbit, iterate, verify_chain_bound, check_sequential_continuity
from .space import (
    QPSpace,
    SpaceError,
    check_d1,
    check_d2,
    check_hausdorff_finite,
    check_t0,
    conjugate,
)

VERIFIED, ASSERTED, FAILED = "verified", "asserted", "failed"


@dataclass(frozen=True)
class Profile:
    name: str
    completeness: str
    contraction: str = "D"
    seed: str = "left"
    hausdorff: Optional[str] = None  # "left" | "right"
    continuity: Optional[str] = None  # "D" | "Dinv" | "Ds"
    symmetric_weights: bool = False
    limit_condition: Optional[str] = None  # "subseq" | "subseq_min" | "fix2"


PROFILES = {
    p.name: p
    for p in (
        Profile("fix1", "left_complete", hausdorff="left", continuity="D"),
        Profile("fix1_right", "right_complete", seed="right", hausdorff="right",
                continuity="Dinv"),
        Profile("bicomplete", "bicomplete", continuity="Ds", symmetric_weights=True),
        Profile("bicomplete_min", "bicomplete", seed="min", limit_condition="subseq_min"),
        Profile("subseq", "left_complete", hausdorff="left", limit_condition="subseq"),
        Profile("fix2", "bicomplete", contraction="Ds", limit_condition="fix2"),
    )
}

_NOTES = {
    "hausdorff": "hausdorff: finite-space surrogate (limits unique iff no point is at "
                 "zero distance from two distinct points)",
    "continuity": "continuity: finite-space surrogate (zero-distance relation preserved by f)",
    "completeness": "completeness: asserted on input, not verified",
    "limit_condition": "limit_condition: verified (orbit-restricted) on the Picard orbit "
                       "and its detected limits",
    "fix2_beta": "fix2 bound: C_beta used where the closing estimate has an unsubscripted beta",
    "fix2_type": "fix2: stated for a space without relaxation coefficient; checked with the "
                 "declared K",
    "min_beta": "seed(min): beta threshold compared against the smaller of the two "
                "orientations, as stated",
}


class CertificationError(ValueError):
    """Malformed problem or unknown profile."""


@dataclass(frozen=True)
class Problem:
    space: QPSpace
    f: SelfMap
    pair: AdmissiblePair
    seed: Optional[str] = None

    def __post_init__(self):
        try:
            self.f.validate(self.space)
            self.pair.validate(self.space)
            if self.seed is not None:
                self.space.index(self.seed)
        except SpaceError as exc:
            raise CertificationError(str(exc)) from exc

    def conjugated(self) -> "Problem":
        """Same map and seed on the conjugate space with transposed weights."""
        return Problem(conjugate(self.space), self.f, self.pair.transposed(), self.seed)


@dataclass(frozen=True)
class HypothesisResult:
    name: str
    verdict: str
    witness: object = None


@dataclass(frozen=True)
class Residual:
    bound: str
    n: int
    lhs: Fraction
    rhs: Fraction

    @property
    def slack(self) -> Fraction:
        return self.rhs - self.lhs


@dataclass(frozen=True)
class Certificate:
    profile: str
    hypotheses: Tuple[HypothesisResult, ...]
    orbit: Orbit
    fixed_point: Optional[str]
    lam: Fraction
    bound_residuals: Tuple[Residual, ...]
    notes: Tuple[str, ...] = ()

    @property
    def failures(self) -> List[HypothesisResult]:
        return [h for h in self.hypotheses if h.verdict == FAILED]

    @property
    def first_failure(self) -> Optional[HypothesisResult]:
        fails = self.failures
        return fails[0] if fails else None

    @property
    def hypotheses_ok(self) -> bool:
        return not self.failures

    def result(self, name: str) -> HypothesisResult:
        for h in self.hypotheses:
            if h.name == name:
                return h
        raise KeyError(name)


def _verdict(ok: bool, witness=None) -> Tuple[str, object]:
    return (VERIFIED, None) if ok else (FAILED, witness)


def _limits(orbit: Orbit, mode: str) -> List[int]:
    """Indices of points to which the full (closed) orbit converges."""
    sp = orbit.space
    rec = [sp.index(c) for c in orbit.recurrent()]
    if not rec:
        return []
    out = []
    for x in range(len(sp)):
        if mode == "D":
            ok = all(sp.dist[x][c] == 0 for c in rec)
        else:
            ok = all(sp.dist[x][c] == 0 and sp.dist[c][x] == 0 for c in rec)
        if ok:
            out.append(x)
    return out


def _limit_condition(problem: Problem, orbit: Orbit, kind: str):
    """Evaluate the sequential limit hypothesis on the orbit itself.

    Returns ``(ok, witness)``.  The hypothesis is an implication; when its
    antecedent fails along the orbit it holds vacuously.
    """
    sp, pair = problem.space, problem.pair
    if orbit.termination.kind not in ("fixed_point", "cycle"):
        return False, "orbit did not close within the step budget"
    a, b, ca, cb = pair.alpha, pair.beta, pair.c_alpha, pair.c_beta
    ix = sp.index
    rec = [ix(c) for c in orbit.recurrent()]
    states = [ix(e) for e in orbit.entries]

    def good(i, j):
        return a[i][j] >= ca and b[i][j] <= cb

    def good_min(i, j):
        return min(a[i][j], a[j][i]) >= ca and min(b[i][j], b[j][i]) <= cb

    if kind == "subseq":
        if not all(good(ix(u), ix(v)) for u, v in orbit.steps(start=1)):
            return True, None
        for x in _limits(orbit, "D"):
            if not any(good(x, c) for c in rec):
                return False, sp.points[x]
        return True, None
    if kind == "subseq_min":
        if not all(good_min(i, j) for i in states for j in states):
            return True, None
        for x in _limits(orbit, "Ds"):
            if not any(good_min(x, c) for c in rec):
                return False, sp.points[x]
        return True, None
    if kind == "fix2":
        if not all(good(ix(v), ix(u)) for u, v in orbit.steps()):
            return True, None
        for x in _limits(orbit, "Ds"):
            for i in states:
                if not good(i, x):
                    return False, (sp.points[i], sp.points[x])
        return True, None
    raise ValueError(kind)


def _fix2_residuals(problem: Problem, orbit: Orbit) -> List[Residual]:
    """Closing estimate of the Ds argument, re-evaluated along the orbit.

    For the limit ``x*`` and each ``n``:
    ``Ds(x*, f x*) <= K Ds(x*, x_{n+1}) + K (C_beta / C_alpha) Ds(x_n, x*)``.
    """
    sp, pair = problem.space, problem.pair
    limits = _limits(orbit, "Ds")
    if not limits:
        return []
    star = sp.points[limits[0]]
    ds = lambda u, v: max(sp.d(u, v), sp.d(v, u))
    k = sp.coeff_k
    lhs = ds(star, problem.f(star))
    out = []
    for n, (x_n, x_next) in enumerate(orbit.steps()):
        rhs = k * ds(star, x_next) + k * pair.ratio * ds(x_n, star)
        out.append(Residual("fix2", n, lhs, rhs))
    return out


VerdictHook = Callable[[HypothesisResult], HypothesisResult]


def certify(problem: Problem, profile: str = "fix1", *,
            hook: Optional[VerdictHook] = None) -> Certificate:
    """Check every hypothesis of ``profile`` on ``problem`` and iterate.

    ``hook`` may rewrite individual hypothesis results before they are
    combined; the search harness uses it to inject mutants.
    """
    if profile not in PROFILES:
        raise CertificationError(f"unknown profile {profile!r}; choose from {sorted(PROFILES)}")
    prof = PROFILES[profile]
    sp, f, pair = problem.space, problem.f, problem.pair
    results: List[HypothesisResult] = []
    notes: List[str] = []

    def record(name, verdict, witness=None):
        res = HypothesisResult(name, verdict, witness)
        if hook is not None:
            res = hook(res)
        results.append(res)

    d1, d1_w = check_d1(sp)
    record("d1", *_verdict(d1, d1_w))
    if d1:
        d2, d2_w = check_d2(sp)
        record("d2", *_verdict(d2, d2_w and (d2_w.x, d2_w.y)))
    else:
        record("d2", FAILED, "requires d1")
    t0, t0_w = check_t0(sp)
    record("t0", *_verdict(t0, t0_w))

    if prof.hausdorff is not None:
        if d1:
            ok, w = check_hausdorff_finite(sp, right=prof.hausdorff == "right")
            record("hausdorff", *_verdict(ok, w))
        else:
            record("hausdorff", FAILED, "requires d1")
        notes.append(_NOTES["hausdorff"])

    if prof.completeness in sp.completeness_flags:
        record("completeness", ASSERTED, prof.completeness)
    else:
        record("completeness", FAILED, f"{prof.completeness} not asserted")
    notes.append(_NOTES["completeness"])

    ok, w = check_c1_c2(sp, f, pair)
    record("c1_c2", *_verdict(ok, w))
    record("c3", *_verdict(check_c3(sp, pair), (str(pair.ratio), str(1 / sp.coeff_k))))

    ok, w = check_contraction(sp, f, pair, prof.contraction)
    record("contraction", *_verdict(ok, w and (w.x, w.y, str(w.lhs), str(w.rhs))))

    if problem.seed is not None:
        seed = problem.seed
        seed_good = seed_ok(sp, f, pair, seed, prof.seed)
    else:
        candidates = [p for p in sp.points if seed_ok(sp, f, pair, p, prof.seed)]
        seed_good = bool(candidates)
        seed = candidates[0] if candidates else sp.points[0]
    record("seed", VERIFIED if seed_good else FAILED, seed)
    if prof.seed == "min":
        notes.append(_NOTES["min_beta"])

    if prof.continuity is not None:
        if d1:
            ok, w = check_sequential_continuity(sp, f, prof.continuity)
            record("continuity", *_verdict(ok, w))
        else:
            record("continuity", FAILED, "requires d1")
        notes.append(_NOTES["continuity"])

    if prof.symmetric_weights:
        ok = is_symmetric_matrix(pair.alpha) and is_symmetric_matrix(pair.beta)
        record("symmetric_weights", *_verdict(ok, "alpha or beta not symmetric"))

    orbit = iterate(sp, f, seed, max_steps=len(sp) + 1)

    if prof.limit_condition is not None:
        ok, w = _limit_condition(problem, orbit, prof.limit_condition)
        record("limit_condition", *_verdict(ok, w))
        notes.append(_NOTES["limit_condition"])

    residuals = [
        Residual("chain", b.n, b.lhs, b.rhs)
        for b in verify_chain_bound(orbit, reverse=prof.seed == "right")
    ]
    if prof.limit_condition == "fix2":
        residuals.extend(_fix2_residuals(problem, orbit))
        notes.append(_NOTES["fix2_beta"])
        notes.append(_NOTES["fix2_type"])

    ok_all = all(r.verdict != FAILED for r in results)
    fixed = orbit.fixed_point if ok_all else None
    return Certificate(
        profile=profile,
        hypotheses=tuple(results),
        orbit=orbit,
        fixed_point=fixed,
        lam=pair.ratio,
        bound_residuals=tuple(residuals),
        notes=tuple(notes),
    )


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, (tuple, list)):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    return str(v)


def explain(cert: Certificate) -> str:
    """Human-readable rendering of a certificate."""
    lines = [f"profile: {cert.profile}", "", "hypotheses:"]
    width = max(len(h.name) for h in cert.hypotheses)
    for h in cert.hypotheses:
        extra = f"  witness {_fmt(h.witness)}" if h.verdict == FAILED else ""
        lines.append(f"  {h.name.ljust(width)}  {h.verdict}{extra}")
    first = cert.first_failure
    if first is not None:
        lines += ["", f"failed condition: {first.name} (witness {_fmt(first.witness)})"]
    orbit = cert.orbit
    t = orbit.termination
    if t.kind == "fixed_point":
        term = f"fixed_point at index {t.index}"
    elif t.kind == "cycle":
        term = f"cycle of length {t.length} from index {t.start}"
    else:
        term = t.kind
    lines += [
        "",
        "orbit: " + " -> ".join(orbit.entries),
        "steps: " + (", ".join(str(s) for s in orbit.step_dists) or "-"),
        f"termination: {term}",
        f"lambda = C_beta/C_alpha = {cert.lam}",
    ]
    if cert.bound_residuals:
        lines += ["", "bound residuals:"]
        for r in cert.bound_residuals:
            lines.append(f"  {r.bound} n={r.n}: lhs {r.lhs}  rhs {r.rhs}  slack {r.slack}")
    if cert.notes:
        lines += ["", "surrogate flags:"]
        lines += [f"  - {n}" for n in cert.notes]
    lines += ["", f"fixed point: {cert.fixed_point}" if cert.fixed_point else "fixed point: none"]
    return "\n".join(lines) + "\n"
