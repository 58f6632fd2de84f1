"""Random instances, brute-force oracles, and falsification searches."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from itertools import product
from math import lcm
from typing import List, Optional, Tuple

from ._rational import INFINITE
from .admissibility import AdmissiblePair, SelfMap
from .certifier import ASSERTED, FAILED, VERIFIED, HypothesisResult, Problem, certify
from .space import QPSpace, check_d2, minimal_k

# Quarter steps up to 3; zero stays rare enough that limit uniqueness often holds.
DEFAULT_GRID = tuple(Fraction(q, 4) for q in range(13))
MAX_POINTS = 8
_MAX_RESAMPLES = 1000


@dataclass(frozen=True)
class GenConfig:
    point_count: int = 4
    value_grid: Tuple[Fraction, ...] = DEFAULT_GRID
    seed: int = 0
    trials: int = 100

    def __post_init__(self):
        object.__setattr__(self, "value_grid", tuple(Fraction(v) for v in self.value_grid))
        if not 1 <= self.point_count <= MAX_POINTS:
            raise ValueError(f"point_count must be in 1..{MAX_POINTS}")
        if 0 not in self.value_grid:
            raise ValueError("value_grid must contain 0")
        if any(v < 0 for v in self.value_grid):
            raise ValueError("value_grid entries must be nonnegative")
        if self.trials < 0:
            raise ValueError("trials must be nonnegative")


def _labels(n: int) -> Tuple[str, ...]:
    return tuple(f"x{i}" for i in range(n))


def gen_space(config: GenConfig, rng: Optional[random.Random] = None,
              point_count: Optional[int] = None) -> QPSpace:
    """Random zero-diagonal space with K set to its minimal coefficient.

    Matrices whose minimal coefficient is infinite are redrawn.  An all-zero
    matrix gets ``K = 1`` (its minimal coefficient is 0, but K must be
    positive).
    """
    rng = random.Random(config.seed) if rng is None else rng
    n = config.point_count if point_count is None else point_count
    grid = config.value_grid
    for _ in range(_MAX_RESAMPLES):
        dist = [[Fraction(0) if i == j else rng.choice(grid) for j in range(n)] for i in range(n)]
        space = QPSpace(_labels(n), dist, 1, {"left_complete"})
        k = minimal_k(space)
        if k == INFINITE:
            continue
        return space.with_k(k if k > 0 else 1)
    raise RuntimeError("could not draw a space with finite minimal coefficient")


def d2_oracle(space: QPSpace, k, max_chain_len: Optional[int] = None) -> bool:
    """Check the chain inequality by enumerating every chain explicitly.

    All chains ``x, z1, ..., zm, y`` with ``1 <= m <= max_chain_len``
    intermediates (repeats allowed) are walked depth-first.  Distances are
    rescaled to integers by a common denominator first; this changes no
    comparison.  With ``max_chain_len >= len(space)`` the result is exact,
    since any longer chain contains a cycle whose removal cannot increase a
    nonnegative sum.
    """
    if max_chain_len is None:
        max_chain_len = len(space)
    if max_chain_len < 1:
        raise ValueError("max_chain_len must be at least 1")
    k = Fraction(k)
    n = len(space)
    scale = lcm(*(v.denominator for row in space.dist for v in row))
    d = [[int(v * scale) for v in row] for row in space.dist]
    kn, kd = k.numerator, k.denominator

    # Stack entries: (last intermediate, sum from x to it, intermediates so far).
    for x in range(n):
        stack = [(z, d[x][z], 1) for z in range(n)]
        while stack:
            last, total, depth = stack.pop()
            for y in range(n):
                # D(x,y) <= k * (total + D(last,y))
                if d[x][y] * kd > kn * (total + d[last][y]):
                    return False
            if depth < max_chain_len:
                stack.extend((z, total + d[last][z], depth + 1) for z in range(n))
    return True


def brute_minimal_chain_sum(space: QPSpace, x: str, y: str, max_chain_len: Optional[int] = None):
    """Smallest chain sum between two points by full enumeration (test oracle)."""
    n = len(space)
    max_chain_len = n if max_chain_len is None else max_chain_len
    i, j = space.index(x), space.index(y)
    best = None
    for m in range(1, max_chain_len + 1):
        for mids in product(range(n), repeat=m):
            nodes = (i, *mids, j)
            s = sum(space.dist[a][b] for a, b in zip(nodes, nodes[1:]))
            if best is None or s < best:
                best = s
    return best


# ---------------------------------------------------------------------------
# random problems
# ---------------------------------------------------------------------------


def _random_map(rng: random.Random, n: int) -> List[int]:
    style = rng.randrange(3)
    if style == 0:
        return [rng.randrange(n) for _ in range(n)]
    # Collapsing maps: image confined to one or two points.
    image = rng.sample(range(n), min(n, style))
    return [rng.choice(image) for _ in range(n)]


def gen_problem(config: GenConfig, rng: random.Random) -> Problem:
    """Random problem; weights are constant matrices half of the time."""
    n = rng.randint(min(2, config.point_count), config.point_count)
    space = gen_space(config, rng, point_count=n)
    f = SelfMap.from_indices(space, _random_map(rng, n))
    c_alpha = rng.choice((Fraction(1, 2), Fraction(1), Fraction(2)))
    # Mostly ratios strictly below 1/K, sometimes at it.
    c_beta = c_alpha * rng.choice(
        (0, Fraction(1, 8), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), 1)
    )
    c_beta /= space.coeff_k
    if rng.random() < 0.5:
        pair = AdmissiblePair.constant(n, c_alpha, c_beta, c_alpha, c_beta)
    else:
        a_grid = (Fraction(0), c_alpha / 2, c_alpha, 2 * c_alpha)
        b_grid = (c_beta / 2, c_beta, c_alpha, 2 * c_alpha, 8 * c_alpha)
        alpha = [[rng.choice(a_grid) for _ in range(n)] for _ in range(n)]
        beta = [[rng.choice(b_grid) for _ in range(n)] for _ in range(n)]
        pair = AdmissiblePair(alpha, beta, c_alpha, c_beta)
    return Problem(space, f, pair)


def _flip_contraction(res: HypothesisResult) -> HypothesisResult:
    if res.name != "contraction":
        return res
    flipped = VERIFIED if res.verdict == FAILED else FAILED
    return HypothesisResult(res.name, flipped, res.witness)


@dataclass
class SoundnessFinding:
    trial: int
    problem: Problem
    termination: str


def _soundness_trial(config: GenConfig, mutant: bool, trial: int):
    rng = random.Random(config.seed * 1_000_003 + trial)
    problem = gen_problem(config, rng)
    cert = certify(problem, "fix1", hook=_flip_contraction if mutant else None)
    certified = all(h.verdict in (VERIFIED, ASSERTED) for h in cert.hypotheses)
    if certified and cert.orbit.termination.kind != "fixed_point":
        return certified, SoundnessFinding(trial, problem, cert.orbit.termination.kind)
    return certified, None


@dataclass
class SoundnessReport:
    trials: int
    certified: int
    counterexamples: List[SoundnessFinding] = field(default_factory=list)


def soundness_search(config: GenConfig, *, mutant: bool = False,
                     workers: int = 1) -> SoundnessReport:
    """Look for certified fix1 instances whose orbit misses a fixed point.

    ``mutant=True`` negates the contraction verdict, which must let
    counterexamples through; it is a self-test of the harness.  Trials are
    seeded independently and merged by trial index, so ``workers`` does not
    change the result.
    """
    run = partial(_soundness_trial, config, mutant)
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            outcomes = list(pool.map(run, range(config.trials), chunksize=32))
    else:
        outcomes = [run(t) for t in range(config.trials)]
    report = SoundnessReport(trials=config.trials, certified=0)
    for certified, finding in outcomes:
        report.certified += certified
        if finding is not None:
            report.counterexamples.append(finding)
    return report


@dataclass
class OracleDisagreement:
    trial: int
    space: QPSpace
    k: Fraction
    fast: bool
    oracle: bool


def d2_agreement_search(config: GenConfig, *, min_points: int = 1,
                        nondegenerate: bool = False):
    """Compare :func:`check_d2` with :func:`d2_oracle` on random spaces.

    Each space is tested at its minimal coefficient and, when that exceeds
    ``1/1000``, just below it.  ``nondegenerate=True`` redraws spaces whose
    minimal coefficient is 0 (and uses at least two points), so every trial
    contributes two comparisons on the default grid.  Returns
    ``(comparisons, disagreements)``.
    """
    if nondegenerate:
        if config.point_count < 2 or not any(v > 0 for v in config.value_grid):
            raise ValueError("nondegenerate spaces need two points and a positive grid value")
        min_points = max(min_points, 2)
    disagreements = []
    comparisons = 0
    for trial in range(config.trials):
        rng = random.Random(config.seed * 1_000_003 + trial)
        while True:
            n = rng.randint(min_points, config.point_count)
            space = gen_space(config, rng, point_count=n)
            mk = minimal_k(space)
            if mk > 0 or not nondegenerate:
                break
        ks = [mk] if mk > 0 else [Fraction(1)]
        if mk > Fraction(1, 1000):
            ks.append(mk - Fraction(1, 1000))
        for k in ks:
            fast = check_d2(space, k)[0]
            slow = d2_oracle(space, k, len(space))
            comparisons += 1
            if fast != slow:
                disagreements.append(OracleDisagreement(trial, space, k, fast, slow))
    return comparisons, disagreements


def gen_geometric_space(rng: random.Random, min_points: int = 21, max_points: int = 29):
    """A path-like space whose shift map has geometrically shrinking steps.

    Points ``g0 .. gm``; the step ``g_t -> g_{t+1}`` costs ``c * r**t``.
    Forward distances add up steps (inflated by a factor ``1 + s`` across two
    or more steps, which pushes the minimal coefficient above 1), backward
    distances are a fixed multiple ``w`` of the forward ones.  ``K`` is set
    to the minimal coefficient and ``r < 1/K`` is asserted.  Returns
    ``(space, shift map, decay factor r)``.
    """
    m = rng.randint(min_points, max_points) - 1
    r = rng.choice((Fraction(1, 2), Fraction(1, 3), Fraction(2, 5), Fraction(1, 4)))
    c = rng.choice((Fraction(1, 2), Fraction(1), Fraction(2)))
    s = rng.choice((Fraction(0), Fraction(1, 10), Fraction(1, 4)))
    w = rng.choice((Fraction(1, 2), Fraction(1), Fraction(3)))
    steps = [c * r ** t for t in range(m)]
    n = m + 1
    dist = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            fwd = sum(steps[i:j], Fraction(0)) * (1 if j - i == 1 else 1 + s)
            dist[i][j] = fwd
            dist[j][i] = w * fwd
    labels = tuple(f"g{i}" for i in range(n))
    space = QPSpace(labels, dist, 1, {"left_complete"})
    space = space.with_k(minimal_k(space))
    assert r * space.coeff_k < 1
    shift = SelfMap.from_indices(space, [min(i + 1, m) for i in range(n)])
    return space, shift, r
