"""Finite quasi-pseudometric type spaces and their axiom checks.

A space is a finite ordered set of point labels together with an exact
distance matrix ``dist[i][j] = D(points[i], points[j])`` and a relaxation
coefficient ``K``.  All comparisons are exact (:class:`fractions.Fraction`);
the minimal coefficient of a space sits exactly on a rational boundary and a
tolerance would misclassify it.

The relaxed inequality is checked against *chains*: walks
``x, z1, ..., zn, y`` with at least one intermediate point, where
intermediates may repeat and may coincide with the endpoints.  The binding
chain for a pair is therefore a shortest walk with at least two edges, which
is computed once for all pairs with Floyd-Warshall.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

from ._rational import INFINITE

COMPLETENESS_TAGS = frozenset({"left_complete", "right_complete", "bicomplete"})

Matrix = Tuple[Tuple[Fraction, ...], ...]


class SpaceError(ValueError):
    """Raised for structurally invalid spaces or unmet preconditions."""


def _freeze_matrix(rows) -> Matrix:
    return tuple(tuple(Fraction(v) for v in row) for row in rows)


@dataclass(frozen=True)
class QPSpace:
    """A finite candidate quasi-pseudometric type space ``(X, D, K)``.

    Construction only enforces the structural invariants (square,
    nonnegative, distinct labels, ``K > 0``).  The axioms themselves are
    checked by the functions in this module.
    """

    points: Tuple[str, ...]
    dist: Matrix
    coeff_k: Fraction = Fraction(1)
    completeness_flags: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "dist", _freeze_matrix(self.dist))
        object.__setattr__(self, "coeff_k", Fraction(self.coeff_k))
        object.__setattr__(self, "completeness_flags", frozenset(self.completeness_flags))

        n = len(self.points)
        if n == 0:
            raise SpaceError("a space needs at least one point")
        if len(set(self.points)) != n:
            raise SpaceError("point identifiers must be pairwise distinct")
        if len(self.dist) != n or any(len(row) != n for row in self.dist):
            raise SpaceError(f"distance matrix must be {n}x{n}")
        for i, row in enumerate(self.dist):
            for j, v in enumerate(row):
                if v < 0:
                    raise SpaceError(
                        f"negative distance D({self.points[i]},{self.points[j]}) = {v}"
                    )
        if self.coeff_k <= 0:
            raise SpaceError(f"K must be positive, got {self.coeff_k}")
        unknown = self.completeness_flags - COMPLETENESS_TAGS
        if unknown:
            raise SpaceError(f"unknown completeness tags: {sorted(unknown)}")
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(self.points)})

    def __len__(self) -> int:
        return len(self.points)

    def index(self, point: str) -> int:
        try:
            return self._index[point]
        except KeyError:
            raise SpaceError(f"unknown point {point!r}") from None

    def d(self, x: str, y: str) -> Fraction:
        return self.dist[self.index(x)][self.index(y)]

    def with_k(self, k) -> "QPSpace":
        return QPSpace(self.points, self.dist, Fraction(k), self.completeness_flags)


@dataclass(frozen=True)
class Chain:
    """A chain ``x, z1, ..., zn, y`` with its exact distance sum."""

    x: str
    y: str
    intermediates: Tuple[str, ...]
    total: Fraction

    @property
    def nodes(self) -> Tuple[str, ...]:
        return (self.x, *self.intermediates, self.y)


@dataclass(frozen=True)
class D2Witness:
    x: str
    y: str
    distance: Fraction
    chain: Chain


@dataclass(frozen=True)
class AxiomReport:
    d1_holds: bool
    d2_holds: bool
    d2_witness: Optional[D2Witness]
    t0_holds: bool
    t0_witness: Optional[Tuple[str, str]]
    hausdorff_finite: bool
    hausdorff_witness: Optional[Tuple[str, str, str]]
    minimal_k: Union[Fraction, float]
    k: Fraction

    @property
    def all_hold(self) -> bool:
        return self.d1_holds and self.d2_holds and self.t0_holds


# ---------------------------------------------------------------------------
# shortest walks
# ---------------------------------------------------------------------------


def _walk_tables(dist: Matrix):
    """Shortest walks with >= 1 edge, plus next-hop table for reconstruction.

    Diagonal entries are kept as self-loops so the result is correct even
    when the zero-diagonal axiom fails.
    """
    n = len(dist)
    best = [list(row) for row in dist]
    nxt = [[j for j in range(n)] for _ in range(n)]
    for k in range(n):
        row_k = best[k]
        for i in range(n):
            d_ik = best[i][k]
            row_i = best[i]
            for j in range(n):
                cand = d_ik + row_k[j]
                if cand < row_i[j]:
                    row_i[j] = cand
                    nxt[i][j] = nxt[i][k]
    return best, nxt


def _one_plus_path(nxt, i: int, j: int) -> list:
    path = [i]
    u = i
    while True:
        u = nxt[u][j]
        path.append(u)
        if u == j or len(path) > len(nxt) + 1:
            return path


class _Walks:
    """Cheapest chains with at least one intermediate, for every pair.

    ``totals[i][j]`` is the minimal chain sum; :meth:`path` rebuilds a chain
    attaining it, preferring fewer intermediates, then the smaller first hop.
    """

    def __init__(self, dist: Matrix):
        n = len(dist)
        self.dist = dist
        self.one, self.nxt = _walk_tables(dist)
        self.totals = [
            [min(dist[i][z] + self.one[z][j] for z in range(n)) for j in range(n)]
            for i in range(n)
        ]

    def path(self, i: int, j: int) -> list:
        n = len(self.dist)
        best = None
        for z in range(n):
            if self.dist[i][z] + self.one[z][j] != self.totals[i][j]:
                continue
            path = [i] + _one_plus_path(self.nxt, z, j)
            if best is None or len(path) < len(best):
                best = path
        return best


def _chain_from(space: QPSpace, total: Fraction, path: Sequence[int]) -> Chain:
    names = [space.points[k] for k in path]
    return Chain(names[0], names[-1], tuple(names[1:-1]), total)


def check_d1(space: QPSpace) -> Tuple[bool, Optional[str]]:
    """Zero self-distance; returns the first violating point otherwise."""
    for i, p in enumerate(space.points):
        if space.dist[i][i] != 0:
            return False, p
    return True, None


def _require_d1(space: QPSpace) -> None:
    ok, witness = check_d1(space)
    if not ok:
        raise SpaceError(f"D({witness},{witness}) != 0: zero self-distance required")


def shortest_walk(space: QPSpace) -> Matrix:
    """Matrix of minimal chain sums (chains have >= 1 intermediate).

    Requires a zero diagonal, under which the degenerate chain ``x, x, y``
    attains the direct distance, so each entry is at most ``D(x, y)``.
    """
    _require_d1(space)
    totals = _Walks(space.dist).totals
    n = len(space)
    return tuple(
        tuple(Fraction(0) if i == j else totals[i][j] for j in range(n)) for i in range(n)
    )


def binding_chain(space: QPSpace, x: str, y: str) -> Chain:
    _require_d1(space)
    i, j = space.index(x), space.index(y)
    walks = _Walks(space.dist)
    return _chain_from(space, walks.totals[i][j], walks.path(i, j))


def _d2_scan(space: QPSpace, k: Fraction):
    """Worst violator of ``D(x,y) <= k * walk(x,y)``; ties go to row-major order."""
    walks = _Walks(space.dist)
    worst = None
    for i in range(len(space)):
        for j in range(len(space)):
            d_ij = space.dist[i][j]
            total = walks.totals[i][j]
            if d_ij <= k * total:
                continue
            ratio = INFINITE if total == 0 else d_ij / total
            if worst is None or ratio > worst[0]:
                worst = (ratio, i, j, total)
    if worst is None:
        return True, None
    _, i, j, total = worst
    chain = _chain_from(space, total, walks.path(i, j))
    return False, D2Witness(space.points[i], space.points[j], space.dist[i][j], chain)


def check_d2(space: QPSpace, k=None) -> Tuple[bool, Optional[D2Witness]]:
    """Relaxed chain inequality at coefficient ``k`` (defaults to the space's K).

    On failure the witness is the pair with the largest violation ratio
    together with a chain attaining its shortest walk.
    """
    _require_d1(space)
    k = space.coeff_k if k is None else Fraction(k)
    if k <= 0:
        raise SpaceError(f"k must be positive, got {k}")
    return _d2_scan(space, k)


def _minimal_k(space: QPSpace):
    totals = _Walks(space.dist).totals
    best = Fraction(0)
    for i in range(len(space)):
        for j in range(len(space)):
            d_ij = space.dist[i][j]
            if d_ij == 0:
                continue
            total = totals[i][j]
            if total == 0:
                return INFINITE
            best = max(best, d_ij / total)
    return best


def minimal_k(space: QPSpace):
    """Smallest coefficient for which the chain inequality holds.

    The set of valid coefficients is upward closed and its infimum is
    attained, so this is a minimum.  Returns :data:`INFINITE` when a pair at
    positive distance is joined by a zero-sum chain, and ``0`` for the
    all-zero matrix (every positive coefficient works).
    """
    _require_d1(space)
    return _minimal_k(space)


def check_t0(space: QPSpace) -> Tuple[bool, Optional[Tuple[str, str]]]:
    n = len(space)
    for i in range(n):
        for j in range(i + 1, n):
            if space.dist[i][j] == 0 and space.dist[j][i] == 0:
                return False, (space.points[i], space.points[j])
    return True, None


def check_hausdorff_finite(space: QPSpace, *, right: bool = False):
    """Uniqueness of limits in a finite space.

    A sequence in a finite space D-converges to ``x`` iff ``D(x, x_n) = 0``
    eventually, so limits are unique iff no point ``z`` is at zero distance
    from two distinct points.  Witness is ``(z, x, y)``.  ``right=True``
    checks the same for right limits (``D(x_n, x) = 0``).
    """
    _require_d1(space)
    n = len(space)
    for z in range(n):
        zero_from = [
            x for x in range(n) if (space.dist[z][x] if right else space.dist[x][z]) == 0
        ]
        if len(zero_from) > 1:
            x, y = zero_from[0], zero_from[1]
            return False, (space.points[z], space.points[x], space.points[y])
    return True, None


def _swap_flags(flags: Iterable[str]) -> frozenset:
    swap = {"left_complete": "right_complete", "right_complete": "left_complete"}
    return frozenset(swap.get(f, f) for f in flags)


def conjugate(space: QPSpace) -> QPSpace:
    """Transposed distance; left and right completeness tags trade places."""
    n = len(space)
    dist = tuple(tuple(space.dist[j][i] for j in range(n)) for i in range(n))
    return QPSpace(space.points, dist, space.coeff_k, _swap_flags(space.completeness_flags))


def symmetrize(space: QPSpace) -> QPSpace:
    n = len(space)
    dist = tuple(
        tuple(max(space.dist[i][j], space.dist[j][i]) for j in range(n)) for i in range(n)
    )
    return QPSpace(space.points, dist, space.coeff_k, space.completeness_flags)


def is_symmetric(space: QPSpace) -> bool:
    n = len(space)
    return all(space.dist[i][j] == space.dist[j][i] for i in range(n) for j in range(i + 1, n))


def check_metric_type(space: QPSpace, k=None) -> bool:
    """Symmetric, zero diagonal, chain inequality at ``k``, and ``D(x,y)=0 => x=y``."""
    if not is_symmetric(space) or not check_d1(space)[0]:
        return False
    if not check_d2(space, k)[0]:
        return False
    n = len(space)
    return all(space.dist[i][j] != 0 for i in range(n) for j in range(n) if i != j)


def axiom_report(space: QPSpace, k=None) -> AxiomReport:
    """Run every axiom check at ``k`` (defaults to the declared K).

    When the zero diagonal fails, the chain inequality and the minimal
    coefficient are still evaluated on walks that include self-loops, and
    the limit-uniqueness check is reported as failing.
    """
    k = space.coeff_k if k is None else Fraction(k)
    if k <= 0:
        raise SpaceError(f"k must be positive, got {k}")
    d1, _ = check_d1(space)
    d2, d2_witness = _d2_scan(space, k)
    t0, t0_witness = check_t0(space)
    if d1:
        haus, haus_witness = check_hausdorff_finite(space)
    else:
        haus, haus_witness = False, None
    return AxiomReport(
        d1_holds=d1,
        d2_holds=d2,
        d2_witness=d2_witness,
        t0_holds=t0,
        t0_witness=t0_witness,
        hausdorff_finite=haus,
        hausdorff_witness=haus_witness,
        minimal_k=_minimal_k(space),
        k=k,
    )
