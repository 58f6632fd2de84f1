"""Threshold admissibility of a self-map and the weighted contraction test."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Tuple

from .space import Matrix, QPSpace, SpaceError, _freeze_matrix

SEED_PROFILES = ("left", "right", "min")


class ShapeError(SpaceError):
    """Map or weight matrices do not match the space."""


@dataclass(frozen=True)
class SelfMap:
    mapping: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "mapping", dict(self.mapping))

    def __call__(self, x: str) -> str:
        return self.mapping[x]

    def validate(self, space: QPSpace) -> None:
        if set(self.mapping) != set(space.points):
            missing = sorted(set(space.points) - set(self.mapping))
            extra = sorted(set(self.mapping) - set(space.points))
            raise ShapeError(f"map is not total on the space (missing {missing}, extra {extra})")
        for x, y in self.mapping.items():
            if y not in space._index:
                raise ShapeError(f"f({x}) = {y!r} is not a point of the space")

    def index_map(self, space: QPSpace) -> Tuple[int, ...]:
        self.validate(space)
        return tuple(space.index(self.mapping[p]) for p in space.points)

    @classmethod
    def from_indices(cls, space: QPSpace, images: Iterable[int]) -> "SelfMap":
        return cls({p: space.points[j] for p, j in zip(space.points, images)})


@dataclass(frozen=True)
class AdmissiblePair:
    """Weight matrices ``alpha``, ``beta`` with thresholds ``C_alpha > 0``, ``C_beta >= 0``."""

    alpha: Matrix
    beta: Matrix
    c_alpha: Fraction
    c_beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", _freeze_matrix(self.alpha))
        object.__setattr__(self, "beta", _freeze_matrix(self.beta))
        object.__setattr__(self, "c_alpha", Fraction(self.c_alpha))
        object.__setattr__(self, "c_beta", Fraction(self.c_beta))
        if self.c_alpha <= 0:
            raise ShapeError(f"C_alpha must be positive, got {self.c_alpha}")
        if self.c_beta < 0:
            raise ShapeError(f"C_beta must be nonnegative, got {self.c_beta}")
        for name in ("alpha", "beta"):
            m = getattr(self, name)
            n = len(m)
            if any(len(row) != n for row in m):
                raise ShapeError(f"{name} must be square")
            if any(v < 0 for row in m for v in row):
                raise ShapeError(f"{name} entries must be nonnegative")
        if len(self.alpha) != len(self.beta):
            raise ShapeError("alpha and beta must have the same shape")

    @property
    def ratio(self) -> Fraction:
        """``C_beta / C_alpha``, the per-step decay factor of the orbit."""
        return self.c_beta / self.c_alpha

    def validate(self, space: QPSpace) -> None:
        if len(self.alpha) != len(space):
            raise ShapeError(
                f"weight matrices are {len(self.alpha)}x{len(self.alpha)}, "
                f"space has {len(space)} points"
            )

    def transposed(self) -> "AdmissiblePair":
        n = len(self.alpha)
        t = lambda m: tuple(tuple(m[j][i] for j in range(n)) for i in range(n))
        return AdmissiblePair(t(self.alpha), t(self.beta), self.c_alpha, self.c_beta)

    @classmethod
    def constant(cls, n: int, alpha, beta, c_alpha, c_beta) -> "AdmissiblePair":
        a, b = Fraction(alpha), Fraction(beta)
        return cls(((a,) * n,) * n, ((b,) * n,) * n, c_alpha, c_beta)


def check_c1_c2(space: QPSpace, f: SelfMap, pair: AdmissiblePair):
    """Threshold preservation under ``f``.

    Returns ``(True, None)`` or ``(False, (condition, x, y))`` for the first
    pair, scanning all of C1 before C2, in row-major order.
    """
    fi = f.index_map(space)
    pair.validate(space)
    n = len(space)
    a, b = pair.alpha, pair.beta
    for i in range(n):
        for j in range(n):
            if a[i][j] >= pair.c_alpha and a[fi[i]][fi[j]] < pair.c_alpha:
                return False, ("C1", space.points[i], space.points[j])
    for i in range(n):
        for j in range(n):
            if b[i][j] <= pair.c_beta and b[fi[i]][fi[j]] > pair.c_beta:
                return False, ("C2", space.points[i], space.points[j])
    return True, None


def check_c3(space: QPSpace, pair: AdmissiblePair) -> bool:
    # C_beta / C_alpha < 1 / K, cross-multiplied (all quantities positive).
    return pair.c_beta * space.coeff_k < pair.c_alpha


@dataclass(frozen=True)
class ContractionWitness:
    x: str
    y: str
    lhs: Fraction
    rhs: Fraction


def check_contraction(space: QPSpace, f: SelfMap, pair: AdmissiblePair, form: str = "D"):
    """``alpha(x,y) * D(fx,fy) <= beta(x,y) * D(x,y)`` over all ordered pairs.

    ``form="Ds"`` uses the symmetrized distance on both sides.
    """
    if form not in ("D", "Ds"):
        raise ValueError(f"unknown contraction form {form!r}")
    fi = f.index_map(space)
    pair.validate(space)
    n = len(space)
    dist = space.dist
    if form == "D":
        dd = lambda i, j: dist[i][j]
    else:
        dd = lambda i, j: max(dist[i][j], dist[j][i])
    for i in range(n):
        for j in range(n):
            lhs = pair.alpha[i][j] * dd(fi[i], fi[j])
            rhs = pair.beta[i][j] * dd(i, j)
            if lhs > rhs:
                return False, ContractionWitness(space.points[i], space.points[j], lhs, rhs)
    return True, None


def seed_ok(space: QPSpace, f: SelfMap, pair: AdmissiblePair, x0: str, profile: str) -> bool:
    i = space.index(x0)
    j = space.index(f(x0))
    a, b = pair.alpha, pair.beta
    if profile == "left":
        return a[i][j] >= pair.c_alpha and b[i][j] <= pair.c_beta
    if profile == "right":
        return a[j][i] >= pair.c_alpha and b[j][i] <= pair.c_beta
    if profile == "min":
        return min(a[i][j], a[j][i]) >= pair.c_alpha and min(b[i][j], b[j][i]) <= pair.c_beta
    raise ValueError(f"unknown seed profile {profile!r}")


def find_seed_points(space: QPSpace, f: SelfMap, pair: AdmissiblePair, profile: str = "left"):
    """Starting points satisfying the seed condition, in point order."""
    f.validate(space)
    pair.validate(space)
    return [p for p in space.points if seed_ok(space, f, pair, p, profile)]


def is_symmetric_matrix(m: Matrix) -> bool:
    n = len(m)
    return all(m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n))
