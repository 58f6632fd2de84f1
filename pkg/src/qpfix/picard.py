"""Picard iteration on finite spaces and the bounds its orbits must satisfy."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .admissibility import SelfMap
from .space import QPSpace, SpaceError, _require_d1


@dataclass(frozen=True)
class Termination:
    """How an orbit ended.

    ``kind`` is ``"fixed_point"`` (``index`` set), ``"cycle"`` (``length``
    and ``start`` set), ``"budget_exhausted"``, or ``"prefix"`` for orbits
    built from a given list of entries rather than by iteration.
    """

    kind: str
    index: Optional[int] = None
    length: Optional[int] = None
    start: Optional[int] = None


@dataclass(frozen=True)
class Orbit:
    space: QPSpace
    entries: Tuple[str, ...]
    termination: Termination
    step_dists: Tuple[Fraction, ...] = field(init=False)
    decay_ratios: Tuple[Fraction, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if not self.entries:
            raise SpaceError("an orbit has at least its seed")
        steps = tuple(self.space.d(a, b) for a, b in zip(self.entries, self.entries[1:]))
        ratios = tuple(b / a for a, b in zip(steps, steps[1:]) if a != 0)
        object.__setattr__(self, "step_dists", steps)
        object.__setattr__(self, "decay_ratios", ratios)

    @property
    def seed(self) -> str:
        return self.entries[0]

    @property
    def fixed_point(self) -> Optional[str]:
        if self.termination.kind == "fixed_point":
            return self.entries[self.termination.index]
        return None

    def recurrent(self) -> Tuple[str, ...]:
        """States visited infinitely often by the full iteration."""
        t = self.termination
        if t.kind == "fixed_point":
            return (self.entries[t.index],)
        if t.kind == "cycle":
            return self.entries[t.start:t.start + t.length]
        return ()

    def successor(self, n: int) -> Optional[str]:
        """``x_{n+1}`` for ``n < len(entries)``, following the closed orbit."""
        if n + 1 < len(self.entries):
            return self.entries[n + 1]
        t = self.termination
        if t.kind == "fixed_point":
            return self.entries[t.index]
        if t.kind == "cycle":
            return self.entries[t.start]
        return None

    def steps(self, start: int = 0) -> List[Tuple[str, str]]:
        """Consecutive pairs ``(x_n, x_{n+1})`` for ``n >= start``, one full lap."""
        out = []
        for n in range(start, len(self.entries)):
            nxt = self.successor(n)
            if nxt is not None:
                out.append((self.entries[n], nxt))
        return out


def orbit_from_entries(space: QPSpace, entries: Sequence[str]) -> Orbit:
    return Orbit(space, tuple(entries), Termination("prefix"))


def iterate(space: QPSpace, f: SelfMap, x0: str, max_steps: int = 100) -> Orbit:
    """Run ``x_{n+1} = f(x_n)`` from ``x0``.

    Stops at the first fixed point, the first revisited state, or after
    ``max_steps`` applications of ``f``.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    space.index(x0)
    f.validate(space)
    entries = [x0]
    seen = {x0: 0}
    x = x0
    while True:
        n = len(entries) - 1
        y = f(x)
        if y == x:
            return Orbit(space, entries, Termination("fixed_point", index=n))
        if y in seen:
            start = seen[y]
            return Orbit(space, entries, Termination("cycle", length=n + 1 - start, start=start))
        if n >= max_steps:
            return Orbit(space, entries, Termination("budget_exhausted"))
        seen[y] = n + 1
        entries.append(y)
        x = y


def verify_decay(orbit: Orbit, lam, *, reverse: bool = False) -> Tuple[bool, Optional[int]]:
    """Check ``D(x_n, x_{n+1}) <= lam * D(x_{n-1}, x_n)`` for every ``n >= 1``.

    ``reverse=True`` checks the mirrored condition
    ``D(x_{n+1}, x_n) <= lam * D(x_n, x_{n-1})``.  Returns the first
    violating ``n``.
    """
    lam = Fraction(lam)
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    d = orbit.space.d
    xs = orbit.entries
    for n in range(1, len(xs) - 1):
        if reverse:
            cur, prev = d(xs[n + 1], xs[n]), d(xs[n], xs[n - 1])
        else:
            cur, prev = d(xs[n], xs[n + 1]), d(xs[n - 1], xs[n])
        if cur > lam * prev:
            return False, n
    return True, None


@dataclass(frozen=True)
class ChainBound:
    n: int
    lhs: Fraction
    rhs: Fraction

    @property
    def slack(self) -> Fraction:
        return self.rhs - self.lhs


def verify_chain_bound(orbit: Orbit, *, reverse: bool = False) -> List[ChainBound]:
    """Distance from the seed against the K-weighted sum of steps.

    For ``n >= 2`` the bound is
    ``K D(x0,x1) + K^2 D(x1,x2) + ... + K^(n-1) D(x_{n-2},x_{n-1})
    + K^(n-1) D(x_{n-1},x_n)``; for ``n = 1`` it is ``D(x0,x1)`` itself.
    ``reverse=True`` evaluates every distance with swapped arguments.
    """
    xs = orbit.entries
    if len(xs) < 2:
        return []
    k = orbit.space.coeff_k
    d = (lambda a, b: orbit.space.d(b, a)) if reverse else orbit.space.d
    steps = [d(a, b) for a, b in zip(xs, xs[1:])]
    out = [ChainBound(1, d(xs[0], xs[1]), steps[0])]
    prefix = Fraction(0)
    for n in range(2, len(xs)):
        # prefix = sum_{i=1}^{n-1} K^i * step_{i-1}
        prefix += k ** (n - 1) * steps[n - 2]
        rhs = prefix + k ** (n - 1) * steps[n - 1]
        out.append(ChainBound(n, d(xs[0], xs[n]), rhs))
    return out


def check_sequential_continuity(space: QPSpace, f: SelfMap, mode: str = "D"):
    """Finite-space sequential continuity via the zero-distance relation.

    In a finite space ``x_n -> x`` (mode ``D``) iff ``D(x, x_n) = 0``
    eventually, so continuity is exactly ``D(x,z) = 0 => D(fx,fz) = 0``.
    ``Dinv`` mirrors the arguments.  ``Ds`` requires
    ``D(x,z) = D(z,x) = 0 => D(fx,fz) = D(fz,fx) = 0``.  Returns
    ``(True, None)`` or ``(False, (x, z))``.
    """
    if mode not in ("D", "Dinv", "Ds"):
        raise ValueError(f"unknown continuity mode {mode!r}")
    _require_d1(space)
    fi = f.index_map(space)
    dist = space.dist
    n = len(space)

    def zero(i, j):
        if mode == "D":
            return dist[i][j] == 0
        if mode == "Dinv":
            return dist[j][i] == 0
        return dist[i][j] == 0 and dist[j][i] == 0

    for i in range(n):
        for j in range(n):
            if zero(i, j) and not zero(fi[i], fi[j]):
                return False, (space.points[i], space.points[j])
    return True, None
