"""Cauchy and convergence classification of finite sequence prefixes.

Every verdict here is relative to the observed prefix and to ``epsilon``.
A tail that starts at index ``n0`` must keep at least ``min_tail`` entries
(two by default), otherwise any prefix would pass vacuously through its last
element.  Prefixes shorter than ``min_tail`` are judged on their full length.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .space import QPSpace, SpaceError

CAUCHY_KINDS = ("left_k", "right_k", "ds")
MODES = ("D", "Dinv", "Ds")


@dataclass(frozen=True)
class SeqPrefix:
    space: QPSpace
    entries: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if not self.entries:
            raise SpaceError("sequence prefix must be nonempty")
        for e in self.entries:
            self.space.index(e)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class CauchyVerdict:
    kind: str
    epsilon: Fraction
    holds_on_prefix: bool
    witness_n0: Optional[int] = None
    violation: Optional[Tuple[int, int, Fraction]] = None


def _as_prefix(seq, space: Optional[QPSpace]) -> SeqPrefix:
    if isinstance(seq, SeqPrefix):
        return seq
    if space is None:
        raise TypeError("a space is required when passing a bare entry list")
    return SeqPrefix(space, seq)


def _check_epsilon(epsilon) -> Fraction:
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    return epsilon


def _last_start(n: int, min_tail: int) -> int:
    if min_tail < 1:
        raise ValueError("min_tail must be at least 1")
    return max(0, n - min_tail)


def classify_cauchy(seq, kind: str, epsilon, *, space: Optional[QPSpace] = None,
                    min_tail: int = 2) -> CauchyVerdict:
    """Smallest ``n0`` whose tail satisfies the chosen Cauchy condition.

    ``left_k`` asks ``D(x_k, x_n) < eps`` for ``n0 <= k <= n``, ``right_k``
    swaps the arguments, and ``ds`` asks both orders.  On failure the
    violation reported is the latest offending ``(k, n, distance)``, i.e. the
    one that rules out the largest admissible ``n0``.
    """
    if kind not in CAUCHY_KINDS:
        raise ValueError(f"unknown Cauchy kind {kind!r}")
    seq = _as_prefix(seq, space)
    epsilon = _check_epsilon(epsilon)
    sp = seq.space
    idx = [sp.index(e) for e in seq.entries]
    n = len(idx)

    def dist_pair(k, m):
        a, b = idx[k], idx[m]
        if kind == "left_k":
            return sp.dist[a][b]
        if kind == "right_k":
            return sp.dist[b][a]
        return max(sp.dist[a][b], sp.dist[b][a])

    last_bad = None
    for k in range(n - 1, -1, -1):
        for m in range(k, n):
            d = dist_pair(k, m)
            if d >= epsilon:
                last_bad = (k, m, d)
                break
        if last_bad is not None:
            break
    n0 = 0 if last_bad is None else last_bad[0] + 1
    if n0 <= _last_start(n, min_tail):
        return CauchyVerdict(kind, epsilon, True, witness_n0=n0)
    return CauchyVerdict(kind, epsilon, False, violation=last_bad)


def _mode_distance(sp: QPSpace, limit: int, x: int, mode: str) -> Fraction:
    if mode == "D":
        return sp.dist[limit][x]
    if mode == "Dinv":
        return sp.dist[x][limit]
    if mode == "Ds":
        return max(sp.dist[limit][x], sp.dist[x][limit])
    raise ValueError(f"unknown convergence mode {mode!r}")


def check_convergence(seq, limit: str, mode: str, epsilon, *,
                      space: Optional[QPSpace] = None,
                      min_tail: int = 2) -> Tuple[bool, Optional[int]]:
    """Whether the prefix converges to ``limit`` at tolerance ``epsilon``.

    Mode ``D`` looks at ``D(limit, x_n)``, ``Dinv`` at ``D(x_n, limit)``,
    ``Ds`` at both.  Returns the first index from which all relevant
    distances are below ``epsilon``.
    """
    if mode not in MODES:
        raise ValueError(f"unknown convergence mode {mode!r}")
    seq = _as_prefix(seq, space)
    epsilon = _check_epsilon(epsilon)
    sp = seq.space
    lim = sp.index(limit)
    start = len(seq)
    for pos in range(len(seq) - 1, -1, -1):
        if _mode_distance(sp, lim, sp.index(seq.entries[pos]), mode) >= epsilon:
            break
        start = pos
    if start <= _last_start(len(seq), min_tail):
        return True, start
    return False, None


def find_limits(seq, mode: str, epsilon, *, space: Optional[QPSpace] = None,
                min_tail: int = 2) -> Tuple[str, ...]:
    """All candidate limits, in the space's point order."""
    seq = _as_prefix(seq, space)
    return tuple(
        p
        for p in seq.space.points
        if check_convergence(seq, p, mode, epsilon, min_tail=min_tail)[0]
    )


def prefix_from(space: QPSpace, entries: Sequence[str]) -> SeqPrefix:
    return SeqPrefix(space, tuple(entries))
