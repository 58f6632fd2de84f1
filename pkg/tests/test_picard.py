import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpfix.admissibility import AdmissiblePair, SelfMap, check_contraction
from qpfix.picard import (
    check_sequential_continuity,
    iterate,
    orbit_from_entries,
    verify_chain_bound,
    verify_decay,
)
from qpfix.search import GenConfig, gen_geometric_space, gen_space
from qpfix.sequences import SeqPrefix, classify_cauchy
from qpfix.space import QPSpace, SpaceError, check_d2, conjugate

F_T3 = SelfMap({"p": "q", "q": "r", "r": "r"})
G_T3 = SelfMap({"p": "q", "q": "p", "r": "r"})


def test_iterate_t3(T3):
    orbit = iterate(T3, F_T3, "p", 10)
    assert orbit.entries == ("p", "q", "r")
    assert orbit.termination.kind == "fixed_point" and orbit.termination.index == 2
    assert orbit.step_dists == (F(1), F(1, 10))
    assert orbit.decay_ratios == (F(1, 10),)
    assert orbit.fixed_point == "r"


def test_iterate_from_fixed_point(T3):
    orbit = iterate(T3, F_T3, "r", 10)
    assert orbit.termination.index == 0 and orbit.entries == ("r",)


def test_iterate_detects_cycle(T3):
    orbit = iterate(T3, G_T3, "p", 10)
    t = orbit.termination
    assert (t.kind, t.length, t.start) == ("cycle", 2, 0)
    assert orbit.fixed_point is None
    assert orbit.recurrent() == ("p", "q")


def test_iterate_budget(T3):
    orbit = iterate(T3, F_T3, "p", 1)
    assert orbit.termination.kind == "budget_exhausted"
    assert orbit.entries == ("p", "q")


def test_iterate_errors(T3):
    with pytest.raises(SpaceError):
        iterate(T3, F_T3, "z", 5)
    with pytest.raises(ValueError):
        iterate(T3, F_T3, "p", 0)


def test_verify_decay(T3):
    orbit = orbit_from_entries(T3, "pqrr")
    assert verify_decay(orbit, F(1, 10)) == (True, None)
    assert verify_decay(orbit, F(1, 20)) == (False, 1)
    assert verify_decay(orbit_from_entries(T3, "rrrr"), 0) == (True, None)


def test_chain_bound_t3(T3):
    bounds = verify_chain_bound(iterate(T3, F_T3, "p", 10))
    assert [(b.n, b.lhs, b.rhs, b.slack) for b in bounds] == [
        (1, F(1), F(1), F(0)),
        (2, F(3, 2), F(33, 20), F(3, 20)),
    ]


def test_chain_bound_constant_orbit(T3):
    bounds = verify_chain_bound(orbit_from_entries(T3, "qqqq"))
    assert all(b.lhs == 0 and b.slack == b.rhs >= 0 for b in bounds)


def test_continuity_surrogate(T3):
    assert check_sequential_continuity(T3, F_T3, "D") == (True, None)
    space = QPSpace(("u", "v", "w"), [[0, 0, 1], [1, 0, 1], [1, 1, 0]], 1)
    f = SelfMap({"u": "u", "v": "w", "w": "w"})
    assert check_sequential_continuity(space, f, "D") == (False, ("u", "v"))
    # u,u,... right-converges to v (D(u,v) = 0), but f(u) = u is at D(u,w) = 1 from f(v).
    assert check_sequential_continuity(space, f, "Dinv") == (False, ("v", "u"))
    g = SelfMap({"u": "u", "v": "u", "w": "w"})
    assert check_sequential_continuity(space, g, "D")[0]
    ident = SelfMap({p: p for p in space.points})
    for mode in ("D", "Dinv", "Ds"):
        assert check_sequential_continuity(space, ident, mode)[0]


def test_ds_continuity_trivial_on_t0(P3):
    f = SelfMap({"a": "c", "b": "a", "c": "a"})
    assert check_sequential_continuity(P3, f, "Ds")[0]


def test_continuity_via_constant_sequences(asym2):
    # v,v,... D-converges to u; f must send it to a sequence D-converging to f(u).
    f = SelfMap({"u": "v", "v": "u"})
    assert check_sequential_continuity(asym2, f, "D") == (False, ("u", "v"))


# --- properties --------------------------------------------------------------


def _random_problem(seed):
    rng = random.Random(seed)
    space = gen_space(GenConfig(point_count=6, seed=seed), rng, point_count=rng.randint(1, 6))
    n = len(space)
    f = SelfMap.from_indices(space, [rng.randrange(n) for _ in range(n)])
    return rng, space, f


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_iteration_closes_within_point_count(seed):
    rng, space, f = _random_problem(seed)
    orbit = iterate(space, f, rng.choice(space.points), len(space) + 1)
    assert orbit.termination.kind in ("fixed_point", "cycle")
    assert len(orbit.entries) <= len(space)
    for a, b in zip(orbit.entries, orbit.entries[1:]):
        assert f(a) == b


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_chain_bound_slack_nonnegative(seed):
    rng, space, f = _random_problem(seed)
    assert check_d2(space)[0]
    entries = [rng.choice(space.points) for _ in range(rng.randint(2, 10))]
    for orbit in (orbit_from_entries(space, entries), iterate(space, f, entries[0], 10)):
        assert all(b.slack >= 0 for b in verify_chain_bound(orbit))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_constant_weight_contraction_bounds_decay(seed):
    rng, space, f = _random_problem(seed)
    n = len(space)
    c_beta = rng.choice([F(0), F(1, 4), F(1, 2)])
    pair = AdmissiblePair.constant(n, 1, c_beta, 1, c_beta)
    if check_contraction(space, f, pair)[0]:
        orbit = iterate(space, f, rng.choice(space.points), n + 1)
        assert all(r <= c_beta for r in orbit.decay_ratios)
        assert verify_decay(orbit, c_beta)[0]


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([F(0), F(1, 4), F(1, 2), F(1)]))
def test_right_decay_is_left_decay_on_conjugate(seed, lam):
    rng, space, _ = _random_problem(seed)
    entries = [rng.choice(space.points) for _ in range(rng.randint(2, 8))]
    right = verify_decay(orbit_from_entries(space, entries), lam, reverse=True)
    left = verify_decay(orbit_from_entries(conjugate(space), entries), lam)
    assert right == left


@pytest.mark.parametrize("seed", range(5))
def test_geometric_decay_gives_left_cauchy(seed):
    space, shift, r = gen_geometric_space(random.Random(seed))
    orbit = iterate(space, shift, space.points[0], len(space) + 1)
    assert verify_decay(orbit, r)[0]
    full = list(orbit.entries) + [orbit.fixed_point] * 5
    for length in range(20, len(full) + 1):
        for eps in (F(1, 10), F(1, 100)):
            assert classify_cauchy(SeqPrefix(space, full[:length]), "left_k", eps).holds_on_prefix
