import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpfix.search import GenConfig, gen_space
from qpfix.sequences import SeqPrefix, check_convergence, classify_cauchy, find_limits
from qpfix.space import SpaceError, conjugate


def test_t3_orbit_tail_is_left_cauchy(T3):
    v = classify_cauchy(SeqPrefix(T3, "pqrrr"), "left_k", F(1, 20))
    assert v.holds_on_prefix and v.witness_n0 == 2 and v.violation is None


def test_alternating_sequence_is_not_cauchy(T3):
    v = classify_cauchy(SeqPrefix(T3, "pqpqpq"), "left_k", F(1, 2))
    assert not v.holds_on_prefix
    k, n, d = v.violation
    assert d == 1 and k <= n
    assert v.witness_n0 is None


@pytest.mark.parametrize("kind", ["left_k", "right_k", "ds"])
def test_large_epsilon_always_holds(P3, kind):
    v = classify_cauchy(SeqPrefix(P3, "abcacb"), kind, F(1))
    assert v.holds_on_prefix and v.witness_n0 == 0


def test_rejects_empty_and_bad_epsilon(T3):
    with pytest.raises(SpaceError):
        SeqPrefix(T3, ())
    with pytest.raises(ValueError):
        classify_cauchy(SeqPrefix(T3, "p"), "left_k", 0)
    with pytest.raises(SpaceError):
        SeqPrefix(T3, ("z",))


def test_single_entry_prefix(T3):
    assert classify_cauchy(SeqPrefix(T3, "p"), "ds", F(1, 100)).witness_n0 == 0


def test_convergence_t3(T3):
    assert check_convergence(SeqPrefix(T3, "pqrrr"), "r", "D", F(1, 100)) == (True, 2)


def test_convergence_splits_on_asymmetry(asym2):
    seq = SeqPrefix(asym2, "vvv")
    assert check_convergence(seq, "u", "D", F(1, 2))[0]
    assert not check_convergence(seq, "u", "Dinv", F(1, 2))[0]


@pytest.mark.parametrize("mode", ["D", "Dinv", "Ds"])
def test_constant_sequence_converges_to_itself(P3, mode):
    assert check_convergence(SeqPrefix(P3, "bbb"), "b", mode, F(1, 1000)) == (True, 0)


def test_find_limits(asym2, T3):
    assert find_limits(SeqPrefix(asym2, "vvv"), "D", F(1, 2)) == ("u", "v")
    assert find_limits(SeqPrefix(T3, "pqrr"), "D", F(1, 20)) == ("r",)
    assert find_limits(SeqPrefix(T3, "pqrr"), "Ds", F(1, 20)) == ("r",)


def test_min_tail_one_makes_last_entry_decisive(T3):
    seq = SeqPrefix(T3, "pqpqpq")
    assert classify_cauchy(seq, "left_k", F(1, 2), min_tail=1).witness_n0 == 5


# --- properties over random spaces and sequences -----------------------------


def _random_case(seed):
    rng = random.Random(seed)
    space = gen_space(GenConfig(point_count=5, seed=seed), rng, point_count=rng.randint(1, 5))
    entries = [rng.choice(space.points) for _ in range(rng.randint(1, 12))]
    return space, entries


eps_values = st.sampled_from([F(1, 100), F(1, 4), F(1, 2), F(1), F(3, 2)])


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), eps_values)
def test_left_right_duality(seed, eps):
    space, entries = _random_case(seed)
    left = classify_cauchy(SeqPrefix(space, entries), "left_k", eps)
    right = classify_cauchy(SeqPrefix(conjugate(space), entries), "right_k", eps)
    assert (left.holds_on_prefix, left.witness_n0, left.violation) == (
        right.holds_on_prefix, right.witness_n0, right.violation)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), eps_values)
def test_ds_is_left_and_right(seed, eps):
    space, entries = _random_case(seed)
    seq = SeqPrefix(space, entries)
    ds = classify_cauchy(seq, "ds", eps)
    left = classify_cauchy(seq, "left_k", eps)
    right = classify_cauchy(seq, "right_k", eps)
    assert ds.holds_on_prefix == (left.holds_on_prefix and right.holds_on_prefix)
    if ds.holds_on_prefix:
        assert ds.witness_n0 == max(left.witness_n0, right.witness_n0)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), eps_values, st.sampled_from(["left_k", "right_k", "ds"]))
def test_monotone_in_epsilon(seed, eps, kind):
    space, entries = _random_case(seed)
    seq = SeqPrefix(space, entries)
    if classify_cauchy(seq, kind, eps).holds_on_prefix:
        for bigger in (eps + F(1, 100), 2 * eps, eps + 5):
            assert classify_cauchy(seq, kind, bigger).holds_on_prefix


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), eps_values)
def test_ds_convergence_is_both(seed, eps):
    space, entries = _random_case(seed)
    seq = SeqPrefix(space, entries)
    for p in space.points:
        both = check_convergence(seq, p, "D", eps)[0] and check_convergence(seq, p, "Dinv", eps)[0]
        assert check_convergence(seq, p, "Ds", eps)[0] == both
